#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <string>
#include <vector>

namespace pplab {

using Rational = boost::multiprecision::cpp_rational;

Rational rat(long long num, long long den = 1);
Rational parse_rational(const std::string& s);  // "a/b" or "a"
std::string str(const Rational& q);

// an exponent of X written as slope*c + offset
struct Affine {
    Rational slope, offset;
    Affine(Rational s = 0, Rational o = 0) : slope(std::move(s)), offset(std::move(o)) {}
    static Affine c() { return {1, 0}; }
    static Affine k(Rational v) { return {0, std::move(v)}; }
};
Affine operator+(const Affine& a, const Affine& b);
Affine operator-(const Affine& a, const Affine& b);
Affine operator*(const Rational& k, const Affine& a);

enum class ConstraintRole { binding, side, lower };

// a*c < b
struct LinearConstraint {
    Rational a, b;
    std::string anchor;
    std::string description;
    ConstraintRole role = ConstraintRole::side;

    // lhs < rhs as exponents of X, normalized to a*c < b with a, b coprime integers when possible
    static LinearConstraint from_exponents(const Affine& lhs, const Affine& rhs, std::string anchor,
                                           std::string description, ConstraintRole role);
    Rational bound() const { return b / a; }
    std::string text() const;
};

struct ConstraintStatus {
    LinearConstraint constraint;
    Rational bound;
    Rational slack;  // bound - derived; zero for binding rows
    bool attains = false;
};

struct ThresholdReport {
    int theorem = 0;
    Rational derived, claimed;
    bool match = false;
    bool sides_slack = false;
    std::vector<ConstraintStatus> rows;
    std::vector<Rational> excluded;
    std::vector<std::string> binding;
};

// upper end of {c > lower bounds : every a*c < b}; throws InfeasibleError naming the binding pair
Rational solve_threshold(const std::vector<LinearConstraint>& cs);

std::vector<LinearConstraint> builtin_constraints(int theorem);
Rational claimed_threshold(int theorem);
std::vector<Rational> excluded_points(int theorem);
ThresholdReport threshold_report(int theorem);

enum class Cmp { lt, le, eq, ge, gt };
struct ChainClaim {
    Rational lhs;
    Cmp op;
    Rational rhs;
};
std::vector<bool> verify_chain(const std::vector<ChainClaim>& claims);

}  // namespace pplab
