#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <limits>
#include <string>
#include <vector>

#include "pplab/thresholds.hpp"

namespace pplab {

// omega(u) = 1/u on [1,2], (u omega(u))' = omega(u-1) beyond, trapezoidal marching
class BuchstabTable {
public:
    explicit BuchstabTable(double h = 1e-4, double U = 20.0);
    double operator()(double u) const;
    double h() const { return h_; }
    double U() const { return U_; }
    std::size_t size() const { return g_.size(); }
    double node(std::size_t i) const { return 1.0 + static_cast<double>(i) * h_; }
    double value_at(std::size_t i) const { return g_[i] / node(i); }
    // max over interior nodes of |(u omega)'(central difference) - omega(u-1)|
    double delay_residual() const;
    void write_csv(std::ostream& os, std::size_t stride = 100) const;

private:
    double h_, U_;
    std::size_t per_unit_;
    std::vector<double> g_;  // u * omega(u) at nodes
};

const BuchstabTable& default_omega_table();
double omega(double u);

// a . y <= b + log_shift / log X  (the shift vanishes in the X -> infinity limit)
struct HalfSpace {
    std::vector<Rational> a;
    Rational b;
    double log_shift = 0.0;
};

struct LinearForm {
    std::vector<Rational> a;
    Rational b;
    double eval(const double* y) const;
};

// double-precision copy of the half-spaces for hot loops
struct CompiledPolytope {
    int dim = 1;
    std::vector<double> a, b, shift;
    bool contains(const double* y, double logX = std::numeric_limits<double>::infinity(), double slack = 0.0) const;
};

struct SievePolytope {
    int dim = 1;
    std::vector<HalfSpace> constraints;
    std::string anchor;
    bool flagged_in_Pj = false;

    // membership with optional finite-X shift and symmetric slack
    bool contains(const double* y, double logX = std::numeric_limits<double>::infinity(), double slack = 0.0) const;
    CompiledPolytope compile() const;
    SievePolytope& add(std::vector<Rational> a, Rational b, double log_shift = 0.0);
    // lo <= y_i <= hi helpers
    SievePolytope& ge(int i, Rational v);
    SievePolytope& le(int i, Rational v);
};

SievePolytope interval_polytope(Rational lo, Rational hi, std::string anchor = {});
std::vector<std::vector<Rational>> vertices(const SievePolytope& P);
bool bounded(const SievePolytope& P);
// closure of P inside the closure of P_j
bool inside_Pj(const SievePolytope& P);

struct Integrand {
    std::string name;
    std::function<double(const double*)> f;
    std::vector<LinearForm> denominators;  // checked for sign changes over the region
};

// 1 / (y_1 ... y_j * prod extra)
Integrand rational_kernel(int dim, std::vector<LinearForm> extra);
// f_j(z) omega((1 - sum z) / z_j)
Integrand buchstab_kernel(int dim, const BuchstabTable& table = default_omega_table());

struct QuadOptions {
    double rel_tol = 1e-11;
    unsigned max_depth = 12;
    std::uint64_t mc_samples = 10'000'000;
    std::uint64_t seed = 20240611;
};

struct IntegralResult {
    double value = 0, error = 0;
    double mc_value = 0, mc_sigma = 0;
    std::uint64_t mc_samples = 0, seed = 0;
    bool agree = true;
};

IntegralResult polytope_integral(const SievePolytope& P, const Integrand& f, const QuadOptions& opt = {});

struct NamedIntegral {
    std::string name;
    IntegralResult r;
    double stated_bound;  // claimed upper bound, or NaN
};

struct DConstants {
    int theorem = 2;
    std::vector<NamedIntegral> d;
    double u_plus = 0;
    double combination = 0;  // 2u - u^2
    // d2 uses the displayed iterated limits (all pair sums in I3); this is the
    // looser set where only alpha1+alpha3 and alpha2+alpha3 are constrained
    IntegralResult d2_prose;
    bool has_prose = false;
};

// region helpers shared with tests and the CLI
SievePolytope thm2_d2_region();
SievePolytope thm2_d2_iterated_region();
SievePolytope thm2_d4_region();
SievePolytope thm4_d2_region();
SievePolytope Pj_polytope(int j);

DConstants d_constants(int theorem, const QuadOptions& opt = {});

struct PrimeSumBudget {
    std::uint64_t max_X = 10'000'000;
};

// sum over alpha_j in E of the nondecreasing tails with 1/pi_{k-1}
double mertens_sum(const SievePolytope& E, int k, bool starred, std::uint64_t X, const PrimeSumBudget& b = {});

struct OmegaComparison {
    double prime_side = 0, integral_side = 0, ratio = 0;
    IntegralResult integral;
};
OmegaComparison prime_vs_omega_integral(const SievePolytope& E, std::uint64_t X, const QuadOptions& opt = {},
                      const PrimeSumBudget& b = {});

}  // namespace pplab
