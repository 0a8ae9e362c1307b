#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "pplab/primes.hpp"

namespace pplab {

using cplx = std::complex<double>;

enum class SumWeight { unit, prime, prime_log, plus_thm2, plus_thm4 };
enum class Phase { power, floor_power };

std::string to_string(SumWeight w);
std::string to_string(Phase p);
SumWeight sum_weight_from(const std::string& s);
Phase phase_from(const std::string& s);

struct ExpSumSpec {
    std::uint64_t X = 100;
    double c = 1.5;
    SumWeight weight = SumWeight::prime;
    Phase phase = Phase::power;
};

struct PhaseValue {
    std::uint64_t n = 0;
    std::uint64_t exact_floor = 0;
    long double power = 0;
    bool certified = false;
    bool escalated = false;  // needed MPFR
};

// n^c with a certified floor; escalates to MPFR up to max_bits, else PrecisionError naming n
PhaseValue power_phase(std::uint64_t n, double c, int max_bits = 1024);

// signed fractional part of F*x in [-1/2, 1/2], exact on the binary expansion of x
long double frac_mul(std::int64_t F, double x);
inline cplx e_frac(long double r) {
    double t = 6.283185307179586476925286766559 * static_cast<double>(r);
    return {std::cos(t), std::sin(t)};
}

class ExpSum {
public:
    static ExpSum build(const ExpSumSpec& spec, const WindowBudget& budget = {});
    // coefficient-weighted variant for mean values; coef indexed by n - X/8 - 1
    static ExpSum with_coefficients(const ExpSumSpec& spec, const std::vector<cplx>& coef,
                                    const WindowBudget& budget = {});

    cplx eval(double x) const;
    std::vector<cplx> eval_many(const std::vector<double>& xs) const;
    double total_weight() const;  // sum of |w|
    const ExpSumSpec& spec() const { return spec_; }
    std::size_t terms() const { return n_.size(); }
    std::size_t escalations() const { return escalated_; }
    const std::vector<std::uint64_t>& n() const { return n_; }
    const std::vector<long double>& lambda() const { return lam_; }
    const std::vector<cplx>& weights() const { return w_; }

private:
    ExpSumSpec spec_;
    std::vector<std::uint64_t> n_;
    std::vector<std::int64_t> floor_;
    std::vector<long double> lam_;
    std::vector<cplx> w_;
    std::size_t escalated_ = 0;
};

void write_csv(std::ostream& os, const std::vector<double>& xs, const std::vector<cplx>& vals);

struct QuadTolerance {
    double abs_tol = -1;  // default 1e-9 * X
    int nodes = 32;
};

// int_{X/8}^X e(t^c x) dt
cplx eval_I(double X, double c, double x, const QuadTolerance& tol = {});
// int_0^X e(x t^c) dt
cplx eval_v1(double X, double c, double x, const QuadTolerance& tol = {});
// sum_{1 <= m <= M} (1/c) m^{1/c-1} e(x m)
cplx eval_v(double M, double c, double x);
// sum over (X/8)^c < m <= X^c of the same summand
cplx eval_J(double X, double c, double x);
// sum over lo < m <= hi
cplx weighted_power_sum(std::uint64_t lo, std::uint64_t hi, double c, double x);

// int_A^B g(w) e(x w) dw with Legendre projection on geometric panels (A > 0)
cplx filon(const std::function<double(double)>& g, double A, double B, double x, double ratio, int nodes,
           double* err = nullptr);

struct MeanValueReport {
    double value = 0;
    double bound = 0;  // NaN when no bound applies
    double ratio = 0;
    int moment = 2;
    std::size_t nodes = 0;
};

struct MeanValueOptions {
    std::uint64_t node_budget = 20'000'000;  // moment 4 quadrature
    double eta = 0.01;
};

MeanValueReport mean_value(const ExpSum& V, double B, int moment, const MeanValueOptions& opt = {});
std::vector<cplx> random_coefficients(std::size_t n, std::uint64_t seed);

struct DualityAtom {
    double x;
    cplx mass;
};
struct DualityReport {
    double lhs = 0, rhs = 0, ratio = 0;
    bool holds = true;
};
DualityReport duality_check(const std::vector<DualityAtom>& atoms, const std::vector<double>& a, const std::vector<double>& lambda);

struct DualityInstance {
    std::vector<DualityAtom> atoms;
    std::vector<double> a, lambda;
};
// 1..6 atoms on [-1,1], 1..8 frequencies in [1,50], real coefficients in [-1,1]
DualityInstance random_duality_instance(std::uint64_t seed);

struct PrimeSumReport {
    cplx sum, integral;
    double diff = 0, normalized = 0;
    std::uint64_t primes = 0;
};
PrimeSumReport prime_sum_vs_integral(double Z, double Zp, double c, double y, Phase phase);

// largest |lhs|/bound over a grid, i.e. the smallest constant making the inequality hold
struct ConstantFit {
    double constant = 0;
    double worst_x = 0;
    std::size_t points = 0;
};
std::vector<double> log_grid(double lo, double hi, std::size_t n);
// |v(X^c, x) - v1(X, x)| against 1 + X^c |x|
ConstantFit fit_power_sum_vs_integral(double X, double c, const std::vector<double>& xs);
// |I(x)| against X^{1-c} / |x|
ConstantFit fit_integral_decay(double X, double c, const std::vector<double>& xs);
// |v(X^c, x)| against |x|^{-1/c}
ConstantFit fit_power_sum_decay(double X, double c, const std::vector<double>& xs);

}  // namespace pplab
