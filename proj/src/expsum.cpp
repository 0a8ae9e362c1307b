#include "pplab/expsum.hpp"

#include <mpfr.h>

#include <algorithm>
#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/bessel.hpp>
#include <cmath>
#include <ostream>
#include <random>

#include "pplab/errors.hpp"
#include "pplab/parallel.hpp"

namespace pplab {

namespace {
constexpr double kTwoPi = 6.283185307179586476925286766559;
using i128 = __int128;
using u128 = unsigned __int128;

struct CAcc {
    Compensated re, im;
    void add(cplx z) {
        re.add(z.real());
        im.add(z.imag());
    }
    cplx value() const { return {re.value(), im.value()}; }
};
}  // namespace

std::string to_string(SumWeight w) {
    switch (w) {
        case SumWeight::unit: return "unit";
        case SumWeight::prime: return "prime";
        case SumWeight::prime_log: return "prime-log";
        case SumWeight::plus_thm2: return "thm2-plus";
        case SumWeight::plus_thm4: return "thm4-plus";
    }
    return "?";
}

std::string to_string(Phase p) { return p == Phase::power ? "power" : "floor-power"; }

SumWeight sum_weight_from(const std::string& s) {
    if (s == "unit") return SumWeight::unit;
    if (s == "prime") return SumWeight::prime;
    if (s == "prime-log") return SumWeight::prime_log;
    if (s == "thm2-plus") return SumWeight::plus_thm2;
    if (s == "thm4-plus") return SumWeight::plus_thm4;
    throw DomainError("unknown sum weight '" + s + "'");
}

Phase phase_from(const std::string& s) {
    if (s == "power") return Phase::power;
    if (s == "floor-power") return Phase::floor_power;
    throw DomainError("unknown phase '" + s + "'");
}

PhaseValue power_phase(std::uint64_t n, double c, int max_bits) {
    PhaseValue pv;
    pv.n = n;
    long double v = std::pow(static_cast<long double>(n), static_cast<long double>(c));
    pv.power = v;
    long double fl = std::floor(v);
    long double margin = v * 0x1p-58L + 0x1p-60L;
    if (v - fl > margin && fl + 1 - v > margin && v < 0x1p63L) {
        pv.exact_floor = static_cast<std::uint64_t>(fl);
        pv.certified = true;
        return pv;
    }
    pv.escalated = true;
    for (int bits = 128; bits <= max_bits; bits *= 2) {
        mpfr_t a, r, f;
        mpfr_inits2(bits, a, r, f, static_cast<mpfr_ptr>(nullptr));
        mpfr_set_ui(a, n, MPFR_RNDN);
        mpfr_t cc;
        mpfr_init2(cc, 64);
        mpfr_set_d(cc, c, MPFR_RNDN);
        int exact = mpfr_pow(r, a, cc, MPFR_RNDN);
        mpfr_floor(f, r);
        mpfr_t d;
        mpfr_init2(d, bits);
        mpfr_sub(d, r, f, MPFR_RNDN);
        // relative rounding of the correctly rounded power, in absolute terms
        long exp2 = mpfr_get_exp(r);
        double dist = mpfr_get_d(d, MPFR_RNDN);
        double ulp = std::ldexp(1.0, static_cast<int>(exp2) - bits + 2);
        bool ok = exact == 0 || (dist > ulp && 1.0 - dist > ulp);
        std::uint64_t fv = mpfr_get_uj(f, MPFR_RNDN);
        pv.power = mpfr_get_ld(r, MPFR_RNDN);
        mpfr_clears(a, r, f, cc, d, static_cast<mpfr_ptr>(nullptr));
        if (ok) {
            pv.exact_floor = fv;
            pv.certified = true;
            return pv;
        }
    }
    throw PrecisionError("floor of n^c not certified for n=" + std::to_string(n) + " at " +
                         std::to_string(max_bits) + " bits");
}

long double frac_mul(std::int64_t F, double x) {
    if (x == 0 || F == 0) return 0;
    int e = 0;
    double m = std::frexp(x, &e);
    auto M = static_cast<std::int64_t>(std::ldexp(m, 53));
    int sh = 53 - e;  // x = M * 2^-sh
    if (sh <= 0) return 0;
    i128 P = static_cast<i128>(F) * M;
    if (sh >= 120) {
        long double v = std::ldexp(static_cast<long double>(P), -sh);
        return v - std::round(v);
    }
    u128 mod = static_cast<u128>(1) << sh;
    u128 r = static_cast<u128>(P) & (mod - 1);
    i128 s = r >= (mod >> 1) ? static_cast<i128>(r) - static_cast<i128>(mod) : static_cast<i128>(r);
    return std::ldexp(static_cast<long double>(s), -sh);
}

namespace {

long double frac_power(long double lam, double x) {
    long double t = std::fmod(lam * static_cast<long double>(x), 1.0L);
    return t - std::round(t);
}

}  // namespace

ExpSum ExpSum::build(const ExpSumSpec& spec, const WindowBudget& budget) {
    if (!(spec.c > 1) || spec.c == std::floor(spec.c)) throw DomainError("c must be > 1 and not an integer");
    auto w = PrimeWindow::build(spec.X, budget);
    ExpSum s;
    s.spec_ = spec;
    auto push = [&](std::uint64_t n, double wt) {
        if (wt == 0) return;
        s.n_.push_back(n);
        s.w_.emplace_back(wt, 0.0);
    };
    switch (spec.weight) {
        case SumWeight::unit:
            for (std::uint64_t n = w.lo() + 1; n <= w.X(); ++n) push(n, 1);
            break;
        case SumWeight::prime:
            for (auto p : w.primes()) push(p, 1);
            break;
        case SumWeight::prime_log:
            for (auto p : w.primes()) push(p, std::log(static_cast<double>(p)));
            break;
        case SumWeight::plus_thm2:
        case SumWeight::plus_thm4: {
            auto tab = build_weights(w, spec.weight == SumWeight::plus_thm2 ? WeightKind::thm2_plus : WeightKind::thm4_plus);
            for (std::size_t i = 0; i < tab.values.size(); ++i) push(w.lo() + 1 + i, tab.values[i]);
            break;
        }
    }
    s.lam_.resize(s.n_.size());
    s.floor_.resize(s.n_.size());
    for (std::size_t i = 0; i < s.n_.size(); ++i) {
        auto pv = power_phase(s.n_[i], spec.c);
        s.lam_[i] = pv.power;
        s.floor_[i] = static_cast<std::int64_t>(pv.exact_floor);
        s.escalated_ += pv.escalated;
    }
    return s;
}

ExpSum ExpSum::with_coefficients(const ExpSumSpec& spec, const std::vector<cplx>& coef, const WindowBudget& budget) {
    ExpSumSpec u = spec;
    u.weight = SumWeight::unit;
    ExpSum s = build(u, budget);
    if (coef.size() != s.n_.size()) throw DomainError("coefficient count must equal the window size");
    for (auto& z : coef)
        if (std::abs(z) > 1 + 1e-15) throw DomainError("coefficients need |c_n| <= 1");
    s.w_ = coef;
    return s;
}

cplx ExpSum::eval(double x) const {
    CAcc acc;
    const bool fl = spec_.phase == Phase::floor_power;
    for (std::size_t i = 0; i < n_.size(); ++i) {
        long double r = fl ? frac_mul(floor_[i], x) : frac_power(lam_[i], x);
        acc.add(w_[i] * e_frac(r));
    }
    return acc.value();
}

std::vector<cplx> ExpSum::eval_many(const std::vector<double>& xs) const {
    std::vector<cplx> out(xs.size());
    for_each_block(xs.size(), [&](std::size_t i) { out[i] = eval(xs[i]); });
    return out;
}

double ExpSum::total_weight() const {
    Compensated s;
    for (auto& z : w_) s.add(std::abs(z));
    return s.value();
}

void write_csv(std::ostream& os, const std::vector<double>& xs, const std::vector<cplx>& vals) {
    os << "x,re,im\n";
    os.precision(17);
    for (std::size_t i = 0; i < xs.size(); ++i) os << xs[i] << ',' << vals[i].real() << ',' << vals[i].imag() << '\n';
}

// ---- oscillatory integrals -------------------------------------------------

namespace {

struct GaussRule {
    std::vector<double> s, w;
};

const GaussRule& gauss32() {
    static const GaussRule r = [] {
        GaussRule g;
        using G = boost::math::quadrature::gauss<double, 32>;
        const auto& a = G::abscissa();
        const auto& w = G::weights();
        for (std::size_t i = 0; i < a.size(); ++i) {
            g.s.push_back(a[i]);
            g.w.push_back(w[i]);
            if (a[i] != 0) {
                g.s.push_back(-a[i]);
                g.w.push_back(w[i]);
            }
        }
        return g;
    }();
    return r;
}

// int_{-1}^{1} P_j(s) e^{i om s} ds = 2 i^j j_j(om)
cplx legendre_moment(int j, double om) {
    double v = boost::math::sph_bessel(j, std::abs(om));
    if (om < 0 && (j % 2)) v = -v;
    static const cplx ipow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    return 2.0 * v * ipow[j % 4];
}

}  // namespace

cplx filon(const std::function<double(double)>& g, double A, double B, double x, double ratio, int nodes, double* err) {
    if (!(A > 0) || !(B >= A)) throw DomainError("filon needs 0 < A <= B");
    (void)nodes;  // the rule is fixed at 32 points
    const auto& G = gauss32();
    const int N = static_cast<int>(G.s.size());
    CAcc acc;
    double e = 0;
    std::vector<double> gv(N), P(N);
    for (double l = A; l < B;) {
        double r = std::min(B, l * ratio);
        if (r > B * (1 - 1e-15)) r = B;
        double h = 0.5 * (r - l), mid = 0.5 * (l + r);
        for (int i = 0; i < N; ++i) gv[i] = g(mid + h * G.s[i]);
        // Legendre coefficients of g on the panel
        std::vector<double> a(N, 0.0);
        std::vector<double> p0(N, 1.0), p1(G.s);
        for (int j = 0; j < N; ++j) {
            const std::vector<double>& pj = j == 0 ? p0 : p1;
            double s = 0;
            for (int i = 0; i < N; ++i) s += G.w[i] * gv[i] * pj[i];
            a[j] = 0.5 * (2 * j + 1) * s;
            if (j >= 1) {
                // advance: p0 <- P_j, p1 <- P_{j+1}
                for (int i = 0; i < N; ++i) {
                    double nx = ((2 * j + 1) * G.s[i] * p1[i] - j * p0[i]) / (j + 1);
                    p0[i] = p1[i];
                    p1[i] = nx;
                }
            }
        }
        double om = kTwoPi * x * h;
        cplx s = 0;
        for (int j = N - 1; j >= 0; --j) s += a[j] * legendre_moment(j, om);
        long double ph = std::fmod(static_cast<long double>(x) * mid, 1.0L);
        acc.add(h * e_frac(ph) * s);
        e += 2 * h * (std::abs(a[N - 1]) + std::abs(a[N - 2]));
        l = r;
    }
    if (err) *err = e;
    return acc.value();
}

namespace {

double default_tol(double X, const QuadTolerance& t) { return t.abs_tol > 0 ? t.abs_tol : 1e-9 * X; }

void check_tol(double err, double tol, const char* what) {
    if (err > tol)
        throw QuadratureError(std::string(what) + ": tolerance " + std::to_string(tol) + " not reached", err);
}

cplx plain_t_integral(double a, double b, double c, double x, double tol, double* err) {
    using GK = boost::math::quadrature::gauss_kronrod<double, 61>;
    double e1 = 0, e2 = 0;
    double re = GK::integrate([&](double t) { return std::cos(kTwoPi * x * std::pow(t, c)); }, a, b, 15, 1e-13, &e1);
    double im = GK::integrate([&](double t) { return std::sin(kTwoPi * x * std::pow(t, c)); }, a, b, 15, 1e-13, &e2);
    (void)tol;
    *err = e1 + e2;
    return {re, im};
}

}  // namespace

cplx eval_I(double X, double c, double x, const QuadTolerance& t) {
    if (!(X > 0 && c > 1)) throw DomainError("eval_I needs X > 0, c > 1");
    double tol = default_tol(X, t), err = 0;
    auto amp = [c](double w) { return std::pow(w, 1 / c - 1) / c; };
    cplx v = filon(amp, std::pow(X / 8, c), std::pow(X, c), x, 2.0, t.nodes, &err);
    check_tol(err, tol, "eval_I");
    return v;
}

cplx eval_v1(double X, double c, double x, const QuadTolerance& t) {
    if (!(X > 0 && c > 1)) throw DomainError("eval_v1 needs X > 0, c > 1");
    double tol = default_tol(X, t);
    double t0 = x == 0 ? X : std::min(X, std::pow(std::abs(x), -1 / c));
    double e0 = 0;
    cplx head = plain_t_integral(0, t0, c, x, tol, &e0);
    if (t0 >= X) {
        check_tol(e0, tol, "eval_v1");
        return head;
    }
    double e1 = 0;
    auto amp = [c](double w) { return std::pow(w, 1 / c - 1) / c; };
    cplx tail = filon(amp, std::pow(t0, c), std::pow(X, c), x, 2.0, t.nodes, &e1);
    check_tol(e0 + e1, tol, "eval_v1");
    return head + tail;
}

cplx weighted_power_sum(std::uint64_t lo, std::uint64_t hi, double c, double x) {
    if (hi <= lo) return 0;
    const double al = 1 / c - 1;
    const std::uint64_t L = 2048;
    const int D = 9;
    const std::uint64_t direct_until = std::min<std::uint64_t>(hi, std::max<std::uint64_t>(lo, 128 * L));
    CAcc acc;
    auto direct = [&](std::uint64_t a, std::uint64_t b) {
        for (std::uint64_t m = a; m <= b; ++m)
            acc.add(std::pow(static_cast<double>(m), al) / c * e_frac(frac_mul(static_cast<std::int64_t>(m), x)));
    };
    direct(lo + 1, direct_until);
    std::uint64_t m0 = direct_until + 1;
    if (m0 + L - 1 <= hi) {
        // G_j = sum_{t<L} (t/L)^j e(x t), shared by every block
        std::vector<cplx> G(D, 0.0);
        std::vector<CAcc> Ga(D);
        for (std::uint64_t t = 0; t < L; ++t) {
            cplx z = e_frac(frac_mul(static_cast<std::int64_t>(t), x));
            double u = static_cast<double>(t) / L, p = 1;
            for (int j = 0; j < D; ++j, p *= u) Ga[j].add(p * z);
        }
        for (int j = 0; j < D; ++j) G[j] = Ga[j].value();
        std::vector<double> binom(D);
        binom[0] = 1;
        for (int j = 1; j < D; ++j) binom[j] = binom[j - 1] * (al - (j - 1)) / j;
        for (; m0 + L - 1 <= hi; m0 += L) {
            double md = static_cast<double>(m0);
            double base = std::pow(md, al) / c, q = static_cast<double>(L) / md, p = 1;
            cplx s = 0;
            for (int j = 0; j < D; ++j, p *= q) s += binom[j] * p * G[j];
            acc.add(base * e_frac(frac_mul(static_cast<std::int64_t>(m0), x)) * s);
        }
    }
    if (m0 <= hi) direct(m0, hi);
    return acc.value();
}

cplx eval_v(double M, double c, double x) {
    if (!(M >= 0 && c > 1)) throw DomainError("eval_v needs M >= 0, c > 1");
    return weighted_power_sum(0, static_cast<std::uint64_t>(std::floor(M)), c, x);
}

cplx eval_J(double X, double c, double x) {
    auto lo = static_cast<std::uint64_t>(std::floor(std::pow(X / 8, c)));
    auto hi = static_cast<std::uint64_t>(std::floor(std::pow(X, c)));
    return weighted_power_sum(lo, hi, c, x);
}

// ---- mean values -------------------------------------------------------------

std::vector<cplx> random_coefficients(std::size_t n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    auto unif = [&] { return static_cast<double>(rng() >> 11) * 0x1p-53; };
    std::vector<cplx> out(n);
    for (auto& z : out) z = std::polar(std::sqrt(unif()), kTwoPi * unif());
    return out;
}

MeanValueReport mean_value(const ExpSum& V, double B, int moment, const MeanValueOptions& opt) {
    if (!(B > 0)) throw DomainError("mean value needs B > 0");
    if (moment != 2 && moment != 4) throw DomainError("moment must be 2 or 4");
    const auto& sp = V.spec();
    const double X = static_cast<double>(sp.X), c = sp.c;
    MeanValueReport rep;
    rep.moment = moment;
    const auto& lam = V.lambda();
    const auto& w = V.weights();
    const std::size_t N = lam.size();
    std::vector<std::int64_t> fl(N);
    for (std::size_t i = 0; i < N; ++i) fl[i] = static_cast<std::int64_t>(std::floor(lam[i]));
    const bool floor_phase = sp.phase == Phase::floor_power;

    if (moment == 2) {
        // sum_{n,m} c_n conj(c_m) int_B^{2B} e((l_n - l_m) y) dy; the (m,n) term is the
        // conjugate of (n,m), so rows only visit m > n. Phases e(l_n B), e(2 l_n B) are
        // shared, except for pairs with |d B| small where the difference would cancel.
        std::vector<cplx> e1(N), e2(N);
        for (std::size_t i = 0; i < N; ++i) {
            e1[i] = e_frac(floor_phase ? frac_mul(fl[i], B) : frac_power(lam[i], B));
            e2[i] = e_frac(floor_phase ? frac_mul(fl[i], 2 * B) : frac_power(lam[i], 2 * B));
        }
        const std::size_t rows = 64;
        std::size_t nb = (N + rows - 1) / rows;
        std::vector<cplx> part(nb);
        for_each_block(nb, [&](std::size_t b) {
            CAcc acc;
            for (std::size_t i = b * rows; i < std::min(N, (b + 1) * rows); ++i) {
                acc.add(std::norm(w[i]) * B);
                CAcc row;
                for (std::size_t j = i + 1; j < N; ++j) {
                    long double d = floor_phase ? static_cast<long double>(fl[i] - fl[j]) : lam[i] - lam[j];
                    cplx cc = w[i] * std::conj(w[j]);
                    if (d == 0) {
                        row.add(cc * B);
                        continue;
                    }
                    cplx num;
                    if (std::abs(d * B) < 1e-2L) {
                        long double r2 = floor_phase ? frac_mul(fl[i] - fl[j], 2 * B) : frac_power(d, 2 * B);
                        long double r1 = floor_phase ? frac_mul(fl[i] - fl[j], B) : frac_power(d, B);
                        num = e_frac(r2) - e_frac(r1);
                    } else {
                        num = e2[i] * std::conj(e2[j]) - e1[i] * std::conj(e1[j]);
                    }
                    row.add(cc * num / cplx(0, kTwoPi * static_cast<double>(d)));
                }
                acc.add(2.0 * row.value().real());
            }
            part[b] = acc.value();
        });
        rep.value = reduce_pairwise(part, [](cplx a, cplx b) { return a + b; }).real();
        rep.bound = X * B + std::pow(X, 2 - c) * std::log(X);
    } else {
        long double span = 0;
        for (std::size_t i = 0; i < N; ++i) span = std::max(span, std::abs(lam[i] - lam[0]));
        double panels_d = std::ceil(4 * static_cast<double>(span) * B) + 1;
        const std::size_t per = 16;
        if (panels_d * per > static_cast<double>(opt.node_budget))
            throw ResourceError("fourth moment needs " + std::to_string(panels_d * per) + " nodes, budget " +
                                std::to_string(opt.node_budget));
        auto panels = static_cast<std::size_t>(panels_d);
        using G = boost::math::quadrature::gauss<double, 16>;
        const auto& a = G::abscissa();
        const auto& gw = G::weights();
        std::vector<double> part(panels);
        double h = B / static_cast<double>(panels);
        for_each_block(panels, [&](std::size_t p) {
            double l = B + h * static_cast<double>(p), mid = l + 0.5 * h;
            Compensated s;
            for (std::size_t i = 0; i < a.size(); ++i) {
                for (int sg : {-1, 1}) {
                    if (a[i] == 0 && sg < 0) continue;
                    double y = mid + sg * 0.5 * h * a[i];
                    double m = std::norm(V.eval(y));
                    s.add(gw[i] * m * m * 0.5 * h);
                }
            }
            part[p] = s.value();
        });
        rep.value = reduce_pairwise(part, [](double x, double y) { return x + y; });
        rep.nodes = panels * per;
        rep.bound = c > 2 ? (X * X * B + std::pow(X, 4 - c)) * std::pow(X, opt.eta) : std::nan("");
    }
    rep.ratio = std::isnan(rep.bound) ? std::nan("") : rep.value / rep.bound;
    return rep;
}

DualityReport duality_check(const std::vector<DualityAtom>& atoms, const std::vector<double>& a, const std::vector<double>& lambda) {
    if (a.size() != lambda.size()) throw DomainError("a and lambda must have equal length");
    DualityReport r;
    CAcc lhs;
    for (const auto& at : atoms) {
        CAcc s;
        for (std::size_t n = 0; n < a.size(); ++n) s.add(a[n] * e_frac(frac_power(lambda[n], at.x)));
        lhs.add(at.mass * s.value());
    }
    r.lhs = std::norm(lhs.value());
    Compensated a2;
    for (double v : a) a2.add(v * v);
    CAcc inner;
    for (const auto& xk : atoms)
        for (const auto& yl : atoms) {
            CAcc J;
            for (double l : lambda) J.add(e_frac(frac_power(l, xk.x - yl.x)));
            inner.add(xk.mass * std::conj(yl.mass) * J.value());
        }
    r.rhs = a2.value() * inner.value().real();
    r.ratio = r.rhs > 0 ? r.lhs / r.rhs : (r.lhs == 0 ? 0 : std::numeric_limits<double>::infinity());
    r.holds = r.lhs <= r.rhs * (1 + 1e-12) + 1e-12;
    return r;
}

DualityInstance random_duality_instance(std::uint64_t seed) {
    std::mt19937_64 g(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    DualityInstance inst;
    int atoms = 1 + static_cast<int>(g() % 6), terms = 1 + static_cast<int>(g() % 8);
    for (int i = 0; i < atoms; ++i) inst.atoms.push_back({u(g), {u(g), u(g)}});
    for (int i = 0; i < terms; ++i) {
        inst.a.push_back(u(g));
        inst.lambda.push_back(1 + 49 * (0.5 * u(g) + 0.5));
    }
    return inst;
}

PrimeSumReport prime_sum_vs_integral(double Z, double Zp, double c, double y, Phase phase) {
    if (!(Z >= 1000 && Zp > Z && Zp <= 2 * Z)) throw DomainError("need Z >= 1000 and Z < Z' <= 2Z");
    if (!(y > 0)) throw DomainError("need y > 0");
    PrimeSumReport r;
    auto ps = primes_up_to(static_cast<std::uint64_t>(std::ceil(Zp)));
    CAcc acc;
    for (auto p : ps) {
        double pd = static_cast<double>(p);
        if (pd < Z || pd >= Zp) continue;
        ++r.primes;
        long double ph;
        if (phase == Phase::floor_power)
            ph = frac_mul(static_cast<std::int64_t>(power_phase(p, c).exact_floor), y);
        else
            ph = frac_power(std::pow(static_cast<long double>(p), static_cast<long double>(c)), y);
        acc.add(e_frac(ph));
    }
    r.sum = acc.value();
    double err = 0;
    auto amp = [c](double w) { return std::pow(w, 1 / c - 1) / std::log(w); };
    r.integral = filon(amp, std::pow(Z, c), std::pow(Zp, c), y, 1.25, 32, &err);
    check_tol(err, 1e-9 * Z, "prime_sum_vs_integral");
    r.diff = std::abs(r.sum - r.integral);
    r.normalized = r.diff / Z;
    return r;
}

std::vector<double> log_grid(double lo, double hi, std::size_t n) {
    std::vector<double> g(n);
    for (std::size_t i = 0; i < n; ++i)
        g[i] = n == 1 ? lo : std::exp(std::log(lo) + (std::log(hi) - std::log(lo)) * static_cast<double>(i) / (n - 1));
    return g;
}

namespace {
template <class F>
ConstantFit fit(const std::vector<double>& xs, F ratio) {
    ConstantFit f;
    f.points = xs.size();
    std::vector<double> r(xs.size());
    for_each_block(xs.size(), [&](std::size_t i) { r[i] = ratio(xs[i]); });
    for (std::size_t i = 0; i < xs.size(); ++i)
        if (r[i] > f.constant) f.constant = r[i], f.worst_x = xs[i];
    return f;
}
}  // namespace

ConstantFit fit_power_sum_vs_integral(double X, double c, const std::vector<double>& xs) {
    double Xc = std::pow(X, c);
    return fit(xs, [&](double x) { return std::abs(eval_v(Xc, c, x) - eval_v1(X, c, x)) / (1 + Xc * std::abs(x)); });
}

ConstantFit fit_integral_decay(double X, double c, const std::vector<double>& xs) {
    return fit(xs, [&](double x) {
        return std::abs(eval_v1(X, c, x) - eval_v1(X / 8, c, x)) * std::abs(x) * std::pow(X, c - 1);
    });
}

ConstantFit fit_power_sum_decay(double X, double c, const std::vector<double>& xs) {
    double Xc = std::pow(X, c);
    return fit(xs, [&](double x) { return std::abs(eval_v(Xc, c, x)) * std::pow(std::abs(x), 1 / c); });
}

}  // namespace pplab
