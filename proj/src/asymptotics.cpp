#include "pplab/asymptotics.hpp"

#include <fftw3.h>

#include <algorithm>
#include <boost/math/quadrature/gauss.hpp>
#include <cmath>
#include <functional>
#include <mutex>
#include <ostream>
#include <random>

#include "pplab/errors.hpp"
#include "pplab/parallel.hpp"

namespace pplab {

double predicted_main_term(MainTerm kind, int s, double c, double eta, double Rr) {
    if (!(Rr > 1)) throw DomainError("main term needs R > 1");
    double L = std::log(Rr);
    double ex = kind == MainTerm::inequality ? s / c - 1 - eta : s / c - 1;
    return std::pow(Rr, ex) / std::pow(L, s);
}

namespace {

std::mutex fftw_plan_mutex;  // planner is not re-entrant

std::vector<double> direct_conv(const std::vector<double>& a, const std::vector<double>& b) {
    std::vector<double> out(a.size() + b.size() - 1, 0.0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
    }
    return out;
}

// s-th convolution power through one forward transform
std::vector<double> fft_power(const std::vector<double>& a, int s) {
    std::size_t need = s * (a.size() - 1) + 1, n = 1;
    while (n < need) n <<= 1;
    double* in = fftw_alloc_real(n);
    fftw_complex* sp = fftw_alloc_complex(n / 2 + 1);
    fftw_plan fwd, bwd;
    {
        std::lock_guard<std::mutex> g(fftw_plan_mutex);
        fwd = fftw_plan_dft_r2c_1d(static_cast<int>(n), in, sp, FFTW_ESTIMATE);
        bwd = fftw_plan_dft_c2r_1d(static_cast<int>(n), sp, in, FFTW_ESTIMATE);
    }
    std::fill(in, in + n, 0.0);
    std::copy(a.begin(), a.end(), in);
    fftw_execute(fwd);
    for (std::size_t k = 0; k <= n / 2; ++k) {
        std::complex<double> z(sp[k][0], sp[k][1]), p = 1;
        for (int i = 0; i < s; ++i) p *= z;
        sp[k][0] = p.real();
        sp[k][1] = p.imag();
    }
    fftw_execute(bwd);
    std::vector<double> out(in, in + need);
    for (auto& v : out) v /= static_cast<double>(n);
    {
        std::lock_guard<std::mutex> g(fftw_plan_mutex);
        fftw_destroy_plan(fwd);
        fftw_destroy_plan(bwd);
    }
    fftw_free(in);
    fftw_free(sp);
    return out;
}

std::vector<double> conv_power(const std::vector<double>& a, int s, std::size_t direct_limit) {
    if (s == 1) return a;
    if (a.size() <= direct_limit) {
        std::vector<double> r = a;
        for (int i = 1; i < s; ++i) r = direct_conv(r, a);
        return r;
    }
    auto r = fft_power(a, s);
    for (auto& v : r) v = std::max(v, 0.0);  // nonnegative sequences; clip FFT noise
    return r;
}

void window_bounds(double c, double X, std::int64_t& lo, std::int64_t& hi) {
    lo = static_cast<std::int64_t>(std::floor(std::pow(X / 8, c)));
    hi = static_cast<std::int64_t>(std::floor(std::pow(X, c)));
}

}  // namespace

ConvolutionGrid convolve_window(int s, double c, double X, const ConvolutionBudget& b) {
    if (s < 1) throw DomainError("s must be positive");
    std::int64_t lo, hi;
    window_bounds(c, X, lo, hi);
    if (static_cast<double>(hi) * s > static_cast<double>(b.max_r))
        throw ResourceError("convolution length " + std::to_string(hi * s) + " exceeds grid cap " +
                            std::to_string(b.max_r));
    std::vector<double> w;
    for (std::int64_t m = lo + 1; m <= hi; ++m) w.push_back(std::pow(static_cast<double>(m), 1 / c - 1) / c);
    ConvolutionGrid g;
    g.offset = s * (lo + 1);
    if (w.empty()) return g;
    double sum = 0;
    for (double v : w) sum += v;
    g.total = std::pow(sum, s);
    g.values = conv_power(w, s, b.direct_limit);
    return g;
}

double singular_sum_L(int s, double c, std::int64_t r, double X, const ConvolutionBudget& b) {
    if (s < 2 || s > 5) throw DomainError("s must lie in [2,5]");
    if (static_cast<double>(r) > static_cast<double>(b.max_r) / s)
        throw ResourceError("r=" + std::to_string(r) + " exceeds grid cap " + std::to_string(b.max_r / s));
    std::int64_t lo, hi;
    window_bounds(c, X, lo, hi);
    if (r < s * (lo + 1) || r > s * hi) return 0;
    // only sums up to r matter, so the window is cut at r - (s-1)(lo+1)
    std::int64_t top = std::min(hi, r - (s - 1) * (lo + 1));
    std::vector<double> w;
    for (std::int64_t m = lo + 1; m <= top; ++m) w.push_back(std::pow(static_cast<double>(m), 1 / c - 1) / c);
    auto conv = conv_power(w, s - 1, b.direct_limit);
    // L = sum_m w(m) C_{s-1}(r - m)
    std::int64_t base = (s - 1) * (lo + 1);
    Compensated acc;
    for (std::size_t i = 0; i < w.size(); ++i) {
        std::int64_t m = lo + 1 + static_cast<std::int64_t>(i);
        std::int64_t k = r - m - base;
        if (k < 0 || k >= static_cast<std::int64_t>(conv.size())) continue;
        acc.add(w[i] * conv[k]);
    }
    return acc.value();
}

double singular_sum_L(int s, double c, std::int64_t r, const ConvolutionBudget& b) {
    return singular_sum_L(s, c, r, std::pow(static_cast<double>(r), 1 / c), b);
}

double naive_singular_sum_L(int s, double c, std::int64_t r, double X) {
    std::int64_t lo, hi;
    window_bounds(c, X, lo, hi);
    Compensated acc;
    std::function<void(int, std::int64_t, double)> rec = [&](int i, std::int64_t left, double prod) {
        if (i == s - 1) {
            if (left > lo && left <= hi) acc.add(prod * std::pow(static_cast<double>(left), 1 / c - 1) / c);
            return;
        }
        for (std::int64_t m = lo + 1; m <= hi && m < left; ++m)
            rec(i + 1, left - m, prod * std::pow(static_cast<double>(m), 1 / c - 1) / c);
    };
    rec(0, r, 1.0);
    return acc.value();
}

std::string to_string(HMethod m) { return m == HMethod::grid ? "grid" : "monte-carlo"; }

namespace {

// grid estimate with cell step h in u = t^c
double H_grid(int s, double c, double R, const SmoothedIndicator& phi, double X, double h, bool unit,
              std::size_t max_cells, std::size_t& cells) {
    const double U0 = std::pow(X / 8, c), U1 = std::pow(X, c);
    double ncell = std::ceil((U1 - U0) / h);
    if (ncell > static_cast<double>(max_cells))
        throw ResourceError("H grid needs " + std::to_string(ncell) + " cells, budget " + std::to_string(max_cells));
    auto n = static_cast<std::size_t>(ncell);
    cells = n;
    // exact cell masses of the density (1/c)u^{1/c-1}: differences of u^{1/c}
    std::vector<double> m(n);
    for (std::size_t j = 0; j < n; ++j) {
        double a = U0 + h * static_cast<double>(j), b = std::min(U1, a + h);
        m[j] = std::pow(b, 1 / c) - std::pow(a, 1 / c);
    }
    if (unit) {
        double t = 0;
        for (double v : m) t += v;
        return std::pow(t, s);
    }
    auto conv = conv_power(m, s - 1, 4096);
    // location of cell-index sum k over s cells: s U0 + (k + s/2) h
    const double eps = phi.eps();
    std::vector<double> part((n + 4095) / 4096);
    for_each_block(part.size(), [&](std::size_t blk) {
        Compensated acc;
        for (std::size_t j = blk * 4096; j < std::min(n, (blk + 1) * 4096); ++j) {
            // remaining s-1 cells have index sum k with |s U0 + (j + k + s/2) h - R| < eps
            double kc = (R - s * U0) / h - 0.5 * s - static_cast<double>(j);
            auto k0 = static_cast<std::int64_t>(std::floor(kc - eps / h)) - 1;
            auto k1 = static_cast<std::int64_t>(std::ceil(kc + eps / h)) + 1;
            k0 = std::max<std::int64_t>(k0, 0);
            k1 = std::min<std::int64_t>(k1, static_cast<std::int64_t>(conv.size()) - 1);
            double inner = 0;
            for (std::int64_t k = k0; k <= k1; ++k) {
                double loc = s * U0 + (static_cast<double>(j + k) + 0.5 * s) * h;
                inner += conv[k] * phi.phi(loc - R);
            }
            acc.add(m[j] * inner);
        }
        part[blk] = acc.value();
    });
    return reduce_pairwise(part, [](double a, double b) { return a + b; });
}

// int over t in (X/8, X] of phi(T + t^c - R), split at the knots of phi
double H_inner(double T, double c, double R, const SmoothedIndicator& phi, double X) {
    using G = boost::math::quadrature::gauss<double, 16>;
    std::vector<double> ys;
    const int k = phi.k();
    const double a = phi.wide(), b = phi.narrow();
    for (int j = 0; j < k; ++j) {
        double off = (-(k - 1) + 2.0 * j) * b;
        ys.push_back(-a + off);
        ys.push_back(a + off);
    }
    ys.push_back(-phi.eps());
    ys.push_back(phi.eps());
    std::vector<double> ts;
    const double tlo = X / 8, thi = X;
    for (double y : ys) {
        double u = R - T + y;
        if (u <= 0) continue;
        double t = std::pow(u, 1 / c);
        if (t > tlo && t < thi) ts.push_back(t);
    }
    double ulo = R - T - phi.eps(), uhi = R - T + phi.eps();
    double from = ulo > 0 ? std::max(tlo, std::pow(ulo, 1 / c)) : tlo;
    double to = uhi > 0 ? std::min(thi, std::pow(uhi, 1 / c)) : tlo;
    if (!(to > from)) return 0;
    ts.push_back(from);
    ts.push_back(to);
    std::sort(ts.begin(), ts.end());
    double total = 0;
    for (std::size_t i = 0; i + 1 < ts.size(); ++i) {
        double l = std::max(from, ts[i]), r = std::min(to, ts[i + 1]);
        if (!(r > l)) continue;
        total += G::integrate([&](double t) { return phi.phi(T + std::pow(t, c) - R); }, l, r);
    }
    return total;
}

}  // namespace

HResult singular_integral_H(int s, double c, double R, const SmoothedIndicator& phi, HMethod method,
                            const HOptions& opt) {
    if (s < 2 || s > 5) throw DomainError("s must lie in [2,5]");
    const double X = opt.X > 0 ? opt.X : std::pow(R, 1 / c);
    HResult res;
    res.method = method;
    if (method == HMethod::grid) {
        double h = phi.eps() / 20;
        std::size_t cells = 0, cells2 = 0;
        double coarse = H_grid(s, c, R, phi, X, h, opt.unit_kernel, opt.max_cells, cells);
        double fine = H_grid(s, c, R, phi, X, h / 2, opt.unit_kernel, opt.max_cells, cells2);
        res.value = fine;
        res.error = std::abs(fine - coarse);
        res.cells = cells2;
        return res;
    }
    const std::uint64_t per = 4096;
    std::size_t nb = static_cast<std::size_t>((opt.mc_samples + per - 1) / per);
    struct Moments {
        double s1 = 0, s2 = 0;
    };
    std::vector<Moments> part(nb);
    const double vol = std::pow(7 * X / 8, s - 1);
    for_each_block(nb, [&](std::size_t blk) {
        std::mt19937_64 rng(opt.seed * 0x9E3779B97F4A7C15ull + blk);
        auto unif = [&] { return static_cast<double>(rng() >> 11) * 0x1p-53; };
        std::uint64_t cnt = std::min<std::uint64_t>(per, opt.mc_samples - blk * per);
        Compensated a1, a2;
        for (std::uint64_t i = 0; i < cnt; ++i) {
            double T = 0;
            for (int j = 0; j < s - 1; ++j) T += std::pow(X / 8 + (7 * X / 8) * (1 - unif()), c);
            double v = opt.unit_kernel ? 7 * X / 8 : H_inner(T, c, R, phi, X);
            v *= vol;
            a1.add(v);
            a2.add(v * v);
        }
        part[blk] = {a1.value(), a2.value()};
    });
    auto tot = reduce_pairwise(part, [](Moments a, const Moments& b) { return Moments{a.s1 + b.s1, a.s2 + b.s2}; });
    double N = static_cast<double>(opt.mc_samples);
    double mean = tot.s1 / N;
    double var = std::max(0.0, tot.s2 / N - mean * mean);
    res.value = mean;
    res.error = std::sqrt(var / N);
    res.samples = opt.mc_samples;
    res.seed = opt.seed;
    return res;
}

HCrossCheck cross_check_H(int s, double c, double R, const SmoothedIndicator& phi, const HOptions& opt) {
    HCrossCheck cc;
    cc.grid = singular_integral_H(s, c, R, phi, HMethod::grid, opt);
    cc.mc = singular_integral_H(s, c, R, phi, HMethod::monte_carlo, opt);
    cc.diff = std::abs(cc.grid.value - cc.mc.value);
    cc.allowed = 3 * cc.mc.error + cc.grid.error;
    cc.agree = cc.diff <= cc.allowed;
    if (!cc.agree)
        throw NumericIntegrityError("H grid " + std::to_string(cc.grid.value) + " vs Monte Carlo " +
                                    std::to_string(cc.mc.value) + " differ by " + std::to_string(cc.diff) +
                                    " > allowed " + std::to_string(cc.allowed));
    return cc;
}

void write_L_csv(std::ostream& os, const std::vector<std::int64_t>& r, const std::vector<double>& L, int s, double c) {
    os << "r,L_s,r^{s/c-1},ratio\n";
    os.precision(17);
    for (std::size_t i = 0; i < r.size(); ++i) {
        double base = std::pow(static_cast<double>(r[i]), s / c - 1);
        os << r[i] << ',' << L[i] << ',' << base << ',' << L[i] / base << '\n';
    }
}

void write_H_csv(std::ostream& os, const std::vector<double>& X, const std::vector<double>& H, int s, double c,
                 double eta) {
    os << "X,H_s,X^{s-c-c eta},ratio\n";
    os.precision(17);
    for (std::size_t i = 0; i < X.size(); ++i) {
        double base = std::pow(X[i], s - c - c * eta);
        os << X[i] << ',' << H[i] << ',' << base << ',' << H[i] / base << '\n';
    }
}

}  // namespace pplab
