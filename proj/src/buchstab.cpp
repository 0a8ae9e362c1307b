#include "pplab/buchstab.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <ostream>
#include <random>
#include <sstream>

#include "pplab/errors.hpp"
#include "pplab/parallel.hpp"
#include "pplab/primes.hpp"

namespace pplab {

BuchstabTable::BuchstabTable(double h, double U) : h_(h), U_(U) {
    if (!(h > 0) || !(U >= 2)) throw DomainError("omega table needs h > 0 and U >= 2");
    double pu = 1.0 / h;
    per_unit_ = static_cast<std::size_t>(std::llround(pu));
    if (per_unit_ == 0 || std::abs(pu - static_cast<double>(per_unit_)) > 1e-9 * pu)
        throw DomainError("omega step must divide 1 exactly");
    h_ = 1.0 / static_cast<double>(per_unit_);
    std::size_t n = static_cast<std::size_t>(std::llround((U - 1.0) * static_cast<double>(per_unit_)));
    g_.assign(n + 1, 1.0);
    // delayed values sit exactly on nodes, so no interpolation is needed while marching
    for (std::size_t i = per_unit_ + 1; i <= n; ++i)
        g_[i] = g_[i - 1] + 0.5 * h_ * (value_at(i - 1 - per_unit_) + value_at(i - per_unit_));
}

double BuchstabTable::operator()(double u) const {
    if (!(u >= 1.0)) throw DomainError("omega(u) needs u >= 1, got " + std::to_string(u));
    if (u > U_ + 1e-12) throw RangeError("omega(u) table ends at U=" + std::to_string(U_) + ", got " + std::to_string(u));
    if (u <= 2.0) return 1.0 / u;
    double t = (u - 1.0) * static_cast<double>(per_unit_);
    std::size_t i = std::min(static_cast<std::size_t>(t), g_.size() - 2);
    double f = t - static_cast<double>(i);
    // cubic Hermite on u*omega with slopes omega(u-1) from the delay equation, so the result is C^1
    double d0 = value_at(i - per_unit_) * h_, d1 = value_at(i + 1 - per_unit_) * h_;
    double f2 = f * f, f3 = f2 * f;
    double g = (2 * f3 - 3 * f2 + 1) * g_[i] + (f3 - 2 * f2 + f) * d0 + (-2 * f3 + 3 * f2) * g_[i + 1] + (f3 - f2) * d1;
    return g / u;
}

double BuchstabTable::delay_residual() const {
    double worst = 0;
    for (std::size_t i = per_unit_ + 2; i + 1 < g_.size(); ++i) {
        double d = (g_[i + 1] - g_[i - 1]) / (2 * h_);
        worst = std::max(worst, std::abs(d - value_at(i - per_unit_)));
    }
    return worst;
}

void BuchstabTable::write_csv(std::ostream& os, std::size_t stride) const {
    os << "u,omega\n";
    os.precision(17);
    for (std::size_t i = 0; i < g_.size(); i += std::max<std::size_t>(1, stride)) os << node(i) << ',' << value_at(i) << '\n';
}

const BuchstabTable& default_omega_table() {
    static const BuchstabTable t(1e-4, 20.0);
    return t;
}

double omega(double u) { return default_omega_table()(u); }

double LinearForm::eval(const double* y) const {
    double s = b.convert_to<double>();
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i].convert_to<double>() * y[i];
    return s;
}

bool CompiledPolytope::contains(const double* y, double logX, double slack) const {
    const bool finite = std::isfinite(logX);
    for (std::size_t r = 0; r < b.size(); ++r) {
        double s = 0;
        for (int i = 0; i < dim; ++i) s += a[r * dim + i] * y[i];
        double rhs = b[r] + (finite ? shift[r] / logX : 0.0);
        if (s > rhs + slack) return false;
    }
    return true;
}

CompiledPolytope SievePolytope::compile() const {
    CompiledPolytope c;
    c.dim = dim;
    for (const auto& h : constraints) {
        for (int i = 0; i < dim; ++i) c.a.push_back(h.a[i].convert_to<double>());
        c.b.push_back(h.b.convert_to<double>());
        c.shift.push_back(h.log_shift);
    }
    return c;
}

bool SievePolytope::contains(const double* y, double logX, double slack) const {
    return compile().contains(y, logX, slack);
}

SievePolytope& SievePolytope::add(std::vector<Rational> a, Rational b, double log_shift) {
    if (static_cast<int>(a.size()) != dim) throw DomainError("half-space dimension mismatch");
    constraints.push_back({std::move(a), std::move(b), log_shift});
    return *this;
}

SievePolytope& SievePolytope::ge(int i, Rational v) {
    std::vector<Rational> a(dim, 0);
    a[i] = -1;
    return add(a, -v);
}

SievePolytope& SievePolytope::le(int i, Rational v) {
    std::vector<Rational> a(dim, 0);
    a[i] = 1;
    return add(a, v);
}

SievePolytope interval_polytope(Rational lo, Rational hi, std::string anchor) {
    SievePolytope P;
    P.dim = 1;
    P.anchor = std::move(anchor);
    P.ge(0, lo).le(0, hi);
    return P;
}

namespace {

// exact solve of a square system; false when singular
bool solve_exact(std::vector<std::vector<Rational>> m, std::vector<Rational> rhs, std::vector<Rational>& x) {
    const std::size_t n = rhs.size();
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        while (piv < n && m[piv][col] == 0) ++piv;
        if (piv == n) return false;
        std::swap(m[piv], m[col]);
        std::swap(rhs[piv], rhs[col]);
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col || m[r][col] == 0) continue;
            Rational f = m[r][col] / m[col][col];
            for (std::size_t c = col; c < n; ++c) m[r][c] -= f * m[col][c];
            rhs[r] -= f * rhs[col];
        }
    }
    x.resize(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = rhs[i] / m[i][i];
    return true;
}

bool feasible(const SievePolytope& P, const std::vector<Rational>& x) {
    for (const auto& h : P.constraints) {
        Rational s = 0;
        for (int i = 0; i < P.dim; ++i) s += h.a[i] * x[i];
        if (s > h.b) return false;
    }
    return true;
}

struct Row {
    std::vector<double> a;  // coefficients on y_0..y_k
    double b;
};

// constraint sets per level: level k involves y_0..y_k only
std::vector<std::vector<Row>> motzkin_levels(const SievePolytope& P) {
    using RRow = std::pair<std::vector<Rational>, Rational>;
    std::vector<RRow> cur;
    for (const auto& h : P.constraints) cur.emplace_back(h.a, h.b);
    std::vector<std::vector<Row>> levels(P.dim);
    for (int k = P.dim - 1; k >= 0; --k) {
        std::vector<RRow> next;
        std::vector<const RRow*> pos, neg;
        for (const auto& r : cur) {
            if (r.first[k] > 0)
                pos.push_back(&r);
            else if (r.first[k] < 0)
                neg.push_back(&r);
            else
                next.push_back(r);
        }
        auto& lvl = levels[k];
        for (const auto* r : pos) {
            Row row{std::vector<double>(k + 1), r->second.convert_to<double>()};
            for (int i = 0; i <= k; ++i) row.a[i] = r->first[i].convert_to<double>();
            lvl.push_back(row);
        }
        for (const auto* r : neg) {
            Row row{std::vector<double>(k + 1), r->second.convert_to<double>()};
            for (int i = 0; i <= k; ++i) row.a[i] = r->first[i].convert_to<double>();
            lvl.push_back(row);
        }
        for (const auto* p : pos)
            for (const auto* q : neg) {
                Rational sp = 1 / p->first[k], sq = -1 / q->first[k];
                RRow c{std::vector<Rational>(P.dim, 0), p->second * sp + q->second * sq};
                for (int i = 0; i < k; ++i) c.first[i] = p->first[i] * sp + q->first[i] * sq;
                bool zero = std::all_of(c.first.begin(), c.first.end(), [](const Rational& v) { return v == 0; });
                if (zero) {
                    if (c.second < 0) return {};  // empty region
                    continue;
                }
                if (std::find(next.begin(), next.end(), c) == next.end()) next.push_back(std::move(c));
            }
        for (const auto& r : next)
            if (std::all_of(r.first.begin(), r.first.end(), [](const Rational& v) { return v == 0; }) && r.second < 0)
                return {};
        cur = std::move(next);
    }
    return levels;
}

}  // namespace

std::vector<std::vector<Rational>> vertices(const SievePolytope& P) {
    const int d = P.dim;
    const std::size_t m = P.constraints.size();
    std::vector<std::vector<Rational>> out;
    std::vector<std::size_t> idx(d);
    std::function<void(int, std::size_t)> rec = [&](int depth, std::size_t start) {
        if (depth == d) {
            std::vector<std::vector<Rational>> A;
            std::vector<Rational> b;
            for (auto i : idx) A.push_back(P.constraints[i].a), b.push_back(P.constraints[i].b);
            std::vector<Rational> x;
            if (solve_exact(A, b, x) && feasible(P, x) && std::find(out.begin(), out.end(), x) == out.end())
                out.push_back(x);
            return;
        }
        for (std::size_t i = start; i < m; ++i) {
            idx[depth] = i;
            rec(depth + 1, i + 1);
        }
    };
    rec(0, 0);
    return out;
}

bool bounded(const SievePolytope& P) {
    auto lv = motzkin_levels(P);
    if (lv.empty()) return true;  // empty is bounded
    for (int k = 0; k < P.dim; ++k) {
        bool lo = false, hi = false;
        for (const auto& r : lv[k]) (r.a[k] > 0 ? hi : lo) = true;
        if (!lo || !hi) return false;
    }
    return true;
}

SievePolytope Pj_polytope(int j) {
    SievePolytope P;
    P.dim = j;
    P.flagged_in_Pj = true;
    P.anchor = "P_j: beta <= y_j < ... < y_1, y_1+...+y_{j-1}+2y_j <= 1 + log3/L";
    P.ge(j - 1, rat(8, 75));
    for (int i = 0; i + 1 < j; ++i) {
        std::vector<Rational> a(j, 0);
        a[i + 1] = 1;
        a[i] = -1;
        P.add(a, 0);
    }
    std::vector<Rational> a(j, 1);
    a[j - 1] = 2;
    P.add(a, 1, std::log(3.0));
    return P;
}

bool inside_Pj(const SievePolytope& P) {
    auto ref = Pj_polytope(P.dim);
    for (const auto& v : vertices(P))
        if (!feasible(ref, v)) return false;
    return true;
}

Integrand rational_kernel(int dim, std::vector<LinearForm> extra) {
    Integrand k;
    k.name = "rational";
    for (int i = 0; i < dim; ++i) {
        LinearForm f{std::vector<Rational>(dim, 0), 0};
        f.a[i] = 1;
        k.denominators.push_back(f);
    }
    for (auto& e : extra) k.denominators.push_back(e);
    std::vector<std::pair<std::vector<double>, double>> forms;
    for (const auto& f : k.denominators) {
        std::vector<double> a;
        for (const auto& v : f.a) a.push_back(v.convert_to<double>());
        forms.emplace_back(std::move(a), f.b.convert_to<double>());
    }
    k.f = [forms](const double* y) {
        double p = 1;
        for (const auto& [a, b] : forms) {
            double s = b;
            for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * y[i];
            p *= s;
        }
        return 1.0 / p;
    };
    return k;
}

Integrand buchstab_kernel(int dim, const BuchstabTable& table) {
    Integrand k;
    k.name = "f_j*omega";
    for (int i = 0; i < dim; ++i) {
        LinearForm f{std::vector<Rational>(dim, 0), 0};
        f.a[i] = 1;
        k.denominators.push_back(f);
    }
    const BuchstabTable* t = &table;
    k.f = [dim, t](const double* y) {
        double prod = 1, sum = 0;
        for (int i = 0; i + 1 < dim; ++i) prod *= y[i];
        for (int i = 0; i < dim; ++i) sum += y[i];
        double last = y[dim - 1];
        double u = (1.0 - sum) / last;
        // no rough cofactor fits below u = 1
        if (u < 1.0) return 0.0;
        return (*t)(u) / (prod * last * last);
    };
    return k;
}

namespace {

struct Iterated {
    const std::vector<std::vector<Row>>& levels;
    const CompiledPolytope& cp;
    const Integrand& f;
    const QuadOptions& opt;
    std::vector<double> outer_breaks;  // projections of the exact vertices on y_0
    std::vector<double> y;
    double err_sum = 0;

    // y_k coordinates of the vertices of the slice with y_0..y_{k-1} fixed
    void slice_breaks(int k, std::vector<double>& out) const {
        const int d = cp.dim, m = d - k;
        const std::size_t nr = cp.b.size();
        std::vector<std::size_t> idx(m);
        std::vector<double> A(m * m), rhs(m), x(m), full(y);
        std::function<void(int, std::size_t)> rec = [&](int depth, std::size_t start) {
            if (depth == m) {
                for (int r = 0; r < m; ++r) {
                    double s = cp.b[idx[r]];
                    for (int i = 0; i < k; ++i) s -= cp.a[idx[r] * d + i] * y[i];
                    rhs[r] = s;
                    for (int c = 0; c < m; ++c) A[r * m + c] = cp.a[idx[r] * d + k + c];
                }
                // Gaussian elimination with partial pivoting
                for (int c = 0; c < m; ++c) {
                    int piv = c;
                    for (int r = c + 1; r < m; ++r)
                        if (std::abs(A[r * m + c]) > std::abs(A[piv * m + c])) piv = r;
                    if (std::abs(A[piv * m + c]) < 1e-14) return;
                    if (piv != c) {
                        for (int t = 0; t < m; ++t) std::swap(A[c * m + t], A[piv * m + t]);
                        std::swap(rhs[c], rhs[piv]);
                    }
                    for (int r = 0; r < m; ++r) {
                        if (r == c) continue;
                        double fct = A[r * m + c] / A[c * m + c];
                        for (int t = c; t < m; ++t) A[r * m + t] -= fct * A[c * m + t];
                        rhs[r] -= fct * rhs[c];
                    }
                }
                for (int c = 0; c < m; ++c) x[c] = rhs[c] / A[c * m + c];
                for (int c = 0; c < m; ++c) full[k + c] = x[c];
                if (cp.contains(full.data(), std::numeric_limits<double>::infinity(), 1e-12)) out.push_back(x[0]);
                return;
            }
            for (std::size_t i = start; i < nr; ++i) {
                idx[depth] = i;
                rec(depth + 1, i + 1);
            }
        };
        rec(0, 0);
    }

    double run(int k) {
        double lo = -std::numeric_limits<double>::infinity(), hi = std::numeric_limits<double>::infinity();
        for (const auto& r : levels[k]) {
            double rest = r.b;
            for (int i = 0; i < k; ++i) rest -= r.a[i] * y[i];
            double v = rest / r.a[k];
            if (r.a[k] > 0)
                hi = std::min(hi, v);
            else
                lo = std::max(lo, v);
        }
        if (!(hi > lo)) return 0.0;
        const int last = static_cast<int>(levels.size()) - 1;
        std::vector<double> cuts{lo, hi};
        if (k == 0)
            cuts.insert(cuts.end(), outer_breaks.begin(), outer_breaks.end());
        else if (k < last)
            slice_breaks(k, cuts);
        std::sort(cuts.begin(), cuts.end());
        auto fn = [&](double t) {
            y[k] = t;
            return k == last ? f.f(y.data()) : run(k + 1);
        };
        double total = 0;
        double prev = lo;
        for (double c : cuts) {
            if (c <= prev + 1e-15 * std::max(1.0, std::abs(prev)) || c > hi) continue;
            double err = 0;
            // pieces are smooth, so inner levels need little subdivision
            unsigned depth = k == 0 ? opt.max_depth : std::min(opt.max_depth, 6u);
            total += boost::math::quadrature::gauss_kronrod<double, 31>::integrate(fn, prev, c, depth, opt.rel_tol, &err);
            if (k == 0) err_sum += err;
            prev = c;
        }
        return total;
    }
};

}  // namespace

IntegralResult polytope_integral(const SievePolytope& P, const Integrand& f, const QuadOptions& opt) {
    IntegralResult res;
    res.seed = opt.seed;
    auto vs = vertices(P);
    if (vs.empty()) return res;
    if (!bounded(P)) throw DomainError("polytope is unbounded: " + P.anchor);

    for (const auto& form : f.denominators) {
        Rational lo = 0, hi = 0;
        std::size_t at = 0;
        for (std::size_t v = 0; v < vs.size(); ++v) {
            Rational s = form.b;
            for (int i = 0; i < P.dim; ++i) s += form.a[i] * vs[v][i];
            if (v == 0 || s < lo) lo = s, at = v;
            if (v == 0 || s > hi) hi = s;
        }
        if (lo <= 0 && hi >= 0) {
            std::ostringstream os;
            os << "integrand pole meets region " << P.anchor << " near (";
            for (int i = 0; i < P.dim; ++i) os << (i ? ", " : "") << vs[at][i].convert_to<double>();
            os << ")";
            throw IntegrandError(os.str());
        }
    }

    auto levels = motzkin_levels(P);
    if (levels.empty()) return res;
    const auto cp = P.compile();
    Iterated it{levels, cp, f, opt, {}, std::vector<double>(P.dim, 0.0)};
    for (const auto& v : vs) it.outer_breaks.push_back(v[0].convert_to<double>());
    res.value = it.run(0);
    // inner levels run at the same relative tolerance
    res.error = it.err_sum + P.dim * opt.rel_tol * std::abs(res.value) + 1e-15 * std::abs(res.value);

    if (opt.mc_samples > 0) {
        std::vector<double> lo(P.dim, 1e300), hi(P.dim, -1e300);
        for (const auto& v : vs)
            for (int i = 0; i < P.dim; ++i) {
                double x = v[i].convert_to<double>();
                lo[i] = std::min(lo[i], x), hi[i] = std::max(hi[i], x);
            }
        double vol = 1;
        for (int i = 0; i < P.dim; ++i) vol *= hi[i] - lo[i];
        const std::uint64_t block = 1 << 16;
        std::size_t nb = static_cast<std::size_t>((opt.mc_samples + block - 1) / block);
        std::vector<std::pair<double, double>> parts(nb);
        for_each_block(nb, [&](std::size_t b) {
            std::mt19937_64 rng(opt.seed * 0x9E3779B97F4A7C15ull + b);
            std::uniform_real_distribution<double> U(0.0, 1.0);
            std::vector<double> y(P.dim);
            std::uint64_t n = std::min<std::uint64_t>(block, opt.mc_samples - b * block);
            double s = 0, s2 = 0;
            for (std::uint64_t i = 0; i < n; ++i) {
                for (int d = 0; d < P.dim; ++d) y[d] = lo[d] + (hi[d] - lo[d]) * U(rng);
                double v = cp.contains(y.data()) ? f.f(y.data()) : 0.0;
                s += v, s2 += v * v;
            }
            parts[b] = {s, s2};
        });
        auto tot = reduce_pairwise(parts, [](auto a, auto b) { return std::make_pair(a.first + b.first, a.second + b.second); });
        double n = static_cast<double>(opt.mc_samples);
        double mean = tot.first / n, var = std::max(0.0, tot.second / n - mean * mean);
        res.mc_value = vol * mean;
        res.mc_sigma = vol * std::sqrt(var / n);
        res.mc_samples = opt.mc_samples;
        res.agree = std::abs(res.mc_value - res.value) <= 3 * res.mc_sigma + res.error + 1e-12;
    }
    return res;
}

SievePolytope thm2_d2_region() {
    SievePolytope P;
    P.dim = 3;
    P.flagged_in_Pj = true;
    P.anchor = "thm2 D2: alpha1 in I1, beta <= alpha3 < alpha2 < alpha1, alpha1+alpha3, alpha2+alpha3 in I3, sum in I5";
    const Rational beta = rat(8, 75), i3lo = rat(29, 105), i3hi = rat(1, 3);
    P.ge(0, beta).le(0, rat(1, 5)).ge(2, beta);
    P.add({0, -1, 1}, 0);  // z <= y
    P.add({-1, 1, 0}, 0);  // y <= x
    P.add({-1, 0, -1}, -i3lo).add({1, 0, 1}, i3hi);
    P.add({0, -1, -1}, -i3lo).add({0, 1, 1}, i3hi);
    P.add({-1, -1, -1}, -rat(11, 25)).add({1, 1, 1}, rat(1, 2), 0.5 * std::log(3.0));
    return P;
}

SievePolytope thm2_d2_iterated_region() {
    SievePolytope P;
    P.dim = 3;
    P.anchor = "thm2 d2 iterated limits, lower y limit read as (11/25 - x)/2";
    P.ge(0, rat(11, 75)).le(0, rat(1, 5));
    P.ge(1, rat(29, 210));
    P.add({-1, -2, 0}, -rat(11, 25));
    P.add({-1, 1, 0}, 0);
    P.add({1, 1, 0}, rat(1, 3));
    P.add({-1, -1, -1}, -rat(11, 25));
    P.add({0, -1, -1}, -rat(29, 105));
    P.add({0, -1, 1}, 0);
    return P;
}

SievePolytope thm2_d4_region() {
    SievePolytope P;
    P.dim = 2;
    P.anchor = "thm2 d4: 29/105 <= x <= 7/25, x <= y <= 14/25 - x";
    P.ge(0, rat(29, 105)).le(0, rat(7, 25));
    P.add({1, -1}, 0);
    P.add({1, 1}, rat(14, 25), std::log(2.0));
    return P;
}

SievePolytope thm4_d2_region() {
    SievePolytope P;
    P.dim = 2;
    P.anchor = "thm4 d2: 0.317 <= x <= 1/3, x <= y <= (1-x)/2";
    P.ge(0, rat(317, 1000)).le(0, rat(1, 3));
    P.add({1, -1}, 0);
    P.add({1, 2}, 1);
    return P;
}

DConstants d_constants(int theorem, const QuadOptions& opt) {
    DConstants out;
    out.theorem = theorem;
    const double nan = std::numeric_limits<double>::quiet_NaN();
    LinearForm one_minus_x{{-1}, 1};
    LinearForm one_minus_xy{{-1, -1}, 1};
    if (theorem == 2) {
        auto k1 = rational_kernel(1, {one_minus_x});
        auto k2 = rational_kernel(2, {one_minus_xy});
        auto kw = buchstab_kernel(3);
        out.d.push_back({"d1", polytope_integral(interval_polytope(rat(11, 25), rat(1, 2), "thm2 d1"), k1, opt), 0.242});
        out.d.push_back({"d2", polytope_integral(thm2_d2_iterated_region(), kw, opt), 0.016});
        out.d.push_back({"d3", polytope_integral(interval_polytope(rat(29, 105), rat(1, 3), "thm2 d3"), k1, opt), 0.272});
        out.d.push_back({"d4", polytope_integral(thm2_d4_region(), k2, opt), 0.001});
        out.d2_prose = polytope_integral(thm2_d2_region(), kw, opt);
        out.has_prose = true;
    } else if (theorem == 4) {
        auto k1 = rational_kernel(1, {one_minus_x});
        auto k2 = rational_kernel(2, {one_minus_xy});
        out.d.push_back({"d1", polytope_integral(interval_polytope(rat(317, 1000), rat(1, 2), "thm4 d1"), k1, opt), nan});
        out.d.push_back({"d2", polytope_integral(thm4_d2_region(), k2, opt), nan});
    } else {
        throw DomainError("sieve constants exist for theorems 2 and 4 only");
    }
    out.u_plus = 1;
    for (auto& d : out.d) out.u_plus += d.r.value;
    out.combination = 2 * out.u_plus - out.u_plus * out.u_plus;
    return out;
}

namespace {

struct TailWalker {
    std::uint64_t X;
    const std::vector<std::uint64_t>& primes;
    int k;  // only depth k-1 contributes when k > 0
    bool starred;
    bool log_kernel;
    double logX;
    double total = 0;

    void visit(std::uint64_t pi, std::size_t qi, int depth) {
        std::uint64_t q = primes[qi];
        using u128 = unsigned __int128;
        u128 pq = static_cast<u128>(pi) * q;
        if (pq > X) return;
        bool in = starred ? (8 * pq > X) : true;
        if (in && (k == 0 || depth == k - 1)) {
            double p = static_cast<double>(pi);
            total += log_kernel ? 1.0 / (p * std::log(static_cast<double>(X) / p)) : 1.0 / p;
        }
        int maxd = k == 0 ? 8 : k - 1;
        if (depth + 1 > maxd) return;
        for (std::size_t i = qi; i < primes.size(); ++i) {
            u128 np = static_cast<u128>(pi) * primes[i];
            if (np * primes[i] > X) break;
            visit(static_cast<std::uint64_t>(np), i, depth + 1);
        }
    }
};

double prime_walk(const SievePolytope& E, std::uint64_t X, int k, bool starred, bool log_kernel,
                  const PrimeSumBudget& b) {
    if (X > b.max_X) throw ResourceError("X=" + std::to_string(X) + " exceeds prime-sum budget " + std::to_string(b.max_X));
    if (X < 16) throw DomainError("prime sums need X >= 16");
    const int j = E.dim;
    if (k != 0 && (k < j + 1 || k > 9)) throw DomainError("need j+1 <= k <= 9");
    auto vs = vertices(E);
    if (vs.empty()) return 0.0;
    const double L = std::log(static_cast<double>(X));
    std::vector<double> hi(j, 0), lo(j, 1e300);
    for (const auto& v : vs)
        for (int i = 0; i < j; ++i) {
            double x = v[i].convert_to<double>();
            hi[i] = std::max(hi[i], x), lo[i] = std::min(lo[i], x);
        }
    double maxshift = 0;
    for (const auto& h : E.constraints) maxshift = std::max(maxshift, std::abs(h.log_shift));
    double top = 0;
    for (int i = 0; i < j; ++i) top = std::max(top, hi[i]);
    std::uint64_t plimit = static_cast<std::uint64_t>(std::exp(L * top + maxshift) * 1.0001) + 2;
    plimit = std::max<std::uint64_t>(plimit, static_cast<std::uint64_t>(std::sqrt(static_cast<double>(X))) + 2);
    plimit = std::min<std::uint64_t>(plimit, X);
    auto primes = primes_up_to(plimit);

    TailWalker w{X, primes, k, starred, log_kernel, L};
    std::vector<double> alpha(j);
    std::vector<std::size_t> head(j);
    const auto cp = E.compile();
    std::function<void(int, std::uint64_t)> rec = [&](int i, std::uint64_t pi) {
        if (i == j) {
            if (!cp.contains(alpha.data(), L, ExponentScale::tie)) return;
            w.visit(pi, head[j - 1], j);
            return;
        }
        double amin = lo[i] - maxshift / L - 1e-9, amax = hi[i] + maxshift / L + 1e-9;
        for (std::size_t t = 0; t < primes.size(); ++t) {
            std::uint64_t p = primes[t];
            if (i > 0 && p >= primes[head[i - 1]]) break;
            double a = std::log(static_cast<double>(p)) / L;
            if (a < amin) continue;
            if (a > amax) break;
            if (static_cast<unsigned __int128>(pi) * p > X) break;
            alpha[i] = a;
            head[i] = t;
            rec(i + 1, pi * p);
        }
    };
    rec(0, 1);
    return w.total;
}

}  // namespace

double mertens_sum(const SievePolytope& E, int k, bool starred, std::uint64_t X, const PrimeSumBudget& b) {
    return prime_walk(E, X, k, starred, false, b);
}

OmegaComparison prime_vs_omega_integral(const SievePolytope& E, std::uint64_t X, const QuadOptions& opt, const PrimeSumBudget& b) {
    if (E.dim > 3) throw DomainError("f(E;X) is defined here for j <= 3");
    OmegaComparison c;
    c.prime_side = prime_walk(E, X, 0, false, true, b);
    c.integral = polytope_integral(E, buchstab_kernel(E.dim), opt);
    c.integral_side = c.integral.value / std::log(static_cast<double>(X));
    c.ratio = c.integral_side > 0 ? c.prime_side / c.integral_side : 0.0;
    return c;
}

}  // namespace pplab
