#include "pplab/counting.hpp"

#include <mpfr.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <numeric>

#include "pplab/asymptotics.hpp"
#include "pplab/errors.hpp"
#include "pplab/expsum.hpp"
#include "pplab/parallel.hpp"

namespace pplab {

double InequalityInstance::X() const { return X_override ? *X_override : std::pow(R, 1 / c); }
double InequalityInstance::eps() const { return eps_override ? *eps_override : std::pow(R, -eta); }
double InequalityInstance::tau() const { return std::pow(X(), 8 * eta - c); }
double InequalityInstance::K() const { return std::pow(X(), 2 * eta); }

void InequalityInstance::validate() const {
    if (s < 2 || s > 5) throw DomainError("s must lie in [2,5]");
    if (!(c > 1) || c == std::floor(c)) throw DomainError("c must be > 1 and not an integer");
    if (!(eta > 0) || !(R > 0)) throw DomainError("need eta > 0 and R > 0");
    if (X() < 16) throw DomainError("derived X=" + std::to_string(X()) + " is below 16");
    if (!(eps() > 0)) throw DomainError("eps must be positive");
}

double EquationInstance::X() const { return X_override ? *X_override : std::pow(static_cast<double>(r), 1 / c); }

void EquationInstance::validate() const {
    if (s < 2 || s > 6) throw DomainError("s must lie in [2,6]");
    if (!(c > 1) || c == std::floor(c)) throw DomainError("c must be > 1 and not an integer");
    if (r < 2) throw DomainError("r must be >= 2");
    if (X() < 16) throw DomainError("derived X=" + std::to_string(X()) + " is below 16");
}

std::string to_string(Engine e) { return e == Engine::naive ? "naive" : "meet-in-middle"; }

PositionList prime_list(const PrimeWindow& w, double c) {
    PositionList L;
    for (auto p : w.primes()) {
        auto pv = power_phase(p, c);
        L.n.push_back(p);
        L.v.push_back(pv.power);
        L.fl.push_back(static_cast<std::int64_t>(pv.exact_floor));
        L.w.push_back(1);
        L.lw.push_back(std::log(static_cast<double>(p)));
    }
    return L;
}

PositionList weighted_list(const PrimeWindow& w, double c, const SieveWeightTable& t) {
    PositionList L;
    for (std::size_t i = 0; i < t.values.size(); ++i) {
        if (t.values[i] == 0) continue;
        std::uint64_t n = w.lo() + 1 + i;
        auto pv = power_phase(n, c);
        L.n.push_back(n);
        L.v.push_back(pv.power);
        L.fl.push_back(static_cast<std::int64_t>(pv.exact_floor));
        L.w.push_back(t.values[i]);
        L.lw.push_back(std::log(static_cast<double>(n)));
    }
    return L;
}

bool exact_inside(const std::vector<std::uint64_t>& ns, double c, double R, double eps) {
    for (int bits = 128; bits <= 1024; bits *= 2) {
        mpfr_t S, t, b, cc;
        mpfr_inits2(bits, S, t, b, static_cast<mpfr_ptr>(nullptr));
        mpfr_init2(cc, 64);
        mpfr_set_d(cc, c, MPFR_RNDN);
        mpfr_set_zero(S, 1);
        for (auto n : ns) {
            mpfr_set_ui(b, n, MPFR_RNDN);
            mpfr_pow(t, b, cc, MPFR_RNDN);
            mpfr_add(S, S, t, MPFR_RNDN);
        }
        long ex = mpfr_get_exp(S);
        mpfr_sub_d(S, S, R, MPFR_RNDN);
        mpfr_abs(S, S, MPFR_RNDN);
        mpfr_sub_d(S, S, eps, MPFR_RNDN);
        double d = mpfr_get_d(S, MPFR_RNDN);
        mpfr_clears(S, t, b, cc, static_cast<mpfr_ptr>(nullptr));
        double slack = std::ldexp(static_cast<double>(ns.size() + 4), static_cast<int>(ex) - bits);
        if (d < -slack) return true;
        if (d > slack) return false;
    }
    throw PrecisionError("tuple sum within rounding of the boundary |sum - R| = eps even at 1024 bits");
}

namespace {

struct Entry {
    long double v;
    std::int64_t fl;
    std::int64_t w;
    double lw;
    std::uint64_t key;  // mixed radix over the positions
};

std::vector<Entry> combine(const std::vector<const PositionList*>& pos, std::size_t from, std::size_t to,
                           std::uint64_t max_entries) {
    double total = 1;
    for (std::size_t i = from; i < to; ++i) total *= static_cast<double>(pos[i]->n.size());
    if (total > static_cast<double>(max_entries))
        throw ResourceError("meet-in-the-middle side needs " + std::to_string(total) + " entries, budget " +
                            std::to_string(max_entries));
    std::vector<Entry> out{{0.0L, 0, 1, 1.0, 0}};
    for (std::size_t i = from; i < to; ++i) {
        const auto& L = *pos[i];
        std::vector<Entry> next;
        next.reserve(out.size() * L.n.size());
        for (const auto& e : out)
            for (std::size_t j = 0; j < L.n.size(); ++j)
                next.push_back({e.v + L.v[j], e.fl + L.fl[j], e.w * L.w[j], e.lw * L.lw[j], e.key * L.n.size() + j});
        out.swap(next);
    }
    return out;
}

void decode(const std::vector<const PositionList*>& pos, std::size_t from, std::size_t to, std::uint64_t key,
            std::vector<std::uint64_t>& ns) {
    for (std::size_t i = to; i-- > from;) {
        const auto& L = *pos[i];
        ns[i] = L.n[key % L.n.size()];
        key /= L.n.size();
    }
}

struct Split {
    std::size_t o, a_end;  // outer [0,o), A [o,a_end), B [a_end, s)
};

Split split(std::size_t s) {
    std::size_t o = s % 2;
    return {o, o + (s - o) / 2};
}

struct Sides {
    Split sp;
    std::vector<Entry> outer, A, B;
    std::vector<std::int64_t> pw;
    std::vector<long double> pl;
};

Sides prepare(const std::vector<const PositionList*>& pos, std::uint64_t max_entries, bool by_floor) {
    Sides sd;
    sd.sp = split(pos.size());
    sd.outer = combine(pos, 0, sd.sp.o, max_entries);
    sd.A = combine(pos, sd.sp.o, sd.sp.a_end, max_entries);
    sd.B = combine(pos, sd.sp.a_end, pos.size(), max_entries);
    auto less = [by_floor](const Entry& x, const Entry& y) {
        if (by_floor) return x.fl != y.fl ? x.fl < y.fl : x.key < y.key;
        return x.v != y.v ? x.v < y.v : x.key < y.key;
    };
    std::sort(sd.A.begin(), sd.A.end(), less);
    std::sort(sd.B.begin(), sd.B.end(), [&](const Entry& x, const Entry& y) { return less(y, x); });
    sd.pw.assign(sd.A.size() + 1, 0);
    sd.pl.assign(sd.A.size() + 1, 0);
    for (std::size_t i = 0; i < sd.A.size(); ++i) {
        sd.pw[i + 1] = sd.pw[i] + sd.A[i].w;
        sd.pl[i + 1] = sd.pl[i] + sd.A[i].lw;
    }
    return sd;
}

constexpr std::size_t kChunk = 4096;

Tally reduce(std::vector<Tally> parts) {
    return reduce_pairwise(parts, [](Tally a, const Tally& b) {
        a.count += b.count;
        a.weighted += b.weighted;
        a.rechecked += b.rechecked;
        return a;
    });
}

// sweeps B (descending) against A (ascending) with four monotone pointers around the
// open window (R - eps, R + eps); visit(out, o, b, p1, p2, p3, p4) gets the band bounds
template <class Visit>
std::vector<Tally> sweep(const Sides& sd, double R, double eps, double delta, Visit visit) {
    const std::size_t nch = (sd.B.size() + kChunk - 1) / kChunk;
    const std::size_t nblocks = sd.outer.size() * nch;
    std::vector<Tally> parts(nblocks);
    const auto& A = sd.A;
    for_each_block(nblocks, [&](std::size_t blk) {
        const Entry& o = sd.outer[blk / nch];
        std::size_t b0 = (blk % nch) * kChunk, b1 = std::min(sd.B.size(), b0 + kChunk);
        auto first_gt = [&](long double t) {
            return static_cast<std::size_t>(std::upper_bound(A.begin(), A.end(), t, [](long double x, const Entry& e) {
                                                return x < e.v;
                                            }) - A.begin());
        };
        auto first_ge = [&](long double t) {
            return static_cast<std::size_t>(
                std::lower_bound(A.begin(), A.end(), t, [](const Entry& e, long double x) { return e.v < x; }) -
                A.begin());
        };
        long double base = static_cast<long double>(R) - o.v;
        long double lo0 = base - eps - sd.B[b0].v, hi0 = base + eps - sd.B[b0].v;
        std::size_t p1 = first_gt(lo0 - delta), p2 = first_gt(lo0 + delta);
        std::size_t p3 = first_ge(hi0 - delta), p4 = first_ge(hi0 + delta);
        Tally t;
        for (std::size_t bi = b0; bi < b1; ++bi) {
            const Entry& b = sd.B[bi];
            long double lo = base - eps - b.v, hi = base + eps - b.v;
            while (p1 < A.size() && A[p1].v <= lo - delta) ++p1;
            while (p2 < A.size() && A[p2].v <= lo + delta) ++p2;
            while (p3 < A.size() && A[p3].v < hi - delta) ++p3;
            while (p4 < A.size() && A[p4].v < hi + delta) ++p4;
            visit(t, o, b, p1, p2, p3, p4);
        }
        parts[blk] = t;
    });
    return parts;
}

}  // namespace

Tally mitm_inequality(const std::vector<const PositionList*>& pos, double c, double R, double eps,
                      std::uint64_t max_entries) {
    if (pos.empty()) return {};
    Sides sd = prepare(pos, max_entries, false);
    const double delta = 1e-12 * std::max(1.0, std::abs(R));
    const auto& A = sd.A;
    auto parts = sweep(sd, R, eps, delta,
                       [&](Tally& t, const Entry& o, const Entry& b, std::size_t p1, std::size_t p2, std::size_t p3,
                           std::size_t p4) {
                           std::int64_t wob = o.w * b.w;
                           long double lob = static_cast<long double>(o.lw) * b.lw;
                           if (p2 < p3) {
                               t.count += wob * (sd.pw[p3] - sd.pw[p2]);
                               t.weighted += lob * (sd.pl[p3] - sd.pl[p2]);
                           }
                           std::vector<std::uint64_t> ns(pos.size());
                           for (std::size_t i = p1; i < p4; ++i) {
                               if (i >= p2 && i < p3) continue;
                               decode(pos, 0, sd.sp.o, o.key, ns);
                               decode(pos, sd.sp.o, sd.sp.a_end, A[i].key, ns);
                               decode(pos, sd.sp.a_end, pos.size(), b.key, ns);
                               ++t.rechecked;
                               if (exact_inside(ns, c, R, eps)) {
                                   t.count += wob * A[i].w;
                                   t.weighted += lob * A[i].lw;
                               }
                           }
                       });
    return reduce(std::move(parts));
}

Tally naive_inequality(const std::vector<const PositionList*>& pos, double c, double R, double eps) {
    Tally t;
    const double delta = 1e-12 * std::max(1.0, std::abs(R));
    const std::size_t s = pos.size();
    std::vector<std::uint64_t> ns(s);
    std::function<void(std::size_t, long double, std::int64_t, long double)> rec =
        [&](std::size_t i, long double v, std::int64_t w, long double lw) {
            if (i == s) {
                long double d = std::abs(v - static_cast<long double>(R)) - eps;
                bool in;
                if (d < -delta)
                    in = true;
                else if (d > delta)
                    in = false;
                else {
                    ++t.rechecked;
                    in = exact_inside(ns, c, R, eps);
                }
                if (in) {
                    t.count += w;
                    t.weighted += lw;
                }
                return;
            }
            const auto& L = *pos[i];
            for (std::size_t j = 0; j < L.n.size(); ++j) {
                ns[i] = L.n[j];
                rec(i + 1, v + L.v[j], w * L.w[j], lw * L.lw[j]);
            }
        };
    rec(0, 0, 1, 1);
    return t;
}

Tally mitm_equation(const std::vector<const PositionList*>& pos, std::int64_t r, std::uint64_t max_entries) {
    if (pos.empty()) return {};
    Sides sd = prepare(pos, max_entries, true);
    const auto& A = sd.A;
    const std::size_t nch = (sd.B.size() + kChunk - 1) / kChunk;
    const std::size_t nblocks = sd.outer.size() * nch;
    std::vector<Tally> parts(nblocks);
    for_each_block(nblocks, [&](std::size_t blk) {
        const Entry& o = sd.outer[blk / nch];
        std::size_t b0 = (blk % nch) * kChunk, b1 = std::min(sd.B.size(), b0 + kChunk);
        std::int64_t t0 = r - o.fl - sd.B[b0].fl;
        auto q1 = static_cast<std::size_t>(
            std::lower_bound(A.begin(), A.end(), t0, [](const Entry& e, std::int64_t x) { return e.fl < x; }) -
            A.begin());
        std::size_t q2 = q1;
        Tally t;
        for (std::size_t bi = b0; bi < b1; ++bi) {
            const Entry& b = sd.B[bi];
            std::int64_t target = r - o.fl - b.fl;
            while (q1 < A.size() && A[q1].fl < target) ++q1;
            q2 = std::max(q2, q1);
            while (q2 < A.size() && A[q2].fl <= target) ++q2;
            if (q2 > q1) {
                t.count += o.w * b.w * (sd.pw[q2] - sd.pw[q1]);
                t.weighted += static_cast<long double>(o.lw) * b.lw * (sd.pl[q2] - sd.pl[q1]);
            }
        }
        parts[blk] = t;
    });
    return reduce(std::move(parts));
}

Tally naive_equation(const std::vector<const PositionList*>& pos, std::int64_t r) {
    Tally t;
    const std::size_t s = pos.size();
    std::function<void(std::size_t, std::int64_t, std::int64_t, long double)> rec =
        [&](std::size_t i, std::int64_t f, std::int64_t w, long double lw) {
            if (i == s) {
                if (f == r) {
                    t.count += w;
                    t.weighted += lw;
                }
                return;
            }
            const auto& L = *pos[i];
            for (std::size_t j = 0; j < L.n.size(); ++j) rec(i + 1, f + L.fl[j], w * L.w[j], lw * L.lw[j]);
        };
    rec(0, 0, 1, 1);
    return t;
}

namespace {

double now() {
    return std::chrono::duration<double>(std::chrono::steady_clock::now().time_since_epoch()).count();
}

void check_cap(int s, double X, const CountBudget& b) {
    double cap = s <= 3 ? b.max_X_small : b.max_X_large;
    if (X > cap)
        throw ResourceError("X=" + std::to_string(X) + " exceeds the counting cap " + std::to_string(cap) + " for s=" +
                            std::to_string(s));
}

PrimeWindow window_for(double X) {
    WindowBudget wb;
    wb.max_X = std::max<std::uint64_t>(wb.max_X, static_cast<std::uint64_t>(X));
    return PrimeWindow::build(static_cast<std::uint64_t>(std::floor(X)), wb);
}

// unordered tuples: n_1 <= ... <= n_s from the naive oracle
template <class Test>
std::int64_t count_unordered(const PositionList& L, int s, Test test) {
    std::int64_t cnt = 0;
    std::vector<std::size_t> idx(s);
    std::function<void(int, std::size_t)> rec = [&](int i, std::size_t from) {
        if (i == s) {
            cnt += test(idx);
            return;
        }
        for (std::size_t j = from; j < L.n.size(); ++j) {
            idx[i] = j;
            rec(i + 1, j);
        }
    };
    rec(0, 0);
    return cnt;
}

}  // namespace

CountReport count_inequality(const InequalityInstance& inst, Engine engine, const CountBudget& b) {
    inst.validate();
    check_cap(inst.s, inst.X(), b);
    double t0 = now();
    auto w = window_for(inst.X());
    auto L = prime_list(w, inst.c);
    std::vector<const PositionList*> pos(inst.s, &L);
    Tally t = engine == Engine::naive ? naive_inequality(pos, inst.c, inst.R, inst.eps())
                                      : mitm_inequality(pos, inst.c, inst.R, inst.eps(), b.max_entries);
    CountReport rep;
    rep.engine = engine;
    rep.raw = t.count;
    rep.weighted = static_cast<double>(t.weighted);
    rep.rechecked = t.rechecked;
    if (engine == Engine::naive) {
        const double R = inst.R, eps = inst.eps(), c = inst.c;
        rep.unordered = count_unordered(L, inst.s, [&](const std::vector<std::size_t>& idx) {
            std::vector<std::uint64_t> ns;
            long double v = 0;
            for (auto i : idx) ns.push_back(L.n[i]), v += L.v[i];
            long double d = std::abs(v - static_cast<long double>(R)) - eps;
            if (std::abs(d) <= 1e-12L * std::max(1.0, R)) return exact_inside(ns, c, R, eps) ? 1 : 0;
            return d < 0 ? 1 : 0;
        });
    }
    rep.predicted = predicted_main_term(MainTerm::inequality, inst.s, inst.c, inst.eta, inst.R);
    rep.ratio = rep.predicted > 0 ? static_cast<double>(rep.raw) / rep.predicted : 0;
    rep.seconds = now() - t0;
    return rep;
}

CountReport count_equation(const EquationInstance& inst, Engine engine, const CountBudget& b) {
    inst.validate();
    check_cap(inst.s, inst.X(), b);
    double t0 = now();
    auto w = window_for(inst.X());
    auto L = prime_list(w, inst.c);
    std::vector<const PositionList*> pos(inst.s, &L);
    Tally t = engine == Engine::naive ? naive_equation(pos, inst.r) : mitm_equation(pos, inst.r, b.max_entries);
    CountReport rep;
    rep.engine = engine;
    rep.raw = t.count;
    rep.weighted = static_cast<double>(t.weighted);
    if (engine == Engine::naive)
        rep.unordered = count_unordered(L, inst.s, [&](const std::vector<std::size_t>& idx) {
            std::int64_t f = 0;
            for (auto i : idx) f += L.fl[i];
            return f == inst.r ? 1 : 0;
        });
    rep.predicted = predicted_main_term(MainTerm::equation, inst.s, inst.c, 0, static_cast<double>(inst.r));
    rep.ratio = rep.predicted > 0 ? static_cast<double>(rep.raw) / rep.predicted : 0;
    rep.seconds = now() - t0;
    return rep;
}

double count_smoothed(const InequalityInstance& inst, const SmoothedIndicator& phi, SmoothWeight sw,
                      const CountBudget& b) {
    inst.validate();
    check_cap(inst.s, inst.X(), b);
    auto w = window_for(inst.X());
    auto L = prime_list(w, inst.c);
    if (sw == SmoothWeight::prime) std::fill(L.lw.begin(), L.lw.end(), 1.0);
    std::vector<const PositionList*> pos(inst.s, &L);
    Sides sd = prepare(pos, b.max_entries, false);
    const double R = inst.R, eps = phi.eps();
    const double delta = 1e-12 * std::max(1.0, R);
    const auto& A = sd.A;
    auto parts = sweep(sd, R, eps, delta,
                       [&](Tally& t, const Entry& o, const Entry& bb, std::size_t p1, std::size_t, std::size_t,
                           std::size_t p4) {
                           long double base = o.v + bb.v - static_cast<long double>(R);
                           long double lob = static_cast<long double>(o.lw) * bb.lw;
                           for (std::size_t i = p1; i < p4; ++i) {
                               double y = static_cast<double>(base + A[i].v);
                               double f = phi.phi(y);
                               if (f != 0) t.weighted += lob * A[i].lw * f;
                           }
                       });
    return static_cast<double>(reduce(std::move(parts)).weighted);
}

SieveBoundReport sieve_lower_bound(Family fam, const InequalityInstance* ineq, const EquationInstance* eq,
                                   WeightKind plus, const CountBudget& b) {
    if (plus != WeightKind::thm2_plus && plus != WeightKind::thm4_plus)
        throw DomainError("sieve bound needs a majorant weight kind");
    int s;
    double X, c;
    if (fam == Family::inequality) {
        if (!ineq) throw DomainError("inequality instance missing");
        ineq->validate();
        s = ineq->s, X = ineq->X(), c = ineq->c;
    } else {
        if (!eq) throw DomainError("equation instance missing");
        eq->validate();
        s = eq->s, X = eq->X(), c = eq->c;
    }
    check_cap(s, X, b);
    auto w = window_for(X);
    if (w.X() < kPlusMinX)
        throw DomainError("majorant weights need X >= " + std::to_string(kPlusMinX));
    auto P = prime_list(w, c);
    auto tab = build_weights(w, plus);
    auto Q = weighted_list(w, c, tab);

    auto run = [&](const PositionList* m, const PositionList* l) {
        std::vector<const PositionList*> pos(s, &P);
        pos[s - 2] = m;
        pos[s - 1] = l;
        return fam == Family::inequality ? mitm_inequality(pos, c, ineq->R, ineq->eps(), b.max_entries).count
                                         : mitm_equation(pos, eq->r, b.max_entries).count;
    };
    SieveBoundReport rep;
    rep.raw = run(&P, &P);
    std::int64_t pr = run(&Q, &P), rp = run(&P, &Q), pp = run(&Q, &Q);
    rep.cross = pr + rp;
    rep.plus_plus = pp;
    rep.value = static_cast<double>(pr + rp - pp);
    rep.below_raw = rep.value <= static_cast<double>(rep.raw);
    if (fam == Family::equation && s == 5)
        rep.note = "the printed five-variable combination mixes the labels m, n, l; the two-variable pattern is "
                   "applied to the last two variables";
    return rep;
}

}  // namespace pplab
