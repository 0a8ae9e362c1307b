#include "pplab/primes.hpp"

#include <cmath>
#include <mutex>
#include <ostream>

#include "pplab/errors.hpp"
#include "pplab/parallel.hpp"

namespace pplab {

SpfTable::SpfTable(std::uint64_t limit) : limit_(limit), spf_(limit + 1, 0) {
    if (limit > 0xFFFFFFFFull) throw ResourceError("spf table limit exceeds 32-bit entries");
    std::vector<std::uint32_t> pr;
    for (std::uint64_t i = 2; i <= limit; ++i) {
        if (spf_[i] == 0) {
            spf_[i] = static_cast<std::uint32_t>(i);
            pr.push_back(static_cast<std::uint32_t>(i));
        }
        for (std::uint32_t p : pr) {
            std::uint64_t m = i * p;
            if (p > spf_[i] || m > limit) break;
            spf_[m] = p;
        }
    }
}

std::uint32_t SpfTable::spf(std::uint64_t n) const {
    if (n > limit_) throw DomainError("n=" + std::to_string(n) + " outside factored range " + std::to_string(limit_));
    return spf_[n];
}

std::vector<std::pair<std::uint64_t, int>> SpfTable::factor(std::uint64_t n) const {
    std::vector<std::pair<std::uint64_t, int>> out;
    while (n > 1) {
        std::uint64_t p = spf(n);
        int e = 0;
        while (n % p == 0) n /= p, ++e;
        out.emplace_back(p, e);
    }
    return out;
}

std::vector<std::uint64_t> primes_up_to(std::uint64_t n) {
    std::vector<std::uint64_t> out;
    if (n < 2) return out;
    std::vector<char> comp(n + 1, 0);
    for (std::uint64_t i = 2; i <= n; ++i) {
        if (comp[i]) continue;
        out.push_back(i);
        for (std::uint64_t j = i * i; j <= n; j += i) comp[j] = 1;
    }
    return out;
}

struct PrimeWindow::Lazy {
    std::once_flag once;
    std::unique_ptr<SpfTable> table;
};

PrimeWindow PrimeWindow::build(std::uint64_t X, const WindowBudget& budget) {
    if (X < 16) throw DomainError("window needs X >= 16, got " + std::to_string(X));
    if (X > budget.max_X)
        throw ResourceError("X=" + std::to_string(X) + " exceeds window budget max_X=" + std::to_string(budget.max_X));
    PrimeWindow w;
    w.X_ = X;
    w.budget_ = budget.max_X;
    w.lazy_ = std::make_shared<Lazy>();

    std::uint64_t root = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(X)));
    while ((root + 1) * (root + 1) <= X) ++root;
    auto base = primes_up_to(root);

    const std::uint64_t first = X / 8 + 1;
    const std::uint64_t seg = 1u << 18;
    std::size_t nblocks = (X - first) / seg + 1;
    std::vector<std::vector<std::uint64_t>> parts(nblocks);
    for_each_block(nblocks, [&](std::size_t b) {
        std::uint64_t a = first + b * seg;
        std::uint64_t e = std::min(X, a + seg - 1);
        std::vector<char> comp(e - a + 1, 0);
        for (std::uint64_t p : base) {
            if (p * p > e) break;
            std::uint64_t s = std::max(p * p, (a + p - 1) / p * p);
            for (std::uint64_t j = s; j <= e; j += p) comp[j - a] = 1;
        }
        for (std::uint64_t n = a; n <= e; ++n)
            if (!comp[n - a] && n >= 2) parts[b].push_back(n);
    });
    for (auto& p : parts) w.primes_.insert(w.primes_.end(), p.begin(), p.end());
    return w;
}

const SpfTable& PrimeWindow::spf() const {
    std::call_once(lazy_->once, [this] { lazy_->table = std::make_unique<SpfTable>(X_); });
    return *lazy_->table;
}

int rho_rough(const SpfTable& t, std::uint64_t n, double z) {
    if (n <= 1) return 1;
    return static_cast<double>(t.spf(n)) >= z ? 1 : 0;
}

ExponentScale::ExponentScale(std::uint64_t X) : logX(std::log(static_cast<double>(X))) {}

double ExponentScale::alpha(double n) const { return std::log(n) / logX; }

namespace {

void check_plus_domain(const PrimeWindow& w, std::uint64_t n) {
    if (!w.contains(n))
        throw DomainError("n=" + std::to_string(n) + " outside window (" + std::to_string(w.lo()) + ", " +
                          std::to_string(w.X()) + "]");
    if (w.X() < kPlusMinX)
        throw DomainError("majorant weights need X >= " + std::to_string(kPlusMinX) + " (X/8 >= sqrt(3X))");
}

// m has no prime factor below p
bool rough_wrt(const SpfTable& t, std::uint64_t m, std::uint64_t p) { return m <= 1 || t.spf(m) >= p; }

using u128 = unsigned __int128;

}  // namespace

int rho_plus_thm4(const PrimeWindow& w, std::uint64_t n) {
    check_plus_domain(w, n);
    const auto& t = w.spf();
    ExponentScale sc(w.X());
    const double lo = 0.064, hi = 0.317;
    int base = sc.ge(sc.alpha(static_cast<double>(t.spf(n))), lo) ? 1 : 0;
    int removed = 0;
    for (auto [p, e] : t.factor(n)) {
        double a = sc.alpha(static_cast<double>(p));
        if (sc.ge(a, lo) && sc.le(a, hi) && rough_wrt(t, n / p, p)) ++removed;
    }
    return base - removed;
}

int rho_plus_thm4_buchstab(const PrimeWindow& w, std::uint64_t n) {
    check_plus_domain(w, n);
    const auto& t = w.spf();
    ExponentScale sc(w.X());
    int v = t.is_prime(n) ? 1 : 0;
    const u128 three_x = static_cast<u128>(3) * w.X();
    for (auto [p, e] : t.factor(n)) {
        double a = sc.alpha(static_cast<double>(p));
        if (sc.gt(a, 0.317) && static_cast<u128>(p) * p < three_x && rough_wrt(t, n / p, p)) ++v;
    }
    return v;
}

Thm2Parts thm2_parts(const PrimeWindow& w, std::uint64_t n) {
    check_plus_domain(w, n);
    const auto& t = w.spf();
    ExponentScale sc(w.X());
    const double beta = 8.0 / 75, i3lo = 29.0 / 105, third = 1.0 / 3, i5lo = 11.0 / 25;
    const u128 three_x = static_cast<u128>(3) * w.X();

    Thm2Parts r;
    r.rho = t.is_prime(n) ? 1 : 0;
    auto f = t.factor(n);
    std::vector<double> al;
    for (auto& pe : f) al.push_back(sc.alpha(static_cast<double>(pe.first)));
    auto in_i3 = [&](double a) { return sc.ge(a, i3lo) && sc.lt(a, third); };
    // upper end of I5 is (3X)^{1/2}, compared exactly on the product
    auto in_i5 = [&](double a, u128 prod) { return sc.ge(a, i5lo) && prod * prod < three_x; };

    for (std::size_t i = 0; i < f.size(); ++i) {
        std::uint64_t p = f[i].first;
        if (in_i5(al[i], p) && rough_wrt(t, n / p, p)) ++r.d1;
    }

    // ordered p3 < p2 < p1
    for (std::size_t i1 = 0; i1 < f.size(); ++i1) {
        double a1 = al[i1];
        if (!(sc.ge(a1, beta) && sc.lt(a1, 0.2))) continue;
        for (std::size_t i2 = 0; i2 < i1; ++i2)
            for (std::size_t i3 = 0; i3 < i2; ++i3) {
                double a2 = al[i2], a3 = al[i3];
                if (!sc.ge(a3, beta)) continue;
                std::uint64_t p1 = f[i1].first, p2 = f[i2].first, p3 = f[i3].first;
                std::uint64_t m = n / (p1 * p2 * p3);
                if (!rough_wrt(t, m, p3)) continue;
                u128 prod = static_cast<u128>(p1) * p2 * p3;
                bool common = in_i3(a2 + a3) && in_i5(a1 + a2 + a3, prod);
                if (common && in_i3(a1 + a3)) ++r.d2;
                if (common && in_i3(a1 + a2)) ++r.d2_alt;
            }
    }

    int omega_big = 0;
    for (auto& pe : f) omega_big += pe.second;
    if (omega_big == 2 && f.size() == 2 && in_i3(al[0])) r.d3 = 1;

    if (omega_big == 3 && in_i3(al[0]) && f[0].second == 1) {
        // p1 < p2 <= p3
        double a2 = al[1];
        if (sc.le(al[0] + a2, 14.0 / 25 + std::log(2.0) / sc.logX)) r.d4 = 1;
    }
    return r;
}

int rho_plus_thm2(const PrimeWindow& w, std::uint64_t n) { return thm2_parts(w, n).total(); }

std::string to_string(WeightKind k) {
    switch (k) {
        case WeightKind::prime: return "prime";
        case WeightKind::rough: return "rough";
        case WeightKind::thm4_plus: return "thm4-plus";
        case WeightKind::thm2_plus: return "thm2-plus";
    }
    return "?";
}

WeightKind weight_kind_from(const std::string& s) {
    if (s == "prime") return WeightKind::prime;
    if (s == "rough") return WeightKind::rough;
    if (s == "thm4-plus") return WeightKind::thm4_plus;
    if (s == "thm2-plus") return WeightKind::thm2_plus;
    throw DomainError("unknown weight kind '" + s + "'");
}

void SieveWeightTable::write_csv(std::ostream& os) const {
    os << "n,weight\n";
    for (std::size_t i = 0; i < values.size(); ++i) os << lo() + 1 + i << ',' << values[i] << '\n';
}

SieveWeightTable build_weights(const PrimeWindow& w, WeightKind kind, double z) {
    SieveWeightTable tab;
    tab.kind = kind;
    tab.X = w.X();
    tab.z = z;
    const std::uint64_t first = w.lo() + 1;
    tab.values.assign(w.X() - w.lo(), 0);
    if (kind == WeightKind::prime) {
        for (auto p : w.primes()) tab.values[p - first] = 1;
        return tab;
    }
    const auto& t = w.spf();
    const std::size_t seg = 1u << 15;
    std::size_t nblocks = (tab.values.size() + seg - 1) / seg;
    for_each_block(nblocks, [&](std::size_t b) {
        std::size_t a = b * seg, e = std::min(tab.values.size(), a + seg);
        for (std::size_t i = a; i < e; ++i) {
            std::uint64_t n = first + i;
            int v = 0;
            switch (kind) {
                case WeightKind::rough: v = rho_rough(t, n, z); break;
                case WeightKind::thm4_plus: v = rho_plus_thm4(w, n); break;
                case WeightKind::thm2_plus: v = rho_plus_thm2(w, n); break;
                default: break;
            }
            tab.values[i] = static_cast<std::uint32_t>(v);
        }
    });
    return tab;
}

}  // namespace pplab
