#pragma once

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <string>
#include <utility>
#include <vector>

namespace pplab {

struct WindowBudget {
    std::uint64_t max_X = 100'000'000;
};

// smallest-prime-factor table on [0, limit], linear sieve
class SpfTable {
public:
    explicit SpfTable(std::uint64_t limit);
    std::uint64_t limit() const { return limit_; }
    std::uint32_t spf(std::uint64_t n) const;
    bool is_prime(std::uint64_t n) const { return n >= 2 && spf(n) == n; }
    // distinct primes ascending with multiplicity
    std::vector<std::pair<std::uint64_t, int>> factor(std::uint64_t n) const;

private:
    std::uint64_t limit_;
    std::vector<std::uint32_t> spf_;
};

// primes in (X/8, X]
class PrimeWindow {
public:
    static PrimeWindow build(std::uint64_t X, const WindowBudget& budget = {});

    std::uint64_t X() const { return X_; }
    // exclusive lower end floor(X/8): n is in the window iff lo() < n <= X()
    std::uint64_t lo() const { return X_ / 8; }
    bool contains(std::uint64_t n) const { return n > lo() && n <= X_; }
    const std::vector<std::uint64_t>& primes() const { return primes_; }
    std::size_t count() const { return primes_.size(); }
    // built on first use and shared between copies
    const SpfTable& spf() const;

private:
    struct Lazy;
    std::uint64_t X_ = 0;
    std::uint64_t budget_ = 0;
    std::vector<std::uint64_t> primes_;
    std::shared_ptr<Lazy> lazy_;
};

std::vector<std::uint64_t> primes_up_to(std::uint64_t n);

// 1 iff n has no prime factor < z
int rho_rough(const SpfTable& t, std::uint64_t n, double z);

// log n / log X compared against rational exponents with a shared tie band
struct ExponentScale {
    double logX;
    static constexpr double tie = 1e-12;
    explicit ExponentScale(std::uint64_t X);
    double alpha(double n) const;
    bool ge(double a, double t) const { return a > t - tie; }
    bool lt(double a, double t) const { return a < t - tie; }
    bool le(double a, double t) const { return a < t + tie; }
    bool gt(double a, double t) const { return a > t + tie; }
};

// Both majorants need X/8 >= sqrt(3X) so that rho(n) = rho(n, sqrt(3X)) on the window.
constexpr std::uint64_t kPlusMinX = 192;

int rho_plus_thm4(const PrimeWindow& w, std::uint64_t n);
// second form: rho(n) plus the large-smallest-factor indicator; equals rho_plus_thm4
int rho_plus_thm4_buchstab(const PrimeWindow& w, std::uint64_t n);

struct Thm2Parts {
    int rho = 0, d1 = 0, d2 = 0, d3 = 0, d4 = 0;
    // d2 with alpha1+alpha2 in I3 replacing alpha1+alpha3 in I3
    int d2_alt = 0;
    int total() const { return rho + d1 + d2 + d3 + d4; }
};
Thm2Parts thm2_parts(const PrimeWindow& w, std::uint64_t n);
int rho_plus_thm2(const PrimeWindow& w, std::uint64_t n);

enum class WeightKind { prime, rough, thm4_plus, thm2_plus };
std::string to_string(WeightKind k);
WeightKind weight_kind_from(const std::string& s);

struct SieveWeightTable {
    WeightKind kind = WeightKind::prime;
    std::uint64_t X = 0;
    double z = 0;  // rough kind only
    std::vector<std::uint32_t> values;  // index n - (X/8) - 1

    std::uint64_t lo() const { return X / 8; }
    std::uint32_t value(std::uint64_t n) const { return values[n - lo() - 1]; }
    void write_csv(std::ostream& os) const;
};

SieveWeightTable build_weights(const PrimeWindow& w, WeightKind kind, double z = 0);

}  // namespace pplab
