#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pplab/primes.hpp"
#include "pplab/smoothing.hpp"

namespace pplab {

// |p_1^c + ... + p_s^c - R| < eps over window primes
struct InequalityInstance {
    int s = 3;
    double c = 1.5, eta = 0.01, R = 1000;
    std::optional<double> X_override, eps_override;

    double X() const;
    double eps() const;
    double tau() const;
    double K() const;
    void validate() const;
};

// [p_1^c] + ... + [p_s^c] = r
struct EquationInstance {
    int s = 3;
    double c = 1.5;
    std::int64_t r = 100;
    std::optional<double> X_override;

    double X() const;
    void validate() const;
};

enum class Engine { naive, meet_in_middle };
std::string to_string(Engine e);

struct CountReport {
    std::int64_t raw = 0;
    double weighted = 0;  // sum of prod log p_i
    double predicted = 0, ratio = 0;
    double seconds = 0;
    Engine engine = Engine::meet_in_middle;
    std::int64_t unordered = -1;  // nondecreasing tuples, naive engine only
    std::uint64_t rechecked = 0;  // boundary tuples settled in MPFR
};

struct CountBudget {
    double max_X_small = 1e6;  // s <= 3
    double max_X_large = 1e4;  // s >= 4
    std::uint64_t max_entries = 60'000'000;
};

CountReport count_inequality(const InequalityInstance& inst, Engine engine = Engine::meet_in_middle,
                             const CountBudget& b = {});
CountReport count_equation(const EquationInstance& inst, Engine engine = Engine::meet_in_middle,
                           const CountBudget& b = {});

enum class SmoothWeight { prime, prime_log };
double count_smoothed(const InequalityInstance& inst, const SmoothedIndicator& phi, SmoothWeight w,
                      const CountBudget& b = {});

enum class Family { inequality, equation };

struct SieveBoundReport {
    double value = 0;  // sum of rho...rho (rho+ rho + rho rho+ - rho+ rho+) over solving tuples
    std::int64_t raw = 0;
    std::int64_t cross = 0, plus_plus = 0;
    bool below_raw = true;
    std::string note;
};

// inequality family uses inst_ineq, equation family uses inst_eq
SieveBoundReport sieve_lower_bound(Family fam, const InequalityInstance* ineq, const EquationInstance* eq,
                                   WeightKind plus, const CountBudget& b = {});

// ---- engine internals shared with the tests ---------------------------------

struct PositionList {
    std::vector<std::uint64_t> n;
    std::vector<long double> v;     // n^c
    std::vector<std::int64_t> fl;   // [n^c]
    std::vector<std::int64_t> w;    // integer weight
    std::vector<double> lw;         // log weight
};

PositionList prime_list(const PrimeWindow& w, double c);
PositionList weighted_list(const PrimeWindow& w, double c, const SieveWeightTable& t);

struct Tally {
    std::int64_t count = 0;
    long double weighted = 0;
    std::uint64_t rechecked = 0;
};

Tally mitm_inequality(const std::vector<const PositionList*>& pos, double c, double R, double eps,
                      std::uint64_t max_entries);
Tally naive_inequality(const std::vector<const PositionList*>& pos, double c, double R, double eps);
Tally mitm_equation(const std::vector<const PositionList*>& pos, std::int64_t r, std::uint64_t max_entries);
Tally naive_equation(const std::vector<const PositionList*>& pos, std::int64_t r);

// |sum n_i^c - R| < eps decided in MPFR; throws PrecisionError if undecidable at 1024 bits
bool exact_inside(const std::vector<std::uint64_t>& ns, double c, double R, double eps);

}  // namespace pplab
