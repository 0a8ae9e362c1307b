#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "pplab/smoothing.hpp"

namespace pplab {

enum class MainTerm { inequality, equation };

// R^{s/c-1-eta}/(log R)^s for the inequality, r^{s/c-1}/(log r)^s for the equation
double predicted_main_term(MainTerm kind, int s, double c, double eta, double R_or_r);

struct ConvolutionBudget {
    std::uint64_t max_r = 10'000'000;  // divided by s
    std::size_t direct_limit = 1 << 14;  // direct convolution below this length
};

// sum over m_1 + ... + m_s = r, (X/8)^c < m_i <= X^c, of c^{-s} prod m_i^{1/c-1}
double singular_sum_L(int s, double c, std::int64_t r, double X, const ConvolutionBudget& b = {});
double singular_sum_L(int s, double c, std::int64_t r, const ConvolutionBudget& b = {});  // X = r^{1/c}
double naive_singular_sum_L(int s, double c, std::int64_t r, double X);

// full s-fold convolution of the window weights, entry i is the sum equal to offset + i
struct ConvolutionGrid {
    std::int64_t offset = 0;
    std::vector<double> values;
    double total = 0;  // (sum of weights)^s
};
ConvolutionGrid convolve_window(int s, double c, double X, const ConvolutionBudget& b = {});

enum class HMethod { grid, monte_carlo };
std::string to_string(HMethod m);

struct HOptions {
    double X = 0;  // 0: X = R^{1/c}
    bool unit_kernel = false;  // phi == 1 hook
    std::uint64_t mc_samples = 200'000;
    std::uint64_t seed = 20240611;
    std::size_t max_cells = 1u << 24;
};

struct HResult {
    double value = 0;
    double error = 0;  // grid: Richardson difference; MC: sigma
    HMethod method = HMethod::grid;
    std::size_t cells = 0;
    std::uint64_t samples = 0, seed = 0;
};

HResult singular_integral_H(int s, double c, double R, const SmoothedIndicator& phi, HMethod method,
                            const HOptions& opt = {});

struct HCrossCheck {
    HResult grid, mc;
    double diff = 0, allowed = 0;
    bool agree = true;
};
// throws NumericIntegrityError when the two methods disagree beyond 3 sigma + grid bound
HCrossCheck cross_check_H(int s, double c, double R, const SmoothedIndicator& phi, const HOptions& opt = {});

void write_L_csv(std::ostream& os, const std::vector<std::int64_t>& r, const std::vector<double>& L, int s, double c);
void write_H_csv(std::ostream& os, const std::vector<double>& X, const std::vector<double>& H, int s, double c,
                 double eta);

}  // namespace pplab
