#pragma once

#include <string>

namespace pplab {

// Bump of half-support eps: one wide box of half-width (eps+plateau)/2 convolved
// with k-1 normalized narrow boxes of half-width (eps-plateau)/(2(k-1)).
// k = 1 is the plain indicator of [-eps, eps] (plateau forced to eps).
class SmoothedIndicator {
public:
    SmoothedIndicator(double eps, int k, double plateau = -1);

    double eps() const { return eps_; }
    double plateau() const { return plateau_; }
    int k() const { return k_; }
    double wide() const { return a_; }
    double narrow() const { return b_; }

    double phi(double y) const;
    double phi_hat(double x) const;
    double mass() const { return 2 * a_; }
    // upper bound for the integral of |phi_hat| over |x| > K, from the sinc envelope
    double tail_mass(double K) const;

private:
    double eps_, plateau_;
    int k_;
    double a_, b_;
    double irwin_hall_cdf(double s) const;
};

struct SmoothingChoice {
    double eps = 0, K = 0, target = 0;
    int k = 0;
    double tail = 0;
    bool admissible = false;  // tail <= target at this k
    std::string warning;
    // least K with tail_mass(K) <= target, minimized over k in [2, k_max]
    double least_K = 0;
    int least_K_order = 0;
};

// eps = R^{-eta} with R = X^c, K = X^{2 eta}, target X^{-3}
SmoothingChoice choose_smoothing(double c, double eta, double X, int k_max = 16);
SmoothingChoice choose_smoothing_for(double eps, double K, double target, int k_max = 16);

}  // namespace pplab
