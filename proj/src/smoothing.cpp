#include "pplab/smoothing.hpp"

#include <cmath>
#include <limits>

#include "pplab/errors.hpp"

namespace pplab {

namespace {

constexpr double kPi = 3.14159265358979323846;

double sinc(double t) { return std::abs(t) < 1e-8 ? 1.0 - t * t / 6.0 : std::sin(t) / t; }

// Irwin-Hall CDF for n uniforms on [0,1], evaluated on the nearer half for stability
long double irwin_hall(int n, long double x) {
    if (x <= 0) return 0;
    if (x >= n) return 1;
    bool flip = x > 0.5L * n;
    if (flip) x = n - x;
    long double s = 0, binom = 1, fact = 1;
    for (int i = 2; i <= n; ++i) fact *= i;
    for (int j = 0; j <= static_cast<int>(std::floor(x)); ++j) {
        s += (j % 2 ? -1 : 1) * binom * std::pow(x - j, static_cast<long double>(n));
        binom = binom * (n - j) / (j + 1);
    }
    s /= fact;
    s = std::min<long double>(1, std::max<long double>(0, s));
    return flip ? 1 - s : s;
}

}  // namespace

SmoothedIndicator::SmoothedIndicator(double eps, int k, double plateau) : eps_(eps), k_(k) {
    if (!(eps > 0)) throw DomainError("smoothing needs eps > 0");
    if (k < 1) throw DomainError("smoothing order k must be >= 1");
    if (k == 1) {
        plateau_ = eps;
        a_ = eps;
        b_ = 0;
        return;
    }
    plateau_ = plateau < 0 ? 0.8 * eps : plateau;
    if (!(plateau_ >= 0 && plateau_ < eps)) throw DomainError("plateau must lie in [0, eps)");
    a_ = 0.5 * (eps + plateau_);
    b_ = 0.5 * (eps - plateau_) / (k - 1);
}

// CDF of the sum of the narrow boxes, which lives on [-(k-1)b, (k-1)b]
double SmoothedIndicator::irwin_hall_cdf(double s) const {
    const int n = k_ - 1;
    long double x = 0.5L * (static_cast<long double>(s) / b_ + n);
    // snap rounding-level ties at the support edges
    if (std::abs(x) < 1e-12L * n) x = 0;
    if (std::abs(x - n) < 1e-12L * n) x = n;
    return static_cast<double>(irwin_hall(n, x));
}

double SmoothedIndicator::phi(double y) const {
    y = std::abs(y);
    if (k_ == 1) return y <= eps_ ? 1.0 : 0.0;
    if (y >= eps_) return 0.0;
    if (y <= plateau_) return 1.0;
    return irwin_hall_cdf(y + a_) - irwin_hall_cdf(y - a_);
}

double SmoothedIndicator::phi_hat(double x) const {
    double v = 2 * a_ * sinc(2 * kPi * a_ * x);
    for (int i = 1; i < k_; ++i) v *= sinc(2 * kPi * b_ * x);
    return v;
}

double SmoothedIndicator::tail_mass(double K) const {
    if (k_ == 1) return std::numeric_limits<double>::infinity();
    K = std::max(K, 0.0);
    const int n = k_ - 1;
    const double x1 = 1 / (2 * kPi * a_), x2 = 1 / (2 * kPi * b_);
    // envelope: 2a below x1, 1/(pi x) on [x1, x2], (1/(pi x)) (x2/x)^n beyond
    double t = 0;
    if (K < x1) t += 2 * a_ * (x1 - K);
    double lo = std::max(K, x1);
    if (lo < x2) t += std::log(x2 / lo) / kPi;
    double from = std::max(K, x2);
    t += std::pow(x2 / from, n) / (kPi * n);
    return 2 * t;
}

SmoothingChoice choose_smoothing(double c, double eta, double X, int k_max) {
    if (!(c > 1 && eta > 0 && X > 1)) throw DomainError("smoothing needs c > 1, eta > 0, X > 1");
    return choose_smoothing_for(std::pow(X, -c * eta), std::pow(X, 2 * eta), std::pow(X, -3.0), k_max);
}

SmoothingChoice choose_smoothing_for(double eps, double K, double target, int k_max) {
    if (k_max < 2) throw DomainError("k_max must be >= 2");
    if (!(eps > 0 && K > 0 && target > 0)) throw DomainError("need eps, K, target > 0");
    SmoothingChoice ch;
    ch.eps = eps;
    ch.K = K;
    ch.target = target;
    for (int k = 2; k <= k_max; ++k) {
        double t = SmoothedIndicator(ch.eps, k).tail_mass(ch.K);
        if (t <= ch.target) {
            ch.k = k;
            ch.tail = t;
            ch.admissible = true;
            break;
        }
    }
    if (!ch.admissible) {
        ch.k = k_max;
        ch.tail = SmoothedIndicator(ch.eps, k_max).tail_mass(ch.K);
        ch.warning = "no order up to " + std::to_string(k_max) + " reaches the tail target at K; using k_max";
    }
    ch.least_K = std::numeric_limits<double>::infinity();
    for (int k = 2; k <= k_max; ++k) {
        SmoothedIndicator s(ch.eps, k);
        double lo = 0, hi = 1 / ch.eps;
        while (s.tail_mass(hi) > ch.target) hi *= 2;
        for (int it = 0; it < 200 && hi - lo > 1e-13 * hi; ++it) {
            double mid = 0.5 * (lo + hi);
            (s.tail_mass(mid) > ch.target ? lo : hi) = mid;
        }
        if (hi < ch.least_K) {
            ch.least_K = hi;
            ch.least_K_order = k;
        }
    }
    return ch;
}

}  // namespace pplab
