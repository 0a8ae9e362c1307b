#include <doctest.h>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <algorithm>
#include <cmath>
#include <vector>

#include "pplab/errors.hpp"
#include "pplab/smoothing.hpp"

using namespace pplab;

TEST_SUITE("smoothing") {
TEST_CASE("support and plateau are exact") {
    for (int k : {2, 3, 5, 9}) {
        SmoothedIndicator s(0.3, k);
        CAPTURE(k);
        for (int i = 0; i <= 600; ++i) {
            double y = -0.45 + 0.0015 * i;
            double v = s.phi(y);
            if (std::abs(y) <= s.plateau()) REQUIRE(v == 1.0);
            if (std::abs(y) >= s.eps()) REQUIRE(v == 0.0);
            REQUIRE(v >= 0.0);
            REQUIRE(v <= 1.0);
            REQUIRE(v == s.phi(-y));
        }
    }
}

TEST_CASE("k = 1 is the plain indicator") {
    SmoothedIndicator s(0.5, 1);
    CHECK(s.phi(0.5) == 1.0);
    CHECK(s.phi(0.50001) == 0.0);
    CHECK(std::isinf(s.tail_mass(10)));
    CHECK(s.mass() == 1.0);
}

TEST_CASE("transform matches quadrature") {
    SmoothedIndicator s(0.4, 4);
    for (double x : {0.0, 0.7, 2.3, 9.1}) {
        auto f = [&](double y) { return s.phi(y) * std::cos(2 * M_PI * x * y); };
        double q = 0;
        // integrate piecewise between the polynomial breakpoints
        const double a = s.wide(), b = s.narrow();
        std::vector<double> br{0};
        for (int j = -(s.k() - 1); j <= s.k() - 1; j += 2) br.push_back(a + j * b);
        br.push_back(s.eps());
        std::sort(br.begin(), br.end());
        for (std::size_t i = 0; i + 1 < br.size(); ++i)
            if (br[i + 1] > br[i] && br[i] >= 0)
                q += boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, br[i], br[i + 1], 10, 1e-14);
        CHECK(std::abs(2 * q - s.phi_hat(x)) < 1e-12);
    }
}

TEST_CASE("tail bound decays like K^{-(k-1)}") {
    SmoothedIndicator s(0.2, 4);
    double big = 1e4;
    CHECK(s.tail_mass(big) / s.tail_mass(2 * big) == doctest::Approx(8.0).epsilon(1e-9));
    CHECK(s.tail_mass(10) > s.tail_mass(20));
}

TEST_CASE("order selection") {
    auto ch = choose_smoothing_for(0.1, 1e6, 1e-12, 16);
    CHECK(ch.admissible);
    CHECK(ch.tail <= ch.target);
    CHECK(SmoothedIndicator(0.1, ch.k - 1).tail_mass(1e6) > 1e-12);
    auto hard = choose_smoothing(1.2, 0.01, 1e5);
    CHECK_FALSE(hard.admissible);
    CHECK_FALSE(hard.warning.empty());
    CHECK(hard.least_K > hard.K);
}

TEST_CASE("bad parameters") {
    CHECK_THROWS_AS(SmoothedIndicator(0, 3), DomainError);
    CHECK_THROWS_AS(SmoothedIndicator(0.1, 0), DomainError);
    CHECK_THROWS_AS(SmoothedIndicator(0.1, 3, 0.2), DomainError);
}
}
