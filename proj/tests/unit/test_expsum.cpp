#include <doctest.h>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>

#include "pplab/errors.hpp"
#include "pplab/expsum.hpp"

using namespace pplab;

namespace {
cplx e_of(long double t) {
    t -= std::floor(t);
    return {std::cos(2 * M_PI * static_cast<double>(t)), std::sin(2 * M_PI * static_cast<double>(t))};
}
}  // namespace

TEST_SUITE("expsum") {
TEST_CASE("value at zero counts the weights") {
    CHECK(std::abs(ExpSum::build({100, 1.5, SumWeight::prime, Phase::power}).eval(0) - cplx(20)) < 1e-12);
    CHECK(std::abs(ExpSum::build({800, 1.3, SumWeight::unit, Phase::power}).eval(0) - cplx(700)) < 1e-9);
    auto A = ExpSum::build({16, 1.5, SumWeight::prime, Phase::floor_power});
    CHECK(A.terms() == 5);  // 3, 5, 7, 11, 13
}

TEST_CASE("agrees with direct summation") {
    const std::uint64_t X = 300;
    const double c = 1.37;
    auto S = ExpSum::build({X, c, SumWeight::unit, Phase::power});
    auto F = ExpSum::build({X, c, SumWeight::unit, Phase::floor_power});
    for (double x : {1e-4, 0.0123, 0.31, 0.49}) {
        cplx a = 0, b = 0;
        for (std::uint64_t n = X / 8 + 1; n <= X; ++n) {
            long double p = std::pow(static_cast<long double>(n), static_cast<long double>(c));
            a += e_of(p * x);
            b += e_of(std::floor(p) * x);
        }
        CHECK(std::abs(S.eval(x) - a) < 1e-9);
        CHECK(std::abs(F.eval(x) - b) < 1e-9);
        CHECK(std::abs(S.eval(-x) - std::conj(S.eval(x))) < 1e-9);
    }
}

TEST_CASE("certified powers") {
    auto p = power_phase(4, 1.5);
    CHECK(p.exact_floor == 8);
    CHECK(p.certified);
    CHECK(power_phase(1000, 1.5).exact_floor == 31622);
}

TEST_CASE("exact fractional parts") {
    CHECK(frac_mul(7, 0.25) == -0.25L);
    CHECK(frac_mul(3, 0.1) == doctest::Approx(0.3).epsilon(1e-15));
    CHECK(std::abs(frac_mul(1000000007, 0.5)) == 0.5L);
    CHECK(frac_mul(-3, 0.25) == 0.25L);
}

TEST_CASE("v against a direct sum and J as a difference of v") {
    const double c = 1.6;
    for (double x : {0.003, 0.2}) {
        cplx d = 0;
        for (int m = 1; m <= 5000; ++m) d += std::pow(m, 1 / c - 1) / c * e_of(static_cast<long double>(m) * x);
        CHECK(std::abs(eval_v(5000, c, x) - d) < 1e-9);
    }
    double X = 400, x = 0.0137;
    cplx J = eval_J(X, c, x);
    cplx diff = eval_v(std::floor(std::pow(X, c)), c, x) - eval_v(std::floor(std::pow(X / 8, c)), c, x);
    CHECK(std::abs(J - diff) < 1e-8);
}

TEST_CASE("integrals against plain quadrature") {
    const double X = 200, c = 1.4;
    for (double x : {1e-5, 3e-4, 0.01}) {
        auto re = [&](double t) { return std::cos(2 * M_PI * x * std::pow(t, c)); };
        auto im = [&](double t) { return std::sin(2 * M_PI * x * std::pow(t, c)); };
        using GK = boost::math::quadrature::gauss_kronrod<double, 61>;
        cplx q(GK::integrate(re, X / 8, X, 20, 1e-13), GK::integrate(im, X / 8, X, 20, 1e-13));
        CHECK(std::abs(eval_I(X, c, x) - q) < 1e-7);
        cplx q1(GK::integrate(re, 0, X, 20, 1e-13), GK::integrate(im, 0, X, 20, 1e-13));
        CHECK(std::abs(eval_v1(X, c, x) - q1) < 1e-7);
    }
}

TEST_CASE("second moment closed form against quadrature") {
    auto V = ExpSum::with_coefficients({64, 1.5, SumWeight::unit, Phase::power}, random_coefficients(56, 7));
    const double B = 0.01;
    auto f = [&](double x) { return std::norm(V.eval(x)); };
    double q = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, B, 2 * B, 25, 1e-13);
    auto r = mean_value(V, B, 2);
    CHECK(r.value == doctest::Approx(q).epsilon(1e-9));
    CHECK(r.ratio > 0);
    CHECK_THROWS_AS(mean_value(V, B, 3), DomainError);
}

TEST_CASE("large-sieve duality inequality on random instances") {
    for (std::uint64_t seed = 1; seed <= 200; ++seed) {
        auto in = random_duality_instance(seed);
        REQUIRE(duality_check(in.atoms, in.a, in.lambda).holds);
    }
}

TEST_CASE("names round trip") {
    for (auto w : {SumWeight::unit, SumWeight::prime, SumWeight::prime_log, SumWeight::plus_thm2, SumWeight::plus_thm4})
        CHECK(sum_weight_from(to_string(w)) == w);
    CHECK(phase_from("floor-power") == Phase::floor_power);
    CHECK_THROWS_AS(phase_from("x"), DomainError);
    CHECK_THROWS_AS(ExpSum::build({100, 2.0, SumWeight::unit, Phase::power}), DomainError);
}
}
