#include <doctest.h>

#include <random>

#include "pplab/counting.hpp"
#include "pplab/errors.hpp"

using namespace pplab;

TEST_SUITE("counting") {
TEST_CASE("equation examples") {
    EquationInstance e;
    e.s = 3;
    e.c = 1.5;
    e.r = 15;
    e.X_override = 16;
    CHECK(count_equation(e).raw == 1);
    CHECK(count_equation(e, Engine::naive).raw == 1);
    e.s = 2;
    e.r = 16;
    CHECK(count_equation(e).raw == 2);
}

TEST_CASE("all pairs inside a wide tolerance") {
    InequalityInstance in;
    in.s = 2;
    in.c = 1.5;
    in.R = 100;
    in.X_override = 16;
    in.eps_override = 1e6;
    // 5 window primes in (2, 16]: 3, 5, 7, 11, 13
    CHECK(count_inequality(in).raw == 25);
}

TEST_CASE("meet in the middle equals the naive loop") {
    std::mt19937_64 g(99);
    for (int i = 0; i < 40; ++i) {
        int s = 2 + static_cast<int>(g() % 3);
        double X = 16 + static_cast<double>(g() % 150);
        double c = 1.05 + 0.9 * std::uniform_real_distribution<double>(0, 1)(g);
        InequalityInstance in;
        in.s = s;
        in.c = c;
        in.X_override = X;
        in.R = s * std::pow(X * (0.3 + 0.6 * std::uniform_real_distribution<double>(0, 1)(g)), c);
        in.eps_override = 0.5 + 20 * std::uniform_real_distribution<double>(0, 1)(g);
        CAPTURE(s);
        CAPTURE(X);
        CHECK(count_inequality(in).raw == count_inequality(in, Engine::naive).raw);
        EquationInstance e;
        e.s = s;
        e.c = c;
        e.X_override = X;
        e.r = static_cast<std::int64_t>(in.R);
        CHECK(count_equation(e).raw == count_equation(e, Engine::naive).raw);
    }
}

TEST_CASE("smoothed count lies between the plateau and support counts") {
    InequalityInstance in;
    in.s = 2;
    in.c = 1.2;
    in.R = 2000;
    in.eta = 0.1;
    SmoothedIndicator phi(in.eps(), 4);
    double v = count_smoothed(in, phi, SmoothWeight::prime);
    auto lo = in;
    lo.eps_override = phi.plateau();
    CHECK(count_inequality(lo).raw <= v + 1e-12);
    CHECK(v <= count_inequality(in).raw + 1e-12);
}

TEST_CASE("sieve lower bound never exceeds the raw count") {
    InequalityInstance in;
    in.s = 3;
    in.c = 1.2;
    in.X_override = 400;
    in.R = 3 * std::pow(250.0, 1.2);
    in.eps_override = 5;
    auto r = sieve_lower_bound(Family::inequality, &in, nullptr, WeightKind::thm4_plus);
    CHECK(r.below_raw);
    CHECK(r.value <= r.raw);
    in.X_override = 100;
    CHECK_THROWS_AS(sieve_lower_bound(Family::inequality, &in, nullptr, WeightKind::thm4_plus), DomainError);
}

TEST_CASE("exact membership") {
    CHECK(exact_inside({4, 9}, 1.5, 35, 0.5));  // 8 + 27
    CHECK_FALSE(exact_inside({4, 9}, 1.5, 36, 0.5));
}

TEST_CASE("validation and budgets") {
    InequalityInstance in;
    in.c = 2.0;
    CHECK_THROWS_AS(in.validate(), DomainError);
    EquationInstance e;
    e.s = 5;
    e.c = 1.5;
    e.X_override = 1e5;
    e.r = 100000;
    CHECK_THROWS_AS(count_equation(e), ResourceError);
}
}
