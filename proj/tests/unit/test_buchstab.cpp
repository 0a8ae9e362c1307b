#include <doctest.h>

#include <cmath>

#include "pplab/buchstab.hpp"
#include "pplab/errors.hpp"

using namespace pplab;

TEST_SUITE("buchstab") {
TEST_CASE("omega closed forms") {
    const auto& w = default_omega_table();
    CHECK(w(1.5) == 2.0 / 3);
    CHECK(w(2.0) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(std::abs(w(2.5) - (1 + std::log(1.5)) / 2.5) < 1e-7);
    CHECK(std::abs(w(3) - (1 + std::log(2.0)) / 3) < 1e-6);
    CHECK(std::abs(w(15) - std::exp(-0.5772156649015329)) < 1e-4);
    CHECK(w.delay_residual() < 1e-3);
}

TEST_CASE("omega domain") {
    BuchstabTable t(1e-3, 4);
    CHECK_THROWS_AS(t(0.5), DomainError);
    CHECK_THROWS_AS(t(5), RangeError);
    CHECK_THROWS_AS(BuchstabTable(0.3, 4), DomainError);
}

TEST_CASE("interval integral of 1/y") {
    auto P = interval_polytope(rat(1, 4), rat(1, 2), "unit test");
    QuadOptions o;
    o.mc_samples = 100000;
    auto r = polytope_integral(P, rational_kernel(1, {}), o);
    CHECK(std::abs(r.value - std::log(2.0)) < 1e-10);
    CHECK(r.agree);
}

TEST_CASE("triangle integral against its closed form") {
    // 1/4 <= y1 <= y2, y1 + y2 <= 1: inner integral is log((1-y1)/y1)
    SievePolytope P;
    P.dim = 2;
    P.anchor = "triangle";
    P.ge(0, rat(1, 4));
    P.add({1, -1}, 0);
    P.add({1, 1}, 1);
    QuadOptions o;
    o.mc_samples = 200000;
    auto r = polytope_integral(P, rational_kernel(2, {}), o);
    // int_{1/4}^{1/2} log((1-y)/y) / y dy
    double ref = 0;
    const int n = 200000;
    for (int i = 0; i < n; ++i) {
        double y = 0.25 + (i + 0.5) * 0.25 / n;
        ref += std::log((1 - y) / y) / y;
    }
    ref *= 0.25 / n;
    CHECK(std::abs(r.value - ref) < 1e-8);
    CHECK(r.agree);
    CHECK(vertices(P).size() == 3);
}

TEST_CASE("poles inside the region are rejected") {
    auto P = interval_polytope(rat(-1, 2), rat(1, 2), "pole");
    CHECK_THROWS_AS(polytope_integral(P, rational_kernel(1, {})), IntegrandError);
}

TEST_CASE("unbounded regions are rejected") {
    SievePolytope P;
    P.dim = 1;
    P.ge(0, rat(1, 4));
    CHECK_FALSE(bounded(P));
    CHECK_THROWS_AS(polytope_integral(P, rational_kernel(1, {})), DomainError);
}

TEST_CASE("constant regions sit inside P_j") {
    CHECK(inside_Pj(thm2_d2_iterated_region()));
    CHECK(inside_Pj(thm2_d2_region()));
    CHECK(inside_Pj(Pj_polytope(3)));
}

TEST_CASE("mertens sums") {
    auto E = interval_polytope(rat(8, 75), rat(1, 5), "I1");
    double v = mertens_sum(E, 2, false, 100000);
    CHECK(v > 0);
    CHECK(v <= std::log(0.8 / 0.2) + 0.1);
    CHECK_THROWS_AS(mertens_sum(E, 2, false, 8), DomainError);
}
}
