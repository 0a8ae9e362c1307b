#include <doctest.h>

#include <random>

#include "pplab/errors.hpp"
#include "pplab/primes.hpp"

using namespace pplab;

TEST_SUITE("primes") {
TEST_CASE("prime counts") {
    CHECK(primes_up_to(100).size() == 25);
    CHECK(primes_up_to(1000).size() == 168);
    CHECK(primes_up_to(1).empty());
}

TEST_CASE("window holds the primes in (X/8, X]") {
    auto w = PrimeWindow::build(1000);
    CHECK(w.lo() == 125);
    CHECK(w.count() == 168 - 30);
    CHECK(w.primes().front() == 127);
    CHECK(w.primes().back() == 997);
    CHECK_FALSE(w.contains(125));
    CHECK(w.contains(1000));
}

TEST_CASE("window budget") {
    WindowBudget b;
    b.max_X = 1000;
    CHECK_THROWS_AS(PrimeWindow::build(2000, b), ResourceError);
}

TEST_CASE("smallest prime factor table") {
    SpfTable t(1000);
    CHECK(t.spf(91) == 7);
    CHECK(t.is_prime(997));
    auto f = t.factor(360);
    REQUIRE(f.size() == 3);
    CHECK(f[0] == std::pair<std::uint64_t, int>{2, 3});
    CHECK(f[2] == std::pair<std::uint64_t, int>{5, 1});
}

TEST_CASE("roughness") {
    SpfTable t(1000);
    CHECK(rho_rough(t, 1, 50) == 1);
    CHECK(rho_rough(t, 221, 13) == 1);  // 13 * 17
    CHECK(rho_rough(t, 221, 14) == 0);
}

TEST_CASE("Buchstab identity on small n") {
    SpfTable t(5000);
    auto ps = primes_up_to(5000);
    for (std::uint64_t n = 2; n <= 5000; ++n)
        for (double w : {2.0, 3.0, 7.0})
            for (double z : {5.0, 11.0, 40.0}) {
                if (!(w < z) || z > n) continue;
                int rhs = rho_rough(t, n, w);
                for (auto p : ps) {
                    if (p >= z) break;
                    if (p >= w && n % p == 0) rhs -= rho_rough(t, n / p, static_cast<double>(p));
                }
                REQUIRE(rho_rough(t, n, z) == rhs);
            }
}

TEST_CASE("majorant weights") {
    auto w = PrimeWindow::build(5000);
    for (std::uint64_t n = w.lo() + 1; n <= w.X(); ++n) {
        int rho = w.spf().is_prime(n) ? 1 : 0;
        REQUIRE(rho_plus_thm4(w, n) == rho_plus_thm4_buchstab(w, n));
        REQUIRE(rho_plus_thm4(w, n) >= rho);
        REQUIRE(rho_plus_thm2(w, n) >= rho);
        auto parts = thm2_parts(w, n);
        CHECK(parts.rho == rho);
    }
    CHECK_THROWS_AS(rho_plus_thm4(PrimeWindow::build(100), 50), DomainError);
}

TEST_CASE("weight tables") {
    auto w = PrimeWindow::build(2000);
    auto t = build_weights(w, WeightKind::prime);
    std::size_t ones = 0;
    for (auto v : t.values) ones += v;
    CHECK(ones == w.count());
    CHECK(weight_kind_from(to_string(WeightKind::thm2_plus)) == WeightKind::thm2_plus);
    CHECK_THROWS(weight_kind_from("nope"));
}
}
