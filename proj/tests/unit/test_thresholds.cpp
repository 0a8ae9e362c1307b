#include <doctest.h>

#include "pplab/errors.hpp"
#include "pplab/thresholds.hpp"

using namespace pplab;

TEST_SUITE("thresholds") {
TEST_CASE("every theorem reproduces its stated range") {
    const char* expect[] = {"39/29", "6/5", "39/29", "378/181", "3581/3106", "609/293"};
    for (int t = 1; t <= 6; ++t) {
        auto r = threshold_report(t);
        CAPTURE(t);
        CHECK(str(r.derived) == expect[t - 1]);
        CHECK(r.match);
        CHECK(r.sides_slack);
        CHECK_FALSE(r.binding.empty());
    }
}

TEST_CASE("rational parsing and printing") {
    CHECK(str(parse_rational("3045/1465")) == "609/293");
    CHECK(str(parse_rational("4")) == "4");
    CHECK(parse_rational("6/5") == rat(6, 5));
}

TEST_CASE("constraints from exponent comparisons") {
    // X^{(9c+1)/20} << X^{2-c}  gives  29c < 39
    Affine lhs = rat(9, 20) * Affine::c() + Affine::k(rat(1, 20));
    Affine rhs = Affine::k(2) - Affine::c();
    auto lc = LinearConstraint::from_exponents(lhs, rhs, "test", "test", ConstraintRole::binding);
    CHECK(lc.bound() == rat(39, 29));
    CHECK(lc.text() == "29c < 39");
}

TEST_CASE("solver picks the tightest upper bound and rejects empty ranges") {
    auto up = [](Rational b) {
        return LinearConstraint::from_exponents(Affine::c(), Affine::k(b), "u", "u", ConstraintRole::side);
    };
    auto down = [](Rational b) {
        return LinearConstraint::from_exponents(Affine::k(b), Affine::c(), "d", "d", ConstraintRole::lower);
    };
    CHECK(solve_threshold({up(2), up(rat(3, 2)), down(1)}) == rat(3, 2));
    CHECK_THROWS_AS(solve_threshold({up(1), down(2)}), InfeasibleError);
    CHECK_THROWS_AS(solve_threshold({down(1)}), DomainError);
}

TEST_CASE("chained comparisons") {
    auto v = verify_chain({{rat(39, 29), Cmp::lt, rat(35, 26)},
                           {rat(39, 29), Cmp::lt, rat(50, 37)},
                           {rat(3045, 1465), Cmp::eq, rat(609, 293)},
                           {rat(6, 5), Cmp::gt, rat(5, 4)}});
    CHECK(v == std::vector<bool>{true, true, true, false});
}
}
