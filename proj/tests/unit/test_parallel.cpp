#include <doctest.h>

#include <numeric>
#include <vector>

#include "pplab/parallel.hpp"

using namespace pplab;

TEST_SUITE("parallel") {
TEST_CASE("pairwise reduction does not depend on the pool size") {
    std::vector<double> terms(10000);
    for (std::size_t i = 0; i < terms.size(); ++i) terms[i] = 1.0 / (1.0 + static_cast<double>(i) * 0.37);
    auto run = [&](unsigned threads) {
        set_thread_count(threads);
        std::vector<double> part(64);
        for_each_block(part.size(), [&](std::size_t b) {
            Compensated acc;
            for (std::size_t i = b; i < terms.size(); i += part.size()) acc.add(terms[i]);
            part[b] = acc.value();
        });
        return reduce_pairwise(part, [](double a, double b) { return a + b; });
    };
    double one = run(1), four = run(4);
    set_thread_count(0);
    CHECK(one == four);
}

TEST_CASE("compensated sum recovers cancelled terms") {
    Compensated c;
    c.add(1e16);
    c.add(1.0);
    c.add(-1e16);
    CHECK(c.value() == 1.0);
}

TEST_CASE("thread count can be pinned and restored") {
    set_thread_count(3);
    CHECK(thread_count() == 3);
    set_thread_count(0);
    CHECK(thread_count() >= 1);
}
}
