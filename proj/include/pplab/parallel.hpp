#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstddef>
#include <functional>
#include <thread>
#include <vector>

namespace pplab {

// PPLAB_THREADS overrides; otherwise hardware concurrency. set_thread_count(0) restores that.
unsigned thread_count();
void set_thread_count(unsigned n);

// Runs fn(b) for b in [0, nblocks) on the worker pool. Block boundaries are
// chosen by the caller independently of the thread count, so results collected
// per block and reduced with reduce_pairwise are identical for any pool size.
void for_each_block(std::size_t nblocks, const std::function<void(std::size_t)>& fn);

template <class T, class Add>
T reduce_pairwise(std::vector<T> v, Add add, T zero = T{}) {
    if (v.empty()) return zero;
    while (v.size() > 1) {
        std::size_t half = (v.size() + 1) / 2;
        for (std::size_t i = 0; i + half < v.size(); ++i) v[i] = add(v[i], v[i + half]);
        v.resize(half);
    }
    return v[0];
}

// Neumaier compensated accumulator
struct Compensated {
    double sum = 0.0, comp = 0.0;
    void add(double x) {
        double t = sum + x;
        if (std::abs(sum) >= std::abs(x))
            comp += (sum - t) + x;
        else
            comp += (x - t) + sum;
        sum = t;
    }
    double value() const { return sum + comp; }
};

}  // namespace pplab
