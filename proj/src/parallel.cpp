#include "pplab/parallel.hpp"

#include <cstdlib>
#include <exception>
#include <mutex>

namespace pplab {

namespace {
std::atomic<unsigned> forced{0};
}

unsigned thread_count() {
    if (unsigned f = forced.load()) return f;
    if (const char* env = std::getenv("PPLAB_THREADS")) {
        int v = std::atoi(env);
        if (v > 0) return static_cast<unsigned>(v);
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

void set_thread_count(unsigned n) { forced.store(n); }

void for_each_block(std::size_t nblocks, const std::function<void(std::size_t)>& fn) {
    unsigned nt = static_cast<unsigned>(std::min<std::size_t>(thread_count(), nblocks));
    if (nt <= 1) {
        for (std::size_t b = 0; b < nblocks; ++b) fn(b);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr first;
    std::mutex mu;
    auto work = [&] {
        for (;;) {
            std::size_t b = next.fetch_add(1);
            if (b >= nblocks) return;
            try {
                fn(b);
            } catch (...) {
                std::lock_guard<std::mutex> lk(mu);
                if (!first) first = std::current_exception();
                next.store(nblocks);
            }
        }
    };
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < nt; ++t) pool.emplace_back(work);
    work();
    for (auto& th : pool) th.join();
    if (first) std::rethrow_exception(first);
}

}  // namespace pplab
