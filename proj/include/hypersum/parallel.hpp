#pragma once

#include <cstdint>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

#include "hypersum/checked.hpp"

namespace hsum::detail {

// Runs body(i) for i in [first, last), interleaved over `threads` workers
// (i = first + t, first + t + T, ...). Hyperbolic loops are front-heavy, so
// interleaving balances better than contiguous blocks. The first exception
// thrown by any worker is rethrown on the calling thread.
template <typename Body>
void parallel_for(std::uint64_t first, std::uint64_t last, unsigned threads, Body&& body) {
    if (first >= last) return;
    if (threads <= 1 || last - first < 2) {
        for (std::uint64_t i = first; i < last; ++i) body(i);
        return;
    }
    std::exception_ptr error;
    std::mutex error_mutex;
    {
        std::vector<std::jthread> pool;
        pool.reserve(threads);
        for (unsigned t = 0; t < threads; ++t) {
            pool.emplace_back([&, t] {
                try {
                    for (std::uint64_t i = first + t; i < last; i += threads) body(i);
                } catch (...) {
                    std::lock_guard lock(error_mutex);
                    if (!error) error = std::current_exception();
                }
            });
        }
    }
    if (error) std::rethrow_exception(error);
}

// Sum of term(i) over [first, last) with checked 64-bit accumulation.
// Integer addition is associative, so the result does not depend on the
// thread count.
template <typename Term>
std::int64_t parallel_sum(std::uint64_t first, std::uint64_t last, unsigned threads, Term&& term) {
    const unsigned workers = threads == 0 ? 1 : threads;
    std::vector<std::int64_t> partial(workers, 0);
    if (workers == 1) {
        for (std::uint64_t i = first; i < last; ++i) {
            partial[0] = checked_add(partial[0], term(i), "hyperbolic sum");
        }
        return partial[0];
    }
    parallel_for(0, workers, workers, [&](std::uint64_t t) {
        std::int64_t acc = 0;
        for (std::uint64_t i = first + t; i < last; i += workers) {
            acc = checked_add(acc, term(i), "hyperbolic sum");
        }
        partial[t] = acc;
    });
    std::int64_t total = 0;
    for (const auto p : partial) total = checked_add(total, p, "hyperbolic sum");
    return total;
}

}  // namespace hsum::detail
