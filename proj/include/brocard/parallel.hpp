#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <thread>
#include <type_traits>
#include <vector>

namespace brocard {

/// Splits [0, count) into contiguous blocks, runs fn(lo, hi) on each (in
/// worker threads when workers > 1) and returns the results in block order,
/// so any reduction over them is independent of scheduling. The first
/// exception thrown by a block (in block order) is rethrown.
template <class Fn>
auto parallel_blocks(std::size_t count, unsigned workers, Fn&& fn)
    -> std::vector<std::invoke_result_t<Fn&, std::size_t, std::size_t>> {
    using Result = std::invoke_result_t<Fn&, std::size_t, std::size_t>;
    const std::size_t blocks = std::max<std::size_t>(1, std::min<std::size_t>(workers == 0 ? 1 : workers, count));
    std::vector<Result> results(blocks);
    auto bounds = [&](std::size_t b) { return std::pair{count * b / blocks, count * (b + 1) / blocks}; };
    if (blocks == 1) {
        results[0] = fn(std::size_t{0}, count);
        return results;
    }
    std::vector<std::exception_ptr> errors(blocks);
    {
        std::vector<std::jthread> threads;
        threads.reserve(blocks);
        for (std::size_t b = 0; b < blocks; ++b) {
            threads.emplace_back([&, b] {
                const auto [lo, hi] = bounds(b);
                try {
                    results[b] = fn(lo, hi);
                } catch (...) {
                    errors[b] = std::current_exception();
                }
            });
        }
    }
    for (const auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }
    return results;
}

} // namespace brocard
