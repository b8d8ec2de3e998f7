// Deterministic reductions. Large sums are accumulated pairwise over fixed
// index ranges, and parallel partitions reduce in chunk order, so results are
// identical for any worker count.
#pragma once

#include <atomic>
#include <complex>
#include <cstddef>
#include <cstdlib>
#include <functional>
#include <span>
#include <string>
#include <thread>
#include <type_traits>
#include <vector>

namespace imlab {

namespace detail {

template <typename T, typename F>
T pairwise_accumulate(std::size_t begin, std::size_t end, const F& term) {
    const std::size_t n = end - begin;
    if (n == 0) return T{};
    if (n <= 16) {
        T acc = term(begin);
        for (std::size_t i = begin + 1; i < end; ++i) acc += term(i);
        return acc;
    }
    const std::size_t mid = begin + n / 2;
    return pairwise_accumulate<T>(begin, mid, term) + pairwise_accumulate<T>(mid, end, term);
}

}  // namespace detail

template <typename F>
double pairwise_sum(std::size_t n, const F& term) {
    return detail::pairwise_accumulate<double>(0, n, term);
}

template <typename F>
std::complex<double> pairwise_sum_complex(std::size_t n, const F& term) {
    return detail::pairwise_accumulate<std::complex<double>>(0, n, term);
}

inline double pairwise_sum(std::span<const double> values) {
    return pairwise_sum(values.size(), [&](std::size_t i) { return values[i]; });
}

inline std::complex<double> pairwise_sum(std::span<const std::complex<double>> values) {
    return pairwise_sum_complex(values.size(), [&](std::size_t i) { return values[i]; });
}

// Worker count: IMETHOD_LAB_WORKERS if set, else hardware concurrency.
inline unsigned worker_count() {
    if (const char* env = std::getenv("IMETHOD_LAB_WORKERS")) {
        long v = std::strtol(env, nullptr, 10);
        if (v >= 1) return static_cast<unsigned>(v);
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? hw : 1;
}

// Evaluates term(i) for i in [0, n) and sums the results. Work is split into
// chunks whose partial sums are themselves pairwise-accumulated and then
// combined in chunk order, independent of scheduling.
template <typename F>
auto parallel_reduce(std::size_t n, const F& term) {
    using T = std::decay_t<std::invoke_result_t<F, std::size_t>>;
    const unsigned workers = worker_count();
    if (workers == 1 || n < 4096) {
        return detail::pairwise_accumulate<T>(0, n, term);
    }
    const std::size_t chunks = static_cast<std::size_t>(workers) * 8;
    const std::size_t chunk_size = (n + chunks - 1) / chunks;
    std::vector<T> partial(chunks, T{});
    std::vector<std::thread> pool;
    pool.reserve(workers);
    std::atomic<std::size_t> next{0};
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&]() {
            while (true) {
                std::size_t c = next.fetch_add(1);
                if (c >= chunks) return;
                std::size_t begin = c * chunk_size;
                std::size_t end = std::min(n, begin + chunk_size);
                if (begin < end) partial[c] = detail::pairwise_accumulate<T>(begin, end, term);
            }
        });
    }
    for (auto& t : pool) t.join();
    return detail::pairwise_accumulate<T>(0, partial.size(), [&](std::size_t c) { return partial[c]; });
}

}  // namespace imlab
