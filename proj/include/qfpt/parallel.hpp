#pragma once

#include <cstdint>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace qfpt::par {

inline bool enabled() noexcept {
#ifdef _OPENMP
    return true;
#else
    return false;
#endif
}

inline int max_threads() noexcept {
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

inline void set_threads(int n) {
#ifdef _OPENMP
    if (n > 0) omp_set_num_threads(n);
#else
    (void)n;
#endif
}

// Parallel loop over [0, n). body(i) must be independent per index.
template <class Body>
void for_each(std::int64_t n, Body&& body) {
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
    for (std::int64_t i = 0; i < n; ++i) body(i);
}

template <class Body>
void for_each_serial(std::int64_t n, Body&& body) {
    for (std::int64_t i = 0; i < n; ++i) body(i);
}

// Chunk width for deterministic reductions. Each chunk is accumulated in
// index order by a single thread and the chunk partials are combined in a
// fixed order, so the result is identical for any thread count (including
// the serial path).
inline constexpr std::int64_t kSumChunk = 2048;

template <class Term>
double chunked_sum(std::int64_t n, Term&& term, bool parallel = true) {
    if (n <= 0) return 0.0;
    const std::int64_t nchunks = (n + kSumChunk - 1) / kSumChunk;
    if (nchunks == 1) {
        double acc = 0.0;
        for (std::int64_t i = 0; i < n; ++i) acc += term(i);
        return acc;
    }
    std::vector<double> partial(static_cast<std::size_t>(nchunks), 0.0);
    auto chunk_body = [&](std::int64_t c) {
        const std::int64_t begin = c * kSumChunk;
        const std::int64_t end = begin + kSumChunk < n ? begin + kSumChunk : n;
        double acc = 0.0;
        for (std::int64_t i = begin; i < end; ++i) acc += term(i);
        partial[static_cast<std::size_t>(c)] = acc;
    };
    if (parallel) {
        for_each(nchunks, chunk_body);
    } else {
        for_each_serial(nchunks, chunk_body);
    }
    double total = 0.0;
    for (double p : partial) total += p;
    return total;
}

} // namespace qfpt::par
