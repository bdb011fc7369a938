#pragma once

#include <cstddef>
#include <vector>

namespace vnls {

/// Plain left-to-right accumulation. Reference implementation for the
/// parallel reduction; also the one to use for tiny sums.
template <class Term>
double serial_sum(std::size_t n, Term&& term) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += term(i);
    return acc;
}

inline constexpr std::size_t kReduceChunk = 4096;

/// Chunked parallel reduction. Partial sums are formed per fixed-size chunk
/// (parallelized over chunks) and combined serially in chunk order, so the
/// result is bitwise identical for any thread count, including one.
template <class Term>
double chunked_sum(std::size_t n, Term&& term) {
    if (n <= kReduceChunk) return serial_sum(n, term);
    const std::size_t nchunks = (n + kReduceChunk - 1) / kReduceChunk;
    std::vector<double> partial(nchunks, 0.0);
#pragma omp parallel for schedule(static)
    for (long long c = 0; c < static_cast<long long>(nchunks); ++c) {
        const std::size_t lo = static_cast<std::size_t>(c) * kReduceChunk;
        const std::size_t hi = lo + kReduceChunk < n ? lo + kReduceChunk : n;
        double acc = 0.0;
        for (std::size_t i = lo; i < hi; ++i) acc += term(i);
        partial[static_cast<std::size_t>(c)] = acc;
    }
    double total = 0.0;
    for (double x : partial) total += x;
    return total;
}

} // namespace vnls
