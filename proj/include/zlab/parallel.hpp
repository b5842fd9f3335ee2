#pragma once

#include <algorithm>
#include <complex>
#include <vector>

namespace zlab {

// Deterministic reduction: terms are grouped into fixed 1024-wide index
// blocks, each block is Kahan-compensated, and block totals are combined in
// index order. The result is bit-identical for any thread count, which is
// what lets the OpenMP kernels and the serial reference produce the same
// bytes.
inline constexpr long long kSumBlock = 1024;

template <class F>
std::complex<double> block_sum(long long n, F&& term) {
    if (n <= 0) return {};
    const long long nblocks = (n + kSumBlock - 1) / kSumBlock;
    std::vector<std::complex<double>> partial(static_cast<size_t>(nblocks));
#pragma omp parallel for schedule(static)
    for (long long b = 0; b < nblocks; ++b) {
        std::complex<double> s = 0, c = 0;
        const long long hi = std::min(n, (b + 1) * kSumBlock);
        for (long long i = b * kSumBlock; i < hi; ++i) {
            const std::complex<double> y = term(i) - c;
            const std::complex<double> t = s + y;
            c = (t - s) - y;
            s = t;
        }
        partial[static_cast<size_t>(b)] = s;
    }
    std::complex<double> s = 0, c = 0;
    for (const auto& p : partial) {
        const std::complex<double> y = p - c;
        const std::complex<double> t = s + y;
        c = (t - s) - y;
        s = t;
    }
    return s;
}

// Same block/compensation structure without the OpenMP pragma; kept as the
// reference path for the benchmark and for the determinism tests.
template <class F>
std::complex<double> serial_block_sum(long long n, F&& term) {
    if (n <= 0) return {};
    const long long nblocks = (n + kSumBlock - 1) / kSumBlock;
    std::vector<std::complex<double>> partial(static_cast<size_t>(nblocks));
    for (long long b = 0; b < nblocks; ++b) {
        std::complex<double> s = 0, c = 0;
        const long long hi = std::min(n, (b + 1) * kSumBlock);
        for (long long i = b * kSumBlock; i < hi; ++i) {
            const std::complex<double> y = term(i) - c;
            const std::complex<double> t = s + y;
            c = (t - s) - y;
            s = t;
        }
        partial[static_cast<size_t>(b)] = s;
    }
    std::complex<double> s = 0, c = 0;
    for (const auto& p : partial) {
        const std::complex<double> y = p - c;
        const std::complex<double> t = s + y;
        c = (t - s) - y;
        s = t;
    }
    return s;
}

}  // namespace zlab
