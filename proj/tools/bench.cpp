// Compares the OpenMP block reduction against the serial reference on a
// representative smoothed-sum kernel and checks they agree bit for bit.
#include <chrono>
#include <cmath>
#include <cstdio>

#include <omp.h>

#include "zlab/gaussian.hpp"
#include "zlab/parallel.hpp"

using namespace zlab;

namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

int main() {
    const long long X = 4'000'000;
    const auto& tab = PrimaryTable::upto(X);
    long long count = 0;
    while (count < static_cast<long long>(tab.size()) && norm(tab[count]) <= X) ++count;

    auto term = [&](long long i) -> std::complex<double> {
        const double nn = static_cast<double>(norm(tab[static_cast<size_t>(i)]));
        return std::exp(std::complex<double>(-1.1, -0.7) * std::log(nn)) *
               std::exp(-nn / 1.0e6);
    };

    std::printf("terms: %lld, threads available: %d\n", count, omp_get_max_threads());

    auto t0 = std::chrono::steady_clock::now();
    const auto serial = serial_block_sum(count, term);
    const double ts = seconds_since(t0);

    t0 = std::chrono::steady_clock::now();
    const auto parallel = block_sum(count, term);
    const double tp = seconds_since(t0);

    std::printf("serial:   %.6f s  value = %.17g %+.17gi\n", ts, serial.real(), serial.imag());
    std::printf("parallel: %.6f s  value = %.17g %+.17gi\n", tp, parallel.real(), parallel.imag());
    std::printf("speedup:  %.2fx\n", ts / tp);
    const bool identical = serial == parallel;
    std::printf("bit-identical: %s\n", identical ? "yes" : "NO");
    return identical ? 0 : 1;
}
