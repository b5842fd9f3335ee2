#include "zlab/contour.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <tuple>

namespace zlab {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

// Lanczos coefficients, g = 607/128, 15 terms (Godfrey's set).
constexpr double kLanczosG = 607.0 / 128.0;
constexpr double kLanczos[15] = {
    0.99999999999999709182,
    57.156235665862923517,
    -59.597960355475491248,
    14.136097974741747174,
    -0.49191381609762019978,
    0.33994649984811888699e-4,
    0.46523628927048575665e-4,
    -0.98374475304879564677e-4,
    0.15808870322491248884e-3,
    -0.21026444172410488319e-3,
    0.21743961811521264320e-3,
    -0.16431810653676389022e-3,
    0.84418223983852743293e-4,
    -0.26190838401581408670e-4,
    0.36899182659531622704e-5,
};

cplx log_gamma_lanczos(cplx z) {
    // valid for Re(z) >= 1/2
    cplx a = kLanczos[0];
    for (int k = 1; k < 15; ++k) a += kLanczos[k] / (z - 1.0 + static_cast<double>(k));
    const cplx t = z + (kLanczosG - 0.5);
    return 0.5 * std::log(2.0 * kPi) + (z - 0.5) * std::log(t) - t + std::log(a);
}

// log(sin(pi z)), stable for large |Im z|.
cplx log_sin_pi(cplx z) {
    const double y = z.imag();
    if (std::abs(y) < 10.0) return std::log(std::sin(kPi * z));
    const cplx ipiz = cplx(0, kPi) * z;
    if (y > 0) {
        // sin(pi z) = e^{-i pi z} (1 - e^{2 i pi z}) * (i/2)
        return -ipiz + std::log(cplx(0, 0.5)) + std::log(1.0 - std::exp(2.0 * ipiz));
    }
    return ipiz + std::log(cplx(0, -0.5)) + std::log(1.0 - std::exp(-2.0 * ipiz));
}

}  // namespace

cplx log_gamma(cplx s) {
    if (s.imag() == 0 && s.real() <= 0 && s.real() == std::floor(s.real()))
        throw std::domain_error("log_gamma: pole at nonpositive integer");
    if (s.real() >= 0.5) return log_gamma_lanczos(s);
    // reflection: Gamma(s) Gamma(1-s) = pi / sin(pi s)
    return std::log(kPi) - log_sin_pi(s) - log_gamma_lanczos(1.0 - s);
}

AfeKernel::AfeKernel(cplx a_num, cplx a_den, const ContourSpec& spec)
    : a_num_(a_num), a_den_(a_den), spec_(spec) {
    if (spec.sigma <= 0 || spec.step <= 0 || spec.half_width <= spec.step)
        throw std::invalid_argument("AfeKernel: bad contour spec");
    const int K = static_cast<int>(std::llround(spec.half_width / spec.step));
    const cplx lg_den = log_gamma(a_den);
    const double hc = spec.h_choice == HChoice::gauss1 ? 1.0 : 2.0;
    weights_.reserve(2 * K + 1);
    ynodes_.reserve(2 * K + 1);
    for (int k = -K; k <= K; ++k) {
        const double y = k * spec.step;
        const cplx z(spec.sigma, y);
        const cplx w = spec.step / (2.0 * kPi) *
                       std::exp(log_gamma(a_num + z) - lg_den + hc * z * z) / z;
        weights_.push_back(w);
        ynodes_.push_back(y);
    }

    // Hermite table in L = log(pi xi). Build until the kernel has decayed to
    // 1e-16 of its peak (it is eventually Gaussian-small in L), hard cap L=60.
    table_l0_ = -18.0;
    table_step_ = 0.01;
    const size_t max_pts = static_cast<size_t>((60.0 - table_l0_) / table_step_) + 1;
    table_g_.reserve(1 << 12);
    table_dg_.reserve(1 << 12);
    int quiet = 0;
    for (size_t idx = 0; idx < max_pts; ++idx) {
        const double L = table_l0_ + idx * table_step_;
        cplx g = 0, dg = 0;
        for (size_t k = 0; k < weights_.size(); ++k) {
            const cplx z(spec_.sigma, ynodes_[k]);
            const cplx e = weights_[k] * std::exp(-z * L);
            g += e;
            dg += -z * e;
        }
        table_g_.push_back(g);
        table_dg_.push_back(dg);
        peak_abs_ = std::max(peak_abs_, std::abs(g));
        quiet = std::abs(g) < 1e-16 * peak_abs_ ? quiet + 1 : 0;
        if (quiet >= 50 && L > 1.0) break;
    }
}

cplx AfeKernel::value(double xi) const {
    if (xi <= 0) throw std::domain_error("AfeKernel: xi must be positive");
    const double L = std::log(kPi * xi);
    cplx g = 0;
    for (size_t k = 0; k < weights_.size(); ++k) {
        const cplx z(spec_.sigma, ynodes_[k]);
        g += weights_[k] * std::exp(-z * L);
    }
    return g;
}

cplx AfeKernel::interp(double xi) const {
    if (xi <= 0) throw std::domain_error("AfeKernel: xi must be positive");
    const double L = std::log(kPi * xi);
    if (L < table_l0_) return value(xi);
    const double pos = (L - table_l0_) / table_step_;
    const size_t idx = static_cast<size_t>(pos);
    if (idx + 1 >= table_g_.size()) return {};  // beyond the decay cutoff
    const double u = pos - idx;
    const double u2 = u * u, u3 = u2 * u;
    const double h00 = 2 * u3 - 3 * u2 + 1, h10 = u3 - 2 * u2 + u;
    const double h01 = -2 * u3 + 3 * u2, h11 = u3 - u2;
    return h00 * table_g_[idx] + h10 * table_step_ * table_dg_[idx] +
           h01 * table_g_[idx + 1] + h11 * table_step_ * table_dg_[idx + 1];
}

double AfeKernel::cutoff_xi(double tol) const {
    size_t idx = table_g_.size();
    while (idx > 0 && std::abs(table_g_[idx - 1]) < tol) --idx;
    const double L = table_l0_ + idx * table_step_;
    return std::exp(L) / kPi;
}

const AfeKernel& shared_kernel(cplx a_num, cplx a_den, const ContourSpec& spec) {
    using Key = std::tuple<double, double, double, double, double, double, double, int>;
    static std::mutex mu;
    static std::map<Key, std::unique_ptr<AfeKernel>> cache;
    const Key key{a_num.real(), a_num.imag(), a_den.real(), a_den.imag(),
                  spec.sigma,   spec.half_width, spec.step,
                  static_cast<int>(spec.h_choice)};
    std::scoped_lock lock(mu);
    auto it = cache.find(key);
    if (it == cache.end())
        it = cache.emplace(key, std::make_unique<AfeKernel>(a_num, a_den, spec)).first;
    return *it->second;
}

cplx gfactor(double t, double xi, const ContourSpec& spec) {
    const cplx a(0.5, t);
    return shared_kernel(a, a, spec).value(xi);
}

}  // namespace zlab
