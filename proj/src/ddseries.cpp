#include "zlab/ddseries.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <vector>

#include "zlab/parallel.hpp"

namespace zlab {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

size_t primary_count(const std::vector<GaussianInt>& tab, long long X) {
    const auto it = std::upper_bound(
        tab.begin(), tab.end(), X,
        [](long long x, GaussianInt z) { return x < norm(z); });
    return static_cast<size_t>(it - tab.begin());
}

size_t primary_lower(const std::vector<GaussianInt>& tab, long long X) {
    const auto it = std::lower_bound(
        tab.begin(), tab.end(), X,
        [](GaussianInt z, long long x) { return norm(z) < x; });
    return static_cast<size_t>(it - tab.begin());
}

double smooth_f(double y) { return y > 0 ? std::exp(-1.0 / y) : 0.0; }

// 0 for x <= 1, 1 for x >= 2, smooth in between
double smooth_step(double x) {
    const double a = smooth_f(x - 1.0), b = smooth_f(2.0 - x);
    if (a == 0.0) return 0.0;
    if (b == 0.0) return 1.0;
    return a / (a + b);
}

double bump_12(double x) {
    if (x <= 1.0 || x >= 2.0) return 0.0;
    const double y = 2.0 * x - 3.0;
    return std::exp(1.0 - 1.0 / (1.0 - y * y));
}

cplx npow(double n, cplx e) { return std::exp(e * std::log(n)); }

// Contour settings for the critical-line values feeding the window sums.
// The downstream gates (bound ratios, conjugation residuals) live around
// 1e-10, so the kernel tail is cut at 1e-9 instead of the much costlier
// default; conjugation symmetry is exact either way because the t and -t
// kernels are conjugate node by node.
const ContourSpec& window_contour() {
    static const ContourSpec sp = [] {
        ContourSpec s;
        s.kernel_tol = 1e-9;
        return s;
    }();
    return sp;
}

}  // namespace

WeightSpec WeightSpec::bump() {
    WeightSpec w;
    w.lo_ = 1.0;
    w.hi_ = 2.0;
    w.name_ = "bump";
    w.f_ = bump_12;
    return w;
}

WeightSpec WeightSpec::dyadic(int level) {
    WeightSpec w;
    const double scale = std::ldexp(1.0, level);
    w.lo_ = scale;
    w.hi_ = 4.0 * scale;
    w.name_ = "dyadic" + std::to_string(level);
    w.f_ = [scale](double x) {
        return smooth_step(x / scale) - smooth_step(x / (2.0 * scale));
    };
    return w;
}

WeightSpec operator+(const WeightSpec& a, const WeightSpec& b) {
    WeightSpec w;
    w.lo_ = std::min(a.lo_, b.lo_);
    w.hi_ = std::max(a.hi_, b.hi_);
    w.name_ = a.name_ + "+" + b.name_;
    auto fa = a.f_, fb = b.f_;
    w.f_ = [fa, fb](double x) { return fa(x) + fb(x); };
    return w;
}

ConductorParams::ConductorParams(double u_, double t_) : u(u_), t(t_) {
    auto sq = [](double x) { return x * x; };
    U = sq(0.5 + std::abs(u));
    T = sq(0.5 + std::abs(t));
    S = sq(0.5 + std::abs(u + t));
    C = S * U;
    X = S * T * U;
    Cut = (0.25 + t * t) * (0.25 + (u + t) * (u + t)) * (0.25 + u * u);
}

const QuadraticCharacter& cached_char(GaussianInt m0, UnitTwist psi) {
    static std::mutex mu;
    static std::map<std::tuple<long long, long long, int>,
                    std::unique_ptr<QuadraticCharacter>> cache;
    std::lock_guard<std::mutex> lock(mu);
    const auto key = std::make_tuple(m0.re, m0.im, static_cast<int>(psi));
    auto& slot = cache[key];
    if (!slot) slot = std::make_unique<QuadraticCharacter>(m0, psi);
    return *slot;
}

cplx z_direct(cplx s, cplx w, UnitTwist psi, UnitTwist psi2, long long M, long long N) {
    if (s.real() <= 1.0 || w.real() <= 1.0 || (2.0 * (s + w) - 1.0).real() <= 1.0)
        throw std::domain_error("z_direct: outside the convergence region");
    if (M < 1 || N < 1) throw std::domain_error("z_direct: truncations must be >= 1");
    const auto& tab = PrimaryTable::upto(std::max(M, N));
    const size_t mc = primary_count(tab, M);
    const size_t nc = primary_count(tab, N);
    const cplx outer = block_sum(static_cast<long long>(mc), [&](long long i) -> cplx {
        const GaussianInt m = tab[static_cast<size_t>(i)];
        const SymbolTable sym(m);
        cplx inner = 0;
        for (size_t j = 0; j < nc; ++j) {
            const GaussianInt n = tab[j];
            const int c = sym(n) * psi_eval(psi, n);
            if (c) inner += static_cast<double>(c) / npow(static_cast<double>(norm(n)), s);
        }
        return inner * static_cast<double>(psi_eval(psi2, m)) /
               npow(static_cast<double>(norm(m)), w);
    });
    return zeta_k2(2.0 * (s + w) - 1.0) * outer;
}

namespace {

// 2-removed L(s, chi_{m0} psi) for square-free primary m0.
cplx l2_value(GaussianInt m0, UnitTwist psi, cplx s) {
    if (m0 == GaussianInt{1, 0} && psi == UnitTwist::one) return zeta_k2(s);
    const QuadraticCharacter& chi = cached_char(m0, psi);
    if (s.real() >= 2.0) return l_direct(chi, s, 2'000'000).value;
    return l_continued(chi, s).value * two_euler_factor(chi, s);
}

}  // namespace

cplx z_via_l(cplx s, cplx w, UnitTwist psi, UnitTwist psi2, long long M) {
    if (s.real() <= 0.0) throw std::domain_error("z_via_l: need Re s > 0");
    if (M < 1) throw std::domain_error("z_via_l: M must be >= 1");
    const auto& tab = PrimaryTable::upto(M);
    const size_t mc = primary_count(tab, M);
    std::map<std::pair<long long, long long>, cplx> lcache;  // per-call, keyed by m0
    cplx sum = 0;
    for (size_t i = 0; i < mc; ++i) {
        const GaussianInt m = tab[i];
        const GaussianInt m0 = squarefree_decompose(m).first;
        auto [it, fresh] = lcache.try_emplace({m0.re, m0.im});
        if (fresh) it->second = l2_value(m0, psi, s);
        sum += euler_adjust(m, s, psi) * it->second *
               static_cast<double>(psi_eval(psi2, m)) /
               npow(static_cast<double>(norm(m)), w);
    }
    return zeta_k2(2.0 * (s + w) - 1.0) * sum;
}

double check_fe_nontrivial(cplx s, cplx w, UnitTwist psi, UnitTwist psi2, long long M) {
    if (psi == UnitTwist::one)
        throw std::domain_error("check_fe_nontrivial: psi must be a nontrivial twist");
    const cplx lhs = z_via_l(1.0 - s, s + w - 0.5, psi, psi2, M);
    const double npsi =
        static_cast<double>(cached_char(GaussianInt{1, 0}, psi).conductor_norm());
    const cplx factor = std::pow(cplx(kPi), 1.0 - 2.0 * s) *
                        std::pow(cplx(npsi), (2.0 * s - 1.0) / 2.0) *
                        std::exp(log_gamma(s) - log_gamma(1.0 - s));
    const cplx rhs = factor * z_via_l(s, w, psi, psi2, M);
    return std::abs(lhs - rhs);
}

double check_fe_psi1(cplx s, cplx w, UnitTwist psi2, long long M) {
    const cplx lhs = z_via_l(1.0 - s, s + w - 0.5, UnitTwist::one, psi2, M);

    // base values Z(s,w;psi_1, psi2 * rho) over the four unit twists rho
    cplx zb[4];
    for (UnitTwist rho : kAllTwists)
        zb[static_cast<int>(rho)] =
            z_via_l(s, w, UnitTwist::one, cg_mul(psi2, rho), M);
    const cplx z1 = zb[static_cast<int>(UnitTwist::one)];
    const cplx zi = zb[static_cast<int>(UnitTwist::i)];
    const cplx zp = zb[static_cast<int>(UnitTwist::one_plus_i)];
    const cplx zq = zb[static_cast<int>(UnitTwist::i_one_plus_i)];

    // (psi_1+psi_i)(psi_1+psi_{1+i}), (psi_1+psi_i)(psi_1-psi_{1+i}),
    // (psi_1-psi_i) expanded through the group law
    const cplx zc1 = z1 + zi + zp + zq;
    const cplx zc2 = z1 + zi - zp - zq;
    const cplx zc3 = z1 - zi;

    const cplx p2s = std::exp(-s * std::log(2.0));          // 2^{-s}
    const cplx p2c = std::exp(-(1.0 - s) * std::log(2.0));  // 2^{-(1-s)}
    const cplx rhs = 0.5 * std::pow(cplx(kPi), 1.0 - 2.0 * s) *
                     std::exp(log_gamma(s) - log_gamma(1.0 - s)) *
                     (0.5 * (1.0 - p2c) / (1.0 - p2s) * zc1 +
                      0.5 * (1.0 + p2c) / (1.0 + p2s) * zc2 +
                      std::exp((2.0 * s - 1.0) * std::log(2.0)) * zc3);
    return std::abs(lhs - rhs);
}

cplx residue_s1(cplx w, UnitTwist psi2, long long M) {
    const double d[3] = {0.1, 0.05, 0.025};
    cplx f[3];
    for (int i = 0; i < 3; ++i)
        f[i] = d[i] * z_via_l(cplx(1.0 + d[i], 0.0) , w, UnitTwist::one, psi2, M);
    // Neville extrapolation to delta = 0
    const cplx f01 = (d[1] * f[0] - d[0] * f[1]) / (d[1] - d[0]);
    const cplx f12 = (d[2] * f[1] - d[1] * f[2]) / (d[2] - d[1]);
    return (d[2] * f01 - d[0] * f12) / (d[2] - d[0]);
}

struct LCriticalCache::Slot {
    std::once_flag once;
    cplx value;
};

cplx LCriticalCache::get(GaussianInt d0, UnitTwist psi, double t) {
    std::shared_ptr<Slot> slot;
    {
        std::lock_guard<std::mutex> lock(mu_);
        auto& ref = map_[{d0.re, d0.im, static_cast<int>(psi), t}];
        if (!ref) ref = std::make_shared<Slot>();
        slot = ref;
    }
    std::call_once(slot->once, [&] {
        if (d0 == GaussianInt{1, 0} && psi == UnitTwist::one)
            slot->value = zeta_k2(cplx(0.5, t));
        else {
            const QuadraticCharacter& chi = cached_char(d0, psi);
            slot->value =
                l_critical(chi, t, window_contour()).value * two_euler_factor(chi, cplx(0.5, t));
        }
    });
    return slot->value;
}

size_t LCriticalCache::size() const {
    std::lock_guard<std::mutex> lock(mu_);
    return map_.size();
}

namespace {

cplx d_sum_impl(double t, double u, double P, const WeightSpec& W, UnitTwist psi,
                UnitTwist psi2, LCriticalCache* cache) {
    LCriticalCache local;
    if (!cache) cache = &local;
    const double lo = W.lo() * P, hi = W.hi() * P;
    if (hi < 1.0) return {};
    const cplx sc(0.5, t);
    const long long mmax =
        std::max<long long>(1, static_cast<long long>(std::sqrt(hi)));
    const auto& mt = PrimaryTable::upto(mmax);
    const size_t mcount = primary_count(mt, mmax);
    std::vector<cplx> terms;
    for (size_t i = 0; i < mcount; ++i) {
        const GaussianInt m = mt[i];
        const double nm2 = static_cast<double>(norm(m)) * static_cast<double>(norm(m));
        const long long dhi = static_cast<long long>(hi / nm2);
        if (dhi < 1) continue;
        const long long dlo = static_cast<long long>(std::ceil(lo / nm2));
        const auto& dt = PrimaryTable::upto(dhi);
        const size_t j0 = primary_lower(dt, std::max<long long>(1, dlo));
        const size_t j1 = primary_count(dt, dhi);
        const cplx mfac = 1.0 / npow(static_cast<double>(norm(m)), cplx(1.0, 2.0 * (u + t)));
        for (size_t j = j0; j < j1; ++j) {
            const GaussianInt d = dt[j];
            const double nd = static_cast<double>(norm(d));
            const double wv = W(nd * nm2 / P);
            if (wv == 0.0) continue;
            const GaussianInt d0 = squarefree_decompose(d).first;
            const cplx l2 = cache->get(d0, psi, t);
            terms.push_back(euler_adjust(d, sc, psi) * l2 *
                            static_cast<double>(psi_eval(psi2, d)) /
                            npow(nd, cplx(0.5, u)) * mfac * wv);
        }
    }
    return block_sum(static_cast<long long>(terms.size()),
                     [&](long long k) { return terms[static_cast<size_t>(k)]; });
}

}  // namespace

cplx d_sum(double t, double u, double P, const WeightSpec& W, UnitTwist psi,
           UnitTwist psi2, LCriticalCache* cache) {
    return d_sum_impl(t, u, P, W, psi, psi2, cache);
}

cplx d_sum_reference(double t, double u, double P, const WeightSpec& W,
                     UnitTwist psi, UnitTwist psi2) {
    // same enumeration, but every L-value recomputed from scratch
    const double lo = W.lo() * P, hi = W.hi() * P;
    if (hi < 1.0) return {};
    const cplx sc(0.5, t);
    const long long mmax =
        std::max<long long>(1, static_cast<long long>(std::sqrt(hi)));
    const auto& mt = PrimaryTable::upto(mmax);
    const size_t mcount = primary_count(mt, mmax);
    std::vector<cplx> terms;
    for (size_t i = 0; i < mcount; ++i) {
        const GaussianInt m = mt[i];
        const double nm2 = static_cast<double>(norm(m)) * static_cast<double>(norm(m));
        const long long dhi = static_cast<long long>(hi / nm2);
        if (dhi < 1) continue;
        const long long dlo = static_cast<long long>(std::ceil(lo / nm2));
        const auto& dt = PrimaryTable::upto(dhi);
        const size_t j0 = primary_lower(dt, std::max<long long>(1, dlo));
        const size_t j1 = primary_count(dt, dhi);
        const cplx mfac = 1.0 / npow(static_cast<double>(norm(m)), cplx(1.0, 2.0 * (u + t)));
        for (size_t j = j0; j < j1; ++j) {
            const GaussianInt d = dt[j];
            const double nd = static_cast<double>(norm(d));
            const double wv = W(nd * nm2 / P);
            if (wv == 0.0) continue;
            const GaussianInt d0 = squarefree_decompose(d).first;
            cplx l2;
            if (d0 == GaussianInt{1, 0} && psi == UnitTwist::one)
                l2 = zeta_k2(cplx(0.5, t));
            else {
                QuadraticCharacter chi(d0, psi);
                l2 = l_critical(chi, t, window_contour()).value *
                     two_euler_factor(chi, cplx(0.5, t));
            }
            terms.push_back(euler_adjust(d, sc, psi) * l2 *
                            static_cast<double>(psi_eval(psi2, d)) /
                            npow(nd, cplx(0.5, u)) * mfac * wv);
        }
    }
    return block_sum(static_cast<long long>(terms.size()),
                     [&](long long k) { return terms[static_cast<size_t>(k)]; });
}

cplx bilinear_char_sum(long long Mmax, long long Nmax, cplx a_exp, cplx b_exp,
                       UnitTwist psi, UnitTwist psi2, cplx conductor_power) {
    if (Mmax < 1 || Nmax < 1)
        throw std::domain_error("bilinear_char_sum: truncations must be >= 1");
    const auto& tab = PrimaryTable::upto(std::max(Mmax, Nmax));
    const size_t mc = primary_count(tab, Mmax);
    const size_t nc = primary_count(tab, Nmax);
    cplx total = 0;
    for (size_t i = 0; i < mc; ++i) {
        const GaussianInt d0 = tab[i];
        if (!is_squarefree(d0)) continue;
        const SymbolTable sym(d0);
        const cplx inner = block_sum(static_cast<long long>(nc), [&](long long j) -> cplx {
            const GaussianInt n = tab[static_cast<size_t>(j)];
            const int c = sym(n) * psi_eval(psi, n);
            if (c == 0) return {};
            return static_cast<double>(c) / npow(static_cast<double>(norm(n)), a_exp);
        });
        cplx cfac = 1.0;
        if (conductor_power != cplx(0.0)) {
            const double ncond =
                static_cast<double>(cached_char(d0, psi).conductor_norm());
            cfac = npow(ncond, conductor_power);
        }
        total += inner * cfac * static_cast<double>(psi_eval(psi2, d0)) /
                 npow(static_cast<double>(norm(d0)), b_exp);
    }
    return total;
}

}  // namespace zlab
