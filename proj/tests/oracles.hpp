#pragma once
// Independent reference computations used only by tests.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <utility>
#include <vector>

namespace oracle {

/// T_d(x) by the three-term recurrence.
inline double cheb_T(int d, double x) {
    if (d == 0) return 1.0;
    double t0 = 1.0, t1 = x;
    for (int k = 2; k <= d; ++k) {
        const double t2 = 2.0 * x * t1 - t0;
        t0 = t1;
        t1 = t2;
    }
    return t1;
}

/// sum_k c_k cos(k arccos x), term by term.
inline double cheb_sum(const std::vector<double>& c, double x) {
    const double th = std::acos(std::clamp(x, -1.0, 1.0));
    double s = 0.0;
    for (std::size_t k = 0; k < c.size(); ++k) s += c[k] * std::cos(static_cast<double>(k) * th);
    return s;
}

/// Gauss-Legendre nodes and weights on [-1, 1] via Newton iteration on P_n.
inline std::pair<std::vector<double>, std::vector<double>> gauss_legendre(int n) {
    std::vector<double> x(n), w(n);
    for (int i = 0; i < n; ++i) {
        double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = z;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (z * p1 - p0) / (z * z - 1.0);
            const double dz = p1 / dp;
            z -= dz;
            if (std::fabs(dz) < 1e-16) break;
        }
        x[i] = z;
        w[i] = 2.0 / ((1.0 - z * z) * dp * dp);
    }
    return {x, w};
}

template <class F>
double gl_panel(F f, double a, double b) {
    static const auto rule = gauss_legendre(20);
    const double h = 0.5 * (b - a), m = 0.5 * (a + b);
    double s = 0.0;
    for (std::size_t i = 0; i < rule.first.size(); ++i) s += rule.second[i] * f(m + h * rule.first[i]);
    return h * s;
}

template <class F>
double adaptive_gl(F f, double a, double b, double tol, int depth = 0) {
    const double whole = gl_panel(f, a, b);
    const double m = 0.5 * (a + b);
    const double halves = gl_panel(f, a, m) + gl_panel(f, m, b);
    if (std::fabs(whole - halves) <= tol || depth > 40) return halves;
    return adaptive_gl(f, a, m, 0.5 * tol, depth + 1) + adaptive_gl(f, m, b, 0.5 * tol, depth + 1);
}

/// erf(x) = 2/sqrt(pi) int_0^x exp(-t^2) dt by adaptive Gauss-Legendre quadrature.
inline double erf(double x) {
    if (x == 0.0) return 0.0;
    const double s = x < 0 ? -1.0 : 1.0;
    const double ax = std::min(std::fabs(x), 9.0);
    const double v = adaptive_gl([](double t) { return std::exp(-t * t); }, 0.0, ax, 1e-14);
    return s * 2.0 / std::sqrt(std::numbers::pi) * v;
}

inline double log_binom_pmf(std::int64_t k, std::int64_t n, double p) {
    if (p <= 0.0) return k == 0 ? 0.0 : -INFINITY;
    if (p >= 1.0) return k == n ? 0.0 : -INFINITY;
    return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0) + k * std::log(p) +
           (n - k) * std::log1p(-p);
}

/// P[X >= k] for X ~ Bin(n, p), summed in log space.
inline double upper_tail(std::int64_t k, std::int64_t n, double p) {
    double mx = -INFINITY;
    std::vector<double> lt;
    for (std::int64_t j = k; j <= n; ++j) {
        lt.push_back(log_binom_pmf(j, n, p));
        mx = std::max(mx, lt.back());
    }
    if (mx == -INFINITY) return 0.0;
    double s = 0.0;
    for (double v : lt) s += std::exp(v - mx);
    return std::min(1.0, std::exp(mx) * s);
}

/// P[X <= k].
inline double lower_tail(std::int64_t k, std::int64_t n, double p) { return upper_tail(n - k, n, 1.0 - p); }

/// Clopper-Pearson by bisection on the exact tails.
inline std::pair<double, double> clopper_pearson(std::int64_t h, std::int64_t n, double alpha) {
    auto solve = [](auto g) {  // g increasing in p, find g(p) = 0
        double lo = 0.0, hi = 1.0;
        for (int it = 0; it < 200 && hi - lo > 1e-14; ++it) {
            const double m = 0.5 * (lo + hi);
            (g(m) < 0.0 ? lo : hi) = m;
        }
        return 0.5 * (lo + hi);
    };
    const double lo = h == 0 ? 0.0 : solve([&](double p) { return upper_tail(h, n, p) - alpha / 2; });
    const double hi = h == n ? 1.0 : solve([&](double p) { return alpha / 2 - lower_tail(h, n, p); });
    return {lo, hi};
}

using C = std::complex<double>;
using M2 = std::array<std::array<C, 2>, 2>;

inline M2 mul(const M2& x, const M2& y) {
    M2 r{};
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (int k = 0; k < 2; ++k) r[i][j] += x[i][k] * y[k][j];
    return r;
}

/// (R e^{i phi Z})^(d-1) R written out entry by entry.
inline M2 qsp(double a, const std::vector<double>& phases) {
    const double ab = std::sqrt(1.0 - a * a);
    const M2 R{{{C(a), C(ab)}, {C(ab), C(-a)}}};
    M2 u = R;
    for (double ph : phases) {
        const M2 Z{{{std::exp(C(0, ph)), C(0)}, {C(0), std::exp(C(0, -ph))}}};
        u = mul(mul(u, Z), R);
    }
    return u;
}

}  // namespace oracle
