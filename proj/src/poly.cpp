#include "qae/poly.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>

#include "qae/chebfft.hpp"
#include "qae/errors.hpp"
#include "qae/kernels.hpp"

namespace qae {

namespace {

std::atomic<std::size_t> g_clamp_defects{0};

constexpr double kClampSlack = 1e-9;

int make_odd(int d) { return d % 2 == 0 ? d + 1 : d; }
int make_even(int d) { return d % 2 == 0 ? d : d + 1; }

std::size_t interp_size(int d) {
    return chebfft::good_size(std::max<std::size_t>(256, 4 * static_cast<std::size_t>(d + 1)));
}

// Truncated interpolant of f with the coefficient class of the wrong parity removed.
std::vector<double> parity_series(const std::function<double(double)>& f, int d, Parity parity) {
    std::vector<double> c = chebfft::interpolate(f, interp_size(d));
    c.resize(static_cast<std::size_t>(d) + 1);
    const std::size_t drop = parity == Parity::Even ? 1 : 0;
    for (std::size_t k = drop; k < c.size(); k += 2) c[k] = 0.0;
    return c;
}

// Upper bound on max |P| over [-1, 1] from values on first-kind nodes. A degree-d polynomial
// exceeds its maximum over m nodes by at most a factor 1/cos(d pi / 2m) (Ehlich-Zeller); m is
// picked so that factor stays below 1 + slack.
// Node count m for which a degree-d polynomial's nodal maximum is within 1 + slack of its true one.
std::size_t ez_nodes(double d, double slack) {
    const double x = std::acos(1.0 / (1.0 + slack));
    return static_cast<std::size_t>(std::ceil(std::numbers::pi * d / (2.0 * x)));
}

double certified_peak(const std::vector<double>& c, double slack, std::size_t* nodes = nullptr) {
    const double d = static_cast<double>(c.size() - 1);
    const std::size_t m = chebfft::good_size(std::max(32 * c.size(), ez_nodes(d, slack)));
    const std::vector<double> v = chebfft::values_on_nodes(c, m);
    const double node_peak = kernels::max_abs(v.data(), v.size());
    if (nodes) *nodes = m;
    return node_peak / std::cos(std::numbers::pi * d / (2.0 * static_cast<double>(m)));
}

// Node maximum of |P| polished by a golden-section search between the neighbouring nodes.
// A lower bound on the true maximum, usually tight to rounding.
double refined_peak(const std::vector<double>& c, const std::vector<double>& vals) {
    const std::size_t m = vals.size();
    std::size_t j = 0;
    for (std::size_t i = 1; i < m; ++i)
        if (std::fabs(vals[i]) > std::fabs(vals[j])) j = i;
    double lo = j + 1 < m ? chebfft::node(j + 1, m) : -1.0;
    double hi = j > 0 ? chebfft::node(j - 1, m) : 1.0;
    auto g = [&](double x) { return std::fabs(kernels::clenshaw(c.data(), c.size(), x)); };
    const double r = 0.5 * (std::sqrt(5.0) - 1.0);
    double x1 = hi - r * (hi - lo), x2 = lo + r * (hi - lo);
    double f1 = g(x1), f2 = g(x2);
    for (int it = 0; it < 60; ++it) {
        if (f1 < f2) {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + r * (hi - lo);
            f2 = g(x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - r * (hi - lo);
            f1 = g(x1);
        }
    }
    return std::max({std::fabs(vals[j]), f1, f2});
}

PolySpec series_spec(std::shared_ptr<const std::vector<double>> c, double arg_scale) {
    PolySpec p;
    p.value = [c, arg_scale](double x) { return kernels::clenshaw(c->data(), c->size(), x * arg_scale); };
    p.p2_raw = [c, arg_scale](double x) {
        const double v = kernels::clenshaw(c->data(), c->size(), x * arg_scale);
        return v * v;
    };
    p.value_batch = [c, arg_scale](const double* x, double* out, std::size_t m) {
        if (arg_scale == 1.0) {
            kernels::clenshaw_batch(c->data(), c->size(), x, out, m);
            return;
        }
        std::vector<double> t(x, x + m);
        for (double& v : t) v *= arg_scale;
        kernels::clenshaw_batch(c->data(), c->size(), t.data(), out, m);
    };
    return p;
}

}  // namespace

std::string_view to_string(Family f) {
    switch (f) {
        case Family::Chebyshev: return "chebyshev";
        case Family::Line: return "line";
        case Family::Erf: return "erf";
        case Family::Hybrid: return "hybrid";
        case Family::FixedPointJ: return "J";
        case Family::FixedPointK: return "K";
        case Family::Monomial: return "monomial";
        case Family::Custom: return "custom";
    }
    return "?";
}

std::string_view to_string(PolyMode m) { return m == PolyMode::Ideal ? "ideal" : "polynomial"; }

double PolySpec::eval(double x) const {
    if (!value) throw PreconditionViolated("polynomial has no value evaluator");
    return value(x);
}

double PolySpec::p2(double x) const {
    const double r = p2_raw(x);
    if (r < -kClampSlack || r > 1.0 + kClampSlack) g_clamp_defects.fetch_add(1, std::memory_order_relaxed);
    return std::clamp(r, 0.0, 1.0);
}

double PolySpec::q2(double x) const {
    const double s = 1.0 - x * x;
    if (s <= 0.0) return 0.0;
    return (1.0 - p2(x)) / s;
}

void PolySpec::eval_batch(const double* x, double* out, std::size_t m) const {
    if (value_batch) return value_batch(x, out, m);
    for (std::size_t i = 0; i < m; ++i) out[i] = eval(x[i]);
}

std::size_t clamp_defects() { return g_clamp_defects.load(); }

double cheb_T(int d, double x) {
    if (d < 0) throw DomainError("cheb_T: negative degree");
    if (d == 0) return 1.0;
    if (std::fabs(x) <= 1.0) return std::cos(d * std::acos(x));
    const double mag = std::cosh(d * std::acosh(std::fabs(x)));
    return (x < 0.0 && d % 2 == 1) ? -mag : mag;
}

double cheb_T_ratio(int l, double y, double z) {
    const double L = l * std::acosh(z);
    if (std::fabs(y) <= 1.0) {
        const double num = std::cos(l * std::acos(y));
        if (L < 700.0) return num / std::cosh(L);
        return 2.0 * num * std::exp(-L);
    }
    const double Y = l * std::acosh(std::fabs(y));
    const double mag = std::exp(Y - L) * (1.0 + std::exp(-2.0 * Y)) / (1.0 + std::exp(-2.0 * L));
    return (y < 0.0 && l % 2 == 1) ? -mag : mag;
}

PolySpec build_chebyshev(int d) {
    if (d < 1) throw DomainError("build_chebyshev: degree must be >= 1");
    PolySpec p;
    p.family = Family::Chebyshev;
    p.parity = d % 2 == 0 ? Parity::Even : Parity::Odd;
    p.kind = Kind::Pellian;
    p.degree = d;
    p.value = [d](double x) { return cheb_T(d, x); };
    p.p2_raw = [d](double x) {
        const double v = cheb_T(d, x);
        return v * v;
    };
    return p;
}

PolySpec build_monomial() {
    PolySpec p;
    p.family = Family::Monomial;
    p.parity = Parity::Odd;
    p.kind = Kind::Pellian;
    p.degree = 1;
    p.value = [](double x) { return x; };
    p.p2_raw = [](double x) { return x * x; };
    return p;
}

int repair_poly_degree(double kappa, double eta) {
    if (!(kappa > 0.0 && kappa < 1.0)) throw DomainError("repair pair: kappa outside (0,1)");
    if (!(eta > 0.0 && eta < 1.0)) throw DomainError("repair pair: eta outside (0,1)");
    const double raw = std::log(2.0 / std::sqrt(eta)) / kappa;
    if (raw > 2.0e9) throw DomainError("repair pair: degree overflow");
    return make_odd(std::max(1, static_cast<int>(std::ceil(raw - 1e-12))));
}

std::pair<PolySpec, PolySpec> build_repair_pair(double kappa, double eta) {
    const int l = repair_poly_degree(kappa, eta);
    const double kbar = std::sqrt(1.0 - kappa * kappa);
    const double z = 1.0 / kbar;

    PolySpec J;
    J.family = Family::FixedPointJ;
    J.parity = Parity::Odd;
    J.kind = Kind::Pellian;
    J.degree = l;
    J.params.kappa = kappa;
    J.params.eta = eta;
    J.params.l = l;
    J.value = [l, kbar, z](double x) { return cheb_T_ratio(l, x / kbar, z); };
    J.p2_raw = [l, kbar, z](double x) {
        const double v = cheb_T_ratio(l, x / kbar, z);
        return v * v;
    };

    PolySpec K;
    K.family = Family::FixedPointK;
    K.parity = Parity::Odd;
    K.kind = Kind::Pellian;
    K.degree = l;
    K.params = J.params;
    K.p2_raw = [l, kbar, z](double x) {
        const double xb = std::sqrt(std::max(0.0, 1.0 - x * x));
        const double v = cheb_T_ratio(l, xb / kbar, z);
        return 1.0 - v * v;
    };
    return {std::move(J), std::move(K)};
}

PolySpec build_line_poly(double a_min, double a_max, double eta, PolyMode mode) {
    if (!(a_min >= 0.0 && a_min < a_max && a_max <= 1.0))
        throw DomainError("build_line_poly: need 0 <= a_min < a_max <= 1");
    if (!(eta > 0.0 && eta < 1.0)) throw DomainError("build_line_poly: eta outside (0,1)");
    const double delta = a_max - a_min;
    const double raw = std::ceil(1.0 / (eta * delta) - 1e-9);
    if (raw > 5.0e7) throw ConstructionFailed("build_line_poly: degree beyond supported range");
    const int base = std::max(2, make_even(static_cast<int>(raw)));
    auto line = [a_min, delta](double x) { return std::clamp((std::fabs(x) - a_min) / delta, 0.0, 1.0); };

    PolySpec p;
    p.family = Family::Line;
    p.parity = Parity::Even;
    p.kind = Kind::SemiPellian;
    p.params.eta = eta;
    p.params.lo = a_min;
    p.params.hi = a_max;
    p.params.base_degree = base;

    if (mode == PolyMode::Ideal) {
        p.degree = base;
        p.value = [line](double x) { return std::sqrt(line(x)); };
        p.p2_raw = line;
        p.certificate = SupNormCertificate{10 * static_cast<std::size_t>(base), 0.0, eta, true};
        return p;
    }

    auto target = [line](double x) { return std::sqrt(line(x)); };
    const int cap = 8 * base;
    for (int d = base; d <= cap; d = make_even(static_cast<int>(std::ceil(1.25 * d)))) {
        std::vector<double> c = parity_series(target, d, Parity::Even);

        const double peak = certified_peak(c, 0.05 * eta);

        // On [a_min, a_max] the error P^2 - line is a polynomial of degree 2d, so its maximum over
        // first-kind nodes of that interval bounds it up to the Ehlich-Zeller factor.
        const double d2 = 2.0 * d;
        const std::size_t m_line = std::max<std::size_t>(200, ez_nodes(d2, 0.02));
        std::vector<double> xs(m_line), vs(m_line);
        for (std::size_t i = 0; i < m_line; ++i)
            xs[i] = a_min + 0.5 * delta * (1.0 + chebfft::node(i, m_line));
        kernels::clenshaw_batch(c.data(), c.size(), xs.data(), vs.data(), m_line);

        const double s = peak > 1.0 ? (1.0 - 1e-12) / peak : 1.0;
        double node_err = 0.0;
        for (std::size_t i = 0; i < m_line; ++i) {
            const double v = s * vs[i];
            node_err = std::max(node_err, std::fabs(v * v - (xs[i] - a_min) / delta));
        }
        const double err = node_err / std::cos(std::numbers::pi * d2 / (2.0 * static_cast<double>(m_line)));
        if (err <= eta) {
            for (double& v : c) v *= s;
            auto shared = std::make_shared<const std::vector<double>>(std::move(c));
            PolySpec q = series_spec(shared, 1.0);
            q.family = p.family;
            q.parity = p.parity;
            q.kind = p.kind;
            q.params = p.params;
            q.degree = d;
            q.certificate = SupNormCertificate{32 * static_cast<std::size_t>(d + 1) + m_line, err, eta, true};
            return q;
        }
    }
    throw ConstructionFailed("build_line_poly: certificate failed up to degree cap");
}

int erf_initial_degree(double k, double eta) {
    const double L = std::log(1.0 / eta);
    return make_odd(std::max(1, static_cast<int>(std::ceil(std::sqrt((k * k + L) * L)))));
}

namespace {

// The node grid of the search underestimates the error by a fraction of a percent.
constexpr double kSearchMargin = 0.995;

struct ErfAttempt {
    std::vector<double> c;
    double err = 0.0;
    std::size_t grid = 0;
};

// Upper bound on max |P(t) - erf(2kt)| over [-1, 1]. erf is replaced by a series converged far
// below eta, whose dropped tail is added back, so the difference is a polynomial.
double erf_error_bound(double k, const std::vector<double>& c, double eta, std::size_t& grid) {
    auto f = [k](double t) { return std::erf(2.0 * k * t); };
    const int d = static_cast<int>(c.size()) - 1;
    int n = make_odd(std::max(d, static_cast<int>(2.5 * erf_initial_degree(k, 1e-16))));
    for (;;) {
        std::vector<double> ref = chebfft::interpolate(f, interp_size(n));
        double tail = 0.0;
        for (std::size_t j = static_cast<std::size_t>(n) + 1; j < ref.size(); ++j) tail += std::fabs(ref[j]);
        if (tail > 1e-3 * eta && n < 1 << 26) {
            n = make_odd(2 * n);
            continue;
        }
        ref.resize(static_cast<std::size_t>(n) + 1);
        for (std::size_t j = 0; j < ref.size(); j += 2) ref[j] = 0.0;
        for (std::size_t j = 0; j < c.size(); ++j) ref[j] -= c[j];
        return certified_peak(ref, 1e-3, &grid) + tail;
    }
}

// Series in t = x/2 on [-1, 1]; error measured on 10(d+1) nodes plus both endpoints
// (the series is odd, so t = 1 covers t = -1). Without `rigorous` the peak used for scaling
// is a polished node maximum padded by the slack the certified bound may add.
ErfAttempt erf_attempt(double k, int d, double eta, bool rigorous) {
    auto f = [k](double t) { return std::erf(2.0 * k * t); };
    ErfAttempt a;
    a.c = parity_series(f, d, Parity::Odd);
    a.grid = chebfft::good_size(10 * static_cast<std::size_t>(d + 1));
    std::vector<double> vals = chebfft::values_on_nodes(a.c, a.grid);
    const double end = kernels::clenshaw(a.c.data(), a.c.size(), 1.0);
    // Pull the overshoot of erf's plateau back under 1 so the result is also semi-Pellian.
    const double peak = rigorous ? certified_peak(a.c, 0.05 * eta)
                                 : std::max(refined_peak(a.c, vals), std::fabs(end)) * (1.0 + 0.05 * eta);
    const double s = peak > 1.0 ? (1.0 - 1e-12) / peak : 1.0;
    for (double& v : a.c) v *= s;
    if (rigorous) {
        a.err = erf_error_bound(k, a.c, eta, a.grid);
        return a;
    }
    double err = std::fabs(s * end - f(1.0));
    for (std::size_t j = 0; j < a.grid; ++j)
        err = std::max(err, std::fabs(s * vals[j] - f(chebfft::node(j, a.grid))));
    a.err = err;
    a.grid += 2;
    return a;
}

}  // namespace

PolySpec build_erf_poly(double k, double eta) {
    if (!(k >= 1.0)) throw DomainError("build_erf_poly: k must be >= 1");
    if (!(eta > 0.0 && eta < 1.0)) throw DomainError("build_erf_poly: eta outside (0,1)");
    const int d0 = erf_initial_degree(k, eta);
    const long cap = 16L * d0;

    int fail = -1;
    int pass = -1;
    ErfAttempt best;
    for (long d = d0; d <= cap; d = make_odd(static_cast<int>(std::ceil(1.25 * static_cast<double>(d))))) {
        ErfAttempt a = erf_attempt(k, static_cast<int>(d), eta, false);
        if (a.err <= kSearchMargin * eta) {
            pass = static_cast<int>(d);
            best = std::move(a);
            break;
        }
        fail = static_cast<int>(d);
    }
    if (pass < 0) throw ConstructionFailed("build_erf_poly: certificate failed up to degree cap");

    // Narrow down to the smallest passing odd degree.
    while (pass - fail > 2) {
        int mid = fail + (pass - fail) / 2;
        if (mid % 2 == 0) --mid;
        if (mid <= fail) mid += 2;
        if (mid >= pass) break;
        ErfAttempt a = erf_attempt(k, mid, eta, false);
        if (a.err <= kSearchMargin * eta) {
            pass = mid;
            best = std::move(a);
        } else {
            fail = mid;
        }
    }

    // Redo the winner with certified bounds; node sampling misses a little of the true error.
    best = erf_attempt(k, pass, eta, true);
    while (best.err > eta) {
        pass += 2;
        if (pass > cap) throw ConstructionFailed("build_erf_poly: certificate failed up to degree cap");
        best = erf_attempt(k, pass, eta, true);
    }

    auto shared = std::make_shared<const std::vector<double>>(std::move(best.c));
    PolySpec p = series_spec(shared, 0.5);
    p.family = Family::Erf;
    p.parity = Parity::Odd;
    p.kind = Kind::SemiPellian;
    p.degree = pass;
    p.params.k = k;
    p.params.eta = eta;
    p.params.base_degree = d0;
    p.certificate = SupNormCertificate{best.grid, best.err, eta, true};
    return p;
}

std::shared_ptr<const PolySpec> erf_poly_cached(double k, double eta) {
    static std::mutex mu;
    static std::map<std::pair<double, double>, std::shared_ptr<const PolySpec>> cache;
    const auto key = std::make_pair(k, eta);
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
    }
    auto built = std::make_shared<const PolySpec>(build_erf_poly(k, eta));
    std::lock_guard<std::mutex> lock(mu);
    return cache.emplace(key, std::move(built)).first->second;
}

double kappa_of_tau(double tau) {
    if (!(tau > 0.0 && tau < std::sqrt(2.0 / std::numbers::pi)))
        throw DomainError("kappa_of_tau: tau outside (0, sqrt(2/pi))");
    return 0.5 * std::sqrt(2.0 * std::log(2.0 / (std::numbers::pi * tau * tau)));
}

double hybrid_lambda(double eta, double tau) { return (2.0 * eta + tau) / (4.0 * eta + tau + 2.0); }

PolySpec build_hybrid_poly(double tau, double eta, double k, double a_mid, PolyMode mode, bool relaxed) {
    if (!(eta > 0.0 && eta < 1.0)) throw DomainError("build_hybrid_poly: eta outside (0,1)");
    if (!(a_mid >= 0.0 && a_mid <= 1.0)) throw DomainError("build_hybrid_poly: a_mid outside [0,1]");
    const double kap = kappa_of_tau(tau);
    if (!relaxed && a_mid < kap / k) throw PreconditionViolated("build_hybrid_poly: a_mid < kappa(tau)/k");

    auto erf = erf_poly_cached(k, eta);
    PolySpec p;
    p.family = Family::Hybrid;
    p.parity = Parity::Even;
    p.kind = Kind::SemiPellian;
    p.degree = erf->degree;
    p.params.k = k;
    p.params.eta = eta;
    p.params.tau = tau;
    p.params.a_mid = a_mid;
    p.params.kappa = kap;
    p.params.base_degree = erf->params.base_degree;
    p.certificate = erf->certificate;

    if (mode == PolyMode::Ideal) {
        auto v = [k, a_mid](double a) { return std::clamp(0.5 + 0.11 * k * (std::fabs(a) - a_mid), 0.0, 1.0); };
        p.value = v;
        p.p2_raw = [v](double a) {
            const double x = v(a);
            return x * x;
        };
        return p;
    }

    const double denom = 4.0 * eta + tau + 2.0;
    auto v = [erf, eta, denom, a_mid](double a) {
        const double up = erf->eval(a - a_mid);
        const double dn = erf->eval(-a - a_mid);
        return (2.0 + up + dn + 2.0 * eta) / denom;
    };
    p.value = v;
    p.p2_raw = [v](double a) {
        const double x = v(a);
        return x * x;
    };
    p.value_batch = [erf, eta, denom, a_mid](const double* x, double* out, std::size_t m) {
        std::vector<double> args(2 * m), vals(2 * m);
        for (std::size_t i = 0; i < m; ++i) {
            args[i] = x[i] - a_mid;
            args[m + i] = -x[i] - a_mid;
        }
        erf->eval_batch(args.data(), vals.data(), 2 * m);
        for (std::size_t i = 0; i < m; ++i) out[i] = (2.0 + vals[i] + vals[m + i] + 2.0 * eta) / denom;
    };
    return p;
}

SupNormCertificate verify_semi_pellian(const PolySpec& p, std::size_t grid_points) {
    if (!p.has_value()) throw PreconditionViolated("verify_semi_pellian: magnitude-only polynomial");
    const std::size_t n = std::max<std::size_t>(grid_points, 3);
    std::vector<double> xs(n), vs(n);
    // Mirror the left half exactly so the parity test sees x and -x bit for bit.
    for (std::size_t i = 0; i < (n + 1) / 2; ++i) {
        xs[i] = -1.0 + 2.0 * static_cast<double>(i) / static_cast<double>(n - 1);
        xs[n - 1 - i] = -xs[i];
    }
    if (n % 2 == 1) xs[n / 2] = 0.0;
    p.eval_batch(xs.data(), vs.data(), n);
    const double peak = kernels::max_abs(vs.data(), n);
    const double s = p.parity_sign();
    double parity_err = 0.0;
    for (std::size_t i = 0; i < n; ++i) parity_err = std::max(parity_err, std::fabs(vs[i] - s * vs[n - 1 - i]));
    SupNormCertificate cert;
    cert.grid_size = n;
    cert.max_error = peak;
    cert.target = 1.0 + 1e-9;
    cert.pass = peak <= 1.0 + 1e-9 && parity_err <= 1e-9;
    return cert;
}

}  // namespace qae
