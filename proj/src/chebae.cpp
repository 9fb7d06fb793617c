#include "qae/chebae.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "qae/errors.hpp"
#include "qae/poly.hpp"

namespace qae {

namespace {

constexpr double kQuarterTol = 1e-9;
constexpr std::int64_t kTossCap = 1'000'000;

// Position of d*theta in units of quarter periods of cos^2(d theta).
double quarter(int d, double theta) { return 2.0 / std::numbers::pi * d * theta; }

// No turning point strictly inside (qmin, qmax); a turning point on an end is fine.
bool monotone_piece(double qmin, double qmax) {
    return std::ceil(qmax - kQuarterTol) - 1.0 <= std::floor(qmin + kQuarterTol);
}

}  // namespace

int find_next_cheb(const ConfidenceInterval& ci) {
    const double th_min = std::acos(std::clamp(ci.hi, 0.0, 1.0));
    const double th_max = std::acos(std::clamp(ci.lo, 0.0, 1.0));
    const double span = th_max - th_min;
    double start = span > 0.0 ? std::floor(0.5 * std::numbers::pi / span) : 1e9;
    int d = static_cast<int>(std::min(start, 1e9));
    while (d > 1 && !monotone_piece(quarter(d, th_min), quarter(d, th_max))) --d;
    return std::max(d, 1);
}

ConfidenceInterval invert_cheb_ci(int d, const ConfidenceInterval& p_ci, const ConfidenceInterval& a_ci) {
    const double th_min = std::acos(std::clamp(a_ci.hi, 0.0, 1.0));
    const double th_max = std::acos(std::clamp(a_ci.lo, 0.0, 1.0));
    const double q_lo = quarter(d, th_min);
    const double q_hi = quarter(d, th_max);
    if (!monotone_piece(q_lo, q_hi)) throw MonotonicityViolated("invert_cheb_ci: interval spans a turning point");
    const double m = std::floor(q_lo + kQuarterTol);
    const bool even_quarter = std::fmod(m, 2.0) == 0.0;

    // Inside quarter m, cos^2(phi) = p has phi = m pi/2 + acos(sqrt p) (m even) or + asin(sqrt p) (m odd).
    auto preimage = [&](double p) {
        const double s = std::sqrt(std::clamp(p, 0.0, 1.0));
        const double off = even_quarter ? std::acos(s) : std::asin(s);
        const double theta = (m * 0.5 * std::numbers::pi + off) / d;
        return std::cos(std::min(theta, 0.5 * std::numbers::pi));
    };
    const double x = preimage(p_ci.lo);
    const double y = preimage(p_ci.hi);
    return {std::min(x, y), std::max(x, y)};
}

int chebae_interval_budget(double epsilon, double r) {
    const double t = std::ceil(std::log(1.0 / (2.0 * epsilon)) / std::log(r) - 1e-12);
    return std::max(1, static_cast<int>(t));
}

RunRecord chebae_estimate(const Amplitude& a, const ChebAEConfig& cfg, Rng& rng, ChebAETrace* trace) {
    if (!(cfg.epsilon > 0.0 && cfg.epsilon < 1.0)) throw DomainError("chebae: epsilon outside (0,1)");
    if (!(cfg.delta > 0.0 && cfg.delta < 1.0)) throw DomainError("chebae: delta outside (0,1)");
    if (!(cfg.r > 1.0) || cfg.n_shots < 1 || !(cfg.nu > 0.0)) throw DomainError("chebae: bad hyperparameters");

    const int T = chebae_interval_budget(cfg.epsilon, cfg.r);
    const double alpha = cfg.delta / T;
    const double eps_p_max = cp_max_halfwidth(cfg.n_shots, alpha);

    RunRecord rec;
    rec.seed = cfg.seed;
    ConfidenceInterval ci{0.0, 1.0};
    std::int64_t heads = 0, flips = 0;
    int d = 1;
    GroverLabel state = GroverLabel::Psi;

    if (ci.width() < 2.0 * cfg.epsilon) rec.flagged = true;

    while (ci.width() >= 2.0 * cfg.epsilon) {
        const int d_new = find_next_cheb(ci);
        if (d_new >= cfg.r * d) {
            heads = flips = 0;
            d = d_new;
        }
        const double slope_den = std::fabs(cheb_T(d, ci.hi) - cheb_T(d, ci.lo));
        const bool late = slope_den < 1e-300 || eps_p_max * ci.width() / slope_den <= cfg.epsilon * cfg.nu;
        const int n = late ? 1 : cfg.n_shots;

        const double t = cheb_T(d, a.a);
        const double p2 = t * t;
        const Parity parity = d % 2 == 0 ? Parity::Even : Parity::Odd;
        for (int i = 0; i < n; ++i) {
            const GroverLabel from = cfg.mode == ChainMode::Tracked ? state : GroverLabel::Psi;
            const SampleOutcome o = sample_pellian_p2(p2, d, parity, from, rng, rec.ledger);
            heads += o.bit;
            if (cfg.mode == ChainMode::Tracked) state = *o.state_after;
        }
        flips += n;
        if (rec.ledger.tosses > kTossCap) throw IterationCap("chebae: toss cap exceeded");

        const ConfidenceInterval p_ci = clopper_pearson(heads, flips, alpha);
        const ConfidenceInterval star = invert_cheb_ci(d, p_ci, ci);
        const double lo = std::min(std::max(ci.lo, star.lo), ci.hi);
        const double hi = std::max(std::min(ci.hi, star.hi), lo);
        ci = {lo, hi};
        ++rec.iterations;
        if (trace) {
            trace->intervals.push_back(ci);
            trace->degrees.push_back(d);
        }
    }

    rec.interval = ci;
    rec.a_hat = ci.mid();
    if (cfg.mode == ChainMode::Tracked) rec.final_state = state;
    return rec;
}

}  // namespace qae
