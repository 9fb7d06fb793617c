#include "qae/hybrid.hpp"

#include <algorithm>
#include <cmath>

#include "qae/errors.hpp"
#include "qae/unbiased.hpp"

namespace qae {

RoundParams round_params(double width, double a_mid, double beta) {
    if (!(width > 0.0 && width <= 1.0)) throw DomainError("round_params: width outside (0,1]");
    if (!(beta >= 0.0 && beta < 1.0)) throw DomainError("round_params: beta outside [0,1)");
    const double kmax = 2.0 / width;

    RoundParams shallow;
    shallow.eta = shallow.tau = shallow.gamma = 0.01 * std::pow(width, beta);
    shallow.kappa = kappa_of_tau(shallow.tau);
    shallow.k = std::clamp(0.5 * shallow.kappa / std::pow(width, 1.0 - beta), 1.0, kmax);
    shallow.branch = Branch::Shallow;
    // Take the shallow polynomial only where its erf tail bound applies.
    if (a_mid >= shallow.kappa / shallow.k) return shallow;

    RoundParams steep;
    steep.eta = steep.tau = steep.gamma = 0.01;
    steep.kappa = kappa_of_tau(steep.tau);
    steep.k = std::clamp(steep.kappa / (2.0 * width), 1.0, kmax);
    steep.branch = Branch::Steep;
    return steep;
}

RunRecord hybrid_estimate(const Amplitude& a, const HybridConfig& cfg, Rng& rng, HybridTrace* trace) {
    if (!(cfg.epsilon > 0.0 && cfg.epsilon < 1.0) || !(cfg.delta > 0.0 && cfg.delta < 1.0))
        throw DomainError("hybrid: epsilon and delta must lie in (0,1)");
    if (!(cfg.beta >= 0.0 && cfg.beta < 1.0)) throw DomainError("hybrid: beta outside [0,1)");

    RunRecord rec;
    rec.seed = cfg.seed;
    const int T = shrink_rounds(cfg.epsilon);
    const double delta_t = cfg.delta / T;
    double lo = 0.0;
    double width = 1.0;
    for (int t = 0; t < T; ++t) {
        const double mid = lo + 0.5 * width;
        const RoundParams rp = round_params(width, mid, cfg.beta);
        const PolySpec P = build_hybrid_poly(rp.tau, rp.eta, rp.k, mid, cfg.poly_mode, rp.branch == Branch::Steep);
        const std::int64_t m = hoeffding_shots(rp.gamma, delta_t);
        const std::int64_t S = sample_semi_pellian_batch(P, a, m, rng, rec.ledger);
        if (static_cast<double>(S) > static_cast<double>(m) * (0.25 + rp.gamma * rp.gamma)) lo += 0.1 * width;
        if (trace) {
            trace->branches.push_back(rp.branch);
            trace->widths.push_back(width);
            trace->degrees.push_back(P.degree);
        }
        width *= 0.9;
        ++rec.iterations;
    }
    rec.interval = {lo, lo + width};
    rec.a_hat = lo + 0.5 * width;
    return rec;
}

}  // namespace qae
