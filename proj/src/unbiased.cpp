#include "qae/unbiased.hpp"

#include <algorithm>
#include <cmath>

#include "qae/errors.hpp"

namespace qae {

int shrink_rounds(double epsilon) {
    const double t = std::ceil(std::log(epsilon) / std::log(0.9) - 1e-12);
    return std::max(1, static_cast<int>(t));
}

std::int64_t unbiased_round_shots(double epsilon, double delta, int t) {
    const double dt = epsilon * delta / 10.0 * std::pow(0.9, -t);
    if (dt >= 1.0) return 1;
    return std::max<std::int64_t>(1, static_cast<std::int64_t>(std::ceil(6.0 * std::log(1.0 / dt))));
}

RunRecord unbiased_estimate(const Amplitude& a, const UnbiasedConfig& cfg, Rng& rng) {
    if (!(cfg.epsilon > 0.0 && cfg.epsilon < 1.0) || !(cfg.delta > 0.0 && cfg.delta < 1.0) ||
        !(cfg.eta > 0.0 && cfg.eta < 1.0))
        throw DomainError("unbiased: epsilon, delta, eta must lie in (0,1)");

    RunRecord rec;
    rec.seed = cfg.seed;
    const int T = shrink_rounds(cfg.epsilon);
    double lo = 0.0;
    double width = 1.0;
    for (int t = 0; t < T; ++t) {
        const std::int64_t m = unbiased_round_shots(cfg.epsilon, cfg.delta, t);
        const PolySpec P = build_line_poly(lo, std::min(1.0, lo + width), 0.1, cfg.poly_mode);
        const std::int64_t S = sample_semi_pellian_batch(P, a, m, rng, rec.ledger);
        if (2 * S > m) lo += 0.1 * width;
        width *= 0.9;
        ++rec.iterations;
    }
    const double hi = std::min(1.0, lo + width);
    const PolySpec P = build_line_poly(lo, hi, cfg.eta, cfg.poly_mode);
    const SampleOutcome o = sample_semi_pellian(P, a, rng, rec.ledger);
    rec.interval = {lo, hi};
    rec.a_hat = o.bit ? hi : lo;
    return rec;
}

}  // namespace qae
