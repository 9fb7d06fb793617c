#include "qae/repair.hpp"

#include <algorithm>
#include <cmath>

#include "qae/errors.hpp"
#include "qae/poly.hpp"

namespace qae {

namespace {
constexpr std::int64_t kLasVegasCap = 1'000'000;
}

std::int64_t repair_degree_bound(std::int64_t D, const RepairConfig& cfg) {
    if (D < 1) throw DomainError("repair: D must be >= 1");
    const double v = 1.25 * (static_cast<double>(D) / std::sqrt(cfg.delta_prime())) * std::log(2.0 / std::sqrt(cfg.eta_prime()));
    return static_cast<std::int64_t>(std::ceil(v - 1e-9));
}

double repair_kappa(std::int64_t D, const RepairConfig& cfg) {
    if (D < 1) throw DomainError("repair: D must be >= 1");
    return 0.8 * std::sqrt(cfg.delta_prime()) / static_cast<double>(D);
}

RepairResult repair_state(GroverLabel state, std::int64_t D, const RepairConfig& cfg, const Amplitude& a, Rng& rng) {
    if (!(cfg.mu > 0.0 && cfg.mu < 1.0)) throw DomainError("repair: mu outside (0,1)");
    RepairResult res;
    res.final_state = state;
    if (state == GroverLabel::Psi) return res;

    const double kappa = cfg.known_kappa ? *cfg.known_kappa : repair_kappa(D, cfg);
    const auto [J, K] = build_repair_pair(kappa, cfg.eta_prime());
    res.built_degree = J.degree;
    if (!cfg.known_kappa && J.degree > repair_degree_bound(D, cfg) + 1)
        throw PreconditionViolated("repair: built degree exceeds the theorem's bound");

    GroverLabel s = state;
    if (s == GroverLabel::PsiPerp) s = measure_basis_swap(s, a, rng, &res.ledger_delta);
    const PolySpec& P = s == GroverLabel::Pi ? K : J;
    s = *sample_pellian(P, s, a, rng, res.ledger_delta).state_after;

    res.gave_up = s != GroverLabel::Psi;
    if (res.gave_up && cfg.las_vegas) {
        while (s != GroverLabel::Psi && res.lv_iterations < kLasVegasCap) {
            s = measure_basis_swap(s, a, rng, &res.ledger_delta);
            ++res.lv_iterations;
        }
        res.lv_cap_hit = s != GroverLabel::Psi;
    }
    res.final_state = s;
    return res;
}

NondestructiveResult nondestructive_chebae(const Amplitude& a, const ChebAEConfig& cheb_cfg,
                                           const RepairConfig& repair_cfg, Rng& rng) {
    if (cheb_cfg.mode != ChainMode::Tracked) throw PreconditionViolated("nondestructive_chebae: needs tracked mode");
    NondestructiveResult out;
    out.record = chebae_estimate(a, cheb_cfg, rng);
    out.pre_repair_D = out.record.ledger.d_total;
    const std::int64_t D = std::max<std::int64_t>(1, out.pre_repair_D);
    out.repair = repair_state(*out.record.final_state, D, repair_cfg, a, rng);
    out.record.ledger.add(out.repair.ledger_delta);
    out.record.final_state = out.repair.final_state;
    if (!repair_cfg.las_vegas && !repair_cfg.known_kappa &&
        out.repair.ledger_delta.d_total > 1 + repair_degree_bound(D, repair_cfg) + 1)
        throw PreconditionViolated("nondestructive_chebae: repair exceeded its degree budget");
    return out;
}

}  // namespace qae
