#pragma once

#include <cstdint>
#include <optional>

#include "qae/chebae.hpp"
#include "qae/record.hpp"

namespace qae {

struct RepairConfig {
    double mu = 0.05;
    bool las_vegas = false;
    /// Bypasses the D-derived kappa when a lower bound on min(a, abar) is known.
    std::optional<double> known_kappa;

    double delta_prime() const { return 0.8 * mu; }
    double eta_prime() const { return 0.2 * mu; }
};

struct RepairResult {
    GroverLabel final_state = GroverLabel::Psi;
    bool gave_up = false;
    QueryLedger ledger_delta;
    int built_degree = 0;
    std::int64_t lv_iterations = 0;
    bool lv_cap_hit = false;
};

/// ceil((5/4) (D / sqrt(delta')) ln(2 / sqrt(eta'))).
std::int64_t repair_degree_bound(std::int64_t D, const RepairConfig& cfg);
/// (4/5) sqrt(delta') / D.
double repair_kappa(std::int64_t D, const RepairConfig& cfg);

RepairResult repair_state(GroverLabel state, std::int64_t D, const RepairConfig& cfg, const Amplitude& a, Rng& rng);

struct NondestructiveResult {
    RunRecord record;
    RepairResult repair;
    std::int64_t pre_repair_D = 0;
};

NondestructiveResult nondestructive_chebae(const Amplitude& a, const ChebAEConfig& cheb_cfg,
                                           const RepairConfig& repair_cfg, Rng& rng);

}  // namespace qae
