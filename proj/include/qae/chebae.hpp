#pragma once

#include <cstdint>
#include <vector>

#include "qae/record.hpp"

namespace qae {

struct ChebAEConfig {
    double epsilon = 1e-3;
    double delta = 0.05;
    double r = 2.0;
    int n_shots = 100;
    double nu = 8.0;
    ChainMode mode = ChainMode::Destructive;
    std::uint64_t seed = 0;
};

/// Highest d >= 1 with |T_d(a)|^2 monotone on the interval.
int find_next_cheb(const ConfidenceInterval& ci);

/// Preimage of p_ci under a -> cos^2(d arccos a) on the monotone piece holding a_ci.
ConfidenceInterval invert_cheb_ci(int d, const ConfidenceInterval& p_ci, const ConfidenceInterval& a_ci);

/// Number of confidence intervals budgeted, ceil(log_r(1/(2 eps))), at least 1.
int chebae_interval_budget(double epsilon, double r);

/// Optional per-iteration trace used by property tests.
struct ChebAETrace {
    std::vector<ConfidenceInterval> intervals;
    std::vector<int> degrees;
};

RunRecord chebae_estimate(const Amplitude& a, const ChebAEConfig& cfg, Rng& rng, ChebAETrace* trace = nullptr);

}  // namespace qae
