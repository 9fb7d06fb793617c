#pragma once

#include <cstdint>
#include <vector>

#include "qae/record.hpp"

namespace qae {

/// ceil(pi / arcsin eps) * ceil((1/2) (8/pi^2 - 1/2)^-2 ln(1/delta)).
std::int64_t bhmt_queries(double epsilon, double delta);

struct MlaeSchedule {
    int shots_per_round = 100;
    std::vector<std::int64_t> k_values;

    /// {0, 1, 2, 4, ..., 2^K}.
    static MlaeSchedule exponential(int K, int shots = 100);
};

struct MlaeResult {
    RunRecord record;
    bool degenerate = false;  // every round was all heads or all tails
    std::vector<std::int64_t> heads;
};

/// Log-likelihood of a' given per-round heads under p_j(a') = sin^2((2k_j+1) arcsin a').
double mlae_log_likelihood(double a_prime, const MlaeSchedule& s, const std::vector<std::int64_t>& heads);

/// MLE and likelihood-ratio interval from observed heads.
RunRecord mlae_fit(const MlaeSchedule& s, const std::vector<std::int64_t>& heads, double delta);

MlaeResult mlae_estimate(const Amplitude& a, const MlaeSchedule& s, double delta, Rng& rng);

/// Degree-1 coin in Clopper-Pearson batches until the sqrt-preimage is narrower than 2 eps.
RunRecord classical_mc(const Amplitude& a, double epsilon, double delta, Rng& rng);

}  // namespace qae
