#pragma once

#include <cstdint>
#include <optional>

#include "qae/grover.hpp"
#include "qae/sampler.hpp"
#include "qae/stats.hpp"

namespace qae {

/// Outcome of one estimation run. `success` is filled by whoever knows the true a.
struct RunRecord {
    double a_hat = 0.0;
    ConfidenceInterval interval;
    QueryLedger ledger;
    bool success = false;
    std::optional<GroverLabel> final_state;  // empty: re-prepared
    std::uint64_t seed = 0;
    std::int64_t iterations = 0;
    bool flagged = false;  // degenerate exit, e.g. no sampling was needed
};

}  // namespace qae
