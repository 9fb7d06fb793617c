#pragma once

#include <cstdint>

#include "qae/poly.hpp"
#include "qae/record.hpp"

namespace qae {

struct UnbiasedConfig {
    double epsilon = 1e-2;
    double delta = 1e-3;
    double eta = 0.1;
    PolyMode poly_mode = PolyMode::Ideal;
    std::uint64_t seed = 0;
};

/// ceil(log_0.9 eps), at least 1.
int shrink_rounds(double epsilon);
/// ceil(6 ln(1/delta_t)) with delta_t = (eps delta / 10) 0.9^-t; 1 once delta_t >= 1.
std::int64_t unbiased_round_shots(double epsilon, double delta, int t);

RunRecord unbiased_estimate(const Amplitude& a, const UnbiasedConfig& cfg, Rng& rng);

}  // namespace qae
