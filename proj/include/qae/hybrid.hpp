#pragma once

#include <cstdint>
#include <vector>

#include "qae/poly.hpp"
#include "qae/record.hpp"

namespace qae {

struct HybridConfig {
    double epsilon = 1e-3;
    double delta = 0.05;
    double beta = 0.0;
    PolyMode poly_mode = PolyMode::Ideal;
    std::uint64_t seed = 0;
};

enum class Branch { Steep, Shallow };

struct RoundParams {
    double eta = 0.0;
    double tau = 0.0;
    double k = 0.0;
    double gamma = 0.0;
    double kappa = 0.0;
    Branch branch = Branch::Steep;
};

/// Per-round constants for an interval of width `width` centred at `a_mid`.
RoundParams round_params(double width, double a_mid, double beta);

struct HybridTrace {
    std::vector<Branch> branches;
    std::vector<double> widths;
    std::vector<int> degrees;
};

RunRecord hybrid_estimate(const Amplitude& a, const HybridConfig& cfg, Rng& rng, HybridTrace* trace = nullptr);

}  // namespace qae
