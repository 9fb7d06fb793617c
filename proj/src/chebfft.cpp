#include "qae/chebfft.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numbers>
#include <stdexcept>

namespace qae::chebfft {

namespace {

// The FFTW planner is not reentrant; execution of a private plan is.
std::mutex planner_mutex;

void run_r2r(std::vector<double>& in, std::vector<double>& out, fftw_r2r_kind kind) {
    const int n = static_cast<int>(in.size());
    fftw_plan plan;
    {
        std::lock_guard<std::mutex> lock(planner_mutex);
        plan = fftw_plan_r2r_1d(n, in.data(), out.data(), kind, FFTW_ESTIMATE);
    }
    if (!plan) throw std::runtime_error("fftw plan creation failed");
    fftw_execute(plan);
    std::lock_guard<std::mutex> lock(planner_mutex);
    fftw_destroy_plan(plan);
}

}  // namespace

std::size_t good_size(std::size_t n) {
    if (n <= 1) return 1;
    std::size_t best = 1;
    while (best < n) best *= 2;
    for (std::size_t p5 = 1; p5 < best; p5 *= 5)
        for (std::size_t p35 = p5; p35 < best; p35 *= 3) {
            std::size_t v = p35;
            while (v < n) v *= 2;
            best = std::min(best, v);
        }
    return best;
}

double node(std::size_t j, std::size_t n) {
    return std::cos(std::numbers::pi * (static_cast<double>(j) + 0.5) / static_cast<double>(n));
}

std::vector<double> interpolate(const std::function<double(double)>& f, std::size_t n) {
    if (n == 0) return {};
    std::vector<double> samples(n), out(n);
    for (std::size_t j = 0; j < n; ++j) samples[j] = f(node(j, n));
    // REDFT10: Y_k = 2 sum_j x_j cos(pi k (j + 1/2) / n).
    run_r2r(samples, out, FFTW_REDFT10);
    const double scale = 1.0 / static_cast<double>(n);
    for (double& v : out) v *= scale;
    out[0] *= 0.5;
    return out;
}

std::vector<double> values_on_nodes(const std::vector<double>& c, std::size_t m) {
    if (m < c.size()) throw std::invalid_argument("values_on_nodes: grid smaller than series");
    std::vector<double> in(m, 0.0), out(m);
    // REDFT01: Y_j = X_0 + 2 sum_k X_k cos(pi k (j + 1/2) / m).
    if (!c.empty()) in[0] = c[0];
    for (std::size_t k = 1; k < c.size(); ++k) in[k] = 0.5 * c[k];
    run_r2r(in, out, FFTW_REDFT01);
    return out;
}

}  // namespace qae::chebfft
