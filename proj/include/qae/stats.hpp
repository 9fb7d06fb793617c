#pragma once

#include <cstdint>

namespace qae {

struct ConfidenceInterval {
    double lo = 0.0;
    double hi = 1.0;

    double width() const { return hi - lo; }
    double mid() const { return lo + 0.5 * (hi - lo); }
    bool contains(double x) const { return lo <= x && x <= hi; }
};

/// Exact two-sided Clopper-Pearson interval at level 1 - alpha.
ConfidenceInterval clopper_pearson(std::int64_t heads, std::int64_t flips, double alpha);

/// ceil(ln(1/delta) / (2 gamma^2)).
std::int64_t hoeffding_shots(double gamma, double delta);

/// Largest Clopper-Pearson half-width over all head counts with `flips` flips.
double cp_max_halfwidth(std::int64_t flips, double alpha);

/// Upper 1 - alpha quantile of the chi-squared distribution with one degree of freedom.
double chi2_1_quantile(double one_minus_alpha);

}  // namespace qae
