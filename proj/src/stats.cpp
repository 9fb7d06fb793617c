#include "qae/stats.hpp"

#include <boost/math/distributions/binomial.hpp>
#include <boost/math/distributions/chi_squared.hpp>

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>

#include "qae/errors.hpp"

namespace qae {

using boost::math::binomial_distribution;

ConfidenceInterval clopper_pearson(std::int64_t heads, std::int64_t flips, double alpha) {
    if (flips < 1 || heads < 0 || heads > flips) throw DomainError("clopper_pearson: need 0 <= heads <= flips, flips >= 1");
    if (!(alpha > 0.0 && alpha < 1.0)) throw DomainError("clopper_pearson: alpha outside (0,1)");
    const double n = static_cast<double>(flips);
    const double k = static_cast<double>(heads);
    ConfidenceInterval ci;
    ci.lo = heads == 0 ? 0.0 : binomial_distribution<>::find_lower_bound_on_p(n, k, alpha / 2);
    ci.hi = heads == flips ? 1.0 : binomial_distribution<>::find_upper_bound_on_p(n, k, alpha / 2);
    return ci;
}

std::int64_t hoeffding_shots(double gamma, double delta) {
    if (!(gamma > 0.0 && gamma < 0.5)) throw DomainError("hoeffding_shots: gamma outside (0, 1/2)");
    if (!(delta > 0.0 && delta < 1.0)) throw DomainError("hoeffding_shots: delta outside (0,1)");
    return static_cast<std::int64_t>(std::ceil(0.5 / (gamma * gamma) * std::log(1.0 / delta)));
}

double cp_max_halfwidth(std::int64_t flips, double alpha) {
    if (flips < 1) throw DomainError("cp_max_halfwidth: flips < 1");
    static std::mutex mu;
    static std::map<std::pair<std::int64_t, double>, double> memo;
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = memo.find({flips, alpha});
        if (it != memo.end()) return it->second;
    }
    double worst = 0.0;
    for (std::int64_t h = 0; h <= flips; ++h) worst = std::max(worst, 0.5 * clopper_pearson(h, flips, alpha).width());
    std::lock_guard<std::mutex> lock(mu);
    memo[{flips, alpha}] = worst;
    return worst;
}

double chi2_1_quantile(double one_minus_alpha) {
    if (!(one_minus_alpha > 0.0 && one_minus_alpha < 1.0)) throw DomainError("chi2 quantile: level outside (0,1)");
    return boost::math::quantile(boost::math::chi_squared_distribution<>(1.0), one_minus_alpha);
}

}  // namespace qae
