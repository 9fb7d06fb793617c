#include "qae/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "qae/errors.hpp"
#include "qae/stats.hpp"

namespace qae {

std::int64_t bhmt_queries(double epsilon, double delta) {
    if (!(epsilon > 0.0 && epsilon < 1.0) || !(delta > 0.0 && delta < 1.0))
        throw DomainError("bhmt_queries: epsilon, delta must lie in (0,1)");
    const double pi = std::numbers::pi;
    const double g = 8.0 / (pi * pi) - 0.5;
    const auto reps = static_cast<std::int64_t>(std::ceil(0.5 / (g * g) * std::log(1.0 / delta)));
    const auto len = static_cast<std::int64_t>(std::ceil(pi / std::asin(epsilon) - 1e-9));
    return len * reps;
}

MlaeSchedule MlaeSchedule::exponential(int K, int shots) {
    MlaeSchedule s;
    s.shots_per_round = shots;
    s.k_values.push_back(0);
    for (int j = 0; j <= K; ++j) s.k_values.push_back(std::int64_t{1} << j);
    return s;
}

double mlae_log_likelihood(double a_prime, const MlaeSchedule& s, const std::vector<std::int64_t>& heads) {
    const double th = std::asin(std::clamp(a_prime, 0.0, 1.0));
    const double m = s.shots_per_round;
    double ll = 0.0;
    for (std::size_t j = 0; j < s.k_values.size(); ++j) {
        const double sn = std::sin(static_cast<double>(2 * s.k_values[j] + 1) * th);
        const double p = sn * sn;
        const double h = static_cast<double>(heads[j]);
        if (h > 0) ll += p > 0.0 ? h * std::log(p) : -std::numeric_limits<double>::infinity();
        if (m - h > 0) ll += p < 1.0 ? (m - h) * std::log1p(-p) : -std::numeric_limits<double>::infinity();
    }
    return ll;
}

RunRecord mlae_fit(const MlaeSchedule& s, const std::vector<std::int64_t>& heads, double delta) {
    constexpr int kGrid = 10'000;
    auto L = [&](double x) { return mlae_log_likelihood(x, s, heads); };

    int best = 0;
    double best_ll = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < kGrid; ++i) {
        const double ll = L(static_cast<double>(i) / (kGrid - 1));
        if (ll > best_ll) {
            best_ll = ll;
            best = i;
        }
    }
    // Golden-section search restricted to the neighbouring grid cells.
    const double h = 1.0 / (kGrid - 1);
    double lo = std::max(0.0, best * h - h), hi = std::min(1.0, best * h + h);
    const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
    double x1 = hi - gr * (hi - lo), x2 = lo + gr * (hi - lo);
    double f1 = L(x1), f2 = L(x2);
    while (hi - lo > 1e-10) {
        if (f1 < f2) {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + gr * (hi - lo);
            f2 = L(x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - gr * (hi - lo);
            f1 = L(x1);
        }
    }
    double mle = 0.5 * (lo + hi);
    double ll_max = L(mle);
    if (best_ll > ll_max) {
        mle = best * h;
        ll_max = best_ll;
    }

    const double q = chi2_1_quantile(1.0 - delta);
    auto inside = [&](double x) { return 2.0 * (ll_max - L(x)) <= q; };
    // Step outward on the grid until the ratio test fails, then bisect the crossing.
    auto edge = [&](double dir) {
        double in = mle;
        double out = mle;
        for (;;) {
            const double nxt = std::clamp(out + dir * h, 0.0, 1.0);
            if (nxt == out) return out;
            if (!inside(nxt)) {
                out = nxt;
                break;
            }
            in = out = nxt;
        }
        for (int it = 0; it < 60; ++it) {
            const double midp = 0.5 * (in + out);
            (inside(midp) ? in : out) = midp;
        }
        return in;
    };

    RunRecord rec;
    rec.a_hat = mle;
    rec.interval = {edge(-1.0), edge(1.0)};
    return rec;
}

MlaeResult mlae_estimate(const Amplitude& a, const MlaeSchedule& s, double delta, Rng& rng) {
    if (s.k_values.empty() || s.shots_per_round < 1) throw DomainError("mlae: empty schedule");
    if (!(delta > 0.0 && delta < 1.0)) throw DomainError("mlae: delta outside (0,1)");
    MlaeResult out;
    QueryLedger ledger;
    bool all_extreme = true;
    for (std::int64_t k : s.k_values) {
        const std::int64_t d = 2 * k + 1;
        const double sn = std::sin(static_cast<double>(d) * a.theta);
        const double p = sn * sn;
        std::int64_t h = 0;
        for (int i = 0; i < s.shots_per_round; ++i) {
            h += sample_pellian_p2(p, static_cast<int>(d), Parity::Odd, GroverLabel::Psi, rng, ledger).bit;
        }
        out.heads.push_back(h);
        if (h != 0 && h != s.shots_per_round) all_extreme = false;
    }
    out.degenerate = all_extreme;
    out.record = mlae_fit(s, out.heads, delta);
    out.record.ledger = ledger;
    out.record.iterations = static_cast<std::int64_t>(s.k_values.size());
    out.record.flagged = all_extreme;
    return out;
}

RunRecord classical_mc(const Amplitude& a, double epsilon, double delta, Rng& rng) {
    if (!(epsilon > 0.0 && epsilon < 1.0) || !(delta > 0.0 && delta < 1.0))
        throw DomainError("classical_mc: epsilon, delta must lie in (0,1)");
    constexpr std::int64_t kBatch = 1000;
    RunRecord rec;
    std::int64_t heads = 0, flips = 0;
    ConfidenceInterval ci{0.0, 1.0};
    do {
        heads += binomial(rng, kBatch, a.a * a.a);
        flips += kBatch;
        charge_pellian(rec.ledger, 1, true, kBatch);
        const ConfidenceInterval p = clopper_pearson(heads, flips, delta);
        ci = {std::sqrt(p.lo), std::sqrt(p.hi)};
        ++rec.iterations;
    } while (ci.width() >= 2.0 * epsilon);
    rec.interval = ci;
    rec.a_hat = ci.mid();
    return rec;
}

}  // namespace qae
