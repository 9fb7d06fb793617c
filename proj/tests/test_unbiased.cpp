#include <doctest.h>

#include <cmath>

#include "qae/errors.hpp"
#include "qae/unbiased.hpp"

using namespace qae;

TEST_CASE("round counts and shot counts") {
    CHECK(shrink_rounds(1e-3) == 66);
    CHECK(shrink_rounds(1e-3) == static_cast<int>(std::ceil(std::log(1e-3) / std::log(0.9))));
    CHECK(shrink_rounds(0.95) == 1);
    CHECK(unbiased_round_shots(1e-2, 1e-3, 0) == 83);
    CHECK(unbiased_round_shots(1e-2, 1e-3, 0) == static_cast<std::int64_t>(std::ceil(6 * std::log(1e6))));
    // delta_t grows with t and the count shrinks to 1 once delta_t >= 1.
    CHECK(unbiased_round_shots(0.5, 0.5, 40) == 1);
    for (int t = 1; t < 60; ++t) CHECK(unbiased_round_shots(1e-2, 1e-3, t) <= unbiased_round_shots(1e-2, 1e-3, t - 1));
}

TEST_CASE("two-point support and deterministic D") {
    UnbiasedConfig cfg;
    cfg.epsilon = 1e-2;
    cfg.delta = 1e-3;
    std::int64_t D = -1;
    for (int i = 0; i < 200; ++i) {
        Rng rng(run_seed(10, 0, static_cast<std::uint64_t>(i)));
        const RunRecord r = unbiased_estimate(Amplitude(0.3), cfg, rng);
        CHECK((r.a_hat == r.interval.lo || r.a_hat == r.interval.hi));
        CHECK(r.interval.width() <= cfg.epsilon);
        if (D < 0) D = r.ledger.d_total;
        CHECK(r.ledger.d_total == D);
    }
}

TEST_CASE("accuracy at several amplitudes") {
    UnbiasedConfig cfg;
    cfg.epsilon = 1e-2;
    cfg.delta = 1e-2;
    const int runs = 10000;
    const double sigma = std::sqrt(cfg.delta * (1 - cfg.delta) / runs);
    for (double a : {0.05, 0.3, 0.7}) {
        int fail = 0;
        for (int i = 0; i < runs; ++i) {
            Rng rng(run_seed(11, static_cast<std::uint64_t>(a * 100), static_cast<std::uint64_t>(i)));
            fail += std::fabs(unbiased_estimate(Amplitude(a), cfg, rng).a_hat - a) >= cfg.epsilon;
        }
        CHECK(static_cast<double>(fail) / runs <= cfg.delta + 3 * sigma);
    }
}

TEST_CASE("bias bound at moderate run counts") {
    UnbiasedConfig cfg;
    cfg.epsilon = 1e-2;
    cfg.delta = 1e-3;
    const int runs = 20000;
    double s = 0.0, s2 = 0.0;
    for (int i = 0; i < runs; ++i) {
        Rng rng(run_seed(12, 0, static_cast<std::uint64_t>(i)));
        const double v = unbiased_estimate(Amplitude(0.3), cfg, rng).a_hat;
        s += v;
        s2 += v * v;
    }
    const double mean = s / runs;
    const double se = std::sqrt((s2 / runs - mean * mean) / runs);
    CHECK(std::fabs(mean - 0.3) <= cfg.epsilon * cfg.eta + cfg.delta + 3 * se);
}

TEST_CASE("Polynomial and Ideal modes agree on the mean") {
    UnbiasedConfig cfg;
    cfg.epsilon = 1e-2;
    cfg.delta = 1e-3;
    const int runs = 300;
    double mi = 0.0, mp = 0.0;
    for (int i = 0; i < runs; ++i) {
        Rng r1(run_seed(13, 0, static_cast<std::uint64_t>(i)));
        Rng r2(run_seed(13, 1, static_cast<std::uint64_t>(i)));
        cfg.poly_mode = PolyMode::Ideal;
        mi += unbiased_estimate(Amplitude(0.3), cfg, r1).a_hat;
        cfg.poly_mode = PolyMode::Polynomial;
        mp += unbiased_estimate(Amplitude(0.3), cfg, r2).a_hat;
    }
    CHECK(std::fabs(mi / runs - mp / runs) <= 2 * cfg.epsilon * cfg.eta);
}

TEST_CASE("unbiased rejects bad configurations") {
    Rng rng(1);
    UnbiasedConfig cfg;
    cfg.eta = 0.0;
    CHECK_THROWS_AS(unbiased_estimate(Amplitude(0.3), cfg, rng), DomainError);
}
