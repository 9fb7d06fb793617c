#include <doctest.h>

#include <cmath>

#include "qae/errors.hpp"
#include "qae/hybrid.hpp"
#include "qae/unbiased.hpp"

using namespace qae;

TEST_CASE("round_params examples") {
    const RoundParams a = round_params(0.01, 0.5, 0.5);
    CHECK(a.branch == Branch::Shallow);
    CHECK(a.eta == doctest::Approx(0.001).epsilon(1e-12));
    CHECK(a.tau == doctest::Approx(0.001).epsilon(1e-12));
    CHECK(a.gamma == doctest::Approx(0.001).epsilon(1e-12));
    CHECK(a.kappa == doctest::Approx(2.585).epsilon(0.0005));
    CHECK(a.k == doctest::Approx(12.925).epsilon(0.001));

    for (double w : {1.0, 0.3, 0.01})
        for (double m : {0.01, 0.5}) {
            const RoundParams b = round_params(w, m, 0.0);
            CHECK(b.eta == doctest::Approx(0.01));
            CHECK(b.tau == doctest::Approx(0.01));
            CHECK(b.gamma == doctest::Approx(0.01));
        }

    const RoundParams c = round_params(0.2, 0.05, 0.5);
    CHECK(c.branch == Branch::Steep);
    CHECK(c.k == doctest::Approx(kappa_of_tau(0.01) / 0.4).epsilon(1e-12));
    CHECK(c.eta == doctest::Approx(0.01));
}

TEST_CASE("round_params invariants") {
    for (double beta : {0.0, 0.3, 0.6, 0.9})
        for (double w = 1.0; w > 1e-5; w *= 0.9)
            for (double m : {0.0, 1e-4, 0.02, 0.3, 0.9}) {
                const RoundParams p = round_params(w, m, beta);
                CHECK(p.k >= 1.0);
                CHECK(p.k <= 2.0 / w * (1 + 1e-12));
                CHECK(p.kappa == doctest::Approx(kappa_of_tau(p.tau)));
                if (p.branch == Branch::Shallow) CHECK(m >= p.kappa / p.k);
            }
    CHECK_THROWS_AS(round_params(0.0, 0.5, 0.0), DomainError);
    CHECK_THROWS_AS(round_params(0.5, 0.5, 1.0), DomainError);
}

TEST_CASE("every round separates the shrink targets") {
    // For any interval a round can see, the polynomial at a_min + 0.1 width is below 1/2 - gamma
    // and at a_max - 0.1 width above 1/2 + gamma, in both branches and both modes.
    for (double beta : {0.0, 0.5})
        for (double w : {1.0, 0.5, 0.2, 0.05, 0.01})
            for (double lo : {0.0, 0.001, 0.02, 0.3}) {
                if (lo + w > 1.0) continue;
                const double mid = lo + 0.5 * w;
                const RoundParams rp = round_params(w, mid, beta);
                for (PolyMode mode : {PolyMode::Ideal, PolyMode::Polynomial}) {
                    const PolySpec P = build_hybrid_poly(rp.tau, rp.eta, rp.k, mid, mode, rp.branch == Branch::Steep);
                    CHECK(P.eval(lo + 0.1 * w) <= 0.5 - rp.gamma);
                    CHECK(P.eval(lo + 0.9 * w) >= 0.5 + rp.gamma);
                }
            }
}

TEST_CASE("interval bookkeeping") {
    HybridConfig cfg;
    cfg.epsilon = 1e-3;
    cfg.beta = 0.3;
    Rng rng(3);
    HybridTrace tr;
    const RunRecord r = hybrid_estimate(Amplitude(0.4), cfg, rng, &tr);
    REQUIRE(tr.widths.size() == static_cast<std::size_t>(shrink_rounds(cfg.epsilon)));
    double w = 1.0;
    for (double x : tr.widths) {
        CHECK(x == w);
        w *= 0.9;
    }
    CHECK(r.interval.width() == doctest::Approx(w).epsilon(1e-9));
    CHECK(r.a_hat == r.interval.lo + 0.5 * w);
    CHECK(r.interval.width() < cfg.epsilon);
}

TEST_CASE("hybrid correctness across amplitudes and beta") {
    const int runs = 300;
    for (double a : {0.05, 0.5, 0.95})
        for (double beta : {0.0, 0.3, 0.6}) {
            HybridConfig cfg;
            cfg.epsilon = 1e-3;
            cfg.delta = 0.05;
            cfg.beta = beta;
            int fail = 0;
            for (int i = 0; i < runs; ++i) {
                Rng rng(run_seed(20, static_cast<std::uint64_t>(a * 100 + beta * 10), static_cast<std::uint64_t>(i)));
                fail += std::fabs(hybrid_estimate(Amplitude(a), cfg, rng).a_hat - a) >= cfg.epsilon;
            }
            const double sigma = std::sqrt(cfg.delta * (1 - cfg.delta) / runs);
            CHECK(static_cast<double>(fail) / runs <= cfg.delta + 3 * sigma);
        }
}

TEST_CASE("beta = 0 success rate") {
    HybridConfig cfg;
    cfg.epsilon = 1e-3;
    int ok = 0;
    const int runs = 500;
    for (int i = 0; i < runs; ++i) {
        Rng rng(run_seed(21, 0, static_cast<std::uint64_t>(i)));
        ok += std::fabs(hybrid_estimate(Amplitude(0.5), cfg, rng).a_hat - 0.5) < cfg.epsilon;
    }
    CHECK(static_cast<double>(ok) / runs >= 0.95);
}

TEST_CASE("shallow branch does not revert once the width is below a") {
    // After t* the interval width satisfies width^(1-beta) <= a and a_mid stays large enough.
    for (double a : {0.02, 0.2, 0.7})
        for (double beta : {0.3, 0.6}) {
            HybridConfig cfg;
            cfg.epsilon = 1e-4;
            cfg.beta = beta;
            for (int i = 0; i < 50; ++i) {
                Rng rng(run_seed(22, static_cast<std::uint64_t>(a * 100), static_cast<std::uint64_t>(i)));
                HybridTrace tr;
                hybrid_estimate(Amplitude(a), cfg, rng, &tr);
                bool seen = false;
                for (std::size_t t = 0; t < tr.branches.size(); ++t) {
                    if (4.0 * std::pow(tr.widths[t], 1 - beta) > a) continue;
                    if (tr.branches[t] == Branch::Shallow) seen = true;
                    if (seen) CHECK(tr.branches[t] == Branch::Shallow);
                }
                if (4.0 * std::pow(tr.widths.back(), 1 - beta) <= a) CHECK(seen);
            }
        }
}
