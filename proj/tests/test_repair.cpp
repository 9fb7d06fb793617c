#include <doctest.h>

#include <cmath>

#include "qae/errors.hpp"
#include "qae/repair.hpp"

using namespace qae;

TEST_CASE("repair constants") {
    RepairConfig cfg;
    cfg.mu = 0.05;
    CHECK(cfg.delta_prime() == doctest::Approx(0.04).epsilon(1e-15));
    CHECK(cfg.eta_prime() == doctest::Approx(0.01).epsilon(1e-15));
    CHECK(repair_degree_bound(1000, cfg) == 18724);
    CHECK(repair_degree_bound(1000, cfg) ==
          static_cast<std::int64_t>(std::ceil(1.25 * (1000 / 0.2) * std::log(20.0))));
    CHECK(repair_kappa(1000, cfg) == doctest::Approx(0.8 * 0.2 / 1000).epsilon(1e-14));
    CHECK_THROWS_AS(repair_degree_bound(0, cfg), DomainError);
}

TEST_CASE("built repair degree stays within the bound") {
    RepairConfig cfg;
    for (double mu : {0.01, 0.05, 0.2})
        for (std::int64_t D : {1, 7, 100, 1000, 54321}) {
            cfg.mu = mu;
            const int l = repair_poly_degree(repair_kappa(D, cfg), cfg.eta_prime());
            CHECK(l <= repair_degree_bound(D, cfg) + 1);
            CHECK(l % 2 == 1);
        }
}

TEST_CASE("psi input needs no repair") {
    Rng rng(1);
    RepairConfig cfg;
    const RepairResult r = repair_state(GroverLabel::Psi, 500, cfg, Amplitude(0.3), rng);
    CHECK(r.final_state == GroverLabel::Psi);
    CHECK_FALSE(r.gave_up);
    CHECK(r.ledger_delta == QueryLedger{});
}

TEST_CASE("extra degree per case") {
    Rng rng(2);
    RepairConfig cfg;
    const std::int64_t D = 300;
    const RepairResult base = repair_state(GroverLabel::Pi, D, cfg, Amplitude(0.4), rng);
    const std::int64_t l = base.built_degree;
    CHECK(base.ledger_delta.d_total == l);
    for (int i = 0; i < 50; ++i) {
        CHECK(repair_state(GroverLabel::PsiPerp, D, cfg, Amplitude(0.4), rng).ledger_delta.d_total == 1 + l);
        CHECK(repair_state(GroverLabel::Pi, D, cfg, Amplitude(0.4), rng).ledger_delta.d_total == l);
        CHECK(repair_state(GroverLabel::PiPerp, D, cfg, Amplitude(0.4), rng).ledger_delta.d_total == l);
    }
    // Only Pellian samples: every query is accounted as degree.
    const RepairResult r = repair_state(GroverLabel::PsiPerp, D, cfg, Amplitude(0.4), rng);
    CHECK(r.ledger_delta.q_psi + r.ledger_delta.q_pi == r.ledger_delta.d_total);
}

TEST_CASE("K from Pi and J from PiPerp return psi") {
    RepairConfig cfg;
    cfg.mu = 0.05;
    const std::int64_t D = 200;
    const double kappa = repair_kappa(D, cfg);
    const int trials = 10000;
    const double eta = cfg.eta_prime();
    const double sigma = std::sqrt(eta * (1 - eta) / trials);
    Rng rng(3);
    int ok_k = 0, ok_j = 0;
    const double a_big = 2 * kappa;         // kappa < a
    const double a_small = 0.5 * kappa;     // a < kbar
    for (int t = 0; t < trials; ++t) {
        ok_k += repair_state(GroverLabel::Pi, D, cfg, Amplitude(a_big), rng).final_state == GroverLabel::Psi;
        ok_j += repair_state(GroverLabel::PiPerp, D, cfg, Amplitude(a_small), rng).final_state == GroverLabel::Psi;
    }
    CHECK(static_cast<double>(ok_k) / trials >= 1 - eta - 3 * sigma);
    CHECK(static_cast<double>(ok_j) / trials >= 1 - eta - 3 * sigma);
}

TEST_CASE("Las Vegas loop always ends at psi") {
    RepairConfig cfg;
    cfg.las_vegas = true;
    Rng rng(4);
    for (double a : {0.2, 0.5, 0.8})
        for (GroverLabel s : {GroverLabel::PsiPerp, GroverLabel::Pi, GroverLabel::PiPerp}) {
            for (int i = 0; i < 50; ++i) {
                const RepairResult r = repair_state(s, 100, cfg, Amplitude(a), rng);
                CHECK(r.final_state == GroverLabel::Psi);
                CHECK_FALSE(r.lv_cap_hit);
            }
        }
    // Near a = 0 the only other state reachable from psi is PiPerp, near a = 1 it is Pi;
    // the remaining ones are almost orthogonal to psi and the loop would stall on them.
    for (int i = 0; i < 50; ++i) {
        const RepairResult lo = repair_state(GroverLabel::PiPerp, 100, cfg, Amplitude(1e-9), rng);
        CHECK(lo.final_state == GroverLabel::Psi);
        CHECK_FALSE(lo.lv_cap_hit);
        const RepairResult hi = repair_state(GroverLabel::Pi, 100, cfg, Amplitude(1 - 1e-12), rng);
        CHECK(hi.final_state == GroverLabel::Psi);
        CHECK_FALSE(hi.lv_cap_hit);
    }
    CHECK(repair_state(GroverLabel::PiPerp, 100, cfg, Amplitude(0.0), rng).final_state == GroverLabel::Psi);
    CHECK(repair_state(GroverLabel::Pi, 100, cfg, Amplitude(1.0), rng).final_state == GroverLabel::Psi);
}

TEST_CASE("known kappa bypasses the D-derived value") {
    RepairConfig cfg;
    cfg.known_kappa = 0.25;
    Rng rng(5);
    const RepairResult r = repair_state(GroverLabel::Pi, 1000000, cfg, Amplitude(0.5), rng);
    CHECK(r.built_degree == repair_poly_degree(0.25, cfg.eta_prime()));
}

TEST_CASE("non-destructive ChebAE") {
    ChebAEConfig cc;
    cc.epsilon = 0.01;
    cc.mode = ChainMode::Tracked;
    RepairConfig rc;
    rc.mu = 0.1;
    for (double a : {1e-6, 0.5, 0.999999}) {
        int at_psi = 0;
        const int runs = 500;
        for (int i = 0; i < runs; ++i) {
            Rng rng(run_seed(6, static_cast<std::uint64_t>(a * 1e6), static_cast<std::uint64_t>(i)));
            const NondestructiveResult r = nondestructive_chebae(Amplitude(a), cc, rc, rng);
            at_psi += *r.record.final_state == GroverLabel::Psi;
            const std::int64_t D = std::max<std::int64_t>(1, r.pre_repair_D);
            CHECK(r.record.ledger.d_total <= r.pre_repair_D + 1 + repair_degree_bound(D, rc) + 1);
        }
        CHECK(static_cast<double>(at_psi) / runs >= 0.9);
    }
    cc.mode = ChainMode::Destructive;
    Rng rng(7);
    CHECK_THROWS_AS(nondestructive_chebae(Amplitude(0.5), cc, rc, rng), PreconditionViolated);
}
