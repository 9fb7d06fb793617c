#pragma once

#include <cstdint>
#include <optional>

#include "qae/grover.hpp"
#include "qae/poly.hpp"
#include "qae/rng.hpp"

namespace qae {

/// Q_psi, Q_Pi, max degree d and total degree D, plus the number of samples drawn.
struct QueryLedger {
    std::int64_t q_psi = 0;
    std::int64_t q_pi = 0;
    std::int64_t d_max = 0;
    std::int64_t d_total = 0;
    std::int64_t tosses = 0;

    void add(const QueryLedger& o);
    bool operator==(const QueryLedger&) const = default;
};

enum class ChainMode { Tracked, Destructive };

/// state_after is empty when the chain was re-prepared from a fresh psi.
struct SampleOutcome {
    int bit = 0;
    std::optional<GroverLabel> state_after;
};

GroverLabel target_of(GroverLabel s, Parity parity);
GroverLabel partner_of(GroverLabel s);

/// Ledger charge of `count` Pellian samples of degree d starting in the given basis.
void charge_pellian(QueryLedger& L, std::int64_t d, bool from_psi_basis, std::int64_t count = 1);
/// Ledger charge of `count` semi-Pellian samples of degree d starting in the given basis.
void charge_semi_pellian(QueryLedger& L, std::int64_t d, bool from_psi_basis, std::int64_t count = 1);

/// One Pellian sample when |P(a)|^2 is already known.
SampleOutcome sample_pellian_p2(double p2, int degree, Parity parity, GroverLabel state, Rng& rng,
                                QueryLedger& L);
SampleOutcome sample_pellian(const PolySpec& p, GroverLabel state, const Amplitude& a, Rng& rng,
                             QueryLedger& L);

SampleOutcome sample_semi_pellian(const PolySpec& p, const Amplitude& a, Rng& rng, QueryLedger& L);
/// m destructive semi-Pellian samples drawn as one binomial variate; returns the heads.
std::int64_t sample_semi_pellian_batch(const PolySpec& p, const Amplitude& a, std::int64_t m, Rng& rng,
                                       QueryLedger& L);

/// Degree-1 measurement in the other basis (the Monomial sample).
GroverLabel measure_basis_swap(GroverLabel s, const Amplitude& a, Rng& rng, QueryLedger* L = nullptr);

}  // namespace qae
