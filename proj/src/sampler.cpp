#include "qae/sampler.hpp"

#include <algorithm>

#include "qae/errors.hpp"

namespace qae {

void QueryLedger::add(const QueryLedger& o) {
    q_psi += o.q_psi;
    q_pi += o.q_pi;
    d_max = std::max(d_max, o.d_max);
    d_total += o.d_total;
    tosses += o.tosses;
}

GroverLabel target_of(GroverLabel s, Parity parity) {
    if (parity == Parity::Even) return s;
    switch (s) {
        case GroverLabel::Psi: return GroverLabel::Pi;
        case GroverLabel::Pi: return GroverLabel::Psi;
        case GroverLabel::PsiPerp: return GroverLabel::PiPerp;
        case GroverLabel::PiPerp: return GroverLabel::PsiPerp;
    }
    return s;
}

GroverLabel partner_of(GroverLabel s) {
    switch (s) {
        case GroverLabel::Psi: return GroverLabel::PsiPerp;
        case GroverLabel::PsiPerp: return GroverLabel::Psi;
        case GroverLabel::Pi: return GroverLabel::PiPerp;
        case GroverLabel::PiPerp: return GroverLabel::Pi;
    }
    return s;
}

void charge_pellian(QueryLedger& L, std::int64_t d, bool from_psi_basis, std::int64_t count) {
    const std::int64_t k = d / 2;
    std::int64_t qs = k, qp = k;
    // Odd degree: the final Hadamard test queries the oracle of the output basis.
    if (d % 2 == 1) {
        if (from_psi_basis)
            qp += 1;
        else
            qs += 1;
    }
    L.q_psi += qs * count;
    L.q_pi += qp * count;
    L.d_max = std::max(L.d_max, d);
    L.d_total += d * count;
    L.tosses += count;
}

void charge_semi_pellian(QueryLedger& L, std::int64_t d, bool from_psi_basis, std::int64_t count) {
    const std::int64_t k = d / 2;
    std::int64_t qs, qp;
    if (d % 2 == 1) {
        qs = from_psi_basis ? k + 1 : k + 2;
        qp = from_psi_basis ? k + 2 : k + 1;
    } else {
        qs = from_psi_basis ? k + 3 : k;
        qp = from_psi_basis ? k : k + 3;
    }
    L.q_psi += qs * count;
    L.q_pi += qp * count;
    L.d_max = std::max(L.d_max, d);
    L.d_total += d * count;
    L.tosses += count;
}

SampleOutcome sample_pellian_p2(double p2, int degree, Parity parity, GroverLabel state, Rng& rng,
                                QueryLedger& L) {
    charge_pellian(L, degree, in_psi_basis(state));
    const GroverLabel tgt = target_of(state, parity);
    SampleOutcome out;
    out.bit = bernoulli(rng, p2) ? 1 : 0;
    out.state_after = out.bit ? tgt : partner_of(tgt);
    return out;
}

SampleOutcome sample_pellian(const PolySpec& p, GroverLabel state, const Amplitude& a, Rng& rng,
                             QueryLedger& L) {
    if (p.kind != Kind::Pellian) throw KindMismatch("sample_pellian: semi-Pellian polynomial");
    return sample_pellian_p2(p.p2(a.a), p.degree, p.parity, state, rng, L);
}

SampleOutcome sample_semi_pellian(const PolySpec& p, const Amplitude& a, Rng& rng, QueryLedger& L) {
    if (p.kind != Kind::SemiPellian) throw KindMismatch("sample_semi_pellian: Pellian polynomial");
    charge_semi_pellian(L, p.degree, true);
    SampleOutcome out;
    out.bit = bernoulli(rng, p.p2(a.a)) ? 1 : 0;
    return out;
}

std::int64_t sample_semi_pellian_batch(const PolySpec& p, const Amplitude& a, std::int64_t m, Rng& rng,
                                       QueryLedger& L) {
    if (p.kind != Kind::SemiPellian) throw KindMismatch("sample_semi_pellian: Pellian polynomial");
    if (m <= 0) return 0;
    charge_semi_pellian(L, p.degree, true, m);
    return binomial(rng, m, p.p2(a.a));
}

GroverLabel measure_basis_swap(GroverLabel s, const Amplitude& a, Rng& rng, QueryLedger* L) {
    QueryLedger scratch;
    const SampleOutcome o = sample_pellian_p2(a.a * a.a, 1, Parity::Odd, s, rng, L ? *L : scratch);
    return *o.state_after;
}

}  // namespace qae
