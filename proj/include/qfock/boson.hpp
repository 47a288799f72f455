#pragma once

#include <string>

#include "qfock/fock.hpp"
#include "qfock/series.hpp"

namespace qfock {

namespace detail {

/// One boson summand per site: multiply the factor at site r by z^a. No
/// torus twists appear, and the untouched tail contributes factor one.
inline FockVector boson_apply_at_depth(int a, const FockVector& v, int D) {
    FockVector padded = v;
    padded.pad_to(D);
    FockVector out(v.seq(), v.start(), v.precision());
    for (const auto& [w, c] : padded.terms())
        for (std::size_t r = 0; r < w.factors.size(); ++r) {
            PureWedge nw = w;
            nw.factors[r].a += a;
            out.add_term(std::move(nw), c);
        }
    return out;
}

} // namespace detail

/// Action of the boson B_a (the sum over all sites of multiplication by z^a)
/// evaluated adaptively until stable across two ground periods.
///
/// The site sum is accumulated one ground period at a time: the contribution
/// of sites [D, D+per) is straightened on its own and added to the running
/// normal form, so each site is processed exactly once. Two consecutive
/// period increments vanishing mod q^N is the same stabilisation certificate
/// as three agreeing depth evaluations, at a fraction of the straightening.
inline FockVector boson_apply(int a, const FockVector& v) {
    if (a == 0) throw std::invalid_argument("boson_apply: a must be nonzero");
    const int per = ground_period(v.seq());
    const int L0 = v.body_length();

    FockVector acc = normalize_fock(detail::boson_apply_at_depth(a, v, L0));
    int quiet = 0;
    for (int step = 0; step < config().frontier_cap; ++step) {
        const int D = L0 + step * per;
        FockVector padded = v;
        padded.pad_to(D + per);
        FockVector inc(v.seq(), v.start(), v.precision());
        for (const auto& [w, c] : padded.terms())
            for (int r = D; r < D + per; ++r) {
                PureWedge nw = w;
                nw.factors[static_cast<std::size_t>(r)].a += a;
                inc.add_term(std::move(nw), c);
            }
        inc = normalize_fock(inc);
        if (inc.is_zero()) {
            if (++quiet == 2) return acc;
        } else {
            quiet = 0;
            acc = truncate_fock(acc + inc, v.precision());
        }
    }
    throw stabilization_error("boson_apply: action did not stabilise within " +
                              std::to_string(config().frontier_cap) + " ground periods");
}

/// Evaluates [B_a, B_b] on the vacuum of F_m and certifies that the result is
/// a scalar multiple of the vacuum to working precision; returns that scalar
/// as a truncated series. Nonzero only when a + b = 0.
inline TruncSeries boson_commutator_vac(int a, int b, GroundSeq seq, int m,
                                        int precision = config().precision) {
    FockVector vac_v = vacuum(seq, m, precision);
    FockVector ab = boson_apply(a, boson_apply(b, vac_v));
    FockVector ba = boson_apply(b, boson_apply(a, vac_v));
    // Both products are already normal forms; the difference only needs the
    // cancelled and below-precision terms dropped.
    FockVector comm = truncate_fock(ab - ba, precision);

    Coefficient scalar = comm.vacuum_coefficient();
    if (!fock_equal_mod(comm, scalar * vac_v))
        throw stabilization_error("boson commutator is not scalar on the vacuum for a=" +
                                  std::to_string(a) + ", b=" + std::to_string(b));
    return scalar.series_expand(precision);
}

/// The expected commutator scalar for the constant ground sequence:
/// gamma_a = a / (1 - q^{2a}), expanded to the given order.
inline TruncSeries gamma_const_sequence(int a, int precision = config().precision) {
    if (a <= 0) throw std::invalid_argument("gamma_const_sequence: a must be positive");
    Coefficient denom = Coefficient(1) - Coefficient::q_power(2 * a);
    return (Coefficient(a) / denom).series_expand(precision);
}

} // namespace qfock
