#pragma once

#include <chrono>
#include <iomanip>
#include <map>
#include <ostream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "boson.hpp"
#include "characters.hpp"
#include "crystal.hpp"
#include "fock.hpp"
#include "wedge.hpp"

namespace qfock {

/// Outcome of one verification criterion of the self-test suite.
struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    double seconds = 0;
    std::vector<std::string> witnesses;  // failure details, empty on pass
};

namespace selftest_detail {

/// True when the coefficient lies in q * Z[q]: an integer polynomial with
/// positive valuation and trivial denominator.
inline bool q_integral(const Coefficient& c) {
    if (!c.den().is_one()) return false;
    auto v = c.valuation();
    if (!v || *v < 1) return false;
    for (const auto& [e, r] : c.num().terms())
        if (denominator(r) != 1) return false;
    return true;
}

/// Exact column rank check over Q(q): true iff the rows span every monomial
/// column that appears among them.
inline bool full_column_rank(std::vector<WedgeVector> rows) {
    std::set<PureWedge, PureWedgeLess> cols;
    for (const auto& r : rows)
        for (const auto& [w, c] : r.terms()) cols.insert(w);
    std::vector<bool> used(rows.size(), false);
    for (const PureWedge& col : cols) {
        std::size_t pivot = rows.size();
        for (std::size_t r = 0; r < rows.size(); ++r)
            if (!used[r] && !rows[r].coeff(col).is_zero()) {
                pivot = r;
                break;
            }
        if (pivot == rows.size()) return false;  // column unreachable
        used[pivot] = true;
        Coefficient inv = rows[pivot].coeff(col).inverse();
        rows[pivot] *= inv;
        for (std::size_t r = 0; r < rows.size(); ++r) {
            if (r == pivot || used[r]) continue;
            Coefficient c = rows[r].coeff(col);
            if (!c.is_zero()) rows[r] -= c * rows[pivot];
        }
    }
    return true;
}

/// Extends every term of a two-slot vector by one factor on the given side.
inline WedgeVector wedge_extend(const WedgeVector& v, AffLabel x, bool on_left) {
    WedgeVector out(v.arity() + 1);
    for (const auto& [w, c] : v.terms()) {
        PureWedge nw;
        nw.factors.reserve(w.arity() + 1);
        if (on_left) nw.factors.push_back(x);
        nw.factors.insert(nw.factors.end(), w.factors.begin(), w.factors.end());
        if (!on_left) nw.factors.push_back(x);
        out.add_term(std::move(nw), c);
    }
    return out;
}

template <typename Fn>
CriterionResult timed(int id, std::string name, Fn&& body) {
    CriterionResult r;
    r.id = id;
    r.name = std::move(name);
    auto t0 = std::chrono::steady_clock::now();
    try {
        body(r.witnesses);
        r.pass = r.witnesses.empty();
    } catch (const std::exception& e) {
        r.witnesses.push_back(std::string("exception: ") + e.what());
        r.pass = false;
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return r;
}

} // namespace selftest_detail

/// 1. Every defining two-slot relation is triangular: a unique energy-zero
/// head with coefficient one, all tail monomials normally ordered with levels
/// inside the head's level interval, first levels strictly below the head's,
/// and tail coefficients in q * Z[q].
inline CriterionResult criterion_base_relations() {
    using namespace selftest_detail;
    return timed(1, "base relations are triangular with q-integral ordered tails",
                 [](std::vector<std::string>& bad) {
        const auto& rels = base_relations();
        if (rels.size() != 9) bad.push_back("expected 9 relations, found " + std::to_string(rels.size()));
        std::set<std::pair<int, int>> heads;
        for (const auto& rel : rels) {
            heads.insert({rel.i, rel.j});
            const PureWedge* head = nullptr;
            Coefficient head_c;
            for (const auto& [w, c] : rel.rel.terms())
                if (energy_H(w.factors[0], w.factors[1]) == 0) {
                    if (head) bad.push_back(rel.rel.str() + ": two energy-zero terms");
                    head = &w;
                    head_c = c;
                }
            if (!head) {
                bad.push_back(rel.rel.str() + ": no energy-zero head");
                continue;
            }
            if (!head_c.is_one()) bad.push_back(head->str() + ": head coefficient is not 1");
            const int lu = level_l(head->factors[0]), lw = level_l(head->factors[1]);
            for (const auto& [w, c] : rel.rel.terms()) {
                if (&w == head) continue;
                if (energy_H(w.factors[0], w.factors[1]) < 1)
                    bad.push_back(w.str() + ": tail term not normally ordered");
                if (!q_integral(c)) bad.push_back(w.str() + ": tail coefficient " + c.str() + " not in q*Z[q]");
                if (level_l(w.factors[0]) >= lu)
                    bad.push_back(w.str() + ": tail first level not below the head's");
                for (AffLabel f : w.factors)
                    if (level_l(f) < lw || level_l(f) > lu)
                        bad.push_back(w.str() + ": tail level outside the head interval");
            }
        }
        if (heads.size() != 9) bad.push_back("relation heads do not exhaust the 9 color pairs");
    });
}

/// 2. Over the two-slot window with both z-exponents in [-2, 2]: straightening
/// lands in the ordered basis and is idempotent, the shifted-relation engine
/// agrees with the slice solver on every nonpositive-energy pair, and the
/// change of basis has full column rank on every graded slice.
inline CriterionResult criterion_two_wedge_basis() {
    using namespace selftest_detail;
    return timed(2, "two-slot straightening is basis-valued, engine-consistent, and injective",
                 [](std::vector<std::string>& bad) {
        std::map<std::tuple<int, int, int>, std::vector<WedgeVector>> slices;
        int count = 0;
        for (int au = -2; au <= 2; ++au)
            for (int ju = 0; ju <= 2; ++ju)
                for (int aw = -2; aw <= 2; ++aw)
                    for (int jw = 0; jw <= 2; ++jw) {
                        ++count;
                        AffLabel u{au, ju}, w{aw, jw};
                        PureWedge mono{{u, w}};
                        WedgeVector nf = straighten2(u, w);
                        for (const auto& [t, c] : nf.terms())
                            if (!t.normally_ordered())
                                bad.push_back(mono.str() + ": straighten2 emitted " + t.str());
                        if (straighten(nf) != nf) bad.push_back(mono.str() + ": not idempotent");
                        if (energy_H(u, w) <= 0 && slice_solve(u, w) != nf)
                            bad.push_back(mono.str() + ": engines disagree");
                        Weight wt = mono.weight();
                        slices[{wt.c0, wt.c1, mono.z_degree()}].push_back(nf);
                    }
        if (count != 225) bad.push_back("window enumerated " + std::to_string(count) + " monomials");
        for (auto& [key, rows] : slices)
            if (!full_column_rank(std::move(rows)))
                bad.push_back("slice c0=" + std::to_string(std::get<0>(key)) +
                              " c1=" + std::to_string(std::get<1>(key)) +
                              " d=" + std::to_string(std::get<2>(key)) + ": columns are dependent");
    });
}

/// 3. Wedging any window label of nonpositive energy against the leading
/// ground element onto the vacuum gives zero mod q^20, both sequences, both
/// sector parities; in particular v0 on the constant-sequence vacuum.
inline CriterionResult criterion_vacuum_annihilation() {
    using namespace selftest_detail;
    return timed(3, "nonpositive-energy labels annihilate the vacuum",
                 [](std::vector<std::string>& bad) {
        const int N = 20;
        int checked = 0;
        for (GroundSeq seq : {GroundSeq::A, GroundSeq::B})
            for (int m : {0, 1}) {
                FockVector vac = vacuum(seq, m, N);
                for (int a = -3; a <= 3; ++a)
                    for (int j = 0; j <= 2; ++j) {
                        AffLabel b{a, j};
                        if (energy_H(b, ground_elt(seq, m)) > 0) continue;
                        ++checked;
                        FockVector r = normalize_fock(wedge_front(b, vac));
                        if (!r.is_zero())
                            bad.push_back(b.str() + " ^ vac(" + ground_name(seq) + "," +
                                          std::to_string(m) + ") = " + r.str());
                    }
            }
        // Exact window census: 10 labels per constant-sequence sector and 9
        // per alternating-sequence sector have nonpositive junction energy.
        if (checked != 38) bad.push_back("window census off: " + std::to_string(checked) + " labels");
    });
}

/// 4. Worked identities on the constant-sequence vacuum mod q^20: t_i scales
/// by q, e1 kills it, f1 produces the v2-headed vector with scalar exactly 1,
/// and the commutator [e1, f1] acts as the identity.
inline CriterionResult criterion_vacuum_identities() {
    using namespace selftest_detail;
    return timed(4, "torus, raising, and lowering identities on the vacuum",
                 [](std::vector<std::string>& bad) {
        const int N = 20, M = N + 4;
        FockVector vac = vacuum(GroundSeq::B, 0, N);
        for (Gen t : {Gen::T0, Gen::T1})
            if (!fock_equal_mod(uq_apply_fock(t, vac), Coefficient::q_power(1) * vac))
                bad.push_back(gen_name(t) + " vac != q vac");
        if (!uq_apply_fock(Gen::E1, vac).is_zero()) bad.push_back("e1 vac != 0");

        FockVector expected(GroundSeq::B, 0, N);
        expected.add_term(PureWedge{{AffLabel{0, 2}}}, Coefficient(1));
        FockVector f1vac = uq_apply_fock(Gen::F1, vac);
        if (!fock_equal_mod(f1vac, expected)) bad.push_back("f1 vac != v2 ^ vac: " + f1vac.str());

        FockVector vacM = vacuum(GroundSeq::B, 0, M);
        FockVector ef = uq_apply_fock(Gen::E1, uq_apply_fock(Gen::F1, vacM));
        FockVector fe = uq_apply_fock(Gen::F1, uq_apply_fock(Gen::E1, vacM));
        if (!fock_equal_mod(truncate_fock(ef - fe, N), vac))
            bad.push_back("[e1, f1] vac != vac");
    });
}

/// 5. Boson suite mod q^16: positive modes annihilate every vacuum, opposite
/// modes commute to the closed-form scalar on the constant sequence, all other
/// mode pairs commute to zero, and the alternating-sequence scalar has the
/// expected constant term.
inline CriterionResult criterion_boson_suite() {
    using namespace selftest_detail;
    return timed(5, "boson annihilation, commutator scalars, and mode orthogonality",
                 [](std::vector<std::string>& bad) {
        const int N = 16;
        for (GroundSeq seq : {GroundSeq::A, GroundSeq::B})
            for (int m : {0, 1})
                for (int a = 1; a <= 4; ++a)
                    if (!boson_apply(a, vacuum(seq, m, N)).is_zero())
                        bad.push_back("B_" + std::to_string(a) + " vac(" + ground_name(seq) +
                                      "," + std::to_string(m) + ") != 0");
        for (int a = 1; a <= 3; ++a) {
            TruncSeries got = boson_commutator_vac(a, -a, GroundSeq::B, 0, N);
            TruncSeries want = gamma_const_sequence(a, N);
            if (!(got == want))
                bad.push_back("[B_" + std::to_string(a) + ", B_-" + std::to_string(a) +
                              "] vac(B) = " + got.str() + ", expected " + want.str());
        }
        const std::vector<std::pair<int, int>> pairs = {
            {1, 2},  {1, 3},   {2, 3},   {-1, -2}, {-1, -3}, {-2, -3},
            {1, -2}, {1, -3},  {2, -3},  {-1, 2},  {-1, 3},  {-2, 3}};
        for (auto [a, b] : pairs) {
            TruncSeries c = boson_commutator_vac(a, b, GroundSeq::B, 0, N);
            if (!c.is_zero())
                bad.push_back("[B_" + std::to_string(a) + ", B_" + std::to_string(b) +
                              "] vac(B) = " + c.str());
        }
        for (auto [a, b] : {std::pair{1, -2}, {-1, -2}}) {
            TruncSeries c = boson_commutator_vac(a, b, GroundSeq::A, 0, N);
            if (!c.is_zero())
                bad.push_back("[B_" + std::to_string(a) + ", B_" + std::to_string(b) +
                              "] vac(A) = " + c.str());
        }
        for (int a = 1; a <= 3; ++a) {
            TruncSeries g = boson_commutator_vac(a, -a, GroundSeq::A, 0, N);
            if (g.coeff(0) != a)
                bad.push_back("[B_" + std::to_string(a) + ", B_-" + std::to_string(a) +
                              "] vac(A) has constant term " + rational_str(g.coeff(0)));
        }
    });
}

/// 6. The Fock character factors: the enumerated multiplicity table equals the
/// Freudenthal table convolved with partition numbers, cell by cell to depth 6,
/// for both parities of the alternating sequence and the constant sequence,
/// including the depth-one multiplicity-3 cell.
inline CriterionResult criterion_character_factorization() {
    using namespace selftest_detail;
    return timed(6, "character tables factor through the irreducible character",
                 [](std::vector<std::string>& bad) {
        for (auto [seq, m] : {std::pair{GroundSeq::A, 0}, {GroundSeq::A, 1}, {GroundSeq::B, 0}}) {
            CharacterReport r = verify_character(seq, m, 6);
            if (!r.ok)
                for (const auto& c : r.mismatches)
                    bad.push_back("seq " + ground_name(seq) + " m=" + std::to_string(m) +
                                  " cell (" + std::to_string(c.d) + "," + std::to_string(c.t) +
                                  "): fock " + std::to_string(c.fock) + " != conv " +
                                  std::to_string(c.conv));
            if (seq == GroundSeq::B && r.fock.at(1, 0) != 3)
                bad.push_back("constant sequence depth-1 offset-0 multiplicity " +
                              std::to_string(r.fock.at(1, 0)) + ", expected 3");
        }
    });
}

/// 7. Highest-weight conditions hold mod q^16 and the span of boson/lowering
/// monomials on the vacuum has full rank against the enumerated dimensions at
/// depths up to 2 for the constant sequence.
inline CriterionResult criterion_decomposition_span() {
    using namespace selftest_detail;
    return timed(7, "vacuum is highest weight and the operator span fills every cell",
                 [](std::vector<std::string>& bad) {
        SpanReport r = hw_span_check(GroundSeq::B, 0, 2, 16);
        if (!r.hw_ok) bad.push_back("highest-weight conditions failed");
        if (!r.stable) bad.push_back("ranks changed under precision increase");
        for (const auto& c : r.cells)
            if (c.rank != c.dim)
                bad.push_back("cell (" + std::to_string(c.d) + "," + std::to_string(c.t) +
                              "): rank " + std::to_string(c.rank) + " != dim " +
                              std::to_string(c.dim));
    });
}

/// 8. The crystal is perfect of level 2, the tensor square carries exactly the
/// twelve expected arrows, and wt = phi - eps pointwise.
inline CriterionResult criterion_perfect_crystal() {
    using namespace selftest_detail;
    return timed(8, "perfectness, tensor-square arrows, and weight identity",
                 [](std::vector<std::string>& bad) {
        PerfectCheckReport p = perfect_check(2);
        if (!p.ok()) bad.push_back("perfectness conditions failed");

        auto word = [](int x, int y) { return CrystalWord{{CrystalElt{x}, CrystalElt{y}}}; };
        std::vector<TensorArrow> want;
        for (auto [i, fx, fy, tx, ty] : std::initializer_list<std::tuple<int, int, int, int, int>>{
                 {1, 0, 0, 0, 1}, {1, 0, 1, 0, 2}, {1, 0, 2, 1, 2}, {1, 1, 0, 1, 1},
                 {1, 1, 1, 2, 1}, {1, 1, 2, 2, 2}, {0, 1, 0, 0, 0}, {0, 1, 1, 0, 1},
                 {0, 2, 0, 1, 0}, {0, 1, 2, 1, 1}, {0, 2, 1, 2, 0}, {0, 2, 2, 2, 1}})
            want.push_back({word(fx, fy), word(tx, ty), i});
        std::sort(want.begin(), want.end());
        if (tensor_square_arrows() != want) bad.push_back("tensor-square arrow set differs");

        for (CrystalElt b : crystal_elements())
            if (!(wt_cl(b) == phi_weight(b) - eps_weight(b)))
                bad.push_back(b.str() + ": wt != phi - eps");
    });
}

/// 9. Seeded randomized well-definedness: on random two- and three-slot
/// tensors, every generator action commutes with straightening, generated
/// relation elements straighten to zero, and adding one to a tensor leaves
/// its normal form unchanged.
inline CriterionResult criterion_well_definedness(unsigned seed) {
    using namespace selftest_detail;
    return timed(9, "module action descends to the quotient (seed " + std::to_string(seed) + ")",
                 [seed](std::vector<std::string>& bad) {
        std::mt19937 rng(seed);
        auto ri = [&](int lo, int hi) {
            return std::uniform_int_distribution<int>(lo, hi)(rng);
        };
        const int scalars[] = {-2, -1, 1, 2};
        const Gen gens[] = {Gen::E0, Gen::E1, Gen::F0, Gen::F1, Gen::T0, Gen::T1};
        for (int trial = 0; trial < 50; ++trial) {
            const std::size_t n = trial % 2 == 0 ? 2 : 3;
            WedgeVector v(n);
            for (int terms = ri(1, 3); terms > 0; --terms) {
                PureWedge w;
                for (std::size_t s = 0; s < n; ++s) w.factors.push_back({ri(-2, 2), ri(0, 2)});
                v.add_term(std::move(w), Coefficient::q_power(ri(0, 4), scalars[ri(0, 3)]));
            }
            Gen g = gens[ri(0, 5)];
            WedgeVector lhs = straighten(uq_apply_wedge(g, v));
            WedgeVector rhs = straighten(uq_apply_wedge(g, straighten(v)));
            if (lhs != rhs)
                bad.push_back("trial " + std::to_string(trial) + ": " + gen_name(g) +
                              " does not commute with straightening on " + v.str());

            const BaseRelation& base = base_relations()[static_cast<std::size_t>(ri(0, 8))];
            WedgeVector rel = z_shift_all(smear_pow(base.rel, ri(0, 1)), ri(-2, 2));
            if (n == 3) rel = wedge_extend(rel, AffLabel{ri(-2, 2), ri(0, 2)}, ri(0, 1) == 1);
            if (!straighten(rel).is_zero())
                bad.push_back("trial " + std::to_string(trial) + ": relation element " +
                              rel.str() + " has nonzero normal form");
            WedgeVector shifted = v;
            shifted += Coefficient::q_power(ri(-2, 2), ri(1, 3)) * rel;
            if (straighten(shifted) != straighten(v))
                bad.push_back("trial " + std::to_string(trial) +
                              ": normal form moved under a relation shift");
        }
    });
}

/// Runs all nine criteria, printing one PASS/FAIL line per criterion plus
/// witnesses for failures. Returns the number of failed criteria.
inline int run_selftest(std::ostream& os, unsigned seed = 20260816) {
    std::vector<CriterionResult> results;
    results.push_back(criterion_base_relations());
    results.push_back(criterion_two_wedge_basis());
    results.push_back(criterion_vacuum_annihilation());
    results.push_back(criterion_vacuum_identities());
    results.push_back(criterion_boson_suite());
    results.push_back(criterion_character_factorization());
    results.push_back(criterion_decomposition_span());
    results.push_back(criterion_perfect_crystal());
    results.push_back(criterion_well_definedness(seed));

    int failures = 0;
    for (const auto& r : results) {
        os << (r.pass ? "[PASS]" : "[FAIL]") << " criterion " << r.id << ": " << r.name << " ("
           << std::fixed << std::setprecision(1) << r.seconds << "s)\n";
        for (const auto& w : r.witnesses) os << "        " << w << "\n";
        if (!r.pass) ++failures;
    }
    os << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed")
       << "\n";
    return failures;
}

} // namespace qfock
