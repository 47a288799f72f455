#include <catch2/catch_amalgamated.hpp>

#include <map>
#include <utility>

#include "qfock/characters.hpp"

using namespace qfock;

namespace {

/// Independent count of the depth-bounded weight cells: every finite support
/// length up to Lmax, every compatible total level, enumerated through
/// slice_basis with a z-window one wider and a length cap documented against
/// the enumerator's observed support. Slow but direct.
std::map<std::pair<int, int>, long long> brute_cells(GroundSeq seq, int m, int D, int Lmax) {
    std::map<std::pair<int, int>, long long> out;
    ++out[{0, 0}];
    for (int L = 1; L <= Lmax; ++L) {
        int totl0 = 0, agmin = ground_elt(seq, m).a, agmax = agmin;
        for (int i = 0; i < L; ++i) {
            AffLabel g = ground_elt(seq, m + i);
            totl0 += level_l(g);
            agmin = std::min(agmin, g.a);
            agmax = std::max(agmax, g.a);
        }
        const int lo = 2 * (agmin - (D + 5)) - 2;
        const int hi = 2 * (agmax + L + 1);
        const AffLabel tail = ground_elt(seq, m + L);
        const AffLabel glast = ground_elt(seq, m + L - 1);
        for (int totl = totl0 - 2 * D - 2 * L; totl <= totl0 + 2 * L; ++totl)
            for (const PureWedge& w : slice_basis(L, totl, lo, hi)) {
                if (energy_H(w.factors.back(), tail) < 1) continue;
                if (w.factors.back() == glast) continue;
                int dd = 0, tt = 0;
                for (int i = 0; i < L; ++i) {
                    AffLabel g = ground_elt(seq, m + i);
                    dd += g.a - w.factors[i].a;
                    tt += g.j - w.factors[i].j;
                }
                if (dd >= 0 && dd <= D) ++out[{dd, tt}];
            }
    }
    return out;
}

std::map<std::pair<int, int>, long long> as_map(const MultTable& tab) {
    std::map<std::pair<int, int>, long long> out;
    for (const auto& [key, v] : tab.mult) out[{key.d, key.t}] = v;
    return out;
}

} // namespace

TEST_CASE("cell bookkeeping relative to an anchor", "[characters]") {
    const Weight lam{1, 1, 0};
    CHECK(cell_of(lam, lam) == CellKey{0, 0});
    CHECK(cell_of(lam - delta_weight(), lam) == CellKey{1, 0});
    CHECK(cell_of(lam - alpha(1), lam) == CellKey{0, -1});
    CHECK(cell_of(lam - alpha(0), lam) == CellKey{1, 1});
    // alpha0 + alpha1 = delta, mixed drop
    CHECK(cell_of(lam - alpha(0) - 2 * alpha(1), lam) == CellKey{1, -1});
    CHECK_THROWS_AS(cell_of(lam - Weight{1, 0, 0}, lam), std::invalid_argument);

    MultTable tab;
    tab.lambda = lam;
    tab.cutoff = 2;
    tab.add(1, 0, 2);
    tab.add(1, -1, 1);
    tab.add(1, 0, 1);
    CHECK(tab.at(1, 0) == 3);
    CHECK(tab.at(2, 5) == 0);
    CHECK(tab.row_total(1) == 4);
    CHECK_THROWS_AS(tab.add(-1, 0, 1), std::invalid_argument);
}

TEST_CASE("enumerated depth-zero rows are the classical strings", "[characters]") {
    MultTable b = enum_wedges(GroundSeq::B, 0, 0);
    CHECK(b.at(0, 0) == 1);
    CHECK(b.at(0, -1) == 1);
    CHECK(b.row_total(0) == 2);

    MultTable a0 = enum_wedges(GroundSeq::A, 0, 0);
    CHECK(a0.at(0, 0) == 1);
    CHECK(a0.row_total(0) == 1);

    MultTable a1 = enum_wedges(GroundSeq::A, 1, 0);
    CHECK(a1.at(0, 0) == 1);
    CHECK(a1.at(0, -1) == 1);
    CHECK(a1.at(0, -2) == 1);
    CHECK(a1.row_total(0) == 3);

    CHECK_THROWS_AS(enum_wedges(GroundSeq::B, 0, -1), std::invalid_argument);
}

TEST_CASE("the depth-one row of the constant ground sequence", "[characters]") {
    // Hand enumeration at offset zero: (z^-1 b1), (b2, z^-1 b0), (z^-1 b0, b2).
    MultTable b = enum_wedges(GroundSeq::B, 0, 1);
    CHECK(b.at(1, 1) == 1);
    CHECK(b.at(1, 0) == 3);
    CHECK(b.at(1, -1) == 3);
    CHECK(b.at(1, -2) == 1);
    CHECK(b.row_total(1) == 8);
}

TEST_CASE("enumeration agrees with the brute-force slice count", "[characters]") {
    struct Case {
        GroundSeq seq;
        int m;
        int D;
    };
    for (Case c : {Case{GroundSeq::B, 0, 2}, Case{GroundSeq::A, 0, 2}, Case{GroundSeq::A, 1, 2}}) {
        CAPTURE(ground_name(c.seq), c.m, c.D);
        MultTable tab = enum_wedges(c.seq, c.m, c.D);
        // Scan two support lengths past anything the enumerator produced, so
        // an undercounting enumerator shows up as brute-only words.
        CHECK(as_map(tab) == brute_cells(c.seq, c.m, c.D, tab.max_support + 2));
    }
}

TEST_CASE("enumeration is invariant under sector translation", "[characters]") {
    CHECK(as_map(enum_wedges(GroundSeq::B, 0, 3)) == as_map(enum_wedges(GroundSeq::B, 7, 3)));
    CHECK(as_map(enum_wedges(GroundSeq::A, 0, 2)) == as_map(enum_wedges(GroundSeq::A, 2, 2)));
    CHECK(as_map(enum_wedges(GroundSeq::A, 1, 2)) == as_map(enum_wedges(GroundSeq::A, -1, 2)));
}

TEST_CASE("constant-sequence multiplicities mirror under the diagram flip", "[characters]") {
    // lambda = Lambda0 + Lambda1 is fixed by swapping the two fundamental
    // weights, which sends offset t to -1 - t.
    MultTable b = enum_wedges(GroundSeq::B, 0, 4);
    for (const auto& [key, v] : b.mult) CHECK(b.at(key.d, -1 - key.t) == v);
}

TEST_CASE("irreducible oracle ground rows and guards", "[characters]") {
    MultTable two1 = oracle_irr_character(Weight{0, 2, 0}, 2);
    CHECK(two1.at(0, 0) == 1);
    CHECK(two1.at(0, -1) == 1);  // one step down the classical string
    CHECK(two1.at(0, -2) == 1);
    CHECK(two1.row_total(0) == 3);

    MultTable two0 = oracle_irr_character(Weight{2, 0, 0}, 2);
    CHECK(two0.row_total(0) == 1);

    MultTable mix = oracle_irr_character(Weight{1, 1, 0}, 2);
    CHECK(mix.at(0, 0) == 1);
    CHECK(mix.at(0, -1) == 1);
    CHECK(mix.row_total(0) == 2);

    CHECK_THROWS_AS(oracle_irr_character(Weight{1, 0, 0}, 2), std::domain_error);
    CHECK_THROWS_AS(oracle_irr_character(Weight{3, -1, 0}, 2), std::domain_error);
    CHECK_THROWS_AS(oracle_irr_character(Weight{1, 1, 0}, -1), std::invalid_argument);
}

TEST_CASE("irreducible oracle is invariant under delta shifts of the anchor", "[characters]") {
    MultTable base = oracle_irr_character(Weight{2, 0, 0}, 4);
    MultTable shifted = oracle_irr_character(Weight{2, 0, 1}, 4);
    CHECK(base.mult == shifted.mult);
}

TEST_CASE("irreducible multiplicities are nonnegative and symmetric", "[characters]") {
    for (Weight lam : {Weight{0, 2, 0}, Weight{1, 1, 0}, Weight{2, 0, 0}}) {
        CAPTURE(lam.str());
        MultTable tab = oracle_irr_character(lam, 6);
        CHECK(tab.at(0, 0) == 1);
        for (const auto& [key, v] : tab.mult) {
            CHECK(v > 0);
            // s1-reflection symmetry of the weight diagram
            CHECK(tab.at(key.d, -lam.c1 - key.t) == v);
        }
    }
}

TEST_CASE("partition numbers", "[characters]") {
    CHECK(boson_partition_character(4) == std::vector<long long>{1, 1, 2, 3, 5});
    CHECK(boson_partition_character(0) == std::vector<long long>{1});
    CHECK(boson_partition_character(6).back() == 11);
    CHECK_THROWS_AS(boson_partition_character(-1), std::invalid_argument);
}

TEST_CASE("character factorization holds for both ground sequences", "[characters]") {
    for (auto [seq, m] : {std::pair{GroundSeq::B, 0}, {GroundSeq::A, 0}, {GroundSeq::A, 1}}) {
        CAPTURE(ground_name(seq), m);
        CharacterReport r = verify_character(seq, m, 5);
        CHECK(r.ok);
        CHECK(r.mismatches.empty());
        CHECK_FALSE(r.cells.empty());
        CHECK(r.str().find("cells match") != std::string::npos);
    }
}

TEST_CASE("the depth-one fixture ties the Fock count to the oracle", "[characters]") {
    CharacterReport r = verify_character(GroundSeq::B, 0, 1);
    REQUIRE(r.ok);
    CHECK(r.fock.at(1, 0) == 3);
    // conv = p(0) * mult_V(depth 1) + p(1) * mult_V(depth 0)
    CHECK(r.irr.at(1, 0) == 2);
    CHECK(r.partitions == std::vector<long long>{1, 1});
}

TEST_CASE("highest-weight span check at shallow depth", "[characters]") {
    SpanReport r0 = hw_span_check(GroundSeq::B, 0, 0);
    CHECK(r0.ok());
    REQUIRE(r0.cells.size() == 2);  // the depth-0 classical string
    CHECK(r0.cells.front().rank == 1);
    CHECK(r0.cells.front().dim == 1);

    SpanReport r1 = hw_span_check(GroundSeq::B, 0, 1, 12);
    CHECK(r1.hw_ok);
    CHECK(r1.ranks_match);
    CHECK(r1.stable);
    CHECK(r1.ok());
    // depth-1 row: ranks reproduce the enumerated dimensions 1, 3, 3, 1
    long long row1 = 0;
    for (const auto& c : r1.cells)
        if (c.d == 1) {
            CHECK(c.rank == c.dim);
            row1 += c.rank;
        }
    CHECK(row1 == 8);

    CHECK_THROWS_AS(hw_span_check(GroundSeq::B, 0, 4), std::invalid_argument);
    CHECK_THROWS_AS(hw_span_check(GroundSeq::B, 0, 1, 5), std::invalid_argument);
}

TEST_CASE("highest-weight span check for the alternating sequence", "[characters]") {
    SpanReport r = hw_span_check(GroundSeq::A, 0, 1, 10);
    CHECK(r.ok());
    for (const auto& c : r.cells) CHECK(c.rank == c.dim);
}
