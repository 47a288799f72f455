#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "boson.hpp"

namespace qfock {

/// Weight cell relative to an anchor weight lambda: depth d counts delta-drops
/// (mu = lambda - d*delta + t*alpha1), offset t moves along the classical root.
struct CellKey {
    int d = 0;
    int t = 0;
    friend bool operator<(CellKey a, CellKey b) {
        return a.d != b.d ? a.d < b.d : a.t < b.t;
    }
    friend bool operator==(CellKey a, CellKey b) { return a.d == b.d && a.t == b.t; }
};

/// Converts an absolute weight to a cell relative to the anchor. The
/// difference must lie in the root lattice.
inline CellKey cell_of(const Weight& mu, const Weight& lambda) {
    Weight diff = lambda - mu;
    if (diff.c0 + diff.c1 != 0 || diff.c1 % 2 != 0)
        throw std::invalid_argument("cell_of: weight difference is not a root-lattice element");
    return CellKey{diff.d, -diff.c1 / 2};
}

/// Weight multiplicities relative to an anchor, rows 0..cutoff by delta-depth.
struct MultTable {
    Weight lambda{};
    int cutoff = 0;
    /// Longest finite support (body length) seen while filling the table;
    /// meaningful for enumeration-produced tables only.
    int max_support = 0;
    std::map<CellKey, long long> mult;

    long long at(int d, int t) const {
        auto it = mult.find(CellKey{d, t});
        return it == mult.end() ? 0 : it->second;
    }
    void add(int d, int t, long long v) {
        if (d < 0) throw std::invalid_argument("MultTable: negative depth");
        if (v == 0) return;
        long long& slot = mult[CellKey{d, t}];
        slot += v;
        if (slot == 0) mult.erase(CellKey{d, t});
    }
    long long row_total(int d) const {
        long long s = 0;
        for (const auto& [key, v] : mult)
            if (key.d == d) s += v;
        return s;
    }
    std::string str() const {
        std::ostringstream os;
        os << "anchor " << lambda.str() << ", depth <= " << cutoff << "\n";
        for (int d = 0; d <= cutoff; ++d) {
            os << "  d=" << d << ":";
            bool any = false;
            for (const auto& [key, v] : mult)
                if (key.d == d) {
                    os << " t=" << key.t << ":" << v;
                    any = true;
                }
            if (!any) os << " (empty)";
            os << "\n";
        }
        return os.str();
    }
};

/// Weight multiplicities of F_m to delta-depth D, by direct enumeration of
/// the normally ordered sequences that agree with the ground far out.
///
/// Words are grown right to left from the junction with the ground tail, so
/// every intermediate state already satisfies the junction condition and all
/// adjacent energies. The lower window on z-exponents and the partial-depth
/// window carry slack beyond anything a valid word has been observed to need;
/// the tests certify them against an independent wider enumeration and
/// against the character factorization, and the caps below fail loudly
/// rather than return a silently truncated table.
inline MultTable enum_wedges(GroundSeq seq, int m, int D) {
    if (D < 0) throw std::invalid_argument("enum_wedges: depth cutoff must be nonnegative");
    MultTable out;
    out.lambda = ground_lambda(seq, m);
    out.cutoff = D;
    out.add(0, 0, 1);

    const int per = ground_period(seq);
    const int len_cap = 8 * (D + 2);
    const int budget_hi = D + 4;
    const int budget_lo = -(2 * D + 8);
    auto mod_per = [per](int x) { return ((x % per) + per) % per; };

    for (int rho = 0; rho < per; ++rho) {
        // rho is the residue of the tail start; the k-th letter from the
        // right sits at a position congruent to rho - k.
        auto dfs = [&](auto&& self, AffLabel head, int dpart, int tpart, int len,
                       int ground_run) -> void {
            if (mod_per(m + len) == rho && 0 <= dpart && dpart <= D) {
                out.add(dpart, tpart, 1);
                out.max_support = std::max(out.max_support, len);
            }
            AffLabel g = ground_elt(seq, rho - (len + 1));
            for (int aa = g.a - (D + 4); aa <= head.a + 1; ++aa)
                for (int j = 0; j <= 2; ++j) {
                    AffLabel w{aa, j};
                    if (energy_H(w, head) < 1) continue;
                    int nd = dpart + (g.a - aa);
                    if (nd > budget_hi || nd < budget_lo) continue;
                    int run = (w == g) ? ground_run + 1 : 0;
                    if (run > per)
                        throw enumeration_error(
                            "enum_wedges: ground-prefixed family (weight space would be "
                            "infinite-dimensional)");
                    if (len + 1 > len_cap)
                        throw enumeration_error("enum_wedges: support length cap exceeded");
                    self(self, w, nd, tpart + (g.j - j), len + 1, run);
                }
        };

        AffLabel tail0 = ground_elt(seq, rho);
        AffLabel g1 = ground_elt(seq, rho - 1);
        for (int aa = g1.a - (D + 4); aa <= tail0.a + 1; ++aa)
            for (int j = 0; j <= 2; ++j) {
                AffLabel w{aa, j};
                if (w == g1) continue;                 // canonical: rightmost letter is a defect
                if (energy_H(w, tail0) < 1) continue;  // junction with the ground tail
                int nd = g1.a - aa;
                if (nd > budget_hi || nd < budget_lo) continue;
                dfs(dfs, w, nd, g1.j - w.j, 1, 0);
            }
    }
    return out;
}

/// Symmetric bilinear form on the weight lattice, doubled to stay integral:
/// 2(x, y) with (alpha1, alpha1) = 2, (Lambda0, delta) = 1, (Lambda0, Lambda0) = 0.
inline long long scal2(const Weight& x, const Weight& y) {
    return static_cast<long long>(x.c1) * y.c1 + 2LL * x.level() * y.d +
           2LL * y.level() * x.d;
}

/// Weight multiplicities of the irreducible integrable highest-weight module
/// V(lambda) for affine sl2, level 2, to delta-depth D, via the Freudenthal
/// recursion truncated by depth. Positive roots: alpha1 + n*delta (n >= 0)
/// and -alpha1 + n*delta (n >= 1) with multiplicity one, and n*delta (n >= 1)
/// with multiplicity one (the rank). Non-dominant weights are reflected into
/// already-computed cells; all divisions must be exact.
inline MultTable oracle_irr_character(const Weight& lambda, int D) {
    if (lambda.level() != 2 || lambda.c0 < 0 || lambda.c1 < 0)
        throw std::domain_error(
            "oracle_irr_character: anchor must be dominant of level 2");
    if (D < 0) throw std::invalid_argument("oracle_irr_character: negative depth cutoff");

    MultTable tab;
    tab.lambda = lambda;
    tab.cutoff = D;
    const Weight rho{1, 1, 0};
    // Row d supports t in [-c1(lambda) - d, d]; outside, multiplicity is zero
    // (upper end since b = d - t >= 0, lower end by the classical reflection).
    auto t_lo = [&](int d) { return -lambda.c1 - d; };
    auto get = [&](int d, int t) -> long long {
        if (d < 0 || t > d || t < t_lo(d)) return 0;
        return tab.at(d, t);
    };

    for (int d = 0; d <= D; ++d)
        for (int t = d; t >= t_lo(d); --t) {
            long long val = 0;
            if (d == 0 && t == 0) {
                val = 1;
            } else {
                const int c0 = lambda.c0 - 2 * t;
                const int c1 = lambda.c1 + 2 * t;
                if (c0 >= 0 && c1 >= 0) {
                    const Weight mu = lambda - d * delta_weight() + t * alpha(1);
                    long long num = 0;
                    // alpha1 + n*delta, n >= 0: cells (d - k*n, t + k).
                    for (int n = 0; n <= d; ++n) {
                        const Weight root = alpha(1) + n * delta_weight();
                        for (int k = 1;; ++k) {
                            const int dd = d - k * n, tt = t + k;
                            if (dd < 0 || tt > dd) break;
                            num += scal2(mu + k * root, root) * get(dd, tt);
                        }
                    }
                    // -alpha1 + n*delta, n >= 1: cells (d - k*n, t - k).
                    for (int n = 1; n <= d; ++n) {
                        const Weight root = n * delta_weight() - alpha(1);
                        for (int k = 1; k * n <= d; ++k)
                            num += scal2(mu + k * root, root) * get(d - k * n, t - k);
                    }
                    // n*delta, n >= 1, multiplicity one: cells (d - k*n, t).
                    for (int n = 1; n <= d; ++n)
                        for (int k = 1; k * n <= d; ++k) {
                            const Weight root = n * delta_weight();
                            num += scal2(mu + k * root, root) * get(d - k * n, t);
                        }
                    const long long denom =
                        scal2(lambda + rho, lambda + rho) - scal2(mu + rho, mu + rho);
                    if (denom <= 0)
                        throw std::logic_error("oracle_irr_character: nonpositive Casimir gap");
                    const long long num2 = 2 * num;
                    if (num2 % denom != 0)
                        throw std::logic_error("oracle_irr_character: non-integral multiplicity");
                    val = num2 / denom;
                    if (val < 0)
                        throw std::logic_error("oracle_irr_character: negative multiplicity");
                } else {
                    // Reflect into the dominant chamber: s1 fixes the row and
                    // raises t, s0 strictly lowers the row.
                    int dd = d, tt = t, guard = 0;
                    while (true) {
                        const int rc0 = lambda.c0 - 2 * tt;
                        const int rc1 = lambda.c1 + 2 * tt;
                        if (rc1 < 0)
                            tt = -tt - lambda.c1;
                        else if (rc0 < 0) {
                            dd += rc0;
                            tt += rc0;
                        } else
                            break;
                        if (++guard > 64)
                            throw std::logic_error("oracle_irr_character: reflection runaway");
                    }
                    val = get(dd, tt);
                }
            }
            if (val != 0) tab.add(d, t, val);
        }
    return tab;
}

/// Partition numbers p(0..D): the graded dimension of a polynomial algebra
/// on one generator per positive delta-degree.
inline std::vector<long long> boson_partition_character(int D) {
    if (D < 0) throw std::invalid_argument("boson_partition_character: negative cutoff");
    std::vector<long long> p(static_cast<std::size_t>(D) + 1, 0);
    p[0] = 1;
    for (int part = 1; part <= D; ++part)
        for (int s = part; s <= D; ++s)
            p[static_cast<std::size_t>(s)] += p[static_cast<std::size_t>(s - part)];
    return p;
}

struct CharacterCell {
    int d = 0;
    int t = 0;
    long long fock = 0;
    long long conv = 0;
};

/// Cell-by-cell comparison of the enumerated Fock multiplicities with the
/// convolution of irreducible multiplicities and partition numbers.
struct CharacterReport {
    GroundSeq seq = GroundSeq::B;
    int m = 0;
    int depth = 0;
    MultTable fock;
    MultTable irr;
    std::vector<long long> partitions;
    std::vector<CharacterCell> cells;
    std::vector<CharacterCell> mismatches;
    bool ok = false;

    std::string str() const {
        std::ostringstream os;
        os << "character factorization: seq=" << ground_name(seq) << " m=" << m
           << " depth=" << depth << "\n";
        os << "fock multiplicities (enumerated): " << fock.str();
        os << "irreducible multiplicities (Freudenthal): " << irr.str();
        os << "partition numbers:";
        for (long long v : partitions) os << " " << v;
        os << "\n";
        if (ok) {
            os << "all " << cells.size() << " cells match\n";
        } else {
            os << mismatches.size() << " mismatched cells:\n";
            for (const auto& c : mismatches)
                os << "  d=" << c.d << " t=" << c.t << " fock=" << c.fock
                   << " convolution=" << c.conv << "\n";
        }
        return os.str();
    }
};

inline CharacterReport verify_character(GroundSeq seq, int m, int D) {
    CharacterReport r;
    r.seq = seq;
    r.m = m;
    r.depth = D;
    r.fock = enum_wedges(seq, m, D);
    r.irr = oracle_irr_character(ground_lambda(seq, m), D);
    r.partitions = boson_partition_character(D);

    for (int d = 0; d <= D; ++d) {
        std::set<int> offsets;
        for (int t = -r.fock.lambda.c1 - d - 1; t <= d + 1; ++t) offsets.insert(t);
        for (const auto& [key, v] : r.fock.mult)
            if (key.d == d) offsets.insert(key.t);
        for (auto it = offsets.rbegin(); it != offsets.rend(); ++it) {
            const int t = *it;
            long long conv = 0;
            for (int e = 0; e <= d; ++e)
                conv += r.partitions[static_cast<std::size_t>(e)] * r.irr.at(d - e, t);
            const long long f = r.fock.at(d, t);
            if (f != 0 || conv != 0) r.cells.push_back({d, t, f, conv});
            if (f != conv) r.mismatches.push_back({d, t, f, conv});
        }
    }
    r.ok = r.mismatches.empty();
    return r;
}

struct SpanCell {
    int d = 0;
    int t = 0;
    long long rank = 0;
    long long dim = 0;
};

/// Result of the highest-weight / spanning check for the map that sends
/// V(lambda_m) (x) the boson polynomial algebra into F_m.
struct SpanReport {
    GroundSeq seq = GroundSeq::B;
    int m = 0;
    int depth = 0;
    int precision = 0;
    bool hw_ok = false;       // e_i vac = 0 and B_a vac = 0 for a > 0
    bool ranks_match = false; // per-cell rank equals the enumerated dimension
    bool stable = false;      // ranks agree at precision and precision + 4
    std::vector<SpanCell> cells;

    bool ok() const { return hw_ok && ranks_match && stable; }
    std::string str() const {
        std::ostringstream os;
        os << "highest-weight span check: seq=" << ground_name(seq) << " m=" << m
           << " depth=" << depth << " precision=" << precision << "\n";
        os << "  vacuum annihilation: " << (hw_ok ? "ok" : "FAILED") << "\n";
        for (const auto& c : cells)
            os << "  d=" << c.d << " t=" << c.t << " rank=" << c.rank << " dim=" << c.dim
               << (c.rank == c.dim ? "" : "  <-- MISMATCH") << "\n";
        os << "  rank stability under precision + 4: " << (stable ? "ok" : "FAILED") << "\n";
        return os.str();
    }
};

namespace detail {

/// Applies boson monomials (one per partition of every e <= D) followed by
/// f-words to the vacuum, bucketing the nonzero results by weight cell.
inline std::map<CellKey, std::vector<FockVector>> span_states(GroundSeq seq, int m, int D,
                                                              int N) {
    std::map<CellKey, std::vector<FockVector>> cells;
    const Weight lam = ground_lambda(seq, m);

    auto record = [&](const FockVector& v) {
        auto w = fock_weight(v);
        if (!w) return;
        CellKey key = cell_of(*w, lam);
        if (key.d <= D) cells[key].push_back(v);
    };

    // f-word extensions: depth grows with every f0, the classical offset is
    // bounded below by the support of the module, dead branches stay dead.
    auto fwords = [&](auto&& self, const FockVector& v, int e, int f0, int f1) -> void {
        if (e + f0 < D) {
            FockVector n0 = uq_apply_fock(Gen::F0, v);
            if (!n0.is_zero()) {
                record(n0);
                self(self, n0, e, f0 + 1, f1);
            }
        }
        if (f0 - (f1 + 1) >= -(lam.c1 + D)) {
            FockVector n1 = uq_apply_fock(Gen::F1, v);
            if (!n1.is_zero()) {
                record(n1);
                self(self, n1, e, f0, f1 + 1);
            }
        }
    };

    // Boson monomials indexed by partitions with parts listed descending.
    auto bosons = [&](auto&& self, const FockVector& v, int e, int maxpart) -> void {
        record(v);
        fwords(fwords, v, e, 0, 0);
        for (int part = std::min(D - e, maxpart); part >= 1; --part) {
            FockVector nv = boson_apply(-part, v);
            if (!nv.is_zero()) self(self, nv, e + part, part);
        }
    };

    bosons(bosons, vacuum(seq, m, N), 0, D);
    return cells;
}

/// Exact rank of a family of Fock vectors in normally ordered coordinates.
/// Entries are exact rational functions that represent the true coordinates
/// mod q^N, so an entry is treated as zero once its valuation reaches N - 2;
/// pivots take the minimum valuation in their column, which keeps every
/// elimination multiplier regular at q = 0 and the error floor at q^N.
inline long long cell_rank(std::vector<FockVector> vecs, int N) {
    if (vecs.empty()) return 0;
    int L = 0;
    for (const auto& v : vecs) L = std::max(L, v.body_length());
    for (auto& v : vecs) v.pad_to(L);

    std::map<PureWedge, std::size_t, PureWedgeLess> col;
    for (const auto& v : vecs)
        for (const auto& [w, c] : v.terms()) col.emplace(w, 0);
    std::size_t ncols = 0;
    for (auto& [w, idx] : col) idx = ncols++;

    std::vector<std::vector<Coefficient>> rows(vecs.size(),
                                               std::vector<Coefficient>(ncols));
    for (std::size_t r = 0; r < vecs.size(); ++r)
        for (const auto& [w, c] : vecs[r].terms()) rows[r][col.at(w)] = c;

    const int dead = N - 2;
    auto live = [&](const Coefficient& c) {
        auto v = c.valuation();
        return v.has_value() && *v < dead;
    };

    long long rank = 0;
    std::vector<bool> used(rows.size(), false);
    for (std::size_t c = 0; c < ncols; ++c) {
        std::size_t pivot = rows.size();
        int best = 0;
        for (std::size_t r = 0; r < rows.size(); ++r) {
            if (used[r] || !live(rows[r][c])) continue;
            int v = *rows[r][c].valuation();
            if (pivot == rows.size() || v < best) {
                pivot = r;
                best = v;
            }
        }
        if (pivot == rows.size()) continue;
        used[pivot] = true;
        ++rank;
        for (std::size_t r = 0; r < rows.size(); ++r) {
            if (r == pivot || used[r] || !live(rows[r][c])) continue;
            Coefficient f = rows[r][c] / rows[pivot][c];
            for (std::size_t cc = c; cc < ncols; ++cc)
                rows[r][cc] = rows[r][cc] - f * rows[pivot][cc];
        }
    }
    return rank;
}

} // namespace detail

/// Verifies the highest-weight conditions of the vacuum and that boson
/// monomials times f-words span every weight cell of F_m to depth D: the
/// per-cell rank of the generated vectors must equal the enumerated dimension,
/// at the working precision and again with four extra orders.
inline SpanReport hw_span_check(GroundSeq seq, int m, int D, int N = 0) {
    if (D < 0 || D > 3)
        throw std::invalid_argument("hw_span_check: depth cutoff must be between 0 and 3");
    if (N == 0) N = 2 * D + 8;
    if (N < 2 * D + 4)
        throw std::invalid_argument("hw_span_check: precision must be at least 2*depth + 4");

    SpanReport r;
    r.seq = seq;
    r.m = m;
    r.depth = D;
    r.precision = N;

    FockVector vac = vacuum(seq, m, N);
    r.hw_ok = uq_apply_fock(Gen::E0, vac).is_zero() &&
              uq_apply_fock(Gen::E1, vac).is_zero();
    for (int a = 1; a <= std::max(1, D); ++a)
        r.hw_ok = r.hw_ok && boson_apply(a, vac).is_zero();

    MultTable dims = enum_wedges(seq, m, D);
    auto ranks_at = [&](int prec) {
        std::map<CellKey, long long> out;
        for (auto& [key, vecs] : detail::span_states(seq, m, D, prec))
            out[key] = detail::cell_rank(std::move(vecs), prec);
        return out;
    };
    const auto rk = ranks_at(N);
    r.stable = (rk == ranks_at(N + 4));

    r.ranks_match = true;
    std::set<CellKey> keys;
    for (const auto& [key, v] : dims.mult) keys.insert(key);
    for (const auto& [key, v] : rk) keys.insert(key);
    for (const CellKey& key : keys) {
        auto it = rk.find(key);
        const long long rank = it == rk.end() ? 0 : it->second;
        SpanCell cell{key.d, key.t, rank, dims.at(key.d, key.t)};
        r.ranks_match = r.ranks_match && cell.rank == cell.dim;
        r.cells.push_back(cell);
    }
    return r;
}

} // namespace qfock
