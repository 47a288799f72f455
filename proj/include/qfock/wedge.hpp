#pragma once

#include <algorithm>
#include <atomic>
#include <limits>
#include <map>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "qfock/affine.hpp"
#include "qfock/config.hpp"
#include "qfock/errors.hpp"

namespace qfock {

/// Ordered list of affinized labels u_1 (x) ... (x) u_n. Pure monomials double
/// as tensors (before straightening) and wedges (once normally ordered).
struct PureWedge {
    std::vector<AffLabel> factors;

    std::size_t arity() const { return factors.size(); }

    /// Normally ordered iff every adjacent energy is positive.
    bool normally_ordered() const {
        for (std::size_t m = 0; m + 1 < factors.size(); ++m)
            if (energy_H(factors[m], factors[m + 1]) <= 0) return false;
        return true;
    }

    int z_degree() const {
        int d = 0;
        for (AffLabel u : factors) d += u.a;
        return d;
    }
    int total_level() const {
        int t = 0;
        for (AffLabel u : factors) t += level_l(u);
        return t;
    }
    Weight weight() const {
        Weight w{};
        for (AffLabel u : factors) w = w + global_wt(u);
        return w;
    }

    PureWedge z_shifted(int k) const {
        PureWedge r = *this;
        for (AffLabel& u : r.factors) u.a += k;
        return r;
    }

    friend bool operator==(const PureWedge& x, const PureWedge& y) {
        return x.factors == y.factors;
    }
    friend bool operator!=(const PureWedge& x, const PureWedge& y) { return !(x == y); }

    std::string str() const {
        std::string s;
        for (std::size_t m = 0; m < factors.size(); ++m) {
            if (m) s += "^";
            s += factors[m].str();
        }
        return s.empty() ? "()" : s;
    }
};

/// Canonical monomial order: factorwise (level descending, then color),
/// shorter prefixes first. Map iteration then visits leading terms first.
struct PureWedgeLess {
    bool operator()(const PureWedge& x, const PureWedge& y) const {
        auto key = [](AffLabel u) { return std::make_pair(-level_l(u), u.j); };
        return std::lexicographical_compare(
            x.factors.begin(), x.factors.end(), y.factors.begin(), y.factors.end(),
            [&](AffLabel u, AffLabel w) { return key(u) < key(w); });
    }
};

/// Linear combination of same-arity monomials over the coefficient field.
class WedgeVector {
public:
    using Terms = std::map<PureWedge, Coefficient, PureWedgeLess>;

    WedgeVector() = default;
    explicit WedgeVector(int arity) : arity_(arity) {}
    explicit WedgeVector(PureWedge w, Coefficient c = Coefficient(1))
        : arity_(static_cast<int>(w.arity())) {
        if (!c.is_zero()) terms_.emplace(std::move(w), std::move(c));
    }

    int arity() const { return arity_; }
    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }

    Coefficient coeff(const PureWedge& w) const {
        auto it = terms_.find(w);
        return it == terms_.end() ? Coefficient() : it->second;
    }

    void add_term(const PureWedge& w, const Coefficient& c) {
        if (c.is_zero()) return;
        if (arity_ < 0) arity_ = static_cast<int>(w.arity());
        else if (static_cast<int>(w.arity()) != arity_)
            throw std::invalid_argument("wedge arity mismatch");
        auto [it, fresh] = terms_.emplace(w, c);
        if (!fresh) {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    WedgeVector& operator+=(const WedgeVector& o) {
        for (const auto& [w, c] : o.terms_) add_term(w, c);
        return *this;
    }
    WedgeVector& operator-=(const WedgeVector& o) {
        for (const auto& [w, c] : o.terms_) add_term(w, -c);
        return *this;
    }
    WedgeVector& operator*=(const Coefficient& s) {
        if (s.is_zero()) terms_.clear();
        else
            for (auto& [w, c] : terms_) c *= s;
        return *this;
    }
    friend WedgeVector operator+(WedgeVector a, const WedgeVector& b) { return a += b; }
    friend WedgeVector operator-(WedgeVector a, const WedgeVector& b) { return a -= b; }
    friend WedgeVector operator*(const Coefficient& s, WedgeVector v) { return v *= s; }
    WedgeVector operator-() const {
        WedgeVector r = *this;
        for (auto& [w, c] : r.terms_) c = -c;
        return r;
    }
    friend bool operator==(const WedgeVector& a, const WedgeVector& b) {
        return a.terms_ == b.terms_;
    }
    friend bool operator!=(const WedgeVector& a, const WedgeVector& b) { return !(a == b); }

    bool all_normally_ordered() const {
        for (const auto& [w, c] : terms_)
            if (!w.normally_ordered()) return false;
        return true;
    }

    std::string str() const {
        if (terms_.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        for (const auto& [w, c] : terms_) detail::append_signed_term(os, first, c.str(), w.str());
        return os.str();
    }

private:
    int arity_ = -1;
    Terms terms_;
};

inline PureWedge pure(std::initializer_list<AffLabel> labels) {
    return PureWedge{std::vector<AffLabel>(labels)};
}

/// Multiplication by z on every slot: z^a (x) z^a on pairs, and generally
/// the diagonal z action. Preserves membership in the relation submodule.
inline WedgeVector z_shift_all(const WedgeVector& v, int a) {
    WedgeVector r(v.arity());
    for (const auto& [w, c] : v.terms()) r.add_term(w.z_shifted(a), c);
    return r;
}

/// The symmetric z-smearing z (x) 1 + 1 (x) z on two-slot vectors.
inline WedgeVector smear(const WedgeVector& v) {
    if (v.arity() != 2 && !v.is_zero())
        throw std::invalid_argument("smear expects two-slot vectors");
    WedgeVector r(2);
    for (const auto& [w, c] : v.terms()) {
        PureWedge a = w, b = w;
        a.factors[0].a += 1;
        b.factors[1].a += 1;
        r.add_term(a, c);
        r.add_term(b, c);
    }
    return r;
}

inline WedgeVector smear_pow(WedgeVector v, int k) {
    for (int t = 0; t < k; ++t) v = smear(v);
    return v;
}

/// One defining two-slot relation: the head monomial (z^H b_i, b_j) carries
/// coefficient one and every tail monomial is normally ordered.
struct BaseRelation {
    int i = 0; // head colors: first factor b_i, second b_j
    int j = 0;
    int H = 0; // energy of (b_i, b_j); the head's first factor is z^H b_i
    WedgeVector rel;
};

/// The nine defining relations of the two-slot relation submodule, one per
/// ordered color pair (i, j). Heads exhaust the energy-zero pairs up to z-shift.
inline const std::vector<BaseRelation>& base_relations() {
    static const std::vector<BaseRelation> rels = [] {
        auto mon = [](int a1, int j1, int a2, int j2) {
            return PureWedge{{AffLabel{a1, j1}, AffLabel{a2, j2}}};
        };
        auto Q = [](int e) { return Coefficient::q_power(e); };
        Coefficient q2b = Coefficient(LaurentPoly::q().pow(2) * quantum_int(2)); // q^2 [2] = q + q^3

        std::vector<BaseRelation> out;
        auto add = [&](int i, int j, std::vector<std::pair<PureWedge, Coefficient>> terms) {
            BaseRelation r;
            r.i = i;
            r.j = j;
            r.H = energy_H(AffLabel{0, i}, AffLabel{0, j});
            r.rel = WedgeVector(2);
            for (auto& [w, c] : terms) r.rel.add_term(w, c);
            out.push_back(std::move(r));
        };

        add(0, 0, {{mon(0, 0, 0, 0), Coefficient(1)}});
        add(0, 1, {{mon(0, 0, 0, 1), Coefficient(1)}, {mon(0, 1, 0, 0), Q(2)}});
        add(0, 2, {{mon(0, 0, 0, 2), Coefficient(1)},
                   {mon(0, 1, 0, 1), Q(1)},
                   {mon(0, 2, 0, 0), Q(4)}});
        add(1, 2, {{mon(0, 1, 0, 2), Coefficient(1)}, {mon(0, 2, 0, 1), Q(2)}});
        add(2, 2, {{mon(0, 2, 0, 2), Coefficient(1)}});
        add(2, 1, {{mon(1, 2, 0, 1), Coefficient(1)}, {mon(0, 1, 1, 2), Q(2)}});
        add(2, 0, {{mon(2, 2, 0, 0), Coefficient(1)},
                   {mon(1, 1, 1, 1), Q(1)},
                   {mon(0, 0, 2, 2), Q(4)}});
        add(1, 0, {{mon(1, 1, 0, 0), Coefficient(1)}, {mon(0, 0, 1, 1), Q(2)}});
        add(1, 1, {{mon(1, 1, 0, 1), Coefficient(1)},
                   {mon(0, 1, 1, 1), Q(2)},
                   {mon(0, 0, 1, 2), q2b},
                   {mon(1, 2, 0, 0), q2b}});
        return out;
    }();
    return rels;
}

inline const BaseRelation& base_relation(int i, int j) {
    for (const auto& r : base_relations())
        if (r.i == i && r.j == j) return r;
    throw std::invalid_argument("no base relation for colors (" + std::to_string(i) + "," +
                                std::to_string(j) + ")");
}

/// Iterated coproduct action on n-slot tensors. f_i at slot r twists every
/// slot to its right by t_i; e_i at slot r twists every slot to its left by
/// t_i^{-1}; t_i is diagonal. Maps the relation submodule into itself.
inline WedgeVector uq_apply_wedge(Gen g, const WedgeVector& v) {
    WedgeVector out(v.arity());
    int i = gen_color(g);
    for (const auto& [w, c] : v.terms()) {
        if (is_t(g)) {
            int h = 0;
            for (AffLabel u : w.factors) h += wt_cl(u.elt()).h(i);
            if (g == Gen::T0Inv || g == Gen::T1Inv) h = -h;
            out.add_term(w, c * Coefficient::q_power(h));
            continue;
        }
        // Running exponent of the torus twist: for f, the tail weight sum to
        // the right of the action slot; for e, minus the head sum to the left.
        int total_h = 0;
        for (AffLabel u : w.factors) total_h += wt_cl(u.elt()).h(i);
        int left_h = 0;
        for (std::size_t r = 0; r < w.factors.size(); ++r) {
            AffLabel u = w.factors[r];
            int here_h = wt_cl(u.elt()).h(i);
            AffVector moved = uq_apply_label(g, u);
            if (!moved.is_zero()) {
                int twist = is_f(g) ? (total_h - left_h - here_h) : -left_h;
                for (const auto& [nu, nc] : moved.terms()) {
                    PureWedge nw = w;
                    nw.factors[r] = nu;
                    out.add_term(nw, c * nc * Coefficient::q_power(twist));
                }
            }
            left_h += here_h;
        }
    }
    return out;
}

/// Counters for instrumentation of the straightening engine.
struct StraightenStats {
    std::atomic<long long> slice_solves{0};
    std::atomic<int> max_widen_used{0};
    std::atomic<long long> straighten2_cache_hits{0};
};

inline StraightenStats& straighten_stats() {
    static StraightenStats s;
    return s;
}

namespace detail {

/// All candidate relations in one graded slice: classical weight `wcl`, total
/// z-degree `d`, every factor level inside [lo, hi]. Generated from the base
/// relations by smearing and diagonal shifts, which span the slice.
inline std::vector<WedgeVector> candidate_relations(Weight wcl, int d, int lo, int hi) {
    std::vector<WedgeVector> out;
    if (hi < lo) return out;
    for (const auto& base : base_relations()) {
        PureWedge head = base.rel.terms().begin()->first;
        Weight bw = head.weight();
        if (Weight{bw.c0, bw.c1, 0} != Weight{wcl.c0, wcl.c1, 0}) continue;
        int s = d - head.z_degree();
        int kmax = (hi - lo) / 2;
        for (int k = (s % 2 + 2) % 2; k <= kmax; k += 2) {
            int a2 = s - k; // twice the diagonal shift
            if (a2 % 2 != 0) continue;
            WedgeVector r = z_shift_all(smear_pow(base.rel, k), a2 / 2);
            bool inside = true;
            for (const auto& [w, c] : r.terms())
                for (AffLabel u : w.factors)
                    if (level_l(u) < lo || level_l(u) > hi) inside = false;
            if (inside) out.push_back(std::move(r));
        }
    }
    return out;
}

} // namespace detail

/// Rewrites the two-slot tensor u (x) w (with nonpositive energy) as a
/// combination of normally ordered monomials with first level strictly below
/// l(u), by exact elimination against the candidate relations of its slice.
/// The level window starts at [l(w), l(u)] and widens on failure.
inline WedgeVector slice_solve(AffLabel u, AffLabel w, int max_widen = config().max_widen) {
    if (energy_H(u, w) > 0)
        throw std::invalid_argument("slice_solve: pair is already normally ordered");
    ++straighten_stats().slice_solves;

    PureWedge target{{u, w}};
    Weight wcl = target.weight();
    int d = target.z_degree();

    for (int widen = 0; widen <= max_widen; ++widen) {
        int lo = level_l(w) - widen, hi = level_l(u) + widen;
        auto cands = detail::candidate_relations(wcl, d, lo, hi);
        if (cands.empty()) continue;

        // A column is pivot-eligible when it must not appear in the result:
        // not normally ordered, or normally ordered but not strictly lower.
        auto pivot_eligible = [&](const PureWedge& m) {
            return !m.normally_ordered() || level_l(m.factors[0]) >= level_l(u);
        };

        // Echelonize the candidates over the pivot-eligible columns. Each row
        // keeps the combination of original candidates that produced it.
        struct Row {
            WedgeVector vec;
            std::map<std::size_t, Coefficient> combo;
        };
        std::vector<Row> pivots; // row r pivots on pivots[r].vec's leading eligible column
        std::vector<PureWedge> pivot_cols;

        auto reduce = [&](Row& row) {
            for (std::size_t r = 0; r < pivots.size(); ++r) {
                Coefficient c = row.vec.coeff(pivot_cols[r]);
                if (c.is_zero()) continue;
                row.vec -= c * pivots[r].vec;
                for (const auto& [idx, pc] : pivots[r].combo) {
                    auto [it, fresh] = row.combo.emplace(idx, -(c * pc));
                    if (!fresh) {
                        it->second -= c * pc;
                        if (it->second.is_zero()) row.combo.erase(it);
                    }
                }
            }
        };
        auto leading_eligible = [&](const WedgeVector& v) -> std::optional<PureWedge> {
            for (const auto& [m, c] : v.terms())
                if (pivot_eligible(m)) return m;
            return std::nullopt;
        };

        bool inconsistent = false;
        for (std::size_t idx = 0; idx < cands.size(); ++idx) {
            Row row{cands[idx], {{idx, Coefficient(1)}}};
            reduce(row);
            auto lead = leading_eligible(row.vec);
            if (!lead) {
                // A relation fell entirely into the allowed basis: it must be
                // the zero combination, or the relation set is unsound.
                if (!row.vec.is_zero())
                    throw straighten_error("slice_solve: relations overlap the ordered basis");
                continue;
            }
            Coefficient inv = row.vec.coeff(*lead).inverse();
            row.vec *= inv;
            for (auto& [k, pc] : row.combo) pc *= inv;
            pivot_cols.push_back(*lead);
            pivots.push_back(std::move(row));
        }

        // One forward pass suffices: pivot row r has zeros at all earlier
        // pivot columns, so later subtractions never disturb cleared ones.
        Row t{WedgeVector(target), {}};
        reduce(t);

        inconsistent = leading_eligible(t.vec).has_value();
        if (inconsistent) continue; // widen the window and retry

        // Certificate: target == sum lambda_r * cand_r + remainder, exactly.
        WedgeVector recomposed = t.vec;
        for (const auto& [idx, lam] : t.combo) recomposed += (-lam) * cands[idx];
        if (recomposed != WedgeVector(target))
            throw straighten_error("slice_solve: certificate recomputation failed");

        auto& peak = straighten_stats().max_widen_used;
        for (int cur = peak.load(); widen > cur && !peak.compare_exchange_weak(cur, widen);) {
        }
        return t.vec;
    }
    throw straighten_error("slice_solve: no resolution for " + target.str() + " within widening limit");
}

namespace detail {

/// Normal form of the energy-nonpositive pair u (x) w, as a reference into
/// the process-wide cache plus the diagonal z-shift that maps the cached
/// representative onto (u, w). Cache entries are never erased or mutated, so
/// the reference stays valid after the internal lock is released.
const WedgeVector& straighten2_cached(AffLabel u, AffLabel w, int& shift);

} // namespace detail

/// Normal form of the two-slot tensor u (x) w. Positive energy passes through;
/// zero energy applies the matching shifted base relation; negative energy
/// delegates to the slice solver. Results are cached up to diagonal z-shift.
inline WedgeVector straighten2(AffLabel u, AffLabel w) {
    if (energy_H(u, w) > 0) return WedgeVector(PureWedge{{u, w}});
    int shift = 0;
    const WedgeVector& normal = detail::straighten2_cached(u, w, shift);
    return z_shift_all(normal, shift);
}

inline const WedgeVector& detail::straighten2_cached(AffLabel u, AffLabel w, int& shift) {
    if (energy_H(u, w) > 0)
        throw std::invalid_argument("straighten2_cached: pair is already normally ordered");
    shift = w.a;

    struct Key {
        int da, ju, jw;
        bool operator<(const Key& o) const {
            return std::tie(da, ju, jw) < std::tie(o.da, o.ju, o.jw);
        }
    };
    static std::map<Key, WedgeVector> cache;
    static std::mutex mtx;

    Key key{u.a - w.a, u.j, w.j};
    {
        std::lock_guard<std::mutex> lock(mtx);
        auto it = cache.find(key);
        if (it != cache.end()) {
            ++straighten_stats().straighten2_cache_hits;
            return it->second;
        }
    }

    AffLabel u0{u.a - w.a, u.j}, w0{0, w.j};
    WedgeVector normal;
    if (energy_H(u0, w0) == 0) {
        // The unique base relation with this head: first factor z^H b_i.
        const BaseRelation& base = base_relation(u0.j, w0.j);
        WedgeVector rel = z_shift_all(base.rel, u0.a - base.H);
        normal = WedgeVector(PureWedge{{u0, w0}}) - rel;
    } else {
        normal = slice_solve(u0, w0);
    }

    // Pruning by q-adic valuation (straighten's prune_valuation, and the
    // precision cut in the Fock layer) is sound only if rewriting never
    // multiplies by a coefficient with a pole at q = 0. Enforce that here,
    // once per cached normal form.
    for (const auto& [mono, cf] : normal.terms())
        if (auto cv = cf.valuation(); cv && *cv < 0)
            throw straighten_error("straighten2: normal form of " + PureWedge{{u0, w0}}.str() +
                                   " has a pole at q = 0");

    std::lock_guard<std::mutex> lock(mtx);
    return cache.emplace(key, std::move(normal)).first->second;
}

/// Straightens every term to the normally ordered basis.
///
/// Rewriting a disordered adjacent pair strictly lowers the left slot's level
/// while leaving everything before it untouched, so every rewrite moves a word
/// strictly later in PureWedgeLess order. Keeping the frontier in a map keyed
/// by word and always popping the least pending word therefore visits each
/// distinct word at most once, and merges (often cancels) the coefficients of
/// words reachable along several rewrite paths before any further work is
/// spent on them. `fuel` bounds the number of distinct words rewritten.
///
/// `prune_valuation` makes the result valid only mod q^prune_valuation: terms
/// whose coefficient valuation reaches it are dropped as they arise. This is
/// exact for the surviving orders because every rewrite multiplies by
/// coefficients regular at q = 0 (checked in straighten2), so a pruned term
/// can never feed back below the bound.
inline WedgeVector straighten(const WedgeVector& v, long long fuel = config().fuel,
                              int prune_valuation = std::numeric_limits<int>::max()) {
    WedgeVector out(v.arity());
    std::map<PureWedge, Coefficient, PureWedgeLess> pending(v.terms().begin(), v.terms().end());
    while (!pending.empty()) {
        auto node = pending.extract(pending.begin());
        const PureWedge& w = node.key();
        const Coefficient& c = node.mapped();
        if (c.is_zero()) continue;
        const int cval = *c.valuation();
        if (cval >= prune_valuation) continue;
        std::size_t bad = w.arity();
        for (std::size_t m = 0; m + 1 < w.arity(); ++m)
            if (energy_H(w.factors[m], w.factors[m + 1]) <= 0) {
                bad = m;
                break;
            }
        if (bad == w.arity()) {
            out.add_term(w, c);
            continue;
        }
        if (--fuel < 0) throw straighten_error("straighten: fuel exhausted");
        int shift = 0;
        const WedgeVector& local =
            detail::straighten2_cached(w.factors[bad], w.factors[bad + 1], shift);
        for (const auto& [pair2, c2] : local.terms()) {
            // Valuations add under multiplication, so this skip is exact.
            if (static_cast<long long>(cval) + *c2.valuation() >= prune_valuation) continue;
            PureWedge nw;
            nw.factors.reserve(w.arity());
            nw.factors.insert(nw.factors.end(), w.factors.begin(),
                              w.factors.begin() + static_cast<std::ptrdiff_t>(bad));
            nw.factors.push_back(AffLabel{pair2.factors[0].a + shift, pair2.factors[0].j});
            nw.factors.push_back(AffLabel{pair2.factors[1].a + shift, pair2.factors[1].j});
            nw.factors.insert(nw.factors.end(),
                              w.factors.begin() + static_cast<std::ptrdiff_t>(bad) + 2,
                              w.factors.end());
            Coefficient& slot = pending[std::move(nw)];
            slot = slot + c * c2;
        }
    }
    return out;
}

inline WedgeVector straighten(const PureWedge& w, long long fuel = config().fuel) {
    return straighten(WedgeVector(w), fuel);
}

/// All labels with a given level: even levels carry colors {0, 2}, odd ones
/// color 1 only (solving 2a - j = l within 0 <= j <= 2).
inline std::vector<AffLabel> labels_at_level(int l) {
    std::vector<AffLabel> out;
    if (l % 2 == 0) {
        out.push_back(AffLabel{l / 2, 0});
        out.push_back(AffLabel{l / 2 + 1, 2});
    } else {
        int a = (l + 1) / 2;
        out.push_back(AffLabel{a, 1});
    }
    return out;
}

/// All normally ordered n-slot monomials with prescribed total level whose
/// factor levels lie in [lo, hi]. Deterministic lexicographic generation.
inline std::vector<PureWedge> slice_basis(int n, int total_level, int lo, int hi) {
    std::vector<PureWedge> out;
    PureWedge cur;
    auto rec = [&](auto&& self, int remaining, int budget, std::optional<AffLabel> prev) -> void {
        if (remaining == 0) {
            if (budget == 0) out.push_back(cur);
            return;
        }
        for (int l = hi; l >= lo; --l) {
            // Remaining factors each have level >= lo and <= hi.
            int rest = budget - l;
            if (rest < (remaining - 1) * lo || rest > (remaining - 1) * hi) continue;
            for (AffLabel u : labels_at_level(l)) {
                if (prev && energy_H(*prev, u) <= 0) continue;
                cur.factors.push_back(u);
                self(self, remaining - 1, rest, u);
                cur.factors.pop_back();
            }
        }
    };
    rec(rec, n, total_level, std::nullopt);
    return out;
}

} // namespace qfock
