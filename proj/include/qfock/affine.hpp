#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "qfock/coefficient.hpp"
#include "qfock/crystal.hpp"
#include "qfock/render.hpp"
#include "qfock/weight.hpp"

namespace qfock {

/// Basis label z^a v_j of the affinized level-2 module V_aff.
struct AffLabel {
    int a = 0; // power of z
    int j = 0; // crystal label

    AffLabel() = default;
    AffLabel(int aa, int jj) : a(aa), j(jj) {
        if (j < 0 || j > 2) throw std::domain_error("affine label out of range");
    }

    CrystalElt elt() const { return CrystalElt{j}; }

    friend bool operator==(AffLabel x, AffLabel y) { return x.a == y.a && x.j == y.j; }
    friend bool operator!=(AffLabel x, AffLabel y) { return !(x == y); }

    std::string str() const {
        std::string v = "v" + std::to_string(j);
        if (a == 0) return v;
        if (a == 1) return "z" + v;
        return "z^" + std::to_string(a) + v;
    }
};

/// Level function l(z^a b_j) = 2a - j; the affine grading on labels.
inline int level_l(AffLabel b) { return 2 * b.a - b.j; }

/// Labels sort by (l, j) ascending; this is the canonical monomial order.
inline bool operator<(AffLabel x, AffLabel y) {
    return std::make_tuple(level_l(x), x.j) < std::make_tuple(level_l(y), y.j);
}

/// Energy of an ordered pair. H > 0 is the normally ordered sector.
inline int energy_H(AffLabel u, AffLabel w) {
    return std::min(u.j, 2 - w.j) - u.a + w.a;
}

inline bool normally_ordered(AffLabel u, AffLabel w) { return energy_H(u, w) > 0; }

/// Full affine weight of z^a b_j: classical weight plus a*delta.
inline Weight global_wt(AffLabel b) {
    Weight w = wt_cl(b.elt());
    w.d = b.a;
    return w;
}

/// Kashiwara operators on affinized labels: the 0-arrows shift the z power.
inline std::optional<AffLabel> kashiwara_aff(CrystalOp op, int i, AffLabel b) {
    auto nb = kashiwara(op, i, b.elt());
    if (!nb) return std::nullopt;
    int da = 0;
    if (i == 0) da = (op == CrystalOp::Raise) ? 1 : -1;
    return AffLabel{b.a + da, nb->j};
}

/// Vector in V_aff over the coefficient field; zero coefficients are never stored.
class AffVector {
public:
    using Terms = std::map<AffLabel, Coefficient>;

    AffVector() = default;
    explicit AffVector(AffLabel b, Coefficient c = Coefficient(1)) {
        if (!c.is_zero()) terms_[b] = std::move(c);
    }

    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }

    Coefficient coeff(AffLabel b) const {
        auto it = terms_.find(b);
        return it == terms_.end() ? Coefficient() : it->second;
    }

    void add_term(AffLabel b, const Coefficient& c) {
        if (c.is_zero()) return;
        auto [it, fresh] = terms_.emplace(b, c);
        if (!fresh) {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    AffVector& operator+=(const AffVector& o) {
        for (const auto& [b, c] : o.terms_) add_term(b, c);
        return *this;
    }
    AffVector& operator-=(const AffVector& o) {
        for (const auto& [b, c] : o.terms_) add_term(b, -c);
        return *this;
    }
    AffVector& operator*=(const Coefficient& s) {
        if (s.is_zero()) {
            terms_.clear();
            return *this;
        }
        for (auto& [b, c] : terms_) c *= s;
        return *this;
    }
    friend AffVector operator+(AffVector a, const AffVector& b) { return a += b; }
    friend AffVector operator-(AffVector a, const AffVector& b) { return a -= b; }
    friend AffVector operator*(const Coefficient& s, AffVector v) { return v *= s; }
    AffVector operator-() const {
        AffVector r = *this;
        for (auto& [b, c] : r.terms_) c = -c;
        return r;
    }
    friend bool operator==(const AffVector& a, const AffVector& b) { return a.terms_ == b.terms_; }
    friend bool operator!=(const AffVector& a, const AffVector& b) { return !(a == b); }

    /// Multiply by z^k: shifts every label's exponent.
    AffVector z_shifted(int k) const {
        AffVector r;
        for (const auto& [b, c] : terms_) r.terms_[AffLabel{b.a + k, b.j}] = c;
        return r;
    }

    std::string str() const {
        if (terms_.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        for (const auto& [b, c] : terms_) detail::append_signed_term(os, first, c.str(), b.str());
        return os.str();
    }

private:
    Terms terms_;
};

/// Generators of U_q in the conventions used throughout: Ti is t_i, TiInv its inverse.
enum class Gen { E0, E1, F0, F1, T0, T1, T0Inv, T1Inv };

inline int gen_color(Gen g) {
    switch (g) {
        case Gen::E0:
        case Gen::F0:
        case Gen::T0:
        case Gen::T0Inv: return 0;
        default: return 1;
    }
}

inline bool is_e(Gen g) { return g == Gen::E0 || g == Gen::E1; }
inline bool is_f(Gen g) { return g == Gen::F0 || g == Gen::F1; }
inline bool is_t(Gen g) { return g == Gen::T0 || g == Gen::T1 || g == Gen::T0Inv || g == Gen::T1Inv; }

inline std::string gen_name(Gen g) {
    switch (g) {
        case Gen::E0: return "e0";
        case Gen::E1: return "e1";
        case Gen::F0: return "f0";
        case Gen::F1: return "f1";
        case Gen::T0: return "t0";
        case Gen::T1: return "t1";
        case Gen::T0Inv: return "t0inv";
        case Gen::T1Inv: return "t1inv";
    }
    return "?";
}

inline std::optional<Gen> parse_gen(const std::string& s) {
    for (Gen g : {Gen::E0, Gen::E1, Gen::F0, Gen::F1, Gen::T0, Gen::T1, Gen::T0Inv, Gen::T1Inv})
        if (gen_name(g) == s) return g;
    return std::nullopt;
}

/// Action of a generator on a basis label of V_aff:
///   e_i (z^a v_j) = [phi_i(b_j)+1] z^{a+d_{i0}} v_{e~_i b_j}
///   f_i (z^a v_j) = [eps_i(b_j)+1] z^{a-d_{i0}} v_{f~_i b_j}
///   t_i (z^a v_j) = q^{<h_i, wt(b_j)>} z^a v_j
inline AffVector uq_apply_label(Gen g, AffLabel b) {
    if (is_t(g)) {
        int i = gen_color(g);
        int h = wt_cl(b.elt()).h(i);
        if (g == Gen::T0Inv || g == Gen::T1Inv) h = -h;
        return AffVector(b, Coefficient::q_power(h));
    }
    int i = gen_color(g);
    CrystalOp op = is_e(g) ? CrystalOp::Raise : CrystalOp::Lower;
    auto nb = kashiwara_aff(op, i, b);
    if (!nb) return AffVector();
    int amount = is_e(g) ? phi_i(b.elt(), i) : eps_i(b.elt(), i);
    return AffVector(*nb, Coefficient(quantum_int(amount + 1)));
}

inline AffVector uq_apply_vaff(Gen g, const AffVector& v) {
    AffVector out;
    for (const auto& [b, c] : v.terms()) {
        AffVector piece = uq_apply_label(g, b);
        piece *= c;
        out += piece;
    }
    return out;
}

/// DOT rendering of a finite window of the affinized crystal: labels z^a b_j
/// with a in [a_lo, a_hi]. Arrows leaving the window are dropped.
inline std::string export_dot_affine(int a_lo, int a_hi) {
    auto inside = [&](AffLabel b) { return b.a >= a_lo && b.a <= a_hi; };
    std::vector<AffLabel> nodes;
    for (int a = a_lo; a <= a_hi; ++a)
        for (int j = 0; j <= 2; ++j) nodes.push_back(AffLabel{a, j});
    std::sort(nodes.begin(), nodes.end());
    std::ostringstream os;
    os << "digraph Baff {\n  rankdir=LR;\n";
    for (AffLabel b : nodes) os << "  \"" << b.str() << "\";\n";
    for (AffLabel b : nodes)
        for (int i : {0, 1})
            if (auto t = kashiwara_aff(CrystalOp::Lower, i, b); t && inside(*t))
                os << "  \"" << b.str() << "\" -> \"" << t->str() << "\" [label=\"" << i
                   << "\", color=" << (i == 0 ? "red" : "blue") << "];\n";
    os << "}\n";
    return os.str();
}

} // namespace qfock
