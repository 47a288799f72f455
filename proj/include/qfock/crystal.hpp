#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "qfock/weight.hpp"

namespace qfock {

/// Element b_j of the three-element level-2 crystal B, j in {0, 1, 2}.
/// j counts applications of f~_1 from the highest element b_0.
struct CrystalElt {
    int j = 0;

    CrystalElt() = default;
    explicit CrystalElt(int jj) : j(jj) {
        if (j < 0 || j > 2) throw std::domain_error("crystal label out of range: " + std::to_string(jj));
    }

    friend bool operator==(CrystalElt a, CrystalElt b) { return a.j == b.j; }
    friend bool operator!=(CrystalElt a, CrystalElt b) { return a.j != b.j; }
    friend bool operator<(CrystalElt a, CrystalElt b) { return a.j < b.j; }

    std::string str() const { return "b" + std::to_string(j); }
};

inline std::vector<CrystalElt> crystal_elements() {
    return {CrystalElt{0}, CrystalElt{1}, CrystalElt{2}};
}

inline int eps_i(CrystalElt b, int i) { return i == 1 ? b.j : 2 - b.j; }
inline int phi_i(CrystalElt b, int i) { return i == 1 ? 2 - b.j : b.j; }

/// eps(b) and phi(b) as dominant classical weights; wt = phi - eps.
inline Weight eps_weight(CrystalElt b) { return {eps_i(b, 0), eps_i(b, 1), 0}; }
inline Weight phi_weight(CrystalElt b) { return {phi_i(b, 0), phi_i(b, 1), 0}; }
inline Weight wt_cl(CrystalElt b) { return phi_weight(b) - eps_weight(b); }

enum class CrystalOp { Raise, Lower }; // Raise = e~_i, Lower = f~_i

/// Kashiwara operator on a single element; nullopt when the arrow is absent.
inline std::optional<CrystalElt> kashiwara(CrystalOp op, int i, CrystalElt b) {
    int step = (op == CrystalOp::Lower) ? 1 : -1; // f~_1 increases j
    if (i == 0) step = -step;                     // 0-arrows run opposite to 1-arrows
    int nj = b.j + step;
    if (nj < 0 || nj > 2) return std::nullopt;
    return CrystalElt{nj};
}

using CrystalWord = std::vector<CrystalElt>;

inline Weight wt_cl(const CrystalWord& w) {
    Weight total{};
    for (CrystalElt b : w) total = total + wt_cl(b);
    return total;
}

/// eps_i and phi_i of a tensor word, folding the two-factor rule from the
/// left. The tensor convention here routes e~_i to the left factor when
/// eps_i(left) > phi_i(right), so the recursions are
///   eps_i(u (x) b) = max(eps_i(b), eps_i(u) - <h_i, wt(b)>)
///   phi_i(u (x) b) = max(phi_i(u), phi_i(b) + <h_i, wt(u)>)
inline int eps_i(const CrystalWord& w, int i) {
    if (w.empty()) return 0;
    int e = eps_i(w.front(), i);
    for (std::size_t m = 1; m < w.size(); ++m)
        e = std::max(eps_i(w[m], i), e - wt_cl(w[m]).h(i));
    return e;
}

inline int phi_i(const CrystalWord& w, int i) {
    if (w.empty()) return 0;
    int p = phi_i(w.front(), i);
    int hw = wt_cl(w.front()).h(i);
    for (std::size_t m = 1; m < w.size(); ++m) {
        p = std::max(p, phi_i(w[m], i) + hw);
        hw += wt_cl(w[m]).h(i);
    }
    return p;
}

/// Kashiwara operator on a tensor word; nullopt when the result is zero.
inline std::optional<CrystalWord> tensor_kashiwara(CrystalOp op, int i, const CrystalWord& w) {
    if (w.empty()) return std::nullopt;
    // Recursive two-factor rule: split off the last factor.
    if (w.size() == 1) {
        auto nb = kashiwara(op, i, w.front());
        if (!nb) return std::nullopt;
        return CrystalWord{*nb};
    }
    CrystalWord prefix(w.begin(), w.end() - 1);
    CrystalElt last = w.back();
    int ep = eps_i(prefix, i);
    int pl = phi_i(last, i);
    bool prefix_wins = (op == CrystalOp::Raise) ? ep > pl : ep >= pl;
    CrystalWord out;
    if (prefix_wins) {
        auto np = tensor_kashiwara(op, i, prefix);
        if (!np) return std::nullopt;
        out = std::move(*np);
        out.push_back(last);
    } else {
        auto nb = kashiwara(op, i, last);
        if (!nb) return std::nullopt;
        out = prefix;
        out.push_back(*nb);
    }
    return out;
}

/// Distance to the top along e~_i: counts applications until the arrow vanishes.
/// Agrees with eps_i by the signature rule; used as an independent cross-check.
inline int raise_count(int i, CrystalWord w) {
    int n = 0;
    while (auto up = tensor_kashiwara(CrystalOp::Raise, i, w)) {
        w = std::move(*up);
        ++n;
        if (n > 64) throw std::runtime_error("raise_count runaway");
    }
    return n;
}

inline int lower_count(int i, CrystalWord w) {
    int n = 0;
    while (auto dn = tensor_kashiwara(CrystalOp::Lower, i, w)) {
        w = std::move(*dn);
        ++n;
        if (n > 64) throw std::runtime_error("lower_count runaway");
    }
    return n;
}

/// One f~_i arrow of the tensor-square graph.
struct TensorArrow {
    CrystalWord from;
    CrystalWord to;
    int color = 0;

    friend bool operator==(const TensorArrow& a, const TensorArrow& b) {
        return a.from == b.from && a.to == b.to && a.color == b.color;
    }
    friend bool operator<(const TensorArrow& a, const TensorArrow& b) {
        return std::tie(a.color, a.from, a.to) < std::tie(b.color, b.from, b.to);
    }
};

/// All f~_i arrows on B (x) B, sorted deterministically.
inline std::vector<TensorArrow> tensor_square_arrows() {
    std::vector<TensorArrow> arrows;
    for (int i : {0, 1})
        for (CrystalElt b : crystal_elements())
            for (CrystalElt c : crystal_elements()) {
                CrystalWord w{b, c};
                if (auto t = tensor_kashiwara(CrystalOp::Lower, i, w))
                    arrows.push_back({w, *t, i});
            }
    std::sort(arrows.begin(), arrows.end());
    return arrows;
}

struct PerfectCheckReport {
    int level = 0;
    bool weights_in_hull = false;     // wt(B) inside the convex hull of W * (level * Lambda_cl)
    bool extremal_unique = false;     // one element per extremal weight
    bool tensor_connected = false;    // B (x) B is connected
    bool min_eps_level = false;       // min <c, eps(b)> equals the level
    bool eps_phi_bijective = false;   // eps, phi biject B_min onto level-k dominant weights
    std::vector<CrystalElt> extremal; // witnesses, sorted
    int min_eps = 0;

    bool ok() const {
        return weights_in_hull && extremal_unique && tensor_connected && min_eps_level &&
               eps_phi_bijective;
    }
};

/// Verifies the perfectness axioms at the given level for B.
inline PerfectCheckReport perfect_check(int level) {
    PerfectCheckReport r;
    r.level = level;

    // Classical weights are multiples of (Lambda1 - Lambda0); the hull of the
    // Weyl orbit of level*Lambda1_cl is the segment |c1| <= level.
    r.weights_in_hull = true;
    std::map<int, std::vector<CrystalElt>> by_c1;
    for (CrystalElt b : crystal_elements()) {
        Weight w = wt_cl(b);
        if (std::abs(w.c1) > level || w.c0 + w.c1 != 0) r.weights_in_hull = false;
        by_c1[w.c1].push_back(b);
    }
    r.extremal_unique =
        by_c1.count(level) == 1 && by_c1[level].size() == 1 &&
        by_c1.count(-level) == 1 && by_c1[-level].size() == 1;
    if (r.extremal_unique) {
        r.extremal = {by_c1[-level].front(), by_c1[level].front()};
        std::sort(r.extremal.begin(), r.extremal.end());
    }

    // Connectivity of B (x) B under the arrows in either direction.
    std::set<CrystalWord> seen;
    std::vector<CrystalWord> frontier{{CrystalElt{0}, CrystalElt{0}}};
    seen.insert(frontier.front());
    auto arrows = tensor_square_arrows();
    while (!frontier.empty()) {
        CrystalWord w = frontier.back();
        frontier.pop_back();
        for (const auto& a : arrows) {
            const CrystalWord* next = nullptr;
            if (a.from == w) next = &a.to;
            else if (a.to == w) next = &a.from;
            if (next && seen.insert(*next).second) frontier.push_back(*next);
        }
    }
    r.tensor_connected = seen.size() == 9;

    r.min_eps = eps_weight(crystal_elements().front()).level();
    for (CrystalElt b : crystal_elements())
        r.min_eps = std::min(r.min_eps, eps_weight(b).level());
    r.min_eps_level = r.min_eps == level;

    // Level-k dominant classical weights: c0 + c1 = k, both nonnegative.
    std::set<Weight> dominant;
    for (int c0 = 0; c0 <= level; ++c0) dominant.insert(Weight{c0, level - c0, 0});
    std::set<Weight> eps_img, phi_img;
    for (CrystalElt b : crystal_elements()) {
        if (eps_weight(b).level() != r.min_eps) continue;
        eps_img.insert(eps_weight(b));
        phi_img.insert(phi_weight(b));
    }
    r.eps_phi_bijective = eps_img == dominant && phi_img == dominant;

    return r;
}

/// DOT rendering of B: three nodes, colored f~ arrows.
inline std::string export_dot_crystal() {
    std::ostringstream os;
    os << "digraph B {\n  rankdir=LR;\n";
    for (CrystalElt b : crystal_elements()) os << "  \"" << b.str() << "\";\n";
    for (int i : {0, 1})
        for (CrystalElt b : crystal_elements())
            if (auto t = kashiwara(CrystalOp::Lower, i, b))
                os << "  \"" << b.str() << "\" -> \"" << t->str() << "\" [label=\"" << i
                   << "\", color=" << (i == 0 ? "red" : "blue") << "];\n";
    os << "}\n";
    return os.str();
}

/// DOT rendering of B (x) B with nodes "bi*bj".
inline std::string export_dot_tensor_square() {
    auto node = [](const CrystalWord& w) { return w[0].str() + "*" + w[1].str(); };
    std::ostringstream os;
    os << "digraph BxB {\n  rankdir=LR;\n";
    for (CrystalElt b : crystal_elements())
        for (CrystalElt c : crystal_elements()) os << "  \"" << node({b, c}) << "\";\n";
    for (const auto& a : tensor_square_arrows())
        os << "  \"" << node(a.from) << "\" -> \"" << node(a.to) << "\" [label=\"" << a.color
           << "\", color=" << (a.color == 0 ? "red" : "blue") << "];\n";
    os << "}\n";
    return os.str();
}

} // namespace qfock
