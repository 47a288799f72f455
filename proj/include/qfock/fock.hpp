#pragma once

#include <deque>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "qfock/config.hpp"
#include "qfock/wedge.hpp"

namespace qfock {

/// The two admissible ground sequences. Sequence A alternates z b2, b0 with
/// period two; sequence B sits at b1 with period one.
enum class GroundSeq { A, B };

inline int ground_period(GroundSeq s) { return s == GroundSeq::A ? 2 : 1; }

inline std::string ground_name(GroundSeq s) { return s == GroundSeq::A ? "A" : "B"; }

inline std::optional<GroundSeq> parse_ground(const std::string& s) {
    if (s == "A" || s == "a") return GroundSeq::A;
    if (s == "B" || s == "b") return GroundSeq::B;
    return std::nullopt;
}

/// Ground label at position m.
inline AffLabel ground_elt(GroundSeq s, int m) {
    if (s == GroundSeq::B) return AffLabel{0, 1};
    // Even positions carry z b2, odd ones b0.
    return (m % 2 + 2) % 2 == 0 ? AffLabel{1, 2} : AffLabel{0, 0};
}

/// Weight of the semi-infinite ground tail starting at position m. Satisfies
/// lambda_m = wt(ground_m) + lambda_{m+1}; the delta part drifts accordingly.
inline Weight ground_lambda(GroundSeq s, int m) {
    if (s == GroundSeq::B) return Weight{1, 1, 0};
    if ((m % 2 + 2) % 2 == 0) return Weight{2, 0, 1 - m / 2};
    return Weight{0, 2, (1 - m) / 2};
}

/// Vector in the level-2 Fock space F_m: a combination of words u (x) tail,
/// where each word occupies positions m .. m+L-1 and the tail is the ground
/// sequence from position m+L on. The space is q-adically completed, so
/// every coefficient is kept as its canonical representative modulo
/// q^precision: a plain polynomial with exponents below the precision.
class FockVector {
public:
    using Terms = std::map<PureWedge, Coefficient, PureWedgeLess>;

    FockVector(GroundSeq seq, int m, int precision)
        : seq_(seq), m_(m), precision_(precision) {
        if (precision < 1) throw std::domain_error("fock precision must be positive");
    }

    GroundSeq seq() const { return seq_; }
    int start() const { return m_; }
    int precision() const { return precision_; }
    int body_length() const { return L_; }
    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }

    Coefficient coeff(const PureWedge& w) const {
        auto it = terms_.find(w);
        return it == terms_.end() ? Coefficient() : it->second;
    }

    /// Coefficient of the vacuum word (the aligned ground word at the current
    /// padding length).
    Coefficient vacuum_coefficient() const {
        PureWedge g;
        for (int p = 0; p < L_; ++p) g.factors.push_back(ground_elt(seq_, m_ + p));
        return coeff(g);
    }

    /// Extends every stored word with aligned ground factors up to length L.
    void pad_to(int L) {
        if (L < L_) throw std::invalid_argument("pad_to: cannot shrink");
        if (L == L_) return;
        Terms padded;
        for (const auto& [w, c] : terms_) {
            PureWedge nw = w;
            for (int p = L_; p < L; ++p) nw.factors.push_back(ground_elt(seq_, m_ + p));
            padded.emplace(std::move(nw), c);
        }
        terms_ = std::move(padded);
        L_ = L;
    }

    void add_term(PureWedge w, const Coefficient& c) {
        Coefficient ct = c.truncated(precision_);
        if (ct.is_zero()) return;
        int wl = static_cast<int>(w.arity());
        if (wl > L_) pad_to(wl);
        else if (wl < L_)
            for (int p = wl; p < L_; ++p) w.factors.push_back(ground_elt(seq_, m_ + p));
        // try_emplace leaves ct intact when the word is already present.
        auto [it, fresh] = terms_.try_emplace(std::move(w), std::move(ct));
        if (!fresh) {
            it->second += ct;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    FockVector& operator+=(const FockVector& o) {
        require_compatible(o);
        for (const auto& [w, c] : o.terms_) add_term(w, c);
        return *this;
    }
    FockVector& operator-=(const FockVector& o) {
        require_compatible(o);
        for (const auto& [w, c] : o.terms_) add_term(w, -c);
        return *this;
    }
    FockVector& operator*=(const Coefficient& s) {
        if (s.is_zero()) {
            terms_.clear();
            return *this;
        }
        Terms scaled;
        for (auto& [w, c] : terms_) {
            Coefficient ct = (c * s).truncated(precision_);
            if (!ct.is_zero()) scaled.emplace(w, std::move(ct));
        }
        terms_ = std::move(scaled);
        return *this;
    }
    friend FockVector operator+(FockVector a, const FockVector& b) { return a += b; }
    friend FockVector operator-(FockVector a, const FockVector& b) { return a -= b; }
    friend FockVector operator*(const Coefficient& s, FockVector v) { return v *= s; }
    FockVector operator-() const {
        FockVector r = *this;
        for (auto& [w, c] : r.terms_) c = -c;
        return r;
    }

    std::string str() const {
        if (terms_.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        for (const auto& [w, c] : terms_) {
            std::string label = "vac(" + std::to_string(m_ + L_) + ")";
            if (w.arity() > 0) label = w.str() + "^" + label;
            detail::append_signed_term(os, first, c.str(), label);
        }
        return os.str();
    }

private:
    void require_compatible(const FockVector& o) const {
        if (seq_ != o.seq_ || m_ != o.m_ || precision_ != o.precision_)
            throw std::invalid_argument("fock vectors live in different spaces");
    }

    GroundSeq seq_;
    int m_;
    int precision_;
    int L_ = 0;
    Terms terms_;
};

/// The vacuum of F_m: the pure ground word from position m on.
inline FockVector vacuum(GroundSeq seq, int m, int precision = config().precision) {
    FockVector v(seq, m, precision);
    v.add_term(PureWedge{}, Coefficient(1));
    return v;
}

/// u wedged on the front: maps F_m to F_{m-1}.
inline FockVector wedge_front(AffLabel u, const FockVector& v) {
    FockVector out(v.seq(), v.start() - 1, v.precision());
    for (const auto& [w, c] : v.terms()) {
        PureWedge nw;
        nw.factors.reserve(w.arity() + 1);
        nw.factors.push_back(u);
        nw.factors.insert(nw.factors.end(), w.factors.begin(), w.factors.end());
        out.add_term(std::move(nw), c);
    }
    return out;
}

/// Full weight of one stored word including its ground tail.
inline Weight fock_term_weight(GroundSeq seq, int m, const PureWedge& w) {
    Weight total = ground_lambda(seq, m + static_cast<int>(w.arity()));
    for (AffLabel u : w.factors) total = total + global_wt(u);
    return total;
}

/// Common weight of all terms, if the vector is homogeneous.
inline std::optional<Weight> fock_weight(const FockVector& v) {
    std::optional<Weight> found;
    for (const auto& [w, c] : v.terms()) {
        Weight tw = fock_term_weight(v.seq(), v.start(), w);
        if (!found) found = tw;
        else if (*found != tw) return std::nullopt;
    }
    if (!found) return std::nullopt;
    return found;
}

/// Canonical form: every word straightened and anchored, junction overlaps
/// cascaded into the tail, trailing ground factors absorbed, and terms whose
/// coefficients vanish to the configured q-adic order discarded.
inline FockVector normalize_fock(const FockVector& v) {
    const GroundSeq seq = v.seq();
    const int m = v.start();
    const int N = v.precision();
    const int cap =
        v.body_length() + config().frontier_cap * ground_period(seq) + ground_period(seq);

    FockVector out(seq, m, N);

    auto val_dead = [&](const Coefficient& c) {
        auto val = c.valuation();
        return !val || *val >= N;
    };

    std::vector<std::pair<PureWedge, Coefficient>> work(v.terms().begin(), v.terms().end());

    while (!work.empty()) {
        auto [fac, c] = std::move(work.back());
        work.pop_back();
        if (val_dead(c)) continue;

        // The word is straightened with coefficient one and only multiplied
        // by its own coefficient per surviving output term: rewrite branches
        // then combine plain polynomials, never rational functions. Shifting
        // the prune threshold by the coefficient's valuation preserves the
        // full pruning power of the precision order.
        WedgeVector nf = straighten(WedgeVector(fac), config().fuel, N - *c.valuation());
        for (const auto& [w, cw] : nf.terms()) {
            Coefficient c2 = c * cw;
            if (val_dead(c2)) continue;
            int Lw = static_cast<int>(w.arity());
            if (Lw == 0) {
                out.add_term(PureWedge{}, c2);
                continue;
            }
            AffLabel tail_ground = ground_elt(seq, m + Lw);
            if (energy_H(w.factors.back(), tail_ground) > 0) {
                // Normal against the tail: absorb any trailing ground run.
                PureWedge trimmed = w;
                while (!trimmed.factors.empty() &&
                       trimmed.factors.back() ==
                           ground_elt(seq, m + static_cast<int>(trimmed.factors.size()) - 1))
                    trimmed.factors.pop_back();
                out.add_term(std::move(trimmed), c2);
                continue;
            }
            if (Lw + 1 > cap)
                throw stabilization_error("normalize_fock: junction cascade exceeded " +
                                          std::to_string(config().frontier_cap) +
                                          " ground periods");
            PureWedge ext = w;
            ext.factors.push_back(tail_ground);
            work.emplace_back(std::move(ext), c2);
        }
    }

    // Re-drop terms that cancelled down below the precision order.
    FockVector cleaned(seq, m, N);
    for (const auto& [w, c] : out.terms()) {
        if (val_dead(c)) continue;
        cleaned.add_term(w, c);
    }
    return cleaned;
}

/// Congruence of two vectors in the same space modulo q^precision: after
/// co-padding, every coefficient difference must vanish to that order.
inline bool fock_equal_mod(const FockVector& a, const FockVector& b) {
    if (a.seq() != b.seq() || a.start() != b.start() || a.precision() != b.precision())
        return false;
    FockVector x = a, y = b;
    int L = std::max(x.body_length(), y.body_length());
    x.pad_to(L);
    y.pad_to(L);
    int N = a.precision();
    auto check = [&](const FockVector& p, const FockVector& q) {
        for (const auto& [w, c] : p.terms()) {
            Coefficient diff = c - q.coeff(w);
            if (diff.is_zero()) continue;
            auto val = diff.valuation();
            if (!val || *val < N) return false;
        }
        return true;
    };
    return check(x, y) && check(y, x);
}

/// Lowers the truncation order, discarding terms below the new one.
inline FockVector truncate_fock(const FockVector& v, int precision) {
    if (precision > v.precision())
        throw std::invalid_argument("truncate_fock: cannot raise precision");
    FockVector out(v.seq(), v.start(), precision);
    for (const auto& [w, c] : v.terms()) {
        auto val = c.valuation();
        if (!val || *val >= precision) continue;
        out.add_term(w, c);
    }
    return out;
}

namespace detail {

/// Finite coproduct action on the first D positions, with the untouched tail
/// contributing its torus twist: f_i picks up q^{<h_i, lambda_{m+D}>}, e_i
/// nothing, and t_i the tail weight on top of the body weight.
inline FockVector fock_apply_at_depth(Gen g, const FockVector& v, int D) {
    FockVector padded = v;
    padded.pad_to(D);
    const Weight lam = ground_lambda(v.seq(), v.start() + D);
    FockVector out(v.seq(), v.start(), v.precision());

    for (const auto& [w, c] : padded.terms()) {
        WedgeVector moved = uq_apply_wedge(g, WedgeVector(w));
        Coefficient tail(1);
        if (is_f(g)) tail = Coefficient::q_power(lam.h(gen_color(g)));
        else if (is_t(g)) {
            int h = lam.h(gen_color(g));
            if (g == Gen::T0Inv || g == Gen::T1Inv) h = -h;
            tail = Coefficient::q_power(h);
        }
        for (const auto& [nw, nc] : moved.terms()) out.add_term(nw, c * nc * tail);
    }
    return out;
}

} // namespace detail

/// Action of a generator on a Fock vector. Torus generators act exactly at
/// any depth; e_i and f_i are evaluated at increasing depths until the
/// normalised results agree to the working precision across two consecutive
/// ground periods. The deepest result is returned.
inline FockVector uq_apply_fock(Gen g, const FockVector& v) {
    if (is_t(g)) return normalize_fock(detail::fock_apply_at_depth(g, v, v.body_length()));

    const int per = ground_period(v.seq());
    std::deque<FockVector> window;
    for (int step = 0; step <= config().frontier_cap; ++step) {
        int D = v.body_length() + step * per;
        window.push_back(normalize_fock(detail::fock_apply_at_depth(g, v, D)));
        if (window.size() > 3) window.pop_front();
        if (window.size() == 3 && fock_equal_mod(window[0], window[1]) &&
            fock_equal_mod(window[1], window[2]))
            return window.back();
    }
    throw stabilization_error("uq_apply_fock: action did not stabilise within " +
                              std::to_string(config().frontier_cap) + " ground periods");
}

/// Normalisation certificate: recomputing after extending every word by one
/// and by two ground periods must reproduce the same vector mod q^precision.
inline bool normalize_certificate(const FockVector& v) {
    FockVector base = normalize_fock(v);
    for (int periods : {1, 2}) {
        FockVector ext = v;
        ext.pad_to(v.body_length() + periods * ground_period(v.seq()));
        if (!fock_equal_mod(normalize_fock(ext), base)) return false;
    }
    return true;
}

} // namespace qfock
