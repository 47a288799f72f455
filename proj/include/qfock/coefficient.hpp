#pragma once

#include <optional>
#include <string>

#include "errors.hpp"
#include "laurent.hpp"
#include "series.hpp"

namespace qfock {

/// Element of Q(q), kept in the canonical form num/den with
///   den a polynomial, den(0) = 1, gcd(num's polynomial part, den) = 1.
/// In this form the q-adic valuation is just the valuation of num.
class Coefficient {
public:
    Coefficient() : den_(1) {}
    Coefficient(const LaurentPoly& num) : num_(num), den_(1) {}  // NOLINT(google-explicit-constructor)
    Coefficient(const Rational& c) : num_(c), den_(1) {}         // NOLINT(google-explicit-constructor)
    Coefficient(int c) : num_(Rational(c)), den_(1) {}           // NOLINT(google-explicit-constructor)
    Coefficient(const LaurentPoly& num, const LaurentPoly& den) : num_(num), den_(den) { normalize(); }

    static Coefficient q_power(int e, const Rational& c = 1) {
        return Coefficient(LaurentPoly::monomial(e, c));
    }

    const LaurentPoly& num() const { return num_; }
    const LaurentPoly& den() const { return den_; }

    bool is_zero() const { return num_.is_zero(); }
    bool is_one() const { return num_.is_one() && den_.is_one(); }

    /// q-adic valuation; empty means +infinity (the zero element).
    std::optional<int> valuation() const { return num_.valuation(); }
    bool is_regular_at_zero() const {
        auto v = valuation();
        return !v || *v >= 0;
    }

    Coefficient operator-() const { return raw(-num_, den_); }
    friend Coefficient operator+(const Coefficient& a, const Coefficient& b) {
        // Plain polynomials stay canonical under addition; skip the gcd pass.
        if (a.den_.is_one() && b.den_.is_one()) return raw(a.num_ + b.num_, a.den_);
        return Coefficient(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    }
    friend Coefficient operator-(const Coefficient& a, const Coefficient& b) { return a + (-b); }
    friend Coefficient operator*(const Coefficient& a, const Coefficient& b) {
        if (a.den_.is_one() && b.den_.is_one()) return raw(a.num_ * b.num_, a.den_);
        return Coefficient(a.num_ * b.num_, a.den_ * b.den_);
    }
    friend Coefficient operator/(const Coefficient& a, const Coefficient& b) {
        if (b.is_zero()) throw division_by_zero("Coefficient: division by zero");
        return Coefficient(a.num_ * b.den_, a.den_ * b.num_);
    }
    Coefficient& operator+=(const Coefficient& o) { return *this = *this + o; }
    Coefficient& operator-=(const Coefficient& o) { return *this = *this - o; }
    Coefficient& operator*=(const Coefficient& o) { return *this = *this * o; }
    Coefficient& operator/=(const Coefficient& o) { return *this = *this / o; }

    Coefficient inverse() const {
        if (is_zero()) throw division_by_zero("Coefficient::inverse of zero");
        return Coefficient(den_, num_);
    }

    /// Canonical form makes equality structural.
    friend bool operator==(const Coefficient& a, const Coefficient& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const Coefficient& a, const Coefficient& b) { return !(a == b); }

    /// Canonical representative modulo q^order: the Laurent expansion at
    /// q = 0 truncated to exponents below `order`. Always den-free, which
    /// keeps arithmetic on truncated values in plain polynomials.
    Coefficient truncated(int order) const {
        if (is_zero()) return Coefficient();
        if (den_.is_one()) {
            bool inside = true;
            for (const auto& [e, r] : num_.terms())
                if (e >= order) {
                    inside = false;
                    break;
                }
            if (inside) return *this;
            LaurentPoly out;
            for (const auto& [e, r] : num_.terms())
                if (e < order) out.set(e, r);
            return Coefficient(out);
        }
        const int v = *num_.valuation();
        if (v >= order) return Coefficient();
        TruncSeries n(num_.shifted(-v), order - v);
        TruncSeries s = n * TruncSeries(den_, order - v).inverse();
        return Coefficient(s.to_poly().shifted(v));
    }

    /// Power series expansion mod q^N; requires regularity at q=0.
    TruncSeries series_expand(int precision) const {
        if (!is_regular_at_zero())
            throw not_regular_at_zero("series_expand: valuation " + std::to_string(*valuation()));
        TruncSeries n(num_, precision), d(den_, precision);
        return n * d.inverse();
    }

    std::string str() const {
        if (den_.is_one()) return num_.str();
        const bool wrap_num = num_.terms().size() > 1;
        std::string s = wrap_num ? "(" + num_.str() + ")" : num_.str();
        return s + "/(" + den_.str() + ")";
    }

private:
    // Bypasses normalization; only for results already in canonical form.
    static Coefficient raw(LaurentPoly n, LaurentPoly d) {
        Coefficient c;
        c.num_ = std::move(n);
        c.den_ = std::move(d);
        return c;
    }

    void normalize() {
        if (den_.is_zero()) throw division_by_zero("Coefficient: zero denominator");
        if (num_.is_zero()) {
            den_ = LaurentPoly(1);
            return;
        }
        // Shift the denominator to a polynomial with nonzero constant term,
        // then scale that constant to 1.
        const int vd = *den_.valuation();
        den_ = den_.shifted(-vd);
        num_ = num_.shifted(-vd);
        const Rational c0 = den_.coeff(0);
        if (c0 != 1) {
            den_ *= Rational(1) / c0;
            num_ *= Rational(1) / c0;
        }
        if (den_.is_one()) return;
        const int vn = *num_.valuation();
        const LaurentPoly g = poly_gcd(num_.shifted(-vn), den_);
        if (!g.is_one()) {
            num_ = poly_div_exact(num_.shifted(-vn), g).shifted(vn);
            den_ = poly_div_exact(den_, g);
        }
    }

    LaurentPoly num_;
    LaurentPoly den_;
};

/// True when x == y mod q^N (their difference has valuation >= N).
inline bool congruent_mod_q(const Coefficient& x, const Coefficient& y, int precision) {
    const auto v = (x - y).valuation();
    return !v || *v >= precision;
}

} // namespace qfock
