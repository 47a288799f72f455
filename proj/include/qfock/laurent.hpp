#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>

#include "errors.hpp"
#include "rational.hpp"

namespace qfock {

/// Laurent polynomial in q with rational coefficients.
/// Invariant: no zero coefficients are stored, so the map is a canonical form.
class LaurentPoly {
public:
    using Terms = std::map<int, Rational>;

    LaurentPoly() = default;
    LaurentPoly(const Rational& c) { set(0, c); }          // NOLINT(google-explicit-constructor)
    LaurentPoly(int c) : LaurentPoly(Rational(c)) {}       // NOLINT(google-explicit-constructor)

    static LaurentPoly monomial(int exp, const Rational& c = 1) {
        LaurentPoly p;
        p.set(exp, c);
        return p;
    }
    static LaurentPoly q() { return monomial(1); }

    const Terms& terms() const { return c_; }
    bool is_zero() const { return c_.empty(); }
    bool is_one() const { return c_.size() == 1 && c_.begin()->first == 0 && c_.begin()->second == 1; }

    Rational coeff(int exp) const {
        auto it = c_.find(exp);
        return it == c_.end() ? Rational(0) : it->second;
    }

    void set(int exp, const Rational& c) {
        if (c == 0)
            c_.erase(exp);
        else
            c_[exp] = c;
    }
    void add_term(int exp, const Rational& c) { set(exp, coeff(exp) + c); }

    /// Order of vanishing at q=0; empty for the zero polynomial (+infinity).
    std::optional<int> valuation() const {
        if (c_.empty()) return std::nullopt;
        return c_.begin()->first;
    }
    std::optional<int> degree() const {
        if (c_.empty()) return std::nullopt;
        return c_.rbegin()->first;
    }
    bool is_polynomial() const { return c_.empty() || c_.begin()->first >= 0; }

    /// Multiplication by q^k.
    LaurentPoly shifted(int k) const {
        LaurentPoly r;
        for (const auto& [e, c] : c_) r.c_.emplace(e + k, c);
        return r;
    }

    LaurentPoly operator-() const {
        LaurentPoly r;
        for (const auto& [e, c] : c_) r.c_.emplace(e, -c);
        return r;
    }
    LaurentPoly& operator+=(const LaurentPoly& o) {
        for (const auto& [e, c] : o.c_) add_term(e, c);
        return *this;
    }
    LaurentPoly& operator-=(const LaurentPoly& o) {
        for (const auto& [e, c] : o.c_) add_term(e, -c);
        return *this;
    }
    friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
    friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }

    friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
        LaurentPoly r;
        for (const auto& [ea, ca] : a.c_)
            for (const auto& [eb, cb] : b.c_) r.add_term(ea + eb, ca * cb);
        return r;
    }
    LaurentPoly& operator*=(const LaurentPoly& o) { return *this = *this * o; }

    LaurentPoly& operator*=(const Rational& c) {
        if (c == 0) {
            c_.clear();
            return *this;
        }
        for (auto& [e, v] : c_) v *= c;
        return *this;
    }
    friend LaurentPoly operator*(LaurentPoly a, const Rational& c) { return a *= c; }
    friend LaurentPoly operator*(const Rational& c, LaurentPoly a) { return a *= c; }

    LaurentPoly pow(int n) const {
        if (n < 0) throw std::invalid_argument("LaurentPoly::pow: negative exponent");
        LaurentPoly r(1), base = *this;
        for (; n; n >>= 1) {
            if (n & 1) r *= base;
            base *= base;
        }
        return r;
    }

    friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) { return a.c_ == b.c_; }
    friend bool operator!=(const LaurentPoly& a, const LaurentPoly& b) { return !(a == b); }
    /// Arbitrary total order (for use as a map key).
    friend bool operator<(const LaurentPoly& a, const LaurentPoly& b) { return a.c_ < b.c_; }

    std::string str() const {
        if (c_.empty()) return "0";
        std::string out;
        bool first = true;
        // Descending exponents read most naturally: q^4 - 1.
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
            Rational c = it->second;
            const bool neg = c < 0;
            if (neg) c = -c;
            out += first ? (neg ? "-" : "") : (neg ? " - " : " + ");
            first = false;
            const int e = it->first;
            std::string qpow = e == 0 ? "" : (e == 1 ? "q" : "q^" + std::to_string(e));
            if (qpow.empty())
                out += rational_str(c);
            else if (c == 1)
                out += qpow;
            else
                out += rational_str(c) + "*" + qpow;
        }
        return out;
    }

private:
    Terms c_;
};

/// Symmetric quantum integer [n] = q^{n-1} + q^{n-3} + ... + q^{1-n}, n >= 0.
inline LaurentPoly quantum_int(int n) {
    if (n < 0) throw std::invalid_argument("quantum_int: n must be nonnegative");
    LaurentPoly r;
    for (int e = n - 1; e >= 1 - n; e -= 2) r.add_term(e, 1);
    return r;
}

/// [n] extended to all integers via [-n] = -[n].
inline LaurentPoly quantum_int_signed(int n) {
    return n >= 0 ? quantum_int(n) : -quantum_int(-n);
}

/// Quotient/remainder of polynomial division over the rationals.
/// Both arguments must be genuine polynomials (no negative exponents).
inline std::pair<LaurentPoly, LaurentPoly> poly_divmod(const LaurentPoly& a, const LaurentPoly& b) {
    if (b.is_zero()) throw division_by_zero("poly_divmod: zero divisor");
    if (!a.is_polynomial() || !b.is_polynomial())
        throw std::invalid_argument("poly_divmod: arguments must be polynomials");
    LaurentPoly q, r = a;
    const int db = *b.degree();
    const Rational lb = b.coeff(db);
    while (!r.is_zero() && *r.degree() >= db) {
        const int e = *r.degree() - db;
        const Rational c = r.coeff(*r.degree()) / lb;
        q.add_term(e, c);
        r -= LaurentPoly::monomial(e, c) * b;
    }
    return {q, r};
}

namespace detail {
/// Rescales to integer coefficients with content 1 (sign of the leading term kept).
inline LaurentPoly int_primitive(const LaurentPoly& p) {
    if (p.is_zero()) return p;
    Integer l = 1, g = 0;
    for (const auto& [e, c] : p.terms()) {
        l = boost::multiprecision::lcm(l, denominator(c));
        (void)e;
    }
    LaurentPoly scaled = p * Rational(l);
    for (const auto& [e, c] : scaled.terms()) {
        g = boost::multiprecision::gcd(g, numerator(c));
        (void)e;
    }
    return scaled * Rational(Integer(1), g);
}
} // namespace detail

/// GCD of two polynomials over the rationals, normalized so that either
/// gcd(0)=1 when the constant term is nonzero, or the gcd is monic otherwise.
inline LaurentPoly poly_gcd(LaurentPoly a, LaurentPoly b) {
    if (!a.is_polynomial() || !b.is_polynomial())
        throw std::invalid_argument("poly_gcd: arguments must be polynomials");
    a = detail::int_primitive(a);
    b = detail::int_primitive(b);
    while (!b.is_zero()) {
        LaurentPoly r = poly_divmod(a, b).second;
        a = b;
        b = detail::int_primitive(r);
    }
    if (a.is_zero()) return a;
    const Rational c0 = a.coeff(0);
    if (c0 != 0) return a * (Rational(1) / c0);
    return a * (Rational(1) / a.coeff(*a.degree()));
}

/// Exact polynomial quotient; throws if the division leaves a remainder.
inline LaurentPoly poly_div_exact(const LaurentPoly& a, const LaurentPoly& b) {
    auto [q, r] = poly_divmod(a, b);
    if (!r.is_zero()) throw std::invalid_argument("poly_div_exact: division is not exact");
    return q;
}

} // namespace qfock
