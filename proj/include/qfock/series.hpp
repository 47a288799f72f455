#pragma once

#include <string>
#include <vector>

#include "errors.hpp"
#include "laurent.hpp"

namespace qfock {

/// Truncated power series in q: coefficients of q^0 .. q^{N-1}, arithmetic mod q^N.
/// Laurent tails below q^0 are rejected; use Coefficient for those.
class TruncSeries {
public:
    explicit TruncSeries(int precision) : c_(static_cast<size_t>(check(precision))) {}

    TruncSeries(const LaurentPoly& p, int precision) : TruncSeries(precision) {
        if (!p.is_polynomial()) throw not_regular_at_zero("TruncSeries: Laurent tail below q^0");
        for (const auto& [e, c] : p.terms())
            if (e < precision) c_[static_cast<size_t>(e)] = c;
    }

    int precision() const { return static_cast<int>(c_.size()); }
    const Rational& coeff(int k) const { return c_.at(static_cast<size_t>(k)); }
    void set(int k, const Rational& v) { c_.at(static_cast<size_t>(k)) = v; }

    bool is_zero() const {
        for (const auto& c : c_)
            if (c != 0) return false;
        return true;
    }

    TruncSeries truncated(int n) const {
        TruncSeries r(n);
        for (int k = 0; k < n && k < precision(); ++k) r.c_[static_cast<size_t>(k)] = c_[static_cast<size_t>(k)];
        return r;
    }

    TruncSeries operator-() const {
        TruncSeries r = *this;
        for (auto& c : r.c_) c = -c;
        return r;
    }
    friend TruncSeries operator+(const TruncSeries& a, const TruncSeries& b) {
        TruncSeries r(match(a, b));
        for (int k = 0; k < r.precision(); ++k) r.c_[static_cast<size_t>(k)] = a.coeff(k) + b.coeff(k);
        return r;
    }
    friend TruncSeries operator-(const TruncSeries& a, const TruncSeries& b) { return a + (-b); }
    friend TruncSeries operator*(const TruncSeries& a, const TruncSeries& b) {
        TruncSeries r(match(a, b));
        for (int i = 0; i < r.precision(); ++i) {
            if (a.coeff(i) == 0) continue;
            for (int j = 0; i + j < r.precision(); ++j) r.c_[static_cast<size_t>(i + j)] += a.coeff(i) * b.coeff(j);
        }
        return r;
    }

    /// Multiplicative inverse mod q^N; the constant term must be nonzero.
    TruncSeries inverse() const {
        if (c_[0] == 0) throw not_regular_at_zero("TruncSeries::inverse: constant term is zero");
        TruncSeries r(precision());
        r.c_[0] = Rational(1) / c_[0];
        for (int k = 1; k < precision(); ++k) {
            Rational acc = 0;
            for (int j = 1; j <= k; ++j) acc += coeff(j) * r.coeff(k - j);
            r.c_[static_cast<size_t>(k)] = -acc / c_[0];
        }
        return r;
    }

    friend bool operator==(const TruncSeries& a, const TruncSeries& b) { return a.c_ == b.c_; }
    friend bool operator!=(const TruncSeries& a, const TruncSeries& b) { return !(a == b); }

    LaurentPoly to_poly() const {
        LaurentPoly p;
        for (int k = 0; k < precision(); ++k) p.set(k, coeff(k));
        return p;
    }
    std::string str() const { return to_poly().str() + " + O(q^" + std::to_string(precision()) + ")"; }

private:
    static int check(int n) {
        if (n <= 0) throw std::invalid_argument("TruncSeries: precision must be positive");
        return n;
    }
    static int match(const TruncSeries& a, const TruncSeries& b) {
        if (a.precision() != b.precision())
            throw std::invalid_argument("TruncSeries: mixed precisions");
        return a.precision();
    }

    std::vector<Rational> c_;
};

} // namespace qfock
