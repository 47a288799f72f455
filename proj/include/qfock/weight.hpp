#pragma once

#include <string>
#include <tuple>

namespace qfock {

/// Affine sl2 weight written in the basis (Lambda0, Lambda1, delta):
/// c0*Lambda0 + c1*Lambda1 + d*delta. Classical weights carry d = 0.
struct Weight {
    int c0 = 0;
    int c1 = 0;
    int d = 0;

    int level() const { return c0 + c1; }
    /// Pairing with the coroot h_i (delta pairs to zero with both).
    int h(int i) const { return i == 0 ? c0 : c1; }

    friend Weight operator+(Weight a, Weight b) { return {a.c0 + b.c0, a.c1 + b.c1, a.d + b.d}; }
    friend Weight operator-(Weight a, Weight b) { return {a.c0 - b.c0, a.c1 - b.c1, a.d - b.d}; }
    Weight operator-() const { return {-c0, -c1, -d}; }
    friend Weight operator*(int k, Weight w) { return {k * w.c0, k * w.c1, k * w.d}; }
    friend bool operator==(Weight a, Weight b) { return a.c0 == b.c0 && a.c1 == b.c1 && a.d == b.d; }
    friend bool operator!=(Weight a, Weight b) { return !(a == b); }
    friend bool operator<(Weight a, Weight b) {
        return std::tie(a.c0, a.c1, a.d) < std::tie(b.c0, b.c1, b.d);
    }

    std::string str() const {
        return "(" + std::to_string(c0) + "," + std::to_string(c1) + "," + std::to_string(d) + ")";
    }
};

/// Simple-root lifts fixed by the weight-lattice convention:
/// alpha1 = 2*Lambda1 - 2*Lambda0, alpha0 = delta - alpha1.
inline Weight alpha(int i) {
    return i == 1 ? Weight{-2, 2, 0} : Weight{2, -2, 1};
}
inline Weight delta_weight() { return {0, 0, 1}; }

} // namespace qfock
