#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <sstream>
#include <string>

namespace qfock {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline std::string rational_str(const Rational& r) {
    std::ostringstream os;
    os << r;
    return os.str();
}

/// Parses "p" or "p/q"; q must be nonzero.
inline Rational parse_rational(const std::string& s) {
    return Rational(s);
}

} // namespace qfock
