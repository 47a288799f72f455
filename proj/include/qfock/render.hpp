#pragma once

#include <ostream>
#include <string>

namespace qfock::detail {

/// Appends one "coefficient label" summand to a running rendering, folding the
/// sign of simple negative coefficients into the joining operator and wrapping
/// composite coefficients in parentheses. `first` tracks whether a joiner is due.
inline void append_signed_term(std::ostream& os, bool& first, const std::string& cs,
                               const std::string& label) {
    bool neg = cs.size() > 1 && cs[0] == '-' && cs.find_first_of("+-", 1) == std::string::npos &&
               cs.find('(') == std::string::npos;
    if (first) {
        if (neg) os << "-";
        first = false;
    } else {
        os << (neg ? " - " : " + ");
    }
    std::string mag = neg ? cs.substr(1) : cs;
    bool wrap = mag.find_first_of("+-") != std::string::npos && mag.front() != '(';
    if (mag == "1") os << label;
    else if (wrap) os << "(" << mag << ") " << label;
    else os << mag << " " << label;
}

} // namespace qfock::detail
