#pragma once

#include <stdexcept>
#include <string>

namespace qfock {

struct division_by_zero : std::domain_error {
    division_by_zero() : std::domain_error("division by zero") {}
    explicit division_by_zero(const std::string& what) : std::domain_error(what) {}
};

/// Raised when a series expansion is requested for an element with a pole at q=0.
struct not_regular_at_zero : std::domain_error {
    explicit not_regular_at_zero(const std::string& what = "element has a pole at q=0")
        : std::domain_error(what) {}
};

/// Raised when straightening runs out of fuel or a relation window cannot be closed.
struct straighten_error : std::runtime_error {
    explicit straighten_error(const std::string& what) : std::runtime_error(what) {}
};

/// Raised when an enumeration hits a configured cap (results would be incomplete).
struct enumeration_error : std::runtime_error {
    explicit enumeration_error(const std::string& what) : std::runtime_error(what) {}
};

/// Raised when a semi-infinite computation fails to stabilise within the
/// configured number of ground periods.
struct stabilization_error : std::runtime_error {
    explicit stabilization_error(const std::string& what) : std::runtime_error(what) {}
};

} // namespace qfock
