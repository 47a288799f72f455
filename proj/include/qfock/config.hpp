#pragma once

#include <cstdlib>
#include <stdexcept>
#include <string>

namespace qfock {

/// Runtime tunables with environment overrides. All computations are exact;
/// these only control truncation depths and safety limits.
struct Config {
    int precision = 16;            // q-adic truncation order for series output
    int depth = 6;                 // delta-depth for character and span checks
    long long fuel = 1000000;      // straightening step budget
    int max_widen = 8;             // level-window widening limit in slice solving
    int frontier_cap = 64;         // stabilisation periods before giving up
};

namespace detail {

inline long long env_ll(const char* name, long long fallback, long long lo, long long hi) {
    const char* s = std::getenv(name);
    if (!s || !*s) return fallback;
    long long v;
    try {
        std::size_t pos = 0;
        v = std::stoll(s, &pos);
        if (pos != std::string(s).size()) throw std::invalid_argument(s);
    } catch (const std::exception&) {
        throw std::invalid_argument(std::string(name) + ": expected an integer, got '" + s + "'");
    }
    if (v < lo || v > hi)
        throw std::domain_error(std::string(name) + ": value " + std::to_string(v) +
                                " outside [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
    return v;
}

} // namespace detail

inline Config load_config_from_env() {
    Config c;
    c.precision = static_cast<int>(detail::env_ll("QFOCK_PRECISION", c.precision, 1, 256));
    c.depth = static_cast<int>(detail::env_ll("QFOCK_DEPTH", c.depth, 0, 32));
    c.fuel = detail::env_ll("QFOCK_FUEL", c.fuel, 1, 1LL << 40);
    c.max_widen = static_cast<int>(detail::env_ll("QFOCK_MAX_WIDEN", c.max_widen, 0, 64));
    c.frontier_cap = static_cast<int>(detail::env_ll("QFOCK_FRONTIER_CAP", c.frontier_cap, 1, 4096));
    return c;
}

/// Process-wide configuration, loaded from the environment on first use.
inline Config& config() {
    static Config c = load_config_from_env();
    return c;
}

} // namespace qfock
