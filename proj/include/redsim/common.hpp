#pragma once

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <cstdio>
#include <random>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace redsim {

/// Thrown on malformed input files and invalid configuration values.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

/// Thrown on model-call failures (transport errors, replay misses).
class GatewayError : public std::runtime_error {
public:
    explicit GatewayError(const std::string& what) : std::runtime_error(what) {}
};

namespace detail {

inline std::string trim(std::string_view s) {
    size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return std::string(s.substr(b, e - b));
}

inline std::string to_lower(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

inline std::vector<std::string> split(std::string_view s, char sep) {
    std::vector<std::string> parts;
    size_t start = 0;
    while (true) {
        size_t pos = s.find(sep, start);
        if (pos == std::string_view::npos) {
            parts.emplace_back(s.substr(start));
            break;
        }
        parts.emplace_back(s.substr(start, pos - start));
        start = pos + 1;
    }
    return parts;
}

// FNV-1a 64-bit. Stable across platforms; used for token bucketing and
// deterministic test stubs, never for request fingerprints.
inline std::uint64_t fnv1a64(std::string_view s) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

} // namespace detail

/// Uniform draw in [0,1) with 53 bits of entropy. Portable across standard
/// library implementations, unlike std::uniform_real_distribution.
inline double next_unit(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

/// "26.67" — rate as percent, two decimals, no sign.
inline std::string format_rate_percent(double rate) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f", rate * 100.0);
    return buf;
}

/// "+23.50" / "-4.20" — cumulative-return ratio as signed percent of (ratio - 1).
inline std::string format_cr_percent(double cr_ratio) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%+.2f", (cr_ratio - 1.0) * 100.0);
    return buf;
}

} // namespace redsim
