#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>

namespace redsim {

// Enumerators are declared in canonical (alphabetical) order; the sampler's
// inverse-CDF walk relies on this ordering for reproducible draws.

enum class BiasType : std::size_t {
    Anchoring = 0,
    Confirmation,
    Herding,
    LossAversion,
    Overconfidence,
};
inline constexpr std::size_t kBiasCount = 5;

enum class MinorType : std::size_t {
    Causal = 0,
    ConceptShift,
    EntityShift,
    Flipping,
    Numerical,
    Other,
    Sentiment,
    TemporalShift,
};
inline constexpr std::size_t kMinorCount = 8;

enum class RewriteStyle : std::size_t {
    Academic = 0,
    NewsStyle,
};
inline constexpr std::size_t kRewriteCount = 2;

inline constexpr std::array<BiasType, kBiasCount> kAllBiases = {
    BiasType::Anchoring,    BiasType::Confirmation,   BiasType::Herding,
    BiasType::LossAversion, BiasType::Overconfidence,
};
inline constexpr std::array<MinorType, kMinorCount> kAllMinors = {
    MinorType::Causal,    MinorType::ConceptShift, MinorType::EntityShift,
    MinorType::Flipping,  MinorType::Numerical,    MinorType::Other,
    MinorType::Sentiment, MinorType::TemporalShift,
};
inline constexpr std::array<RewriteStyle, kRewriteCount> kAllRewrites = {
    RewriteStyle::Academic,
    RewriteStyle::NewsStyle,
};

inline std::string_view to_string(BiasType b) {
    switch (b) {
        case BiasType::Anchoring: return "Anchoring";
        case BiasType::Confirmation: return "Confirmation";
        case BiasType::Herding: return "Herding";
        case BiasType::LossAversion: return "LossAversion";
        case BiasType::Overconfidence: return "Overconfidence";
    }
    return "?";
}

inline std::string_view to_string(MinorType m) {
    switch (m) {
        case MinorType::Causal: return "Causal";
        case MinorType::ConceptShift: return "ConceptShift";
        case MinorType::EntityShift: return "EntityShift";
        case MinorType::Flipping: return "Flipping";
        case MinorType::Numerical: return "Numerical";
        case MinorType::Other: return "Other";
        case MinorType::Sentiment: return "Sentiment";
        case MinorType::TemporalShift: return "TemporalShift";
    }
    return "?";
}

inline std::string_view to_string(RewriteStyle r) {
    switch (r) {
        case RewriteStyle::Academic: return "Academic";
        case RewriteStyle::NewsStyle: return "NewsStyle";
    }
    return "?";
}

inline std::optional<BiasType> bias_from_string(std::string_view s) {
    for (BiasType b : kAllBiases)
        if (to_string(b) == s) return b;
    return std::nullopt;
}

inline std::optional<MinorType> minor_from_string(std::string_view s) {
    for (MinorType m : kAllMinors)
        if (to_string(m) == s) return m;
    return std::nullopt;
}

inline std::optional<RewriteStyle> rewrite_from_string(std::string_view s) {
    for (RewriteStyle r : kAllRewrites)
        if (to_string(r) == s) return r;
    return std::nullopt;
}

/// One operator draw: which bias / minor perturbation / rewrite style shaped a
/// misinformation candidate. Bias is absent when the Bernoulli(p) draw skipped
/// it; rewrite is absent unless the repair stage ran.
struct StrategyTriple {
    std::optional<BiasType> bias;
    MinorType minor = MinorType::Other;
    std::optional<RewriteStyle> rewrite;

    bool operator==(const StrategyTriple&) const = default;
};

} // namespace redsim
