#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <optional>
#include <random>
#include <set>
#include <vector>

#include "redsim/common.hpp"
#include "redsim/corpus.hpp"
#include "redsim/decision.hpp"
#include "redsim/strategy.hpp"

namespace redsim {

/// Decision-flip counters per strategy type. Counts only grow within a run.
struct HistoryEffect {
    std::array<std::uint64_t, kBiasCount> bias_counts{};
    std::array<std::uint64_t, kMinorCount> minor_counts{};
    std::array<std::uint64_t, kRewriteCount> rewrite_counts{};

    bool operator==(const HistoryEffect&) const = default;
};

struct SamplerConfig {
    double alpha = 1.0; // reinforcement strength
    double delta = 0.1; // return-dependent bias boost
    std::uint64_t seed = 0;

    void validate() const {
        if (alpha < 0.0) throw ConfigError("sampler: alpha must be >= 0");
        if (delta < 0.0 || delta >= 1.0) throw ConfigError("sampler: delta must be in [0,1)");
    }
};

/// Urn-style reinforcement weights, w = 1 + alpha * h. All weights >= 1.
template <std::size_t N>
std::array<double, N> urn_weights(const std::array<std::uint64_t, N>& counts, double alpha) {
    if (alpha < 0.0) throw ConfigError("urn_weights: alpha must be >= 0");
    std::array<double, N> w{};
    for (std::size_t i = 0; i < N; ++i) w[i] = 1.0 + alpha * static_cast<double>(counts[i]);
    return w;
}

template <std::size_t N>
std::array<double, N> normalize_weights(const std::array<double, N>& weights) {
    double total = std::accumulate(weights.begin(), weights.end(), 0.0);
    if (!(total > 0.0)) throw ConfigError("normalize_weights: non-positive total");
    std::array<double, N> p{};
    for (std::size_t i = 0; i < N; ++i) p[i] = weights[i] / total;
    return p;
}

/// Inverse-CDF categorical draw over the canonical (index) ordering.
inline std::size_t sample_categorical(const std::vector<double>& weights, std::mt19937_64& rng) {
    if (weights.empty()) throw ConfigError("sample_categorical: empty strategy set");
    double total = 0.0;
    for (double w : weights) {
        if (!(w > 0.0)) throw ConfigError("sample_categorical: weights must be positive");
        total += w;
    }
    const double u = next_unit(rng) * total;
    double acc = 0.0;
    for (std::size_t i = 0; i < weights.size(); ++i) {
        acc += weights[i];
        if (u < acc) return i;
    }
    return weights.size() - 1; // u == total under rounding
}

template <std::size_t N>
std::size_t sample_categorical(const std::array<double, N>& weights, std::mt19937_64& rng) {
    return sample_categorical(std::vector<double>(weights.begin(), weights.end()), rng);
}

/// Return-dependent adjustment: CR > 1 boosts Overconfidence by delta,
/// CR < 1 boosts LossAversion, then the distribution is re-normalized.
/// CR == 1 leaves it unchanged.
inline std::array<double, kBiasCount> adjust_bias_distribution(
    std::array<double, kBiasCount> p, double cr, double delta) {
    if (delta < 0.0 || delta >= 1.0)
        throw ConfigError("adjust_bias_distribution: delta must be in [0,1)");
    double sum = std::accumulate(p.begin(), p.end(), 0.0);
    if (std::fabs(sum - 1.0) > 1e-9)
        throw ConfigError("adjust_bias_distribution: input is not a probability distribution");
    if (cr > 1.0)
        p[static_cast<std::size_t>(BiasType::Overconfidence)] += delta;
    else if (cr < 1.0)
        p[static_cast<std::size_t>(BiasType::LossAversion)] += delta;
    else
        return p;
    double total = std::accumulate(p.begin(), p.end(), 0.0);
    for (double& x : p) x /= total;
    return p;
}

enum class FlipCreditPolicy {
    AllRetrievedInjected, // every injected item retrieved that day gets credit
    MostSimilarOnly,      // only the first retrieved injected item (highest rank)
};

/// Eq.-style feedback update: when the injected-setting action differs from
/// the clean-setting action, every strategy component of the credited injected
/// items gains one count. No flip, no change.
inline HistoryEffect update_history(HistoryEffect history, const Decision& decision_inj,
                                    const Decision& decision_clean,
                                    const std::vector<NewsItem>& retrieved,
                                    FlipCreditPolicy policy = FlipCreditPolicy::AllRetrievedInjected) {
    if (decision_inj.date != decision_clean.date)
        throw ConfigError("update_history: decisions refer to different dates (" +
                          decision_inj.date.iso() + " vs " + decision_clean.date.iso() + ")");
    if (decision_inj.action == decision_clean.action) return history;
    for (const auto& item : retrieved) {
        if (item.provenance != Provenance::Injected || !item.strategy) continue;
        const StrategyTriple& st = *item.strategy;
        if (st.bias) ++history.bias_counts[static_cast<std::size_t>(*st.bias)];
        ++history.minor_counts[static_cast<std::size_t>(st.minor)];
        if (st.rewrite) ++history.rewrite_counts[static_cast<std::size_t>(*st.rewrite)];
        if (policy == FlipCreditPolicy::MostSimilarOnly) break;
    }
    return history;
}

/// Serializable sampler state for run reports and resumability.
struct SamplerSnapshot {
    HistoryEffect history;
    double alpha = 0.0;
    double delta = 0.0;
    std::uint64_t seed = 0;
    std::uint64_t draw_counter = 0;
};

/// Owner of the sampler state: one logical thread per run drives all draws
/// and updates, keeping the seeded sequence well-defined.
class StrategySampler {
public:
    explicit StrategySampler(SamplerConfig config) : config_(config), rng_(config.seed) {
        config_.validate();
    }

    BiasType select_bias(double cr) {
        auto weights = urn_weights(history_.bias_counts, config_.alpha);
        auto p = normalize_weights(weights);
        p = adjust_bias_distribution(p, cr, config_.delta);
        ++draw_counter_;
        return kAllBiases[sample_categorical(p, rng_)];
    }

    /// Draw restricted to the classifier's applicable set; an empty
    /// intersection falls back to the full enum.
    MinorType select_minor(const std::set<MinorType>& applicable) {
        auto weights = urn_weights(history_.minor_counts, config_.alpha);
        std::vector<MinorType> pool;
        std::vector<double> w;
        for (MinorType m : kAllMinors) {
            if (!applicable.empty() && !applicable.count(m)) continue;
            pool.push_back(m);
            w.push_back(weights[static_cast<std::size_t>(m)]);
        }
        if (pool.empty()) {
            pool.assign(kAllMinors.begin(), kAllMinors.end());
            w.assign(weights.begin(), weights.end());
        }
        ++draw_counter_;
        return pool[sample_categorical(w, rng_)];
    }

    RewriteStyle select_rewrite() {
        auto weights = urn_weights(history_.rewrite_counts, config_.alpha);
        ++draw_counter_;
        return kAllRewrites[sample_categorical(weights, rng_)];
    }

    /// Bernoulli(p) gate for the bias stage (Algorithm-level u < p draw).
    bool draw_bias_gate(double p) {
        ++draw_counter_;
        return next_unit(rng_) < p;
    }

    /// Per-day feedback. Rejects a second update for the same date.
    void record_flip_feedback(const Date& date, const Decision& decision_inj,
                              const Decision& decision_clean,
                              const std::vector<NewsItem>& retrieved,
                              FlipCreditPolicy policy = FlipCreditPolicy::AllRetrievedInjected) {
        if (last_update_date_ && *last_update_date_ == date)
            throw ConfigError("sampler: history already updated for " + date.iso());
        history_ = update_history(history_, decision_inj, decision_clean, retrieved, policy);
        last_update_date_ = date;
    }

    const HistoryEffect& history() const { return history_; }
    void import_history(const HistoryEffect& h) { history_ = h; }

    SamplerSnapshot snapshot() const {
        return SamplerSnapshot{history_, config_.alpha, config_.delta, config_.seed,
                               draw_counter_};
    }

private:
    SamplerConfig config_;
    std::mt19937_64 rng_;
    HistoryEffect history_;
    std::uint64_t draw_counter_ = 0;
    std::optional<Date> last_update_date_;
};

} // namespace redsim
