#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <optional>
#include <string>
#include <vector>

#include "redsim/common.hpp"
#include "redsim/corpus.hpp"
#include "redsim/dates.hpp"

namespace redsim {

// Time-series grounding indicators. Every function here consumes history that
// the caller has already restricted to dates strictly before the decision
// date; nothing in this header looks at the series beyond what it is handed.

using OptionalSeries = std::vector<std::optional<double>>;

/// Trailing sample standard deviation (divisor n-1) of the last `span`
/// returns ending at each index. Undefined for the first span-1 indices.
inline OptionalSeries rolling_volatility(const OptionalSeries& returns, int span = 5) {
    if (span < 2) throw ConfigError("rolling_volatility: span must be >= 2");
    OptionalSeries out(returns.size());
    for (std::size_t i = 0; i + 1 >= static_cast<std::size_t>(span) && i < returns.size(); ++i) {
        if (i + 1 < static_cast<std::size_t>(span)) continue;
        bool defined = true;
        double mean = 0.0;
        for (std::size_t j = i + 1 - span; j <= i; ++j) {
            if (!returns[j]) {
                defined = false;
                break;
            }
            mean += *returns[j];
        }
        if (!defined) continue;
        mean /= span;
        double ss = 0.0;
        for (std::size_t j = i + 1 - span; j <= i; ++j) {
            double d = *returns[j] - mean;
            ss += d * d;
        }
        out[i] = std::sqrt(ss / (span - 1));
    }
    return out;
}

inline OptionalSeries rolling_volatility(const std::vector<double>& returns, int span = 5) {
    OptionalSeries wrapped(returns.size());
    for (std::size_t i = 0; i < returns.size(); ++i) wrapped[i] = returns[i];
    return rolling_volatility(wrapped, span);
}

/// Worst peak-to-trough relative loss over the trailing `span` prices,
/// capped at 0 (a monotone rise has no drawdown). Tracks the running peak;
/// equivalent to the pairwise minimum of (p_j - p_i)/p_i over i <= j.
inline std::optional<double> max_drawdown(const std::vector<double>& prices, int span = 20) {
    if (span < 2) throw ConfigError("max_drawdown: span must be >= 2");
    std::size_t n = prices.size();
    std::size_t begin = n > static_cast<std::size_t>(span) ? n - span : 0;
    if (n - begin < 2) return std::nullopt;
    double peak = prices[begin];
    double worst = 0.0;
    for (std::size_t i = begin; i < n; ++i) {
        peak = std::max(peak, prices[i]);
        worst = std::min(worst, (prices[i] - peak) / peak);
    }
    return worst;
}

struct TrendSpans {
    int short_span = 5;
    int long_span = 20;
};

/// Relative gap between the short- and long-horizon simple moving averages
/// at the window end: (SMA_short - SMA_long) / SMA_long.
inline std::optional<double> trend_divergence(const std::vector<double>& prices,
                                              TrendSpans spans = {}) {
    if (spans.short_span < 1 || spans.long_span <= spans.short_span)
        throw ConfigError("trend_divergence: need 1 <= short_span < long_span");
    if (prices.size() < static_cast<std::size_t>(spans.long_span)) return std::nullopt;
    auto sma = [&](int span) {
        double s = 0.0;
        for (std::size_t i = prices.size() - span; i < prices.size(); ++i) s += prices[i];
        return s / span;
    };
    double long_avg = sma(spans.long_span);
    return (sma(spans.short_span) - long_avg) / long_avg;
}

/// Residual-based anomaly score from an additive seasonal decomposition:
/// trend = centered moving average of width `period`, seasonal = per-phase
/// mean of the detrended values, residual = price - trend - seasonal. The
/// score is |residual| z-scored over the window; edges without a trend
/// estimate stay undefined. A degenerate residual spread scores 0.
inline OptionalSeries anomaly_score(const std::vector<double>& prices, int period = 7) {
    if (period < 2) throw ConfigError("anomaly_score: period must be >= 2");
    std::size_t n = prices.size();
    OptionalSeries out(n);
    if (n < 2 * static_cast<std::size_t>(period)) return out; // too short: all flagged

    const int half = period / 2;
    OptionalSeries trend(n);
    for (std::size_t i = half; i + half < n; ++i) {
        double s = 0.0;
        if (period % 2 == 1) {
            for (int j = -half; j <= half; ++j) s += prices[i + j];
            trend[i] = s / period;
        } else {
            // Even period: 2x(period) centered average, standard convention.
            for (int j = -half; j < half; ++j)
                s += 0.5 * (prices[i + j] + prices[i + j + 1]);
            trend[i] = s / period;
        }
    }

    std::array<double, 64> phase_sum{};
    std::array<int, 64> phase_count{};
    if (period > 64) throw ConfigError("anomaly_score: period too large");
    for (std::size_t i = 0; i < n; ++i) {
        if (!trend[i]) continue;
        phase_sum[i % period] += prices[i] - *trend[i];
        ++phase_count[i % period];
    }

    OptionalSeries residual(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (!trend[i] || phase_count[i % period] == 0) continue;
        double seasonal = phase_sum[i % period] / phase_count[i % period];
        residual[i] = prices[i] - *trend[i] - seasonal;
    }

    double mean = 0.0;
    int count = 0;
    for (const auto& r : residual)
        if (r) {
            mean += std::fabs(*r);
            ++count;
        }
    if (count == 0) return out;
    mean /= count;
    double ss = 0.0;
    for (const auto& r : residual)
        if (r) {
            double d = std::fabs(*r) - mean;
            ss += d * d;
        }
    double stddev = count > 1 ? std::sqrt(ss / (count - 1)) : 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        if (!residual[i]) continue;
        out[i] = stddev > 1e-12 ? (std::fabs(*residual[i]) - mean) / stddev : 0.0;
    }
    return out;
}

enum class FeatureKind : std::size_t {
    Price = 0,
    Return,
    Volatility,
    Drawdown,
    TrendDivergence,
    Anomaly,
};
inline constexpr std::size_t kFeatureCount = 6;

inline std::string_view to_string(FeatureKind f) {
    switch (f) {
        case FeatureKind::Price: return "price";
        case FeatureKind::Return: return "return";
        case FeatureKind::Volatility: return "volatility_5d";
        case FeatureKind::Drawdown: return "drawdown_20d";
        case FeatureKind::TrendDivergence: return "trend_divergence";
        case FeatureKind::Anomaly: return "anomaly";
    }
    return "?";
}

struct GroundingConfig {
    int window = 30;
    int min_window = 20;
    int volatility_span = 5;
    int drawdown_span = 20;
    TrendSpans trend_spans{};
    int decomposition_period = 7;
    int analog_k = 3;
    int outcome_horizon = 5;
    std::size_t summary_char_budget = 1200;
};

/// Normalized indicator window ending strictly before the decision date.
struct TemporalFeatures {
    Date end_date; // the decision date; window entries all precede it
    std::vector<Date> dates;
    std::array<OptionalSeries, kFeatureCount> raw;
    std::array<OptionalSeries, kFeatureCount> normalized;
    std::array<double, kFeatureCount> mean{};
    std::array<double, kFeatureCount> stddev{};
    std::array<bool, kFeatureCount> zero_std{};
    bool truncated = false;

    std::size_t window_length() const { return dates.size(); }

    std::optional<double> latest(FeatureKind kind) const {
        const auto& stream = raw[static_cast<std::size_t>(kind)];
        for (auto it = stream.rbegin(); it != stream.rend(); ++it)
            if (*it) return *it;
        return std::nullopt;
    }
};

struct AnalogResult {
    Date start;
    Date end;
    double distance = 0.0;
    double forward_return = 0.0; // simple return over the outcome horizon
};

namespace detail {

// Builds the six raw indicator streams for series indices
// [end_index - length + 1, end_index] plus per-window z-scores.
inline TemporalFeatures features_for_span(const PriceSeries& series, std::size_t end_index,
                                          std::size_t length, const Date& decision_date,
                                          const GroundingConfig& cfg) {
    TemporalFeatures f;
    f.end_date = decision_date;
    std::size_t begin = end_index + 1 - length;
    std::vector<double> prices;
    OptionalSeries returns(length);
    prices.reserve(length);
    for (std::size_t i = 0; i < length; ++i) {
        const auto& [d, p] = series.entries()[begin + i];
        f.dates.push_back(d);
        prices.push_back(p);
        returns[i] = series.return_at(begin + i);
    }

    auto& raw = f.raw;
    raw[static_cast<std::size_t>(FeatureKind::Price)].assign(prices.begin(), prices.end());
    raw[static_cast<std::size_t>(FeatureKind::Return)] = returns;
    raw[static_cast<std::size_t>(FeatureKind::Volatility)] =
        rolling_volatility(returns, cfg.volatility_span);

    OptionalSeries dd(length), td(length);
    for (std::size_t i = 0; i < length; ++i) {
        std::vector<double> trailing(prices.begin(), prices.begin() + i + 1);
        dd[i] = max_drawdown(trailing, cfg.drawdown_span);
        if (trailing.size() >= static_cast<std::size_t>(cfg.trend_spans.long_span))
            td[i] = trend_divergence(trailing, cfg.trend_spans);
    }
    raw[static_cast<std::size_t>(FeatureKind::Drawdown)] = std::move(dd);
    raw[static_cast<std::size_t>(FeatureKind::TrendDivergence)] = std::move(td);
    raw[static_cast<std::size_t>(FeatureKind::Anomaly)] =
        anomaly_score(prices, cfg.decomposition_period);

    for (std::size_t k = 0; k < kFeatureCount; ++k) {
        const auto& stream = raw[k];
        double mean = 0.0;
        int count = 0;
        for (const auto& v : stream)
            if (v) {
                mean += *v;
                ++count;
            }
        auto& norm = f.normalized[k];
        norm.assign(stream.size(), std::nullopt);
        if (count == 0) {
            f.zero_std[k] = true;
            continue;
        }
        mean /= count;
        double ss = 0.0;
        for (const auto& v : stream)
            if (v) {
                double d = *v - mean;
                ss += d * d;
            }
        double stddev = count > 1 ? std::sqrt(ss / (count - 1)) : 0.0;
        f.mean[k] = mean;
        f.stddev[k] = stddev;
        if (stddev > 0.0) {
            for (std::size_t i = 0; i < stream.size(); ++i)
                if (stream[i]) norm[i] = (*stream[i] - mean) / stddev;
        } else {
            f.zero_std[k] = true;
            for (std::size_t i = 0; i < stream.size(); ++i)
                if (stream[i]) norm[i] = 0.0;
        }
    }
    return f;
}

} // namespace detail

/// Indicator window for `date`, built from the trailing `cfg.window` entries
/// strictly before it. nullopt when history is shorter than the minimum:
/// grounding is unavailable rather than fabricated.
inline std::optional<TemporalFeatures> compute_features(const PriceSeries& series,
                                                        const Date& date,
                                                        const GroundingConfig& cfg = {}) {
    auto idx = series.index_of(date);
    if (!idx) throw ConfigError("compute_features: date " + date.iso() + " not in series");
    std::size_t available = *idx; // entries strictly before date
    if (available < static_cast<std::size_t>(cfg.min_window)) return std::nullopt;
    std::size_t length = std::min<std::size_t>(available, cfg.window);
    auto f = detail::features_for_span(series, available - 1, length, date, cfg);
    f.truncated = length < static_cast<std::size_t>(cfg.window);
    return f;
}

/// Nearest historical windows by Euclidean distance on the concatenated
/// normalized features. A candidate window plus its outcome horizon must end
/// strictly before the query date. Ties prefer the earlier start.
inline std::vector<AnalogResult> find_analogs(const TemporalFeatures& current,
                                              const PriceSeries& series, int k,
                                              const GroundingConfig& cfg = {}) {
    std::vector<AnalogResult> results;
    if (k <= 0) return results;
    const std::size_t length = current.window_length();
    if (length == 0) return results;
    auto query_idx = series.index_of(current.end_date);
    if (!query_idx) throw ConfigError("find_analogs: query date not in series");

    for (std::size_t end = length - 1; end + cfg.outcome_horizon < *query_idx; ++end) {
        std::size_t horizon_end = end + cfg.outcome_horizon;
        if (horizon_end >= series.size()) break;
        auto cand =
            detail::features_for_span(series, end, length, series.entries()[end].first, cfg);
        double sum_sq = 0.0;
        bool any = false;
        for (std::size_t f = 0; f < kFeatureCount; ++f) {
            const auto& a = current.normalized[f];
            const auto& b = cand.normalized[f];
            for (std::size_t i = 0; i < length; ++i) {
                if (!a[i] || !b[i]) continue;
                double d = *a[i] - *b[i];
                sum_sq += d * d;
                any = true;
            }
        }
        if (!any) continue;
        AnalogResult r;
        r.start = series.entries()[end + 1 - length].first;
        r.end = series.entries()[end].first;
        r.distance = std::sqrt(sum_sq);
        r.forward_return =
            series.entries()[horizon_end].second / series.entries()[end].second - 1.0;
        results.push_back(r);
    }
    std::sort(results.begin(), results.end(), [](const AnalogResult& a, const AnalogResult& b) {
        if (a.distance != b.distance) return a.distance < b.distance;
        return a.start < b.start;
    });
    if (results.size() > static_cast<std::size_t>(k)) results.resize(k);
    return results;
}

/// Deterministic market-contextual summary handed to the agent before action
/// generation. Pure function of its inputs; bounded length.
inline std::string summarize_grounding(const TemporalFeatures& features,
                                       const std::vector<AnalogResult>& analogs,
                                       std::size_t char_budget = 1200) {
    auto fmt = [](std::optional<double> v, const char* unit = "") {
        if (!v) return std::string("n/a");
        char buf[48];
        std::snprintf(buf, sizeof(buf), "%.4f%s", *v, unit);
        return std::string(buf);
    };
    std::string s = "Market context (history through " +
                    (features.dates.empty() ? std::string("n/a") : features.dates.back().iso()) +
                    "): last price " + fmt(features.latest(FeatureKind::Price)) + ", daily return " +
                    fmt(features.latest(FeatureKind::Return)) + ", 5d volatility " +
                    fmt(features.latest(FeatureKind::Volatility)) + ", 20d max drawdown " +
                    fmt(features.latest(FeatureKind::Drawdown)) + ", trend divergence " +
                    fmt(features.latest(FeatureKind::TrendDivergence)) + ", anomaly score " +
                    fmt(features.latest(FeatureKind::Anomaly)) + ". ";
    if (analogs.empty()) {
        s += "No comparable historical windows were found. ";
    } else {
        double mean = 0.0;
        int pos = 0, neg = 0;
        for (const auto& a : analogs) {
            mean += a.forward_return;
            if (a.forward_return > 0.0) ++pos;
            if (a.forward_return < 0.0) ++neg;
        }
        mean /= static_cast<double>(analogs.size());
        char buf[160];
        std::snprintf(buf, sizeof(buf),
                      "%zu similar historical windows; mean forward return %.4f "
                      "(%d positive, %d negative). ",
                      analogs.size(), mean, pos, neg);
        s += buf;
    }
    s += "Weigh the news below against this quantitative evidence; discount textual claims "
         "that conflict with recent market dynamics.";
    if (s.size() > char_budget) s.resize(char_budget);
    return s;
}

} // namespace redsim
