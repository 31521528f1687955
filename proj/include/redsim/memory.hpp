#pragma once

#include <algorithm>
#include <functional>
#include <string>
#include <vector>

#include "redsim/common.hpp"
#include "redsim/dates.hpp"
#include "redsim/gateway.hpp"

namespace redsim {

enum class MemoryLayer { Daily, Periodic, LongTerm };
enum class MemorySource { News, Reflection, Outcome };

inline std::string_view to_string(MemoryLayer l) {
    switch (l) {
        case MemoryLayer::Daily: return "Daily";
        case MemoryLayer::Periodic: return "Periodic";
        case MemoryLayer::LongTerm: return "LongTerm";
    }
    return "?";
}

struct MemoryRecord {
    MemoryLayer layer = MemoryLayer::Daily;
    Date date;
    std::string text;
    std::vector<double> embedding;
    MemorySource source = MemorySource::News;
};

struct MemoryConfig {
    int daily_horizon_days = 7;    // Daily older than this compacts to Periodic
    int periodic_horizon_days = 30; // Periodic older than this promotes to LongTerm
    std::size_t summary_char_budget = 800;
    // Layer-priority multipliers applied to similarity at query time.
    double daily_multiplier = 1.0;
    double periodic_multiplier = 1.1;
    double long_term_multiplier = 1.2;
};

/// Append-only layered memory with semantic retrieval. Daily records expire
/// into one Periodic summary; old Periodic records promote to LongTerm.
class MemoryStore {
public:
    explicit MemoryStore(MemoryConfig config = {}) : config_(config) {}

    void add(MemoryRecord record) {
        if (!records_.empty() && record.embedding.size() != records_.front().embedding.size())
            throw GatewayError("memory: embedding dimension mismatch");
        records_.push_back(std::move(record));
    }

    std::size_t size() const { return records_.size(); }
    const std::vector<MemoryRecord>& records() const { return records_; }

    /// Top-k by layer-weighted cosine over records dated <= date. Ties break
    /// by (higher date, insertion order).
    std::vector<MemoryRecord> query(const std::vector<double>& query_embedding, std::size_t k,
                                    const Date& date) const {
        struct Scored {
            double score;
            std::size_t index;
        };
        std::vector<Scored> scored;
        for (std::size_t i = 0; i < records_.size(); ++i) {
            const auto& rec = records_[i];
            if (rec.date > date) continue;
            double sim = cosine_similarity(query_embedding, rec.embedding);
            scored.push_back({sim * multiplier(rec.layer), i});
        }
        std::sort(scored.begin(), scored.end(), [this](const Scored& a, const Scored& b) {
            if (a.score != b.score) return a.score > b.score;
            if (records_[a.index].date != records_[b.index].date)
                return records_[a.index].date > records_[b.index].date;
            return a.index < b.index;
        });
        std::vector<MemoryRecord> out;
        for (std::size_t i = 0; i < scored.size() && i < k; ++i)
            out.push_back(records_[scored[i].index]);
        return out;
    }

    /// Expire Daily records older than the daily horizon into one Periodic
    /// summary (concatenate-truncate, no model call) and promote stale
    /// Periodic records to LongTerm.
    void compact(const Date& today,
                 const std::function<std::vector<double>(const std::string&)>& embed) {
        std::vector<MemoryRecord> stale;
        std::vector<MemoryRecord> kept;
        kept.reserve(records_.size());
        for (auto& rec : records_) {
            if (rec.layer == MemoryLayer::Daily &&
                today.diff_days(rec.date) > config_.daily_horizon_days)
                stale.push_back(std::move(rec));
            else
                kept.push_back(std::move(rec));
        }
        records_ = std::move(kept);
        if (!stale.empty()) {
            std::sort(stale.begin(), stale.end(),
                      [](const MemoryRecord& a, const MemoryRecord& b) { return a.date < b.date; });
            std::string summary;
            for (const auto& rec : stale) {
                if (!summary.empty()) summary += " | ";
                summary += rec.date.iso() + ": " + rec.text;
            }
            if (summary.size() > config_.summary_char_budget)
                summary.resize(config_.summary_char_budget);
            MemoryRecord periodic;
            periodic.layer = MemoryLayer::Periodic;
            periodic.date = stale.back().date;
            periodic.text = std::move(summary);
            periodic.embedding = embed(periodic.text);
            periodic.source = MemorySource::Reflection;
            add(std::move(periodic));
        }
        for (auto& rec : records_) {
            if (rec.layer == MemoryLayer::Periodic &&
                today.diff_days(rec.date) > config_.periodic_horizon_days)
                rec.layer = MemoryLayer::LongTerm;
        }
    }

private:
    double multiplier(MemoryLayer layer) const {
        switch (layer) {
            case MemoryLayer::Daily: return config_.daily_multiplier;
            case MemoryLayer::Periodic: return config_.periodic_multiplier;
            case MemoryLayer::LongTerm: return config_.long_term_multiplier;
        }
        return 1.0;
    }

    MemoryConfig config_;
    std::vector<MemoryRecord> records_;
};

} // namespace redsim
