#pragma once

#include <algorithm>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "redsim/common.hpp"
#include "redsim/dates.hpp"
#include "redsim/strategy.hpp"

namespace redsim {

enum class Provenance { Real, Injected };

/// One dated news text. Injected items carry the strategy triple that
/// generated them and the id of the real item they perturb.
struct NewsItem {
    std::string id;
    Date date;
    std::string ticker;
    std::string title;
    std::string body;
    Provenance provenance = Provenance::Real;
    std::optional<StrategyTriple> strategy;
    std::optional<std::string> parent_id;
};

/// Daily adjusted-close series with strictly increasing dates.
class PriceSeries {
public:
    PriceSeries() = default;
    PriceSeries(std::string ticker, std::vector<std::pair<Date, double>> entries)
        : ticker_(std::move(ticker)), entries_(std::move(entries)) {}

    const std::string& ticker() const { return ticker_; }
    const std::vector<std::pair<Date, double>>& entries() const { return entries_; }
    std::size_t size() const { return entries_.size(); }

    std::optional<std::size_t> index_of(const Date& d) const {
        auto it = std::lower_bound(entries_.begin(), entries_.end(), d,
                                   [](const auto& e, const Date& x) { return e.first < x; });
        if (it == entries_.end() || it->first != d) return std::nullopt;
        return static_cast<std::size_t>(it - entries_.begin());
    }

    std::optional<double> price_on(const Date& d) const {
        auto i = index_of(d);
        if (!i) return std::nullopt;
        return entries_[*i].second;
    }

    /// Simple return at index i (defined from the second entry onward).
    std::optional<double> return_at(std::size_t i) const {
        if (i == 0 || i >= entries_.size()) return std::nullopt;
        return entries_[i].second / entries_[i - 1].second - 1.0;
    }

private:
    std::string ticker_;
    std::vector<std::pair<Date, double>> entries_;
};

/// Ordered evaluation dates; its length is the ASR denominator.
struct TradingCalendar {
    std::vector<Date> dates;
};

/// Trailing slice strictly before end_date. `truncated` is set when history
/// is shorter than the request; the caller decides whether to proceed.
struct WindowSlice {
    std::vector<std::pair<Date, double>> entries;
    bool truncated = false;
};

inline WindowSlice slice_window(const PriceSeries& series, const Date& end_date,
                                std::size_t length) {
    auto idx = series.index_of(end_date);
    if (!idx) throw ConfigError("slice_window: end_date " + end_date.iso() + " not in series");
    std::size_t end = *idx; // exclusive: entries strictly before end_date
    std::size_t begin = end >= length ? end - length : 0;
    WindowSlice out;
    out.entries.assign(series.entries().begin() + static_cast<long>(begin),
                       series.entries().begin() + static_cast<long>(end));
    out.truncated = out.entries.size() < length;
    return out;
}

namespace detail {

inline std::string require_string_field(const nlohmann::json& rec, const char* key,
                                        std::size_t line_no) {
    if (!rec.contains(key) || !rec[key].is_string())
        throw ConfigError("news corpus: line " + std::to_string(line_no) +
                          ": missing or non-string field `" + key + "`");
    return rec[key].get<std::string>();
}

} // namespace detail

/// Line-delimited JSON, one record per line, fields id/date/ticker/title/body.
/// Items come back sorted by (date, id) with provenance Real.
inline std::vector<NewsItem> load_news_corpus(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("news corpus: cannot open " + path);
    std::vector<NewsItem> items;
    std::set<std::string> seen_ids;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (detail::trim(line).empty()) continue;
        nlohmann::json rec = nlohmann::json::parse(line, nullptr, false);
        if (rec.is_discarded() || !rec.is_object())
            throw ConfigError("news corpus: line " + std::to_string(line_no) +
                              ": not a JSON object");
        NewsItem item;
        item.id = detail::require_string_field(rec, "id", line_no);
        auto date_str = detail::require_string_field(rec, "date", line_no);
        auto date = Date::parse(date_str);
        if (!date)
            throw ConfigError("news corpus: line " + std::to_string(line_no) +
                              ": unparseable date `" + date_str + "`");
        item.date = *date;
        item.ticker = detail::require_string_field(rec, "ticker", line_no);
        item.title = detail::require_string_field(rec, "title", line_no);
        item.body = detail::require_string_field(rec, "body", line_no);
        item.provenance = Provenance::Real;
        if (!seen_ids.insert(item.id).second)
            throw ConfigError("news corpus: line " + std::to_string(line_no) +
                              ": duplicate id `" + item.id + "`");
        items.push_back(std::move(item));
    }
    std::sort(items.begin(), items.end(), [](const NewsItem& a, const NewsItem& b) {
        if (a.date != b.date) return a.date < b.date;
        return a.id < b.id;
    });
    return items;
}

/// Canonical single-line record; field order is fixed so golden files diff
/// byte-for-byte.
inline std::string news_record_line(const NewsItem& item) {
    nlohmann::ordered_json rec;
    rec["id"] = item.id;
    rec["date"] = item.date.iso();
    rec["ticker"] = item.ticker;
    rec["title"] = item.title;
    rec["body"] = item.body;
    if (item.provenance == Provenance::Injected) {
        rec["provenance"] = "Injected";
        nlohmann::ordered_json st;
        st["bias"] = item.strategy && item.strategy->bias
                         ? nlohmann::ordered_json(std::string(to_string(*item.strategy->bias)))
                         : nlohmann::ordered_json(nullptr);
        st["minor"] = item.strategy ? std::string(to_string(item.strategy->minor)) : "Other";
        st["rewrite"] = item.strategy && item.strategy->rewrite
                            ? nlohmann::ordered_json(std::string(to_string(*item.strategy->rewrite)))
                            : nlohmann::ordered_json(nullptr);
        rec["strategy"] = st;
        rec["parent_id"] = item.parent_id ? *item.parent_id : "";
    }
    return rec.dump();
}

inline void write_news_corpus(const std::vector<NewsItem>& items, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("news corpus: cannot write " + path);
    for (const auto& item : items) out << news_record_line(item) << '\n';
}

/// Delimited text with header `date,adj_close`. Rows may arrive out of order;
/// duplicates and non-positive prices are rejected.
inline PriceSeries load_price_series(const std::string& path, std::string ticker = "") {
    std::ifstream in(path);
    if (!in) throw ConfigError("price series: cannot open " + path);
    std::string line;
    if (!std::getline(in, line)) throw ConfigError("price series: empty file " + path);
    {
        auto header = detail::to_lower(detail::trim(line));
        if (header != "date,adj_close")
            throw ConfigError("price series: expected header `date,adj_close`, got `" + line +
                              "`");
    }
    std::vector<std::pair<Date, double>> entries;
    std::set<Date> seen;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (detail::trim(line).empty()) continue;
        auto parts = detail::split(line, ',');
        if (parts.size() != 2)
            throw ConfigError("price series: line " + std::to_string(line_no) +
                              ": expected `date,adj_close`");
        auto date = Date::parse(detail::trim(parts[0]));
        if (!date)
            throw ConfigError("price series: line " + std::to_string(line_no) +
                              ": unparseable date `" + parts[0] + "`");
        double price = 0.0;
        try {
            price = std::stod(detail::trim(parts[1]));
        } catch (const std::exception&) {
            throw ConfigError("price series: line " + std::to_string(line_no) +
                              ": unparseable price `" + parts[1] + "`");
        }
        if (!(price > 0.0))
            throw ConfigError("price series: non-positive price at " + date->iso());
        if (!seen.insert(*date).second)
            throw ConfigError("price series: duplicate date " + date->iso());
        entries.emplace_back(*date, price);
    }
    std::sort(entries.begin(), entries.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    return PriceSeries{std::move(ticker), std::move(entries)};
}

/// Evaluation dates: price-series dates clipped to [start, end] when given.
inline TradingCalendar make_calendar(const PriceSeries& series, std::optional<Date> start,
                                     std::optional<Date> end) {
    TradingCalendar cal;
    for (const auto& [d, p] : series.entries()) {
        (void)p;
        if (start && d < *start) continue;
        if (end && d > *end) continue;
        cal.dates.push_back(d);
    }
    return cal;
}

} // namespace redsim
