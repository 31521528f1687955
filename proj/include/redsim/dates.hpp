#pragma once

#include <chrono>
#include <compare>
#include <cstdio>
#include <optional>
#include <string>
#include <string_view>

namespace redsim {

/// Calendar date at daily granularity (no intraday times).
class Date {
public:
    Date() = default;
    explicit Date(std::chrono::sys_days d) : days_(d) {}

    /// Strict ISO-8601 "YYYY-MM-DD". Returns nullopt on any format or
    /// calendar violation (e.g. 2023-02-30).
    static std::optional<Date> parse(std::string_view s) {
        if (s.size() != 10 || s[4] != '-' || s[7] != '-') return std::nullopt;
        auto digits = [](std::string_view t) {
            for (char c : t)
                if (c < '0' || c > '9') return false;
            return true;
        };
        if (!digits(s.substr(0, 4)) || !digits(s.substr(5, 2)) || !digits(s.substr(8, 2)))
            return std::nullopt;
        int y = std::stoi(std::string(s.substr(0, 4)));
        unsigned m = static_cast<unsigned>(std::stoi(std::string(s.substr(5, 2))));
        unsigned d = static_cast<unsigned>(std::stoi(std::string(s.substr(8, 2))));
        std::chrono::year_month_day ymd{std::chrono::year{y}, std::chrono::month{m},
                                        std::chrono::day{d}};
        if (!ymd.ok()) return std::nullopt;
        return Date{std::chrono::sys_days{ymd}};
    }

    std::string iso() const {
        std::chrono::year_month_day ymd{days_};
        char buf[16];
        std::snprintf(buf, sizeof(buf), "%04d-%02u-%02u", static_cast<int>(ymd.year()),
                      static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()));
        return buf;
    }

    Date plus_days(int n) const { return Date{days_ + std::chrono::days{n}}; }

    /// Signed day count, *this - other.
    long diff_days(const Date& other) const { return (days_ - other.days_).count(); }

    auto operator<=>(const Date&) const = default;

private:
    std::chrono::sys_days days_{};
};

} // namespace redsim
