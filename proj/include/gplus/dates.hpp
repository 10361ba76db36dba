#pragma once

#include <chrono>
#include <compare>
#include <string>
#include <string_view>

namespace gplus {

/// Calendar date, day precision. Parsed from and serialized to ISO-8601
/// (YYYY-MM-DD). Comparable and subtractable in whole days.
class Date {
public:
    Date() = default;
    Date(int year, unsigned month, unsigned day);

    /// Throws BadDate unless `text` is a valid ISO-8601 calendar date.
    static Date parse(std::string_view text);

    int year() const;
    unsigned month() const;
    unsigned day() const;

    std::string to_string() const;  // YYYY-MM-DD

    /// Days from other to *this (positive when *this is later).
    long days_since(const Date& other) const;

    Date add_days(long days) const;

    auto operator<=>(const Date&) const = default;

private:
    std::chrono::year_month_day ymd_{};
};

}  // namespace gplus
