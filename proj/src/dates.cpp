#include "gplus/dates.hpp"

#include <cctype>
#include <charconv>
#include <cstdio>

#include "gplus/errors.hpp"

namespace gplus {

namespace {

bool all_digits(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s) {
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    }
    return true;
}

int to_int(std::string_view s) {
    int value = 0;
    std::from_chars(s.data(), s.data() + s.size(), value);
    return value;
}

}  // namespace

Date::Date(int year, unsigned month, unsigned day)
    : ymd_(std::chrono::year{year}, std::chrono::month{month}, std::chrono::day{day}) {
    if (!ymd_.ok()) {
        char buf[32];
        std::snprintf(buf, sizeof(buf), "%04d-%02u-%02u", year, month, day);
        throw BadDate(std::string("invalid calendar date ") + buf);
    }
}

Date Date::parse(std::string_view text) {
    // Fixed-width YYYY-MM-DD only.
    if (text.size() != 10 || text[4] != '-' || text[7] != '-' ||
        !all_digits(text.substr(0, 4)) || !all_digits(text.substr(5, 2)) ||
        !all_digits(text.substr(8, 2))) {
        throw BadDate("expected ISO-8601 date YYYY-MM-DD, got '" + std::string(text) + "'");
    }
    return Date(to_int(text.substr(0, 4)),
                static_cast<unsigned>(to_int(text.substr(5, 2))),
                static_cast<unsigned>(to_int(text.substr(8, 2))));
}

int Date::year() const { return static_cast<int>(ymd_.year()); }
unsigned Date::month() const { return static_cast<unsigned>(ymd_.month()); }
unsigned Date::day() const { return static_cast<unsigned>(ymd_.day()); }

std::string Date::to_string() const {
    char buf[16];
    std::snprintf(buf, sizeof(buf), "%04d-%02u-%02u", year(), month(), day());
    return buf;
}

long Date::days_since(const Date& other) const {
    const auto a = std::chrono::sys_days(ymd_);
    const auto b = std::chrono::sys_days(other.ymd_);
    return (a - b).count();
}

Date Date::add_days(long days) const {
    const auto shifted = std::chrono::sys_days(ymd_) + std::chrono::days(days);
    const std::chrono::year_month_day ymd(shifted);
    return Date(static_cast<int>(ymd.year()), static_cast<unsigned>(ymd.month()),
                static_cast<unsigned>(ymd.day()));
}

}  // namespace gplus
