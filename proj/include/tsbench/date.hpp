#pragma once

#include <compare>
#include <string>
#include <string_view>

namespace tsbench {

/// Calendar day. Comparable, no timezone, no time-of-day.
struct Date {
    int year = 1970;
    int month = 1;
    int day = 1;

    auto operator<=>(const Date&) const = default;
};

bool is_valid_date(const Date& d);

/// Parses strict ISO-8601 YYYY-MM-DD. Throws InvalidValue on anything else.
Date parse_date(std::string_view text);

std::string format_date(const Date& d);

/// Days since 1970-01-01 (civil calendar).
long to_epoch_days(const Date& d);

/// b - a in calendar days.
long days_between(const Date& a, const Date& b);

}  // namespace tsbench
