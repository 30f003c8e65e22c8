#pragma once

#include <compare>
#include <optional>
#include <string>
#include <string_view>

namespace specvol {

// Calendar date. Plain value type ordered lexicographically by
// (year, month, day); all calendar logic in this project is driven by
// explicit trading-day lists, so no timezone handling is needed.
struct Date {
    int year = 0;
    int month = 0;
    int day = 0;

    auto operator<=>(const Date&) const = default;

    bool valid() const;
};

// Parses strict "YYYY-MM-DD". Returns nullopt on malformed or invalid dates.
std::optional<Date> parse_date(std::string_view text);

// Formats as "YYYY-MM-DD" (zero padded).
std::string to_string(const Date& d);

// Days since 1970-01-01 (civil calendar; negative before the epoch).
long long to_civil_days(const Date& d);
Date from_civil_days(long long days);

// 0 = Monday ... 6 = Sunday.
int weekday(const Date& d);

inline bool is_weekday(const Date& d) { return weekday(d) < 5; }

Date next_calendar_day(const Date& d);
Date prev_calendar_day(const Date& d);

} // namespace specvol
