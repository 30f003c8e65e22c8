#include "specvol/date.hpp"

#include <charconv>
#include <cstdio>

namespace specvol {

namespace {

bool is_leap(int y) {
    return (y % 4 == 0 && y % 100 != 0) || y % 400 == 0;
}

int days_in_month(int y, int m) {
    static constexpr int kTable[] = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
    if (m == 2 && is_leap(y)) return 29;
    return kTable[m - 1];
}

bool parse_int_field(std::string_view s, int& out) {
    if (s.empty()) return false;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    return ec == std::errc{} && ptr == s.data() + s.size();
}

} // namespace

bool Date::valid() const {
    if (year < 1 || month < 1 || month > 12) return false;
    return day >= 1 && day <= days_in_month(year, month);
}

std::optional<Date> parse_date(std::string_view text) {
    if (text.size() != 10 || text[4] != '-' || text[7] != '-') return std::nullopt;
    Date d;
    if (!parse_int_field(text.substr(0, 4), d.year)) return std::nullopt;
    if (!parse_int_field(text.substr(5, 2), d.month)) return std::nullopt;
    if (!parse_int_field(text.substr(8, 2), d.day)) return std::nullopt;
    if (!d.valid()) return std::nullopt;
    return d;
}

std::string to_string(const Date& d) {
    char buf[16];
    std::snprintf(buf, sizeof(buf), "%04d-%02d-%02d", d.year, d.month, d.day);
    return buf;
}

// Howard Hinnant's civil-days algorithms.
long long to_civil_days(const Date& d) {
    long long y = d.year;
    const int m = d.month;
    const int dd = d.day;
    y -= m <= 2;
    const long long era = (y >= 0 ? y : y - 399) / 400;
    const unsigned yoe = static_cast<unsigned>(y - era * 400);
    const unsigned doy = (153u * (m + (m > 2 ? -3 : 9)) + 2u) / 5u + dd - 1;
    const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
    return era * 146097 + static_cast<long long>(doe) - 719468;
}

Date from_civil_days(long long days) {
    days += 719468;
    const long long era = (days >= 0 ? days : days - 146096) / 146097;
    const unsigned doe = static_cast<unsigned>(days - era * 146097);
    const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
    const long long y = static_cast<long long>(yoe) + era * 400;
    const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
    const unsigned mp = (5 * doy + 2) / 153;
    const unsigned dd = doy - (153 * mp + 2) / 5 + 1;
    const unsigned m = mp + (mp < 10 ? 3 : -9);
    return Date{static_cast<int>(y + (m <= 2)), static_cast<int>(m), static_cast<int>(dd)};
}

int weekday(const Date& d) {
    // 1970-01-01 was a Thursday (index 3 with Monday = 0).
    long long days = to_civil_days(d);
    long long w = (days + 3) % 7;
    if (w < 0) w += 7;
    return static_cast<int>(w);
}

Date next_calendar_day(const Date& d) { return from_civil_days(to_civil_days(d) + 1); }
Date prev_calendar_day(const Date& d) { return from_civil_days(to_civil_days(d) - 1); }

} // namespace specvol
