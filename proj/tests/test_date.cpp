#include "doctest.h"

#include "specvol/date.hpp"

#include "oracles.hpp"

using namespace specvol;

TEST_CASE("date parsing accepts strict YYYY-MM-DD") {
    auto d = parse_date("2015-06-15");
    REQUIRE(d.has_value());
    CHECK(d->year == 2015);
    CHECK(d->month == 6);
    CHECK(d->day == 15);
    CHECK(to_string(*d) == "2015-06-15");
    CHECK(to_string(Date{987, 3, 4}) == "0987-03-04");
}

TEST_CASE("date parsing rejects malformed and invalid input") {
    for (const char* s :
         {"2015-6-15", "2015/06/15", "20150615", "2015-13-01", "2015-02-29",
          "2015-00-10", "2015-01-00", "2015-01-32", "", "2015-01-0a",
          "x015-01-02", "2015-01-02 ", " 2015-01-02", "2015-01-021"})
        CHECK_FALSE(parse_date(s).has_value());

    CHECK(parse_date("2016-02-29").has_value());
    CHECK_FALSE(parse_date("1900-02-29").has_value());
    CHECK(parse_date("2000-02-29").has_value());
}

TEST_CASE("civil day conversion round-trips and preserves order") {
    CHECK(to_civil_days({1970, 1, 1}) == 0);
    CHECK(to_civil_days({1970, 1, 2}) == 1);
    CHECK(weekday({1970, 1, 1}) == 3);   // a Thursday
    CHECK(weekday({2015, 6, 15}) == 0);  // a Monday
    CHECK(is_weekday({2015, 6, 15}));
    CHECK_FALSE(is_weekday({2015, 6, 13}));
    CHECK_FALSE(is_weekday({2015, 6, 14}));

    oracles::TestRng rng(1);
    Date prev{1950, 1, 1};
    long long prev_days = to_civil_days(prev);
    for (int i = 0; i < 2000; ++i) {
        const long long n = prev_days + rng.integer(1, 40);
        const Date d = from_civil_days(n);
        CHECK(d.valid());
        CHECK(to_civil_days(d) == n);
        CHECK(prev < d);
        prev = d;
        prev_days = n;
    }
}

TEST_CASE("calendar stepping crosses month and year boundaries") {
    CHECK(next_calendar_day({2015, 12, 31}) == Date{2016, 1, 1});
    CHECK(next_calendar_day({2016, 2, 28}) == Date{2016, 2, 29});
    CHECK(next_calendar_day({2015, 2, 28}) == Date{2015, 3, 1});
    CHECK(prev_calendar_day({2016, 1, 1}) == Date{2015, 12, 31});
    CHECK(prev_calendar_day({2016, 3, 1}) == Date{2016, 2, 29});
    CHECK(prev_calendar_day({2015, 3, 1}) == Date{2015, 2, 28});
}
