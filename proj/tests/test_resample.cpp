#include "doctest.h"

#include <cmath>

#include "specvol/resample.hpp"

#include "oracles.hpp"

using namespace specvol;
using namespace specvol::resample;

namespace {

const market::SessionSpec kDefault{};
const Date kDay{2015, 6, 16};

std::vector<PricePoint> constant_day(long long price) {
    return {{0, price}, {7000, price}, {21000, price}};
}

} // namespace

TEST_CASE("grid offsets have the documented shape") {
    auto five = five_minute_offsets(kDefault);
    REQUIRE(five.size() == 71);
    CHECK(five.front() == 0);
    CHECK(five[1] == 300);
    CHECK(five.back() == 21000);

    auto one = minute_offsets(kDefault);
    REQUIRE(one.size() == 349);
    CHECK(one.front() == 60);
    CHECK(one[1] == 120);
    CHECK(one.back() == 20940);
}

TEST_CASE("locf returns the last price at or before the query") {
    std::vector<PricePoint> ticks = {{10, 100}, {130, 102}};
    CHECK(locf_price(ticks, 120) == 100);
    CHECK(locf_price(ticks, 130) == 102);
    CHECK(locf_price(ticks, 21000) == 102);
    CHECK_FALSE(locf_price(ticks, 5).has_value());
    CHECK_FALSE(locf_price(ticks, 9).has_value());
}

TEST_CASE("locf ties at one timestamp resolve to the latest entry") {
    std::vector<PricePoint> ticks = {{60, 100}, {60, 101}, {60, 99}};
    CHECK(locf_price(ticks, 60) == 99);
    CHECK(locf_price(ticks, 61) == 99);
}

TEST_CASE("locf on dense days equals the per-minute bucket closing trade") {
    oracles::TestRng rng(23);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<PricePoint> ticks = {{0, 1000 + trial}};
        for (int minute = 1; minute <= 350; ++minute) {
            const int in_bucket = static_cast<int>(rng.integer(1, 3));
            std::vector<int> times;
            for (int k = 0; k < in_bucket; ++k)
                times.push_back(static_cast<int>(
                    rng.integer(60 * (minute - 1) + 1, 60 * minute)));
            std::sort(times.begin(), times.end());
            for (int t : times)
                ticks.push_back({t, rng.integer(900, 1100)});
        }
        for (int minute = 1; minute <= 350; ++minute) {
            const int mark = 60 * minute;
            auto lib = locf_price(ticks, mark);
            auto ref = oracles::scan_locf(ticks, mark);
            REQUIRE(lib.has_value());
            CHECK(lib == ref);
            // Every bucket traded, so the mark price is that bucket's close.
            long long close = 0;
            for (const auto& tk : ticks)
                if (tk.time > mark - 60 && tk.time <= mark) close = tk.price;
            CHECK(*lib == close);
        }
    }
}

TEST_CASE("five-minute returns of a constant day are all zero") {
    auto r = build_five_minute_returns("A", kDay, constant_day(1234), kDefault);
    REQUIRE(r.has_value());
    REQUIRE(r->returns.size() == 70);
    for (double x : r->returns) CHECK(x == 0.0);
}

TEST_CASE("doubling the price at every mark makes every return ln 2") {
    // 70 doublings overflow 64-bit integer prices, so the doubling pattern is
    // exercised on a shorter session; the sampling rule is identical.
    market::SessionSpec session;
    session.open_minutes = 9 * 60;
    session.close_minutes = 9 * 60 + 310;
    auto offsets = five_minute_offsets(session);
    REQUIRE(offsets.size() == 63);
    std::vector<PricePoint> ticks;
    long long price = 1;
    for (int t : offsets) {
        ticks.push_back({t, price});
        price *= 2;
    }
    auto r = build_five_minute_returns("A", kDay, ticks, session);
    REQUIRE(r.has_value());
    REQUIRE(r->returns.size() == 62);
    for (double x : r->returns)
        CHECK(std::abs(x - std::log(2.0)) <= 1e-13);
}

TEST_CASE("minute vector of a constant day is a constant log price") {
    auto v = build_minute_vector("A", kDay, constant_day(2500), kDefault);
    REQUIRE(v.has_value());
    REQUIRE(v->values.size() == 349);
    for (double x : v->values) CHECK(x == std::log(2500.0));
}

TEST_CASE("a single opening trade carries through the whole day") {
    std::vector<PricePoint> ticks = {{0, 777}};
    auto v = build_minute_vector("A", kDay, ticks, kDefault);
    REQUIRE(v.has_value());
    for (double x : v->values) CHECK(x == std::log(777.0));

    auto r = build_five_minute_returns("A", kDay, ticks, kDefault);
    REQUIRE(r.has_value());
    for (double x : r->returns) CHECK(x == 0.0);
}

TEST_CASE("days failing the sampling preconditions are excluded with reasons") {
    CHECK(day_exclusion({}) == ExcludeReason::kNoTicks);

    std::vector<PricePoint> late = {{30, 100}, {200, 101}};
    CHECK(day_exclusion(late) == ExcludeReason::kNoOpeningPrice);
    CHECK_FALSE(build_five_minute_returns("A", kDay, late, kDefault).has_value());
    CHECK(build_minute_vector("A", kDay, late, kDefault).has_value());

    std::vector<PricePoint> very_late = {{61, 100}};
    CHECK_FALSE(build_minute_vector("A", kDay, very_late, kDefault).has_value());

    std::vector<PricePoint> ok = {{0, 100}};
    CHECK_FALSE(day_exclusion(ok).has_value());

    CHECK(std::string(to_string(ExcludeReason::kNoTicks)) == "no_ticks");
    CHECK(std::string(to_string(ExcludeReason::kNoOpeningPrice)) ==
          "no_opening_price");
    CHECK(std::string(to_string(ExcludeReason::kNoPriceByFirstMinute)) ==
          "no_price_by_first_minute");
}

TEST_CASE("both grids match a brute-force per-point resampler on random days") {
    oracles::TestRng rng(29);
    for (int trial = 0; trial < 30; ++trial) {
        std::vector<PricePoint> ticks = {{0, rng.integer(500, 1500)}};
        int t = 0;
        while (true) {
            t += static_cast<int>(rng.integer(1, 400));
            if (t > 21000) break;
            ticks.push_back({t, rng.integer(500, 1500)});
        }
        auto r = build_five_minute_returns("A", kDay, ticks, kDefault);
        auto v = build_minute_vector("A", kDay, ticks, kDefault);
        REQUIRE(r.has_value());
        REQUIRE(v.has_value());

        auto five = five_minute_offsets(kDefault);
        for (size_t k = 1; k < five.size(); ++k) {
            const double expect =
                std::log(static_cast<double>(*oracles::scan_locf(ticks, five[k]))) -
                std::log(static_cast<double>(*oracles::scan_locf(ticks, five[k - 1])));
            CHECK(r->returns[k - 1] == expect);
        }
        auto one = minute_offsets(kDefault);
        for (size_t k = 0; k < one.size(); ++k) {
            const double expect =
                std::log(static_cast<double>(*oracles::scan_locf(ticks, one[k])));
            CHECK(v->values[k] == expect);
        }
    }
}

TEST_CASE("redundant ticks at the prevailing price change nothing") {
    oracles::TestRng rng(31);
    std::vector<PricePoint> ticks = {{0, 1000}};
    int t = 0;
    while ((t += static_cast<int>(rng.integer(200, 900))) <= 21000)
        ticks.push_back({t, rng.integer(800, 1200)});

    auto r1 = build_five_minute_returns("A", kDay, ticks, kDefault);
    auto v1 = build_minute_vector("A", kDay, ticks, kDefault);

    // Insert a tick between consecutive sample marks carrying the price that
    // LOCF already reports there.
    std::vector<PricePoint> padded;
    for (const auto& tk : ticks) padded.push_back(tk);
    for (int mark = 150; mark < 21000; mark += 300) {
        auto prevailing = oracles::scan_locf(ticks, mark);
        padded.push_back({mark, *prevailing});
    }
    std::sort(padded.begin(), padded.end(),
              [](const PricePoint& a, const PricePoint& b) { return a.time < b.time; });

    auto r2 = build_five_minute_returns("A", kDay, padded, kDefault);
    auto v2 = build_minute_vector("A", kDay, padded, kDefault);
    REQUIRE(r2.has_value());
    REQUIRE(v2.has_value());
    CHECK(r1->returns == r2->returns);
    CHECK(v1->values == v2->values);
}

TEST_CASE("price scaling shifts log levels and leaves returns unchanged") {
    oracles::TestRng rng(37);
    std::vector<PricePoint> ticks = {{0, 1000}};
    int t = 0;
    while ((t += static_cast<int>(rng.integer(100, 700))) <= 21000)
        ticks.push_back({t, rng.integer(900, 1100)});
    std::vector<PricePoint> scaled;
    for (const auto& tk : ticks) scaled.push_back({tk.time, tk.price * 8});

    auto r1 = build_five_minute_returns("A", kDay, ticks, kDefault);
    auto r2 = build_five_minute_returns("A", kDay, scaled, kDefault);
    for (size_t k = 0; k < r1->returns.size(); ++k)
        CHECK(r2->returns[k] == doctest::Approx(r1->returns[k]).epsilon(1e-12));

    auto v1 = build_minute_vector("A", kDay, ticks, kDefault);
    auto v2 = build_minute_vector("A", kDay, scaled, kDefault);
    for (size_t k = 0; k < v1->values.size(); ++k)
        CHECK(v2->values[k] - v1->values[k] ==
              doctest::Approx(std::log(8.0)).epsilon(1e-12));
}

TEST_CASE("price points project ticks onto time and price") {
    market::Tick t;
    t.symbol = "A";
    t.day = kDay;
    t.time = 15;
    t.price = 100;
    t.quantity = 3;
    auto pts = to_price_points(std::vector<market::Tick>{t});
    REQUIRE(pts.size() == 1);
    CHECK(pts[0].time == 15);
    CHECK(pts[0].price == 100);
}
