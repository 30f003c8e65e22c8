#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "specvol/date.hpp"
#include "specvol/market_data.hpp"

namespace specvol::resample {

// Time/price projection of a tick; quantity plays no role in sampling.
struct PricePoint {
    int time = 0;
    long long price = 0;

    bool operator==(const PricePoint&) const = default;
};

std::vector<PricePoint> to_price_points(std::span<const market::Tick> ticks);

// Log returns over the five-minute grid. For the default 350-minute session
// this holds exactly 70 entries.
struct FiveMinuteReturns {
    std::string symbol;
    Date day;
    std::vector<double> returns;
};

// Log prices sampled one minute apart, excluding both the session open and
// the session close. For the default session this is the 349-element vector.
struct MinuteLogPriceVector {
    std::string symbol;
    Date day;
    std::vector<double> values;
};

// Sample offsets in seconds: 0, 300, ..., session length (71 points for the
// default session). Requires the session length to be a multiple of 5 minutes.
std::vector<int> five_minute_offsets(const market::SessionSpec& session);

// Sample offsets in seconds: 60, 120, ..., session length - 60
// (349 points for the default session).
std::vector<int> minute_offsets(const market::SessionSpec& session);

// Last observation carried forward: price of the last tick with time <= t.
// Ties on time resolve to the latest tick in sequence order. Returns nullopt
// when no tick has traded yet ("no price yet"; the caller decides day
// handling). `ticks` must be sorted by time.
std::optional<long long> locf_price(std::span<const PricePoint> ticks, int t);

// Reasons a stock-day fails the resampling preconditions. Excluded days are
// reported, never silently dropped.
enum class ExcludeReason {
    kNoTicks,
    kNoOpeningPrice,        // no trade at the session open (offset 0)
    kNoPriceByFirstMinute,  // no trade at or before 60 s
};

const char* to_string(ExcludeReason r);

// Shared acceptance check used by the pipeline: a stock-day enters the
// aggregates only if both grids can be built, which reduces to having a
// trade at offset 0.
std::optional<ExcludeReason> day_exclusion(std::span<const PricePoint> ticks);

// Samples 71 prices at the five-minute marks via LOCF and returns the log
// differences. The base price is the trade at the session open (offset 0).
// Returns nullopt when that precondition fails.
std::optional<FiveMinuteReturns> build_five_minute_returns(
    std::string symbol, const Date& day, std::span<const PricePoint> ticks,
    const market::SessionSpec& session);

// Samples prices at minutes 1..length-1 after the open via LOCF and takes
// natural logs. Returns nullopt when no trade exists at or before 60 s.
std::optional<MinuteLogPriceVector> build_minute_vector(
    std::string symbol, const Date& day, std::span<const PricePoint> ticks,
    const market::SessionSpec& session);

} // namespace specvol::resample
