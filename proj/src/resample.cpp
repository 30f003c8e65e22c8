#include "specvol/resample.hpp"

#include <algorithm>
#include <cmath>

#include "specvol/errors.hpp"

namespace specvol::resample {

std::vector<PricePoint> to_price_points(std::span<const market::Tick> ticks) {
    std::vector<PricePoint> points;
    points.reserve(ticks.size());
    for (const auto& t : ticks) points.push_back({t.time, t.price});
    return points;
}

std::vector<int> five_minute_offsets(const market::SessionSpec& session) {
    if (session.length_minutes() % 5 != 0)
        throw ConfigError("session length must be a multiple of 5 minutes for the "
                          "five-minute grid");
    std::vector<int> offsets;
    offsets.reserve(session.length_minutes() / 5 + 1);
    for (int t = 0; t <= session.length_seconds(); t += 300) offsets.push_back(t);
    return offsets;
}

std::vector<int> minute_offsets(const market::SessionSpec& session) {
    std::vector<int> offsets;
    offsets.reserve(session.length_minutes() - 1);
    for (int t = 60; t <= session.length_seconds() - 60; t += 60) offsets.push_back(t);
    return offsets;
}

std::optional<long long> locf_price(std::span<const PricePoint> ticks, int t) {
    // First tick with time > t; its predecessor is the prevailing trade.
    auto it = std::upper_bound(ticks.begin(), ticks.end(), t,
                               [](int value, const PricePoint& p) { return value < p.time; });
    if (it == ticks.begin()) return std::nullopt;
    return std::prev(it)->price;
}

const char* to_string(ExcludeReason r) {
    switch (r) {
        case ExcludeReason::kNoTicks: return "no_ticks";
        case ExcludeReason::kNoOpeningPrice: return "no_opening_price";
        case ExcludeReason::kNoPriceByFirstMinute: return "no_price_by_first_minute";
    }
    return "unknown";
}

std::optional<ExcludeReason> day_exclusion(std::span<const PricePoint> ticks) {
    if (ticks.empty()) return ExcludeReason::kNoTicks;
    if (ticks.front().time > 0) return ExcludeReason::kNoOpeningPrice;
    return std::nullopt;
}

namespace {

// LOCF over an ascending grid in one sweep.
void sample_grid(std::span<const PricePoint> ticks, std::span<const int> offsets,
                 std::vector<long long>& out) {
    out.clear();
    out.reserve(offsets.size());
    size_t i = 0;
    long long last = 0;
    for (int t : offsets) {
        while (i < ticks.size() && ticks[i].time <= t) last = ticks[i++].price;
        out.push_back(last);
    }
}

} // namespace

std::optional<FiveMinuteReturns> build_five_minute_returns(
    std::string symbol, const Date& day, std::span<const PricePoint> ticks,
    const market::SessionSpec& session) {
    if (ticks.empty() || ticks.front().time > 0) return std::nullopt;

    const auto offsets = five_minute_offsets(session);
    std::vector<long long> prices;
    sample_grid(ticks, offsets, prices);

    FiveMinuteReturns result{std::move(symbol), day, {}};
    result.returns.reserve(prices.size() - 1);
    double prev_log = std::log(static_cast<double>(prices.front()));
    for (size_t k = 1; k < prices.size(); ++k) {
        double cur_log = std::log(static_cast<double>(prices[k]));
        result.returns.push_back(cur_log - prev_log);
        prev_log = cur_log;
    }
    return result;
}

std::optional<MinuteLogPriceVector> build_minute_vector(
    std::string symbol, const Date& day, std::span<const PricePoint> ticks,
    const market::SessionSpec& session) {
    if (ticks.empty() || ticks.front().time > 60) return std::nullopt;

    const auto offsets = minute_offsets(session);
    std::vector<long long> prices;
    sample_grid(ticks, offsets, prices);

    MinuteLogPriceVector result{std::move(symbol), day, {}};
    result.values.reserve(prices.size());
    for (long long p : prices) result.values.push_back(std::log(static_cast<double>(p)));
    return result;
}

} // namespace specvol::resample
