#pragma once

#include <optional>
#include <span>
#include <string>

#include "specvol/date.hpp"
#include "specvol/resample.hpp"

namespace specvol::vol {

enum class PeriodTag { kBefore, kAfter };

inline const char* to_string(PeriodTag t) {
    return t == PeriodTag::kBefore ? "before" : "after";
}

// Daily realized variance: sum of the squared five-minute log returns.
struct DailyRealizedVariance {
    std::string symbol;
    Date day;
    double sigma2 = 0.0;
};

// Root-mean-square of daily realized variance over a period's accepted days.
struct PeriodVolatility {
    std::string symbol;
    PeriodTag tag = PeriodTag::kBefore;
    double sigma_bar = 0.0;
    int n_days = 0;
};

// Per-stock change rate: ln(sigma_bar_after / sigma_bar_before).
struct RvChangeRate {
    std::string symbol;
    double rv = 0.0;
};

double realized_variance(std::span<const double> returns);
DailyRealizedVariance realized_variance(const resample::FiveMinuteReturns& r);

// Mean of sigma2 over the period's accepted days, then the square root.
// Throws DataError when the day set is empty (undefined aggregate).
PeriodVolatility period_volatility(std::string symbol, PeriodTag tag,
                                   std::span<const double> daily_sigma2);

// Selects the daily records whose day belongs to `period_days` (both sorted
// ascending) and aggregates them.
PeriodVolatility period_volatility(std::string symbol, PeriodTag tag,
                                   std::span<const DailyRealizedVariance> daily,
                                   std::span<const Date> period_days);

// nullopt marks a degenerate stock (either period volatility is zero);
// the caller excludes it from the cross-section and reports it.
std::optional<RvChangeRate> rv_change_rate(const PeriodVolatility& before,
                                           const PeriodVolatility& after);

} // namespace specvol::vol
