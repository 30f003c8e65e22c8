#include "specvol/volatility.hpp"

#include <algorithm>
#include <cmath>

#include "specvol/errors.hpp"

namespace specvol::vol {

double realized_variance(std::span<const double> returns) {
    double sum = 0.0;
    for (double r : returns) sum += r * r;
    return sum;
}

DailyRealizedVariance realized_variance(const resample::FiveMinuteReturns& r) {
    return {r.symbol, r.day, realized_variance(r.returns)};
}

PeriodVolatility period_volatility(std::string symbol, PeriodTag tag,
                                   std::span<const double> daily_sigma2) {
    if (daily_sigma2.empty())
        throw DataError("period volatility undefined: zero accepted days for " +
                        symbol + " (" + to_string(tag) + ")");
    double sum = 0.0;
    for (double s : daily_sigma2) sum += s;
    PeriodVolatility out;
    out.symbol = std::move(symbol);
    out.tag = tag;
    out.n_days = static_cast<int>(daily_sigma2.size());
    out.sigma_bar = std::sqrt(sum / static_cast<double>(daily_sigma2.size()));
    return out;
}

PeriodVolatility period_volatility(std::string symbol, PeriodTag tag,
                                   std::span<const DailyRealizedVariance> daily,
                                   std::span<const Date> period_days) {
    std::vector<double> selected;
    selected.reserve(period_days.size());
    for (const auto& rec : daily) {
        if (std::binary_search(period_days.begin(), period_days.end(), rec.day))
            selected.push_back(rec.sigma2);
    }
    return period_volatility(std::move(symbol), tag, selected);
}

std::optional<RvChangeRate> rv_change_rate(const PeriodVolatility& before,
                                           const PeriodVolatility& after) {
    if (before.sigma_bar <= 0.0 || after.sigma_bar <= 0.0) return std::nullopt;
    return RvChangeRate{before.symbol, std::log(after.sigma_bar / before.sigma_bar)};
}

} // namespace specvol::vol
