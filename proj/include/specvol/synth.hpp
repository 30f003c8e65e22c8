#pragma once

#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "specvol/date.hpp"
#include "specvol/market_data.hpp"
#include "specvol/resample.hpp"

namespace specvol::synth {

// Sinusoidal component added to the latent log price: amplitude (log-price
// units) at DFT frequency w, switching at the event date.
struct Injection {
    int w = 0;
    double amp_before = 0.0;
    double amp_after = 0.0;
};

struct SynthConfig {
    long long seed = 0;
    int n_stocks = 0;
    int days_before = 0;
    int days_after = 0;
    Date event_date;
    double vol_before = 0.0;  // per-minute log-return standard deviation
    double vol_after = 0.0;
    std::vector<Injection> injected;
    double trade_rate = 0.0;  // mean trades per minute
    std::optional<double> limit_pct;
    long long base_price = 0;
    market::SessionSpec session;

    void validate() const;
};

// Keys: seed, n_stocks, days_before, days_after, event_date, vol_before,
// vol_after, trade_rate, base_price; optional limit_pct, session.open/close,
// inject.N.w, inject.N.amp_before, inject.N.amp_after.
SynthConfig load_synth_config(const std::filesystem::path& path);

// Clamps price into [reference*(1-limit_pct), reference*(1+limit_pct)].
double apply_price_limit(double price, double reference_price, double limit_pct);

// Consecutive weekdays: days_before of them strictly before the event date,
// then days_after starting at the event date (or the next weekday).
std::vector<Date> make_calendar(const Date& event_date, int days_before, int days_after);

// Symbols "S0001".."S<n>" in universe order.
std::vector<std::string> make_symbols(int n_stocks);

struct DayTicks {
    std::vector<resample::PricePoint> ticks;
    std::vector<long long> quantities;  // parallel to ticks
    double ref_latent_log = 0.0;        // latent log price the clamp referenced
    double final_latent_log = 0.0;      // carried into the next day
};

// One stock-day: a latent log-price path with per-minute Gaussian steps at
// the regime's vol plus the injected sinusoids (fresh random phase each day),
// emitted as Poisson-arrival ticks. Trades during minute m carry the price
// the path reaches at mark m, so minute-grid resampling downstream recovers
// the path values exactly on every minute that traded. A tick at offset 0 is
// always present, so every generated stock-day satisfies the resampling
// preconditions. When a
// price limit is set, emitted prices are clamped to the band around the
// previous day's final latent price; the latent path itself evolves freely.
// `day_index` is the global calendar index and selects the RNG stream; the
// regime is `after` iff the day's date >= event_date.
DayTicks simulate_day(const SynthConfig& cfg, int stock_index, int day_index,
                      const Date& day, double start_latent_log);

struct GroundTruthRow {
    std::string symbol;
    double true_rv = 0.0;               // NaN when either vol is zero
    std::vector<Injection> injections;  // per-frequency true F = ln(ampA/ampB)
};

struct DatasetPaths {
    std::filesystem::path ticks;
    std::filesystem::path calendar;
    std::filesystem::path symbols;
    std::filesystem::path truth;
    std::filesystem::path study_config;
};

struct DatasetStats {
    size_t ticks_written = 0;
    int stocks = 0;
    int days = 0;
};

// Writes ticks.csv (grouped by symbol, then day, ascending time),
// calendar.txt, symbols.txt, truth.csv and a ready-to-run study.cfg into
// `out_dir`. Output bytes depend only on the config: per-stock-day RNG
// streams make generation order irrelevant, and the writer is single-pass in
// symbol order.
DatasetPaths generate_dataset(const SynthConfig& cfg,
                              const std::filesystem::path& out_dir, int threads,
                              DatasetStats* stats = nullptr);

} // namespace specvol::synth
