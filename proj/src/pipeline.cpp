#include "specvol/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <span>
#include <string_view>
#include <unordered_map>

#include "json.hpp"

#include "specvol/errors.hpp"
#include "specvol/event_study.hpp"
#include "specvol/market_data.hpp"
#include "specvol/parallel.hpp"
#include "specvol/resample.hpp"
#include "specvol/spectral.hpp"
#include "specvol/version.hpp"
#include "specvol/volatility.hpp"

namespace specvol::pipeline {

namespace {

// Sorted-range intersection size; both spans ascending and duplicate-free.
int count_common(std::span<const Date> a, std::span<const Date> b) {
    int n = 0;
    size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i] < b[j]) {
            ++i;
        } else if (b[j] < a[i]) {
            ++j;
        } else {
            ++n;
            ++i;
            ++j;
        }
    }
    return n;
}

struct StockWindowOutcome {
    bool participated = false;  // both periods had accepted days
    study::StockRvRow rv_row;
    study::StockSpectrumRows spectrum_row;
    bool rv_valid = false;  // rv finite, enters the cross-section
};

struct StockOutcome {
    std::vector<StockWindowOutcome> windows;
    std::vector<study::Exclusion> exclusions;
};

} // namespace

AnalyzeSummary run_analyze(const AnalyzeOptions& opt) {
    market::StudyConfig cfg = market::load_study_config(opt.config_path);
    const std::vector<Date> calendar = market::load_calendar(opt.calendar_path);

    std::vector<std::string> symbols = cfg.symbols;
    std::sort(symbols.begin(), symbols.end());
    for (size_t i = 1; i < symbols.size(); ++i)
        if (symbols[i] == symbols[i - 1])
            throw ConfigError("duplicate symbol in universe: " + symbols[i]);
    const int n_stocks = static_cast<int>(symbols.size());

    // Trading days inside at least one window, ascending.
    std::vector<Date> needed;
    for (const Date& d : calendar) {
        for (const auto& w : cfg.windows) {
            if (!(d < w.start) && !(w.end < d)) {
                needed.push_back(d);
                break;
            }
        }
    }
    if (needed.empty()) throw DataError("no calendar day falls inside any window");
    const int n_days = static_cast<int>(needed.size());

    const long long civil_base = to_civil_days(needed.front());
    const long long civil_span = to_civil_days(needed.back()) - civil_base + 1;
    std::vector<int> day_of_civil(static_cast<size_t>(civil_span), -1);
    for (int i = 0; i < n_days; ++i)
        day_of_civil[static_cast<size_t>(to_civil_days(needed[i]) - civil_base)] = i;

    // Before/after partitions per window, computed once.
    std::vector<market::DaySet> day_sets;
    day_sets.reserve(cfg.windows.size());
    for (const auto& w : cfg.windows)
        day_sets.push_back(market::split_days(calendar, w, cfg.event_date));

    std::unordered_map<std::string_view, int> stock_index;
    stock_index.reserve(symbols.size() * 2);
    for (int i = 0; i < n_stocks; ++i) stock_index.emplace(symbols[i], i);

    // Tick ingestion. Every tick of a universe symbol on a study day lands in
    // its stock-day cell; everything else is skipped. The one-entry cache
    // covers the common case of a file grouped by stock and day.
    std::vector<std::vector<resample::PricePoint>> cells(
        static_cast<size_t>(n_stocks) * static_cast<size_t>(n_days));
    size_t ticks_used = 0;
    {
        std::ifstream in(opt.ticks_path, std::ios::binary);
        if (!in) throw IoError("cannot open tick file: " + opt.ticks_path.string());
        std::string cached_symbol;
        Date cached_day{};
        long long cached_cell = -1;  // -1 empty cache, -2 cached skip
        bool cache_set = false;
        market::parse_tick_stream(
            in, cfg.session, market::SessionBounds::kStrict,
            [&](const market::Tick& t) {
                long long cell;
                if (cache_set && t.day == cached_day && t.symbol == cached_symbol) {
                    cell = cached_cell;
                } else {
                    cell = -2;
                    auto it = stock_index.find(std::string_view(t.symbol));
                    if (it != stock_index.end()) {
                        const long long cd = to_civil_days(t.day) - civil_base;
                        if (cd >= 0 && cd < civil_span &&
                            day_of_civil[static_cast<size_t>(cd)] >= 0) {
                            cell = static_cast<long long>(it->second) * n_days +
                                   day_of_civil[static_cast<size_t>(cd)];
                        }
                    }
                    cached_symbol = t.symbol;
                    cached_day = t.day;
                    cached_cell = cell;
                    cache_set = true;
                }
                if (cell < 0) return;
                cells[static_cast<size_t>(cell)].push_back({t.time, t.price});
                ++ticks_used;
            });
    }

    const spectral::DftPlan plan(cfg.session.length_minutes() - 1);

    // Per-stock pass: resample each day, aggregate each window, then free the
    // stock's ticks. Outcomes are slot-keyed so the assembly below never
    // depends on scheduling.
    std::vector<StockOutcome> outcomes(static_cast<size_t>(n_stocks));
    parallel_for(static_cast<size_t>(n_stocks), opt.threads, [&](size_t s) {
        StockOutcome& out = outcomes[s];
        std::vector<Date> accepted;
        std::vector<vol::DailyRealizedVariance> daily_rv;
        std::vector<spectral::AmplitudeVector> daily_amp;
        accepted.reserve(n_days);
        daily_rv.reserve(n_days);
        daily_amp.reserve(n_days);

        for (int d = 0; d < n_days; ++d) {
            auto& ticks = cells[s * static_cast<size_t>(n_days) + d];
            if (!std::is_sorted(ticks.begin(), ticks.end(),
                                [](const auto& x, const auto& y) { return x.time < y.time; }))
                std::stable_sort(ticks.begin(), ticks.end(),
                                 [](const auto& x, const auto& y) { return x.time < y.time; });

            if (auto reason = resample::day_exclusion(ticks)) {
                out.exclusions.push_back(
                    {symbols[s], needed[d], resample::to_string(*reason)});
                continue;
            }
            auto returns = resample::build_five_minute_returns(symbols[s], needed[d],
                                                               ticks, cfg.session);
            auto minute = resample::build_minute_vector(symbols[s], needed[d], ticks,
                                                        cfg.session);
            accepted.push_back(needed[d]);
            daily_rv.push_back(vol::realized_variance(*returns));
            daily_amp.push_back(
                spectral::amplitude_vector(symbols[s], needed[d],
                                           plan.transform(minute->values)));

            ticks.clear();
            ticks.shrink_to_fit();
        }

        out.windows.resize(cfg.windows.size());
        for (size_t v = 0; v < cfg.windows.size(); ++v) {
            StockWindowOutcome& wo = out.windows[v];
            const std::string& label = cfg.windows[v].label;
            const int n_before = count_common(accepted, day_sets[v].before);
            const int n_after = count_common(accepted, day_sets[v].after);
            if (n_before == 0 || n_after == 0) {
                if (n_before == 0)
                    out.exclusions.push_back(
                        {symbols[s], std::nullopt,
                         "no_accepted_days_before_in_" + label});
                if (n_after == 0)
                    out.exclusions.push_back(
                        {symbols[s], std::nullopt,
                         "no_accepted_days_after_in_" + label});
                continue;
            }

            auto vol_b = vol::period_volatility(symbols[s], vol::PeriodTag::kBefore,
                                                daily_rv, day_sets[v].before);
            auto vol_a = vol::period_volatility(symbols[s], vol::PeriodTag::kAfter,
                                                daily_rv, day_sets[v].after);
            auto amp_b = spectral::period_amplitude(symbols[s], vol::PeriodTag::kBefore,
                                                    daily_amp, day_sets[v].before);
            auto amp_a = spectral::period_amplitude(symbols[s], vol::PeriodTag::kAfter,
                                                    daily_amp, day_sets[v].after);

            wo.participated = true;
            wo.rv_row.symbol = symbols[s];
            wo.rv_row.sigma_bar_before = vol_b.sigma_bar;
            wo.rv_row.n_before = vol_b.n_days;
            wo.rv_row.sigma_bar_after = vol_a.sigma_bar;
            wo.rv_row.n_after = vol_a.n_days;
            if (auto rv = vol::rv_change_rate(vol_b, vol_a)) {
                wo.rv_row.rv = rv->rv;
                wo.rv_valid = true;
            } else {
                wo.rv_row.rv = std::numeric_limits<double>::quiet_NaN();
                out.exclusions.push_back(
                    {symbols[s], std::nullopt, "degenerate_rv_in_" + label});
            }

            std::vector<int> degenerate_ws;
            auto rates = spectral::spectral_change_rate(amp_b, amp_a, &degenerate_ws);
            for (int w : degenerate_ws)
                out.exclusions.push_back(
                    {symbols[s], std::nullopt,
                     "degenerate_w" + std::to_string(w) + "_in_" + label});
            wo.spectrum_row.symbol = symbols[s];
            wo.spectrum_row.c_bar_before = std::move(amp_b.c_bar);
            wo.spectrum_row.c_bar_after = std::move(amp_a.c_bar);
            wo.spectrum_row.f = std::move(rates.f);
        }
    });

    // Assembly in symbol order; cross-sections and profiles per window.
    study::ReportBundle bundle;
    bundle.windows.resize(cfg.windows.size());
    for (size_t v = 0; v < cfg.windows.size(); ++v) {
        const std::string& label = cfg.windows[v].label;
        study::WindowReport& report = bundle.windows[v];
        report.label = label;

        std::vector<double> rv_values;
        std::vector<spectral::SpectralChangeRate> rate_set;
        for (int s = 0; s < n_stocks; ++s) {
            const StockWindowOutcome& wo = outcomes[s].windows[v];
            if (!wo.participated) continue;
            report.rv_rows.push_back(wo.rv_row);
            report.spectrum_rows.push_back(wo.spectrum_row);
            if (wo.rv_valid) rv_values.push_back(wo.rv_row.rv);
            rate_set.push_back({wo.spectrum_row.symbol, wo.spectrum_row.f});
        }
        bundle.summaries.push_back(study::cross_section(rv_values, label));
        bundle.profiles.push_back(study::frequency_profile(rate_set, label));
    }

    for (const auto& out : outcomes)
        bundle.exclusions.insert(bundle.exclusions.end(), out.exclusions.begin(),
                                 out.exclusions.end());
    std::sort(bundle.exclusions.begin(), bundle.exclusions.end(),
              [](const study::Exclusion& x, const study::Exclusion& y) {
                  if (x.symbol != y.symbol) return x.symbol < y.symbol;
                  if (x.day.has_value() != y.day.has_value()) return x.day.has_value();
                  if (x.day.has_value() && x.day != y.day) return *x.day < *y.day;
                  return x.reason < y.reason;
              });

    AnalyzeSummary summary;
    summary.stocks = n_stocks;
    summary.days = n_days;
    summary.exclusions = bundle.exclusions.size();
    summary.ticks_used = ticks_used;
    summary.files = study::assemble_report(bundle, opt.out_dir);
    return summary;
}

void write_manifest(const std::filesystem::path& path, const ManifestInfo& info) {
    nlohmann::json j;
    j["config"] = info.config.string();
    nlohmann::json inputs = nlohmann::json::array();
    for (const auto& p : info.inputs) inputs.push_back(p.string());
    j["inputs"] = inputs;
    j["out_dir"] = info.out_dir.string();
    j["version"] = kVersion;
    j["duration_seconds"] = info.duration_seconds;
    j["counts"] = {{"stocks", info.stocks},
                   {"days", info.days},
                   {"exclusions", info.exclusions}};

    std::ofstream out(path);
    if (!out) throw IoError("cannot open for writing: " + path.string());
    out << j.dump(2) << '\n';
    if (!out) throw IoError("failed writing: " + path.string());
}

} // namespace specvol::pipeline
