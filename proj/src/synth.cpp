#include "specvol/synth.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <numbers>

#include "specvol/errors.hpp"
#include "specvol/kv_config.hpp"
#include "specvol/parallel.hpp"
#include "specvol/rng.hpp"
#include "specvol/text.hpp"

namespace specvol::synth {

void SynthConfig::validate() const {
    session.validate();
    if (session.length_minutes() % 10 != 0)
        throw ConfigError("session length must be a multiple of 10 minutes; got " +
                          std::to_string(session.length_minutes()));
    if (n_stocks < 1 || n_stocks > 9999)
        throw ConfigError("n_stocks must be in [1, 9999]");
    if (days_before < 1 || days_after < 1)
        throw ConfigError("days_before and days_after must be positive");
    if (!event_date.valid())
        throw ConfigError("event_date is not a valid date");
    if (vol_before < 0.0 || vol_after < 0.0)
        throw ConfigError("vol_before and vol_after must be non-negative");
    if (!(trade_rate > 0.0))
        throw ConfigError("trade_rate must be positive");
    if (base_price < 1)
        throw ConfigError("base_price must be a positive integer price");
    if (limit_pct && !(*limit_pct > 0.0 && *limit_pct <= 1.0))
        throw ConfigError("limit_pct must be in (0, 1]");
    const int w_max = (session.length_minutes() - 2) / 2;
    for (const auto& inj : injected) {
        if (inj.w < 1 || inj.w > w_max)
            throw ConfigError("injected frequency w = " + std::to_string(inj.w) +
                              " outside 1.." + std::to_string(w_max));
        if (inj.amp_before < 0.0 || inj.amp_after < 0.0)
            throw ConfigError("injected amplitudes must be non-negative");
    }
}

SynthConfig load_synth_config(const std::filesystem::path& path) {
    KvConfig cfg = KvConfig::from_file(path);
    SynthConfig out;
    out.seed = cfg.get_int("seed");
    out.n_stocks = static_cast<int>(cfg.get_int("n_stocks"));
    out.days_before = static_cast<int>(cfg.get_int("days_before"));
    out.days_after = static_cast<int>(cfg.get_int("days_after"));
    out.event_date = cfg.get_date("event_date");
    out.vol_before = cfg.get_double("vol_before");
    out.vol_after = cfg.get_double("vol_after");
    out.trade_rate = cfg.get_double("trade_rate");
    out.base_price = cfg.get_int("base_price");
    out.limit_pct = cfg.opt_double("limit_pct");

    auto open = cfg.opt_string("session.open");
    auto close = cfg.opt_string("session.close");
    if (open.has_value() != close.has_value())
        throw ConfigError(cfg.origin() + ": session.open and session.close must be set together");
    if (open) out.session = market::SessionSpec::from_strings(*open, *close);

    std::vector<long long> indices;
    for (const auto& key : cfg.keys_with_prefix("inject.")) {
        auto rest = std::string_view(key).substr(7);
        auto dot = rest.find('.');
        std::optional<long long> n;
        if (dot != std::string_view::npos) n = parse_int(rest.substr(0, dot));
        if (!n)
            throw ConfigError(cfg.origin() + ": malformed injection key `" + key + "`");
        if (std::find(indices.begin(), indices.end(), *n) == indices.end())
            indices.push_back(*n);
    }
    std::sort(indices.begin(), indices.end());
    for (long long n : indices) {
        const std::string base = "inject." + std::to_string(n) + ".";
        Injection inj;
        inj.w = static_cast<int>(cfg.get_int(base + "w"));
        inj.amp_before = cfg.get_double(base + "amp_before");
        inj.amp_after = cfg.get_double(base + "amp_after");
        out.injected.push_back(inj);
    }

    cfg.reject_unknown_keys();
    out.validate();
    return out;
}

double apply_price_limit(double price, double reference_price, double limit_pct) {
    const double lo = reference_price * (1.0 - limit_pct);
    const double hi = reference_price * (1.0 + limit_pct);
    return std::min(std::max(price, lo), hi);
}

std::vector<Date> make_calendar(const Date& event_date, int days_before, int days_after) {
    std::vector<Date> days;
    days.reserve(static_cast<size_t>(days_before) + days_after);

    Date d = prev_calendar_day(event_date);
    std::vector<Date> before;
    before.reserve(days_before);
    while (static_cast<int>(before.size()) < days_before) {
        if (is_weekday(d)) before.push_back(d);
        d = prev_calendar_day(d);
    }
    days.assign(before.rbegin(), before.rend());

    d = event_date;
    int added = 0;
    while (added < days_after) {
        if (is_weekday(d)) {
            days.push_back(d);
            ++added;
        }
        d = next_calendar_day(d);
    }
    return days;
}

std::vector<std::string> make_symbols(int n_stocks) {
    std::vector<std::string> symbols;
    symbols.reserve(n_stocks);
    char buf[16];
    for (int i = 1; i <= n_stocks; ++i) {
        std::snprintf(buf, sizeof(buf), "S%04d", i);
        symbols.emplace_back(buf);
    }
    return symbols;
}

DayTicks simulate_day(const SynthConfig& cfg, int stock_index, int day_index,
                      const Date& day, double start_latent_log) {
    CounterRng rng = CounterRng::for_stock_day(static_cast<std::uint64_t>(cfg.seed),
                                               static_cast<std::uint32_t>(stock_index),
                                               static_cast<std::uint32_t>(day_index));
    const bool after = !(day < cfg.event_date);
    const double vol = after ? cfg.vol_after : cfg.vol_before;
    const int minutes = cfg.session.length_minutes();
    const int len_s = cfg.session.length_seconds();
    const int dft_points = minutes - 1;  // 349 for the default session

    // Per-day random phases, drawn before the path so the draw layout is
    // independent of the arrival sequence.
    std::vector<double> phases(cfg.injected.size());
    for (auto& phi : phases) phi = 2.0 * std::numbers::pi * rng.uniform();

    // Latent GBM state at minute marks 0..minutes.
    std::vector<double> latent(minutes + 1);
    latent[0] = start_latent_log;
    for (int j = 1; j <= minutes; ++j) latent[j] = latent[j - 1] + vol * rng.normal();

    // Observable log price: latent plus the injected oscillations on the DFT
    // basis (period = minute-vector length, matching the analysis grid).
    std::vector<double> observed(minutes + 1);
    for (int j = 0; j <= minutes; ++j) {
        double s = latent[j];
        for (size_t k = 0; k < cfg.injected.size(); ++k) {
            const auto& inj = cfg.injected[k];
            const double amp = after ? inj.amp_after : inj.amp_before;
            s += amp * std::cos(2.0 * std::numbers::pi * inj.w * j / dft_points +
                                phases[k]);
        }
        observed[j] = s;
    }

    const double ref_latent = start_latent_log;
    const double ref_price = std::exp(ref_latent);
    long long int_lo = 1, int_hi = std::numeric_limits<long long>::max();
    if (cfg.limit_pct) {
        int_lo = std::max<long long>(
            1, static_cast<long long>(std::ceil(ref_price * (1.0 - *cfg.limit_pct))));
        int_hi = std::max<long long>(
            int_lo, static_cast<long long>(std::floor(ref_price * (1.0 + *cfg.limit_pct))));
    }

    DayTicks out;
    out.ref_latent_log = ref_latent;
    out.final_latent_log = latent[minutes];

    auto emit = [&](int t) {
        // Trades during minute m (seconds 60(m-1)+1 .. 60m) execute at the
        // price the path reaches at mark m; the opening trade carries mark 0.
        // A last-observation sample taken at any minute mark therefore equals
        // the path value at that mark whenever the minute traded at all, so
        // injected oscillations survive one-minute resampling with their
        // phases intact instead of leaking across frequencies.
        const int j = (t + 59) / 60;
        double price = std::exp(observed[j]);
        if (cfg.limit_pct) price = apply_price_limit(price, ref_price, *cfg.limit_pct);
        long long p = std::llround(price);
        p = std::min(std::max(p, int_lo), int_hi);
        out.ticks.push_back({t, p});
        out.quantities.push_back(rng.uniform_int(1, 100));
    };

    emit(0);  // the session-open trade every stock-day is guaranteed to have
    const double rate_per_sec = cfg.trade_rate / 60.0;
    double t = rng.exponential(rate_per_sec);
    while (t <= static_cast<double>(len_s)) {
        emit(static_cast<int>(t));
        t += rng.exponential(rate_per_sec);
    }
    return out;
}

DatasetPaths generate_dataset(const SynthConfig& cfg,
                              const std::filesystem::path& out_dir, int threads,
                              DatasetStats* stats) {
    cfg.validate();
    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    if (ec) throw IoError("cannot create output directory: " + out_dir.string());

    const auto calendar = make_calendar(cfg.event_date, cfg.days_before, cfg.days_after);
    const auto symbols = make_symbols(cfg.n_stocks);

    DatasetPaths paths;
    paths.ticks = out_dir / "ticks.csv";
    paths.calendar = out_dir / "calendar.txt";
    paths.symbols = out_dir / "symbols.txt";
    paths.truth = out_dir / "truth.csv";
    paths.study_config = out_dir / "study.cfg";

    // Each stock renders its whole tick block independently; blocks are
    // concatenated in symbol order so the bytes never depend on scheduling.
    std::vector<std::string> blocks(symbols.size());
    std::vector<size_t> tick_counts(symbols.size(), 0);
    const double base_log = std::log(static_cast<double>(cfg.base_price));
    std::vector<Date> day_dates = calendar;

    parallel_for(symbols.size(), threads, [&](size_t s) {
        std::string& block = blocks[s];
        block.reserve(1 << 16);
        double latent = base_log;
        for (size_t d = 0; d < day_dates.size(); ++d) {
            DayTicks day = simulate_day(cfg, static_cast<int>(s), static_cast<int>(d),
                                        day_dates[d], latent);
            latent = day.final_latent_log;
            const std::string day_str = to_string(day_dates[d]);
            for (size_t i = 0; i < day.ticks.size(); ++i) {
                block += symbols[s];
                block += ',';
                block += day_str;
                block += ',';
                append_int(block, day.ticks[i].time);
                block += ',';
                append_int(block, day.ticks[i].price);
                block += ',';
                append_int(block, day.quantities[i]);
                block += '\n';
            }
            tick_counts[s] += day.ticks.size();
        }
    });

    {
        std::ofstream out(paths.ticks);
        if (!out) throw IoError("cannot open for writing: " + paths.ticks.string());
        out << "symbol,day,time_seconds,price,quantity\n";
        for (auto& block : blocks) {
            out.write(block.data(), static_cast<std::streamsize>(block.size()));
            block.clear();
            block.shrink_to_fit();
        }
        if (!out) throw IoError("failed writing: " + paths.ticks.string());
    }

    {
        std::ofstream out(paths.calendar);
        if (!out) throw IoError("cannot open for writing: " + paths.calendar.string());
        market::write_calendar(out, calendar);
        if (!out) throw IoError("failed writing: " + paths.calendar.string());
    }

    {
        std::ofstream out(paths.symbols);
        if (!out) throw IoError("cannot open for writing: " + paths.symbols.string());
        for (const auto& sym : symbols) out << sym << '\n';
        if (!out) throw IoError("failed writing: " + paths.symbols.string());
    }

    {
        std::ofstream out(paths.truth);
        if (!out) throw IoError("cannot open for writing: " + paths.truth.string());
        out << "symbol,true_rv,true_f_w_list\n";
        std::string buf;
        const double true_rv = (cfg.vol_before > 0.0 && cfg.vol_after > 0.0)
                                   ? std::log(cfg.vol_after / cfg.vol_before)
                                   : std::numeric_limits<double>::quiet_NaN();
        std::string f_list;
        for (size_t k = 0; k < cfg.injected.size(); ++k) {
            const auto& inj = cfg.injected[k];
            if (k > 0) f_list += ';';
            f_list += 'w';
            append_int(f_list, inj.w);
            f_list += '=';
            const double tf = (inj.amp_before > 0.0 && inj.amp_after > 0.0)
                                  ? std::log(inj.amp_after / inj.amp_before)
                                  : std::numeric_limits<double>::quiet_NaN();
            append_double(f_list, tf);
        }
        for (const auto& sym : symbols) {
            buf += sym;
            buf += ',';
            append_double(buf, true_rv);
            buf += ',';
            buf += f_list;
            buf += '\n';
        }
        out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
        if (!out) throw IoError("failed writing: " + paths.truth.string());
    }

    {
        std::ofstream out(paths.study_config);
        if (!out) throw IoError("cannot open for writing: " + paths.study_config.string());
        char clock[16];
        out << "event_date = " << to_string(cfg.event_date) << '\n';
        std::snprintf(clock, sizeof(clock), "%02d:%02d", cfg.session.open_minutes / 60,
                      cfg.session.open_minutes % 60);
        out << "session.open = " << clock << '\n';
        std::snprintf(clock, sizeof(clock), "%02d:%02d", cfg.session.close_minutes / 60,
                      cfg.session.close_minutes % 60);
        out << "session.close = " << clock << '\n';
        out << "symbols_file = symbols.txt\n";
        out << "window.1.start = " << to_string(calendar.front()) << '\n';
        out << "window.1.end = " << to_string(calendar.back()) << '\n';
        out << "window.1.label = full\n";
        if (!out) throw IoError("failed writing: " + paths.study_config.string());
    }

    if (stats) {
        stats->ticks_written = 0;
        for (size_t c : tick_counts) stats->ticks_written += c;
        stats->stocks = cfg.n_stocks;
        stats->days = static_cast<int>(calendar.size());
    }
    return paths;
}

} // namespace specvol::synth
