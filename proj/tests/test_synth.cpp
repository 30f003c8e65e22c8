#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <string>
#include <vector>

#include "specvol/errors.hpp"
#include "specvol/market_data.hpp"
#include "specvol/resample.hpp"
#include "specvol/spectral.hpp"
#include "specvol/synth.hpp"

#include "oracles.hpp"

using namespace specvol;
using namespace specvol::synth;
using oracles::error_message;

namespace {

SynthConfig small_config() {
    SynthConfig cfg;
    cfg.seed = 12345;
    cfg.n_stocks = 2;
    cfg.days_before = 2;
    cfg.days_after = 2;
    cfg.event_date = Date{2015, 6, 15};
    cfg.vol_before = 0.001;
    cfg.vol_after = 0.0011;
    cfg.trade_rate = 2.0;
    cfg.base_price = 10000;
    return cfg;
}

std::string config_text(const std::string& extra = "",
                        const std::string& drop_key = "") {
    std::string base;
    auto add = [&](const std::string& k, const std::string& v) {
        if (k == drop_key) return;
        base += k + " = " + v + "\n";
    };
    add("seed", "7");
    add("n_stocks", "3");
    add("days_before", "4");
    add("days_after", "5");
    add("event_date", "2015-06-15");
    add("vol_before", "0.001");
    add("vol_after", "0.002");
    add("trade_rate", "1.5");
    add("base_price", "20000");
    return base + extra;
}

} // namespace

TEST_CASE("configuration validation rejects out-of-range fields") {
    CHECK_NOTHROW(small_config().validate());

    auto cfg = small_config();
    cfg.n_stocks = 0;
    CHECK_THROWS_AS(cfg.validate(), ConfigError);

    cfg = small_config();
    cfg.n_stocks = 10000;  // symbol format holds four digits
    CHECK_THROWS_AS(cfg.validate(), ConfigError);

    cfg = small_config();
    cfg.days_before = 0;
    CHECK_THROWS_AS(cfg.validate(), ConfigError);

    cfg = small_config();
    cfg.vol_before = -0.1;
    CHECK_THROWS_AS(cfg.validate(), ConfigError);

    cfg = small_config();
    cfg.trade_rate = 0.0;
    CHECK_THROWS_AS(cfg.validate(), ConfigError);

    cfg = small_config();
    cfg.base_price = 0;
    CHECK_THROWS_AS(cfg.validate(), ConfigError);

    cfg = small_config();
    cfg.limit_pct = 0.0;
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
    cfg.limit_pct = 1.5;
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
    cfg.limit_pct = 1.0;
    CHECK_NOTHROW(cfg.validate());

    // Injection frequencies must sit strictly inside the resolvable band.
    cfg = small_config();
    cfg.injected.push_back({0, 0.01, 0.01});
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
    cfg.injected = {{174, 0.01, 0.01}};
    CHECK_NOTHROW(cfg.validate());
    cfg.injected = {{175, 0.01, 0.01}};
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
    cfg.injected = {{3, -0.01, 0.01}};
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
}

TEST_CASE("configs load from key-value files") {
    auto dir = oracles::fresh_dir("synthcfg");
    auto path = dir / "synth.cfg";

    oracles::write_file(path, config_text("inject.2.w = 7\n"
                                          "inject.2.amp_before = 0.01\n"
                                          "inject.2.amp_after = 0.02\n"
                                          "inject.10.w = 3\n"
                                          "inject.10.amp_before = 0.05\n"
                                          "inject.10.amp_after = 0.05\n"
                                          "limit_pct = 0.15\n"));
    auto cfg = load_synth_config(path);
    CHECK(cfg.seed == 7);
    CHECK(cfg.n_stocks == 3);
    CHECK(cfg.days_before == 4);
    CHECK(cfg.days_after == 5);
    CHECK(cfg.event_date == Date{2015, 6, 15});
    CHECK(cfg.vol_before == 0.001);
    CHECK(cfg.vol_after == 0.002);
    CHECK(cfg.trade_rate == 1.5);
    CHECK(cfg.base_price == 20000);
    REQUIRE(cfg.limit_pct.has_value());
    CHECK(*cfg.limit_pct == 0.15);
    // Groups come back in numeric order of the group id.
    REQUIRE(cfg.injected.size() == 2);
    CHECK(cfg.injected[0].w == 7);
    CHECK(cfg.injected[0].amp_after == 0.02);
    CHECK(cfg.injected[1].w == 3);
    CHECK(cfg.injected[1].amp_before == 0.05);
    // Defaults: no limit keys means no clamping, default session 09:00-14:50.
    CHECK(cfg.session.open_minutes == 9 * 60);
    CHECK(cfg.session.close_minutes == 14 * 60 + 50);

    oracles::write_file(path, config_text("", "seed"));
    CHECK(error_message([&] { load_synth_config(path); }).find("seed") !=
          std::string::npos);

    oracles::write_file(path, config_text("mystery = 1\n"));
    CHECK(error_message([&] { load_synth_config(path); }).find("mystery") !=
          std::string::npos);

    // An incomplete injection group is an error, not a silent default.
    oracles::write_file(path, config_text("inject.1.w = 7\n"));
    CHECK_THROWS_AS(load_synth_config(path), ConfigError);

    // Custom sessions load; open and close must come as a pair.
    oracles::write_file(path, config_text("session.open = 10:00\n"
                                          "session.close = 15:10\n"));
    CHECK(load_synth_config(path).session.length_minutes() == 310);
    oracles::write_file(path, config_text("session.open = 10:00\n"));
    CHECK_THROWS_AS(load_synth_config(path), ConfigError);
}

TEST_CASE("the price limit clamp reproduces its documented examples") {
    CHECK(apply_price_limit(13500.0, 10000.0, 0.30) == 13000.0);
    CHECK(apply_price_limit(10500.0, 10000.0, 0.15) == 10500.0);
    CHECK(apply_price_limit(6500.0, 10000.0, 0.30) == 7000.0);
}

TEST_CASE("the clamp is idempotent and bounded") {
    oracles::TestRng rng(17);
    for (int i = 0; i < 2000; ++i) {
        const double ref = rng.real(100.0, 100000.0);
        const double pct = rng.real(0.01, 1.0);
        const double p = rng.real(0.1, 250000.0);
        const double c = apply_price_limit(p, ref, pct);
        CHECK(c >= ref * (1.0 - pct) - 1e-9);
        CHECK(c <= ref * (1.0 + pct) + 1e-9);
        CHECK(apply_price_limit(c, ref, pct) == c);
    }
}

TEST_CASE("synthetic calendars wrap weekends around the event date") {
    // 2015-06-15 is a Monday, so the three prior weekdays skip the weekend.
    auto cal = make_calendar(Date{2015, 6, 15}, 3, 2);
    REQUIRE(cal.size() == 5);
    CHECK(cal[0] == Date{2015, 6, 10});
    CHECK(cal[1] == Date{2015, 6, 11});
    CHECK(cal[2] == Date{2015, 6, 12});
    CHECK(cal[3] == Date{2015, 6, 15});
    CHECK(cal[4] == Date{2015, 6, 16});

    // A weekend event date snaps forward to Monday.
    auto snapped = make_calendar(Date{2015, 6, 13}, 1, 1);
    CHECK(snapped[0] == Date{2015, 6, 12});
    CHECK(snapped[1] == Date{2015, 6, 15});

    for (int n = 1; n < 30; ++n) {
        auto c = make_calendar(Date{2016, 2, 29}, n, n);
        CHECK(c.size() == static_cast<size_t>(2 * n));
        CHECK(std::is_sorted(c.begin(), c.end()));
        for (const auto& d : c) CHECK(is_weekday(d));
        CHECK(c[static_cast<size_t>(n - 1)] < Date{2016, 2, 29});
        CHECK_FALSE(c[static_cast<size_t>(n)] < Date{2016, 2, 29});
    }
}

TEST_CASE("symbols are four-digit and ordered") {
    auto symbols = make_symbols(3);
    REQUIRE(symbols.size() == 3);
    CHECK(symbols[0] == "S0001");
    CHECK(symbols[1] == "S0002");
    CHECK(symbols[2] == "S0003");
    auto many = make_symbols(1200);
    CHECK(many.back() == "S1200");
    CHECK(std::is_sorted(many.begin(), many.end()));
}

TEST_CASE("every simulated day opens with a tick at offset zero") {
    auto cfg = small_config();
    cfg.trade_rate = 0.05;  // sparse enough that offset 0 is unlikely by chance
    for (int d = 0; d < 20; ++d) {
        auto day = simulate_day(cfg, 1, d, Date{2015, 6, 15}, std::log(10000.0));
        REQUIRE_FALSE(day.ticks.empty());
        CHECK(day.ticks.front().time == 0);
        CHECK(std::is_sorted(day.ticks.begin(), day.ticks.end(),
                             [](const auto& a, const auto& b) {
                                 return a.time < b.time;
                             }));
        CHECK(day.ticks.back().time <= cfg.session.length_seconds());
        CHECK(day.quantities.size() == day.ticks.size());
        for (long long q : day.quantities) {
            CHECK(q >= 1);
            CHECK(q <= 100);
        }
        for (const auto& t : day.ticks) CHECK(t.price >= 1);
    }
}

TEST_CASE("zero volatility with no injections pins the price") {
    auto cfg = small_config();
    cfg.vol_before = 0.0;
    cfg.vol_after = 0.0;
    cfg.trade_rate = 5.0;
    auto day = simulate_day(cfg, 0, 3, Date{2015, 6, 10}, std::log(10000.0));
    for (const auto& t : day.ticks) CHECK(t.price == 10000);
    CHECK(day.final_latent_log == std::log(10000.0));
}

TEST_CASE("a pure injected sinusoid comes back at its own frequency") {
    auto cfg = small_config();
    cfg.vol_before = 0.0;
    cfg.vol_after = 0.0;
    cfg.base_price = 1000000;  // keeps integer rounding noise ~1e-6 in logs
    cfg.trade_rate = 30.0;     // ~1 tick per 2 seconds: every minute filled
    const double amp = 0.01;
    cfg.injected = {{9, amp, amp}};

    spectral::DftPlan plan(cfg.session.length_minutes() - 1);
    int days_checked = 0;
    for (int d = 0; d < 8; ++d) {
        auto day = simulate_day(cfg, 2, d, Date{2015, 6, 10},
                                std::log(static_cast<double>(cfg.base_price)));
        auto vec = resample::build_minute_vector("S0003", Date{2015, 6, 10},
                                                 day.ticks, cfg.session);
        REQUIRE(vec.has_value());
        auto coeffs = plan.transform(vec->values);
        auto ampl = spectral::amplitude_vector("S0003", Date{2015, 6, 10}, coeffs);
        // The sampled phase and integer prices perturb the peak slightly.
        CHECK(ampl.c[8] == doctest::Approx(amp).epsilon(0.05));
        for (size_t w = 0; w < ampl.c.size(); ++w) {
            if (w != 8) CHECK(ampl.c[w] < amp * 0.05);
        }
        ++days_checked;
    }
    CHECK(days_checked == 8);
}

TEST_CASE("simulated days replay exactly and differ across keys") {
    auto cfg = small_config();
    auto a = simulate_day(cfg, 1, 2, Date{2015, 6, 11}, std::log(10000.0));
    auto b = simulate_day(cfg, 1, 2, Date{2015, 6, 11}, std::log(10000.0));
    CHECK(a.ticks == b.ticks);
    CHECK(a.quantities == b.quantities);
    CHECK(a.final_latent_log == b.final_latent_log);

    auto c = simulate_day(cfg, 2, 2, Date{2015, 6, 11}, std::log(10000.0));
    CHECK_FALSE(a.ticks == c.ticks);
    auto d = simulate_day(cfg, 1, 3, Date{2015, 6, 11}, std::log(10000.0));
    CHECK_FALSE(a.ticks == d.ticks);
}

TEST_CASE("a full-width limit band never binds") {
    auto cfg = small_config();
    auto open = simulate_day(cfg, 0, 1, Date{2015, 6, 11}, std::log(10000.0));
    cfg.limit_pct = 1.0;  // band [0, 2*ref] can clamp nothing at this vol
    auto limited = simulate_day(cfg, 0, 1, Date{2015, 6, 11}, std::log(10000.0));
    CHECK(open.ticks == limited.ticks);
}

TEST_CASE("a tight limit keeps every tick inside the band") {
    auto cfg = small_config();
    cfg.vol_before = 0.02;  // wild per-minute moves force the clamp to engage
    cfg.vol_after = 0.02;
    cfg.limit_pct = 0.05;
    cfg.trade_rate = 10.0;
    const double ref = 10000.0;
    int clamped_days = 0;
    for (int d = 0; d < 10; ++d) {
        auto day = simulate_day(cfg, 0, d, Date{2015, 6, 10}, std::log(ref));
        CHECK(day.ref_latent_log == std::log(ref));
        bool touched = false;
        for (const auto& t : day.ticks) {
            CHECK(static_cast<double>(t.price) >= std::ceil(ref * 0.95));
            CHECK(static_cast<double>(t.price) <= std::floor(ref * 1.05));
            touched = touched || t.price == 9500 || t.price == 10500;
        }
        clamped_days += touched;
    }
    // At 2% per-minute vol a 5% band is hit essentially every day.
    CHECK(clamped_days >= 8);
}

TEST_CASE("generated datasets are byte-identical across runs and threads") {
    auto cfg = small_config();
    cfg.injected = {{5, 0.01, 0.02}};
    auto dir1 = oracles::fresh_dir("synthgen1");
    auto dir2 = oracles::fresh_dir("synthgen2");
    DatasetStats stats1, stats2;
    auto paths1 = generate_dataset(cfg, dir1, 1, &stats1);
    auto paths2 = generate_dataset(cfg, dir2, 3, &stats2);

    CHECK(stats1.ticks_written == stats2.ticks_written);
    CHECK(stats1.stocks == 2);
    CHECK(stats1.days == 4);
    CHECK(oracles::read_file(paths1.ticks) == oracles::read_file(paths2.ticks));
    CHECK(oracles::read_file(paths1.calendar) == oracles::read_file(paths2.calendar));
    CHECK(oracles::read_file(paths1.symbols) == oracles::read_file(paths2.symbols));
    CHECK(oracles::read_file(paths1.truth) == oracles::read_file(paths2.truth));
    CHECK(oracles::read_file(paths1.study_config) ==
          oracles::read_file(paths2.study_config));
}

TEST_CASE("a generated dataset round-trips through the market-data loaders") {
    auto cfg = small_config();
    cfg.n_stocks = 1;
    cfg.days_before = 1;
    cfg.days_after = 1;
    cfg.trade_rate = 1.0;
    cfg.vol_after = 0.0011;
    auto dir = oracles::fresh_dir("synthround");
    DatasetStats stats;
    auto paths = generate_dataset(cfg, dir, 1, &stats);

    // Two days at 1 trade/minute over 350 minutes: ~700 Poisson arrivals
    // plus the guaranteed opening ticks.
    CHECK(stats.ticks_written > 500);
    CHECK(stats.ticks_written < 900);

    std::ifstream in(paths.ticks);
    auto ticks = market::parse_ticks(in, cfg.session);
    CHECK(ticks.size() == stats.ticks_written);
    for (const auto& t : ticks) CHECK(t.symbol == "S0001");

    auto calendar = market::load_calendar(paths.calendar);
    REQUIRE(calendar.size() == 2);
    CHECK(calendar[0] == Date{2015, 6, 12});
    CHECK(calendar[1] == Date{2015, 6, 15});

    auto symbols = market::load_symbols(paths.symbols);
    CHECK(symbols == std::vector<std::string>{"S0001"});

    auto truth = oracles::read_file(paths.truth);
    CHECK(truth.find("symbol,true_rv,true_f_w_list\n") == 0);
    CHECK(truth.find("S0001,0.09531017980432493,") != std::string::npos);

    auto study = market::load_study_config(paths.study_config);
    CHECK(study.event_date == cfg.event_date);
    CHECK(study.session.length_minutes() == 350);
    REQUIRE(study.windows.size() == 1);
    CHECK(study.windows[0].start == calendar.front());
    CHECK(study.windows[0].end == calendar.back());
    CHECK(study.symbols == std::vector<std::string>{"S0001"});
}
