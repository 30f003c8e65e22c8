#include <chrono>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <string>

#include "CLI11.hpp"

#include "specvol/errors.hpp"
#include "specvol/pipeline.hpp"
#include "specvol/synth.hpp"
#include "specvol/version.hpp"

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

int cmd_synth(const std::string& config, const std::string& out_dir, int threads) {
    const auto start = Clock::now();
    auto cfg = specvol::synth::load_synth_config(config);
    specvol::synth::DatasetStats stats;
    auto paths = specvol::synth::generate_dataset(cfg, out_dir, threads, &stats);

    specvol::pipeline::ManifestInfo info;
    info.config = config;
    info.out_dir = out_dir;
    info.duration_seconds = seconds_since(start);
    info.stocks = stats.stocks;
    info.days = stats.days;
    info.exclusions = 0;
    specvol::pipeline::write_manifest(std::filesystem::path(out_dir) / "manifest.json",
                                      info);

    std::printf("wrote %zu ticks for %d stocks over %d days to %s\n",
                stats.ticks_written, stats.stocks, stats.days, out_dir.c_str());
    return 0;
}

int cmd_analyze(const std::string& config, const std::string& ticks,
                const std::string& calendar, const std::string& out_dir, int threads) {
    const auto start = Clock::now();
    specvol::pipeline::AnalyzeOptions opt;
    opt.config_path = config;
    opt.ticks_path = ticks;
    opt.calendar_path = calendar;
    opt.out_dir = out_dir;
    opt.threads = threads;
    auto summary = specvol::pipeline::run_analyze(opt);

    specvol::pipeline::ManifestInfo info;
    info.config = config;
    info.inputs = {ticks, calendar};
    info.out_dir = out_dir;
    info.duration_seconds = seconds_since(start);
    info.stocks = summary.stocks;
    info.days = summary.days;
    info.exclusions = summary.exclusions;
    specvol::pipeline::write_manifest(std::filesystem::path(out_dir) / "manifest.json",
                                      info);

    std::printf("analyzed %d stocks over %d days (%zu exclusions), %zu files in %s\n",
                summary.stocks, summary.days, summary.exclusions,
                summary.files.size(), out_dir.c_str());
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Intraday volatility and amplitude-spectrum event study"};
    app.require_subcommand(1);

    std::string config, ticks, calendar, out_dir;
    int threads = 0;

    auto* synth = app.add_subcommand("synth", "Generate a synthetic tick dataset");
    synth->add_option("--config", config, "Generator configuration file")->required();
    synth->add_option("--out", out_dir, "Output directory")->required();
    synth->add_option("--threads", threads, "Worker threads (0 = auto)");

    auto* analyze = app.add_subcommand("analyze", "Run the event-study analysis");
    analyze->add_option("--config", config, "Study configuration file")->required();
    analyze->add_option("--ticks", ticks, "Tick data file")->required();
    analyze->add_option("--calendar", calendar, "Trading-day calendar file")->required();
    analyze->add_option("--out", out_dir, "Output directory")->required();
    analyze->add_option("--threads", threads, "Worker threads (0 = auto)");

    auto* version = app.add_subcommand("version", "Print the tool version");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 1;
    }

    try {
        if (synth->parsed()) return cmd_synth(config, out_dir, threads);
        if (analyze->parsed()) return cmd_analyze(config, ticks, calendar, out_dir, threads);
        if (version->parsed()) {
            std::printf("specvol %s\n", specvol::kVersion);
            return 0;
        }
    } catch (const specvol::ConfigError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    } catch (const specvol::DataError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const specvol::IoError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 3;
    } catch (const std::filesystem::filesystem_error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 3;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
    return 0;
}
