#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace specvol::pipeline {

struct AnalyzeOptions {
    std::filesystem::path config_path;
    std::filesystem::path ticks_path;
    std::filesystem::path calendar_path;
    std::filesystem::path out_dir;
    int threads = 0;  // 0 = one worker per hardware thread
};

struct AnalyzeSummary {
    int stocks = 0;        // symbols in the universe
    int days = 0;          // trading days inside at least one window
    size_t exclusions = 0;
    size_t ticks_used = 0;  // ticks belonging to a universe symbol on a study day
    std::vector<std::filesystem::path> files;  // report files written
};

// The whole analysis: parse ticks, resample each stock-day, aggregate each
// window, write the report files into out_dir. Output bytes depend only on
// the inputs, never on the thread count. The manifest is not written here;
// the caller records the run once everything else is on disk.
AnalyzeSummary run_analyze(const AnalyzeOptions& opt);

struct ManifestInfo {
    std::filesystem::path config;
    std::vector<std::filesystem::path> inputs;
    std::filesystem::path out_dir;
    double duration_seconds = 0.0;  // wall clock; varies between runs
    int stocks = 0;
    int days = 0;
    size_t exclusions = 0;
};

// Writes manifest.json. The manifest is the success marker: it is written
// last, so a directory without one holds a partial run. duration_seconds is
// the only field that differs between identical runs, which is why byte-level
// determinism claims cover every output except this file.
void write_manifest(const std::filesystem::path& path, const ManifestInfo& info);

} // namespace specvol::pipeline
