#pragma once

#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "specvol/date.hpp"
#include "specvol/spectral.hpp"
#include "specvol/volatility.hpp"

namespace specvol::study {

// Cross-sectional mean / sd / standard error / t-statistic of one per-stock
// statistic. The t-test is one-sample against zero; sd uses the n-1
// denominator; se divides by the actual contributing count, never a
// hard-coded universe size. t_stat is NaN when sd == 0 (degenerate).
struct CrossSectionSummary {
    std::string label;
    int n = 0;
    double mean = 0.0;
    double sd = 0.0;
    double se = 0.0;
    double t_stat = 0.0;

    bool degenerate() const;
};

struct FrequencyPoint {
    int w = 0;
    int n_w = 0;
    double mean = 0.0;
    double se = 0.0;
    double lo = 0.0;
    double hi = 0.0;
};

// Per-frequency cross-section with +/- k standard-error bounds.
struct FrequencyProfile {
    std::string label;
    double k = 2.3;
    std::vector<FrequencyPoint> points;
};

// Throws DataError when fewer than 2 finite values are supplied.
CrossSectionSummary cross_section(std::span<const double> values, std::string label);

// Per-frequency cross_section over stocks. NaN entries (stocks degenerate at
// that frequency) are dropped at that frequency only; n_w records the
// contributing count. Throws DataError naming the first w with n_w < 2.
FrequencyProfile frequency_profile(std::span<const spectral::SpectralChangeRate> rates,
                                   std::string label, double k = 2.3);

// --- report bundle ------------------------------------------------------------

struct Exclusion {
    std::string symbol;
    std::optional<Date> day;  // day-less entries are stock-level exclusions
    std::string reason;
};

// Per-stock rows backing the RV and spectrum files of one window.
struct StockRvRow {
    std::string symbol;
    double sigma_bar_before = 0.0;
    int n_before = 0;
    double sigma_bar_after = 0.0;
    int n_after = 0;
    double rv = 0.0;  // NaN when degenerate
};

struct StockSpectrumRows {
    std::string symbol;
    std::vector<double> c_bar_before;
    std::vector<double> c_bar_after;
    std::vector<double> f;  // NaN at degenerate frequencies
};

struct WindowReport {
    std::string label;
    std::vector<StockRvRow> rv_rows;              // sorted by symbol
    std::vector<StockSpectrumRows> spectrum_rows; // sorted by symbol
};

struct ReportBundle {
    std::vector<CrossSectionSummary> summaries;   // one per window, window order
    std::vector<FrequencyProfile> profiles;       // one per window, window order
    std::vector<WindowReport> windows;
    std::vector<Exclusion> exclusions;            // sorted by symbol, then day
};

// Writes summary.csv, profile.csv, rv_<label>.csv, spectrum_<label>.csv and
// exclusions.csv under `out_dir` with deterministic ordering (window, then
// symbol, then w). Returns the list of files written. Throws IoError with the
// offending path on write failure.
std::vector<std::filesystem::path> assemble_report(const ReportBundle& bundle,
                                                   const std::filesystem::path& out_dir);

} // namespace specvol::study
