#include "specvol/event_study.hpp"

#include <cmath>
#include <fstream>
#include <limits>

#include "specvol/errors.hpp"
#include "specvol/text.hpp"

namespace specvol::study {

bool CrossSectionSummary::degenerate() const { return std::isnan(t_stat); }

CrossSectionSummary cross_section(std::span<const double> values, std::string label) {
    for (double v : values) {
        if (!std::isfinite(v))
            throw DataError("cross-section `" + label + "`: non-finite value");
    }
    const size_t n = values.size();
    if (n < 2)
        throw DataError("cross-section `" + label + "`: insufficient sample (n = " +
                        std::to_string(n) + ", need at least 2)");

    double sum = 0.0;
    for (double v : values) sum += v;
    const double mean = sum / static_cast<double>(n);

    double ss = 0.0;
    for (double v : values) ss += (v - mean) * (v - mean);
    const double sd = std::sqrt(ss / static_cast<double>(n - 1));
    const double se = sd / std::sqrt(static_cast<double>(n));

    CrossSectionSummary out;
    out.label = std::move(label);
    out.n = static_cast<int>(n);
    out.mean = mean;
    out.sd = sd;
    out.se = se;
    out.t_stat = se > 0.0 ? mean / se : std::numeric_limits<double>::quiet_NaN();
    return out;
}

FrequencyProfile frequency_profile(std::span<const spectral::SpectralChangeRate> rates,
                                   std::string label, double k) {
    if (rates.empty())
        throw DataError("frequency profile `" + label + "`: no stocks");
    const size_t w_count = rates.front().f.size();
    for (const auto& r : rates) {
        if (r.f.size() != w_count)
            throw DataError("frequency profile `" + label +
                            "`: stocks disagree on frequency count");
    }

    FrequencyProfile profile;
    profile.label = label;
    profile.k = k;
    profile.points.reserve(w_count);
    std::vector<double> column;
    for (size_t i = 0; i < w_count; ++i) {
        column.clear();
        for (const auto& r : rates) {
            if (std::isfinite(r.f[i])) column.push_back(r.f[i]);
        }
        if (column.size() < 2)
            throw DataError("frequency profile `" + label + "`: insufficient sample at w = " +
                            std::to_string(i + 1) + " (n_w = " +
                            std::to_string(column.size()) + ")");
        auto cs = cross_section(column, label);
        FrequencyPoint pt;
        pt.w = static_cast<int>(i) + 1;
        pt.n_w = cs.n;
        pt.mean = cs.mean;
        pt.se = cs.se;
        pt.lo = cs.mean - k * cs.se;
        pt.hi = cs.mean + k * cs.se;
        profile.points.push_back(pt);
    }
    return profile;
}

namespace {

class ReportFile {
public:
    ReportFile(const std::filesystem::path& path) : path_(path), out_(path) {
        if (!out_) throw IoError("cannot open report file for writing: " + path.string());
    }

    void line(const std::string& s) { buf_ += s; buf_ += '\n'; flush_if_large(); }

    std::string& buf() { return buf_; }

    void end_line() {
        buf_ += '\n';
        flush_if_large();
    }

    void close() {
        out_.write(buf_.data(), static_cast<std::streamsize>(buf_.size()));
        buf_.clear();
        out_.flush();
        if (!out_) throw IoError("failed writing report file: " + path_.string());
        out_.close();
    }

private:
    void flush_if_large() {
        if (buf_.size() > (1u << 20)) {
            out_.write(buf_.data(), static_cast<std::streamsize>(buf_.size()));
            buf_.clear();
        }
    }

    std::filesystem::path path_;
    std::ofstream out_;
    std::string buf_;
};

std::string sanitize_label(const std::string& label) {
    std::string s = label;
    for (char& c : s) {
        const bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
                        (c >= '0' && c <= '9') || c == '.' || c == '-' || c == '_';
        if (!ok) c = '_';
    }
    return s;
}

} // namespace

std::vector<std::filesystem::path> assemble_report(const ReportBundle& bundle,
                                                   const std::filesystem::path& out_dir) {
    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    if (ec) throw IoError("cannot create output directory: " + out_dir.string());

    std::vector<std::filesystem::path> written;

    {
        ReportFile f(out_dir / "summary.csv");
        f.line("window_label,n,mean,sd,se,t_stat");
        for (const auto& s : bundle.summaries) {
            auto& b = f.buf();
            b += s.label;
            b += ',';
            append_int(b, s.n);
            b += ',';
            append_double(b, s.mean);
            b += ',';
            append_double(b, s.sd);
            b += ',';
            append_double(b, s.se);
            b += ',';
            append_double(b, s.t_stat);
            f.end_line();
        }
        f.close();
        written.push_back(out_dir / "summary.csv");
    }

    {
        ReportFile f(out_dir / "profile.csv");
        f.line("window_label,w,n_w,mean_w,se_w,lo_w,hi_w");
        for (const auto& p : bundle.profiles) {
            for (const auto& pt : p.points) {
                auto& b = f.buf();
                b += p.label;
                b += ',';
                append_int(b, pt.w);
                b += ',';
                append_int(b, pt.n_w);
                b += ',';
                append_double(b, pt.mean);
                b += ',';
                append_double(b, pt.se);
                b += ',';
                append_double(b, pt.lo);
                b += ',';
                append_double(b, pt.hi);
                f.end_line();
            }
        }
        f.close();
        written.push_back(out_dir / "profile.csv");
    }

    for (const auto& w : bundle.windows) {
        const std::string tag = sanitize_label(w.label);
        {
            auto path = out_dir / ("rv_" + tag + ".csv");
            ReportFile f(path);
            f.line("symbol,sigma_bar_before,n_before,sigma_bar_after,n_after,rv");
            for (const auto& row : w.rv_rows) {
                auto& b = f.buf();
                b += row.symbol;
                b += ',';
                append_double(b, row.sigma_bar_before);
                b += ',';
                append_int(b, row.n_before);
                b += ',';
                append_double(b, row.sigma_bar_after);
                b += ',';
                append_int(b, row.n_after);
                b += ',';
                append_double(b, row.rv);
                f.end_line();
            }
            f.close();
            written.push_back(path);
        }
        {
            auto path = out_dir / ("spectrum_" + tag + ".csv");
            ReportFile f(path);
            f.line("symbol,w,c_bar_before,c_bar_after,f");
            for (const auto& row : w.spectrum_rows) {
                for (size_t i = 0; i < row.f.size(); ++i) {
                    auto& b = f.buf();
                    b += row.symbol;
                    b += ',';
                    append_int(b, static_cast<long long>(i) + 1);
                    b += ',';
                    append_double(b, row.c_bar_before[i]);
                    b += ',';
                    append_double(b, row.c_bar_after[i]);
                    b += ',';
                    append_double(b, row.f[i]);
                    f.end_line();
                }
            }
            f.close();
            written.push_back(path);
        }
    }

    {
        ReportFile f(out_dir / "exclusions.csv");
        f.line("symbol,day,reason");
        for (const auto& e : bundle.exclusions) {
            auto& b = f.buf();
            b += e.symbol;
            b += ',';
            b += e.day ? to_string(*e.day) : std::string("-");
            b += ',';
            b += e.reason;
            f.end_line();
        }
        f.close();
        written.push_back(out_dir / "exclusions.csv");
    }

    return written;
}

} // namespace specvol::study
