#include "specvol/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "specvol/errors.hpp"

namespace specvol::spectral {

namespace {

// Fixed-order pairwise summation of x[i]*y[i], ascending i within each leaf.
double pairwise_dot(const double* x, const double* y, size_t n) {
    if (n <= 16) {
        double s = 0.0;
        for (size_t i = 0; i < n; ++i) s += x[i] * y[i];
        return s;
    }
    const size_t half = n / 2;
    return pairwise_dot(x, y, half) + pairwise_dot(x + half, y + half, n - half);
}

} // namespace

DftPlan::DftPlan(int n) : n_(n), w_max_((n - 1) / 2) {
    if (n < 3 || n % 2 == 0)
        throw ConfigError("DFT input length must be odd and at least 3; got " +
                          std::to_string(n));

    // One table of cos/sin at the n-th roots; w*j is reduced mod n in exact
    // integer arithmetic, so each basis value is rounded only once.
    std::vector<double> cos_base(n), sin_base(n);
    for (int r = 0; r < n; ++r) {
        const double angle = 2.0 * std::numbers::pi * static_cast<double>(r) /
                             static_cast<double>(n);
        cos_base[r] = std::cos(angle);
        sin_base[r] = std::sin(angle);
    }

    cos_rows_.resize(static_cast<size_t>(w_max_) * n);
    sin_rows_.resize(static_cast<size_t>(w_max_) * n);
    for (int w = 1; w <= w_max_; ++w) {
        double* crow = cos_rows_.data() + static_cast<size_t>(w - 1) * n;
        double* srow = sin_rows_.data() + static_cast<size_t>(w - 1) * n;
        size_t r = 0;
        for (int j = 1; j <= n; ++j) {
            r += static_cast<size_t>(w);
            if (r >= static_cast<size_t>(n)) r -= static_cast<size_t>(n);
            crow[j - 1] = cos_base[r];
            srow[j - 1] = sin_base[r];
        }
    }
}

FourierCoefficients DftPlan::transform(std::span<const double> values) const {
    if (static_cast<int>(values.size()) != n_)
        throw DataError("DFT input has length " + std::to_string(values.size()) +
                        ", plan expects " + std::to_string(n_));
    FourierCoefficients out;
    out.a.resize(w_max_);
    out.b.resize(w_max_);
    const double scale = 2.0 / static_cast<double>(n_);
    const double* p = values.data();
    for (int w = 1; w <= w_max_; ++w) {
        const double* crow = cos_rows_.data() + static_cast<size_t>(w - 1) * n_;
        const double* srow = sin_rows_.data() + static_cast<size_t>(w - 1) * n_;
        out.a[w - 1] = scale * pairwise_dot(p, crow, static_cast<size_t>(n_));
        out.b[w - 1] = scale * pairwise_dot(p, srow, static_cast<size_t>(n_));
    }
    return out;
}

FourierCoefficients dft_coefficients(std::span<const double> values) {
    return DftPlan(static_cast<int>(values.size())).transform(values);
}

FourierCoefficients dft_coefficients(const resample::MinuteLogPriceVector& p) {
    return dft_coefficients(p.values);
}

AmplitudeVector amplitude_vector(std::string symbol, const Date& day,
                                 const FourierCoefficients& coeffs) {
    AmplitudeVector out{std::move(symbol), day, {}};
    out.c.resize(coeffs.a.size());
    for (size_t i = 0; i < coeffs.a.size(); ++i)
        out.c[i] = std::sqrt(coeffs.a[i] * coeffs.a[i] + coeffs.b[i] * coeffs.b[i]);
    return out;
}

PeriodAmplitude period_amplitude(std::string symbol, vol::PeriodTag tag,
                                 std::span<const AmplitudeVector> daily) {
    if (daily.empty())
        throw DataError("period amplitude undefined: zero accepted days for " +
                        symbol + " (" + vol::to_string(tag) + ")");
    const size_t w_count = daily.front().c.size();
    for (const auto& d : daily) {
        if (d.c.size() != w_count)
            throw DataError("amplitude vectors disagree on frequency count for " + symbol);
    }
    PeriodAmplitude out;
    out.symbol = std::move(symbol);
    out.tag = tag;
    out.n_days = static_cast<int>(daily.size());
    out.c_bar.assign(w_count, 0.0);
    for (const auto& d : daily) {
        for (size_t i = 0; i < w_count; ++i) out.c_bar[i] += d.c[i] * d.c[i];
    }
    const double inv_days = 1.0 / static_cast<double>(daily.size());
    for (size_t i = 0; i < w_count; ++i) out.c_bar[i] = std::sqrt(out.c_bar[i] * inv_days);
    return out;
}

PeriodAmplitude period_amplitude(std::string symbol, vol::PeriodTag tag,
                                 std::span<const AmplitudeVector> daily,
                                 std::span<const Date> period_days) {
    std::vector<AmplitudeVector> selected;
    selected.reserve(period_days.size());
    for (const auto& rec : daily) {
        if (std::binary_search(period_days.begin(), period_days.end(), rec.day))
            selected.push_back(rec);
    }
    return period_amplitude(std::move(symbol), tag, selected);
}

SpectralChangeRate spectral_change_rate(const PeriodAmplitude& before,
                                        const PeriodAmplitude& after,
                                        std::vector<int>* degenerate_ws) {
    if (before.c_bar.size() != after.c_bar.size())
        throw DataError("period amplitudes disagree on frequency count for " +
                        before.symbol);
    SpectralChangeRate out;
    out.symbol = before.symbol;
    out.f.resize(before.c_bar.size());
    for (size_t i = 0; i < before.c_bar.size(); ++i) {
        if (before.c_bar[i] <= 0.0 || after.c_bar[i] <= 0.0) {
            out.f[i] = std::numeric_limits<double>::quiet_NaN();
            if (degenerate_ws) degenerate_ws->push_back(static_cast<int>(i) + 1);
        } else {
            out.f[i] = std::log(after.c_bar[i] / before.c_bar[i]);
        }
    }
    return out;
}

} // namespace specvol::spectral
