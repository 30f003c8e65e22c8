#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "specvol/date.hpp"
#include "specvol/resample.hpp"
#include "specvol/volatility.hpp"

namespace specvol::spectral {

// Cosine/sine coefficients for frequencies w = 1..w_max (174 for the
// 349-point vector): a(w) = (2/N) sum_j P(j) cos(2*pi*w*j/N), b likewise.
struct FourierCoefficients {
    std::vector<double> a;
    std::vector<double> b;

    int w_max() const { return static_cast<int>(a.size()); }
};

// Elementwise norm sqrt(a^2 + b^2), one entry per frequency.
struct AmplitudeVector {
    std::string symbol;
    Date day;
    std::vector<double> c;
};

// Per-frequency root-mean-square of daily amplitudes over a period.
struct PeriodAmplitude {
    std::string symbol;
    vol::PeriodTag tag = vol::PeriodTag::kBefore;
    std::vector<double> c_bar;
    int n_days = 0;
};

// Per-frequency change rate f(w) = ln(c_bar_after(w)/c_bar_before(w)).
// NaN marks a frequency where either period amplitude was zero; such
// frequencies are dropped from cross-sections and reported.
struct SpectralChangeRate {
    std::string symbol;
    std::vector<double> f;
};

// Precomputed direct-DFT basis for an odd-length input vector. The angle
// 2*pi*w*j/N is reduced exactly in integers (w*j mod N) before the single
// rounding to double, and each coefficient is a fixed-order pairwise sum
// over ascending j, so results are reproducible bit-for-bit regardless of
// call order or thread count.
class DftPlan {
public:
    explicit DftPlan(int n);

    int n() const { return n_; }
    int w_max() const { return w_max_; }

    // values.size() must equal n(); index j-1 holds P(j).
    FourierCoefficients transform(std::span<const double> values) const;

private:
    int n_;
    int w_max_;
    // Row-major tables: row w-1 holds cos/sin(2*pi*w*j/N) for j = 1..N.
    std::vector<double> cos_rows_;
    std::vector<double> sin_rows_;
};

// One-shot form of DftPlan::transform (builds a plan per call).
FourierCoefficients dft_coefficients(std::span<const double> values);
FourierCoefficients dft_coefficients(const resample::MinuteLogPriceVector& p);

AmplitudeVector amplitude_vector(std::string symbol, const Date& day,
                                 const FourierCoefficients& coeffs);

// Per-frequency RMS over the period's accepted days. All inputs must share
// the same frequency count. Throws DataError for an empty day set.
PeriodAmplitude period_amplitude(std::string symbol, vol::PeriodTag tag,
                                 std::span<const AmplitudeVector> daily);

PeriodAmplitude period_amplitude(std::string symbol, vol::PeriodTag tag,
                                 std::span<const AmplitudeVector> daily,
                                 std::span<const Date> period_days);

// f(w) = ln(after/before) per frequency; degenerate frequencies become NaN
// and are listed in `degenerate_ws` (1-based) when the caller wants them.
SpectralChangeRate spectral_change_rate(const PeriodAmplitude& before,
                                        const PeriodAmplitude& after,
                                        std::vector<int>* degenerate_ws = nullptr);

} // namespace specvol::spectral
