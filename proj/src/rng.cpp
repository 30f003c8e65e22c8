#include "specvol/rng.hpp"

#include <cmath>
#include <numbers>

namespace specvol {

double CounterRng::normal() {
    const double u1 = uniform();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

double CounterRng::exponential(double rate) {
    return -std::log(uniform()) / rate;
}

} // namespace specvol
