#pragma once

#include <cmath>
#include <numbers>

namespace diamond {

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Cycles per second to rad/s.
constexpr double angular(double hz) { return kTwoPi * hz; }
/// rad/s to cycles per second.
constexpr double cycles(double rad_per_s) { return rad_per_s / kTwoPi; }

/// How a power-ratio quantity (R, |.|^2 gains) is turned into decibels.
///   power: 10 log10(x), the textbook convention for power ratios.
///   paper: 20 log10(x), the scale of the reference figures
///          (R_max = 12.39 dB is 20 log10(4.164)).
enum class DbScale { power, paper };

inline double to_db(double value, DbScale scale) {
  return (scale == DbScale::power ? 10.0 : 20.0) * std::log10(value);
}

inline double from_db(double db, DbScale scale) {
  return std::pow(10.0, db / (scale == DbScale::power ? 10.0 : 20.0));
}

}  // namespace diamond
