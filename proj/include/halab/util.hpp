#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace halab {

// Deterministic RNG wrapper.  All randomized runs must be reproducible from
// the seed alone, so distribution sampling is implemented here instead of
// relying on std::uniform_real_distribution (whose output is
// implementation-defined).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  double uniform01() {
    return static_cast<double>(eng_() >> 11) * 0x1.0p-53;
  }
  double uniform(double a, double b) { return a + (b - a) * uniform01(); }
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) {
    // inclusive range, rejection-free modulo bias is fine at these sizes
    return lo + static_cast<std::int64_t>(eng_() % static_cast<std::uint64_t>(hi - lo + 1));
  }

 private:
  std::mt19937_64 eng_;
};

// Fixed float formatting shared by every CSV writer; byte-stable output.
std::string format_double(double v);

std::vector<double> logspace(double lo, double hi, int count);

// Ordinary least squares slope of y against x.
double ols_slope(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace halab
