#include "qbound/random.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace qbound {

double Rng::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  // 1 - u lies in (0, 1], keeping the log finite.
  const double u1 = 1.0 - uniform();
  const double u2 = uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double phi = 2.0 * std::numbers::pi * u2;
  spare_ = r * std::sin(phi);
  has_spare_ = true;
  return r * std::cos(phi);
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::uint64_t binomial(std::uint64_t n, double p, Rng& rng) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("binomial: p outside [0, 1]");
  if (n == 0 || p == 0.0) return 0;
  if (p == 1.0) return n;

  const double nd = static_cast<double>(n);
  const std::uint64_t mode = std::min<std::uint64_t>(n, static_cast<std::uint64_t>((nd + 1.0) * p));
  const double odds = p / (1.0 - p);
  constexpr double kCutoff = 1e-20;

  // Weights relative to pmf(mode) = 1; lower[i] holds pmf(mode - 1 - i).
  std::vector<double> lower;
  double w = 1.0;
  for (std::uint64_t k = mode; k > 0; --k) {
    // pmf(k - 1) / pmf(k) = k / ((n - k + 1) * odds)
    w *= static_cast<double>(k) / (static_cast<double>(n - k + 1) * odds);
    if (w < kCutoff) break;
    lower.push_back(w);
  }
  std::vector<double> upper;  // upper[i] holds pmf(mode + 1 + i)
  w = 1.0;
  for (std::uint64_t k = mode; k < n; ++k) {
    // pmf(k + 1) / pmf(k) = (n - k) / (k + 1) * odds
    w *= static_cast<double>(n - k) / static_cast<double>(k + 1) * odds;
    if (w < kCutoff) break;
    upper.push_back(w);
  }

  double total = 1.0;
  for (double x : lower) total += x;
  for (double x : upper) total += x;

  // Smallest k with CDF(k) >= u, walking up from the lowest retained value.
  double target = rng.uniform() * total;
  for (std::size_t i = lower.size(); i-- > 0;) {
    target -= lower[i];
    if (target < 0.0) return mode - 1 - i;
  }
  target -= 1.0;
  if (target < 0.0) return mode;
  for (std::size_t i = 0; i < upper.size(); ++i) {
    target -= upper[i];
    if (target < 0.0) return mode + 1 + i;
  }
  return mode + upper.size();
}

std::array<std::uint64_t, 4> multinomial(std::uint64_t n, const std::array<double, 4>& probs, Rng& rng) {
  double sum = 0.0;
  for (double q : probs) {
    if (!(q >= 0.0)) throw std::invalid_argument("multinomial: negative probability");
    sum += q;
  }
  if (std::abs(sum - 1.0) > 1e-9) throw std::invalid_argument("multinomial: probabilities do not sum to 1");

  std::array<std::uint64_t, 4> counts{};
  std::uint64_t remaining = n;
  double mass = 1.0;
  for (std::size_t i = 0; i + 1 < probs.size(); ++i) {
    if (remaining == 0) break;
    const double cond = mass > 0.0 ? std::clamp(probs[i] / mass, 0.0, 1.0) : 0.0;
    counts[i] = binomial(remaining, cond, rng);
    remaining -= counts[i];
    mass -= probs[i];
  }
  counts.back() = remaining;
  return counts;
}

}  // namespace qbound
