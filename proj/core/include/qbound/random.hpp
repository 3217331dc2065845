#pragma once

#include <array>
#include <cstdint>
#include <random>

namespace qbound {

/// Deterministic random source: 64-bit Mersenne Twister (std::mt19937_64,
/// whose output sequence the C++ standard fixes) plus distribution code
/// written here, so draws are bit-identical across standard libraries.
class Rng {
public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /// Standard normal via the Box-Muller transform, one pair per two calls.
  double normal();

private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

/// splitmix64 mix of a base seed with a stream index. Used to hand each
/// setting or replication its own independent stream.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);

/// Binomial(n, p) by inversion of the exact CDF. The pmf is built by ratio
/// recursion outward from the mode and truncated where it falls below 1e-20
/// of the modal weight, so the cost is O(sqrt(n p (1 - p))) per draw.
std::uint64_t binomial(std::uint64_t n, double p, Rng& rng);

/// Multinomial draw as sequential conditional binomials. Probabilities must
/// be nonnegative and sum to 1 within 1e-9.
std::array<std::uint64_t, 4> multinomial(std::uint64_t n, const std::array<double, 4>& probs, Rng& rng);

}  // namespace qbound
