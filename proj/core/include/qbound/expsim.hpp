#pragma once

// Monte Carlo model of the photon-pair coincidence experiment: half-wave-plate
// state preparation, depolarizing and analyzer noise, multinomial coincidence
// counts per analyzer setting, and the count-normalized CHSH estimator.

#include <array>
#include <cstdint>

#include "qbound/chsh.hpp"
#include "qbound/linalg.hpp"

namespace qbound::expsim {

using chsh::AnalyzerAngle;
using chsh::CoincidenceProbabilities;
using chsh::ThetaParam;
using chsh::XiParam;
using linalg::DensityMatrix4;
using linalg::TwoQubitKet;

struct NoiseModel {
  /// Weight of the pure state in a Werner mixture with I/4.
  double visibility = 0.96;
  /// Constant analyzer misalignment, radians.
  double analyzer_offset_a = 0.0;
  double analyzer_offset_b = 0.0;
  /// Uniform accidental-coincidence floor mixed into every setting.
  double accidental_fraction = 0.005;

  /// No depolarization, offsets or accidentals.
  static NoiseModel ideal() { return {1.0, 0.0, 0.0, 0.0}; }

  /// Throws std::invalid_argument when a field is out of range.
  void validate() const;
};

struct CountsRecord {
  std::uint64_t n_pp = 0;
  std::uint64_t n_pm = 0;
  std::uint64_t n_mp = 0;
  std::uint64_t n_mm = 0;
  AnalyzerAngle alpha{0.0};
  AnalyzerAngle beta{0.0};
  std::uint64_t pairs_total = 0;

  /// Count-normalized correlation (n++ + n-- - n+- - n-+) / pairs_total.
  double correlation() const;
  /// Multinomial variance of correlation(): (1 - E²) / pairs_total.
  double correlation_variance() const;
};

struct SEstimate {
  double s_hat = 0.0;
  double std_err = 0.0;
  /// Settings in order (a1,b1), (a2,b1), (a1,b2), (a2,b2).
  std::array<CountsRecord, 4> counts;
};

/// Singlet with qubit b rotated by ξ - π/2; equals state_phi(ξ).
TwoQubitKet prepare_via_hwp(XiParam xi);

/// visibility |ψ><ψ| + (1 - visibility) I/4.
DensityMatrix4 noisy_state(const TwoQubitKet& psi, const NoiseModel& noise);

/// Outcome probabilities with analyzers at α + offset_a, β + offset_b, then
/// mixed with the accidental floor: p <- (1 - f) p + f/4.
CoincidenceProbabilities setting_probabilities(const DensityMatrix4& rho, AnalyzerAngle alpha,
                                               AnalyzerAngle beta, const NoiseModel& noise);

/// Multinomial counts for one analyzer setting. Throws std::invalid_argument
/// when pairs == 0.
CountsRecord run_setting(const DensityMatrix4& rho, AnalyzerAngle alpha, AnalyzerAngle beta,
                         std::uint64_t pairs, const NoiseModel& noise, std::uint64_t seed);

/// Runs the four settings for θ on the noisy state prepared for ξ. Setting k
/// draws from derive_seed(seed, k). Throws std::invalid_argument when
/// pairs_per_setting < 2.
SEstimate estimate_s(ThetaParam theta, XiParam xi, std::uint64_t pairs_per_setting, const NoiseModel& noise,
                     std::uint64_t seed);

}  // namespace qbound::expsim
