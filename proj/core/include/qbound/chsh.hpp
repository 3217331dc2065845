#pragma once

// CHSH parameter for the observable family (2θ, 0 | θ, 3θ) and the entangled
// states cos ξ |φ+> + sin ξ |ψ->, with classical, spectral and Cirel'son bounds.

#include <cstdint>
#include <numbers>
#include <utility>
#include <vector>

#include "qbound/linalg.hpp"
#include "qbound/random.hpp"

namespace qbound::chsh {

using linalg::ComplexMatrix2;
using linalg::ComplexMatrix4;
using linalg::Ket2;
using linalg::TwoQubitKet;

inline constexpr double kClassicalBound = 2.0;
inline constexpr double kCirelsonBound = 2.0 * std::numbers::sqrt2;

/// Analyzer angle in radians, reduced into [0, 2π).
class AnalyzerAngle {
public:
  explicit AnalyzerAngle(double radians);
  double radians() const { return alpha_; }

private:
  double alpha_;
};

/// Observable-family parameter θ, restricted to [0, π].
class ThetaParam {
public:
  /// Throws std::invalid_argument outside [0, π] (1e-12 slack, clamped).
  explicit ThetaParam(double radians);
  double radians() const { return theta_; }

private:
  double theta_;
};

/// State-family parameter ξ, reduced into [0, π) since S is π-periodic in ξ.
class XiParam {
public:
  explicit XiParam(double radians);
  double radians() const { return xi_; }

private:
  double xi_;
};

struct AnalyzerBasis {
  Ket2 s;       // cos(α/2)|H> + sin(α/2)|V>
  Ket2 s_perp;  // sin(α/2)|H> - cos(α/2)|V>
};

AnalyzerBasis analyzer_basis(AnalyzerAngle alpha);

/// Dichotomic observable O(α) = cos α Z + sin α X.
struct Observable2Param {
  AnalyzerAngle alpha;
  ComplexMatrix2 matrix;
};

Observable2Param observable(AnalyzerAngle alpha);

/// |s><s| - |s⊥><s⊥| built from analyzer_basis; equals observable() entrywise.
ComplexMatrix2 observable_from_projectors(AnalyzerAngle alpha);

struct SettingsQuartet {
  AnalyzerAngle a1;  // 2θ
  AnalyzerAngle a2;  // 0
  AnalyzerAngle b1;  // θ
  AnalyzerAngle b2;  // 3θ
};

SettingsQuartet settings(ThetaParam theta);

TwoQubitKet state_phi(XiParam xi);

struct CoincidenceProbabilities {
  double p_pp = 0.0;
  double p_pm = 0.0;
  double p_mp = 0.0;
  double p_mm = 0.0;

  double sum() const { return p_pp + p_pm + p_mp + p_mm; }
  /// p++ + p-- - p+- - p-+
  double correlation() const { return p_pp + p_mm - p_pm - p_mp; }
};

/// Squared overlaps of psi with the four analyzer product kets.
CoincidenceProbabilities coincidence_probabilities(const TwoQubitKet& psi, AnalyzerAngle alpha,
                                                   AnalyzerAngle beta);
CoincidenceProbabilities coincidence_probabilities(AnalyzerAngle alpha, AnalyzerAngle beta, XiParam xi);

/// <O(α) ⊗ O(β)> from the signed coincidence-probability sum.
double correlation(AnalyzerAngle alpha, AnalyzerAngle beta, XiParam xi);

/// <O(α) ⊗ O(β)> as an operator expectation on state_phi(ξ).
double correlation_operator(AnalyzerAngle alpha, AnalyzerAngle beta, XiParam xi);

/// S = E(2θ, θ) + E(0, θ) + E(2θ, 3θ) - E(0, 3θ).
double s_parameter(ThetaParam theta, XiParam xi);

/// A(θ) = 3 cos θ - cos 3θ
double amplitude_a(ThetaParam theta);
/// C(θ) = sin θ - sin 3θ
double amplitude_c(ThetaParam theta);

/// A(θ) cos 2ξ + C(θ) sin 2ξ; agrees with s_parameter.
double s_closed_form(ThetaParam theta, XiParam xi);

/// Operator whose expectation is S: O(2θ)⊗O(θ) + O(0)⊗O(θ) + O(2θ)⊗O(3θ) - O(0)⊗O(3θ).
ComplexMatrix4 bell_operator(ThetaParam theta);

struct QuantumBounds {
  double s_min = 0.0;
  double s_max = 0.0;
};

/// Extreme eigenvalues of bell_operator(θ).
QuantumBounds quantum_bounds(ThetaParam theta);

struct FamilyExtremum {
  XiParam xi_star;
  double s_star;
};

/// Maximizer of S over the state family: ξ* = ½ atan2(C, A) in [0, π).
/// When A = C = 0 every ξ is extremal and ξ* = 0.
FamilyExtremum family_extremum(ThetaParam theta);

/// a1 b1 + a2 b1 + a1 b2 - a2 b2 for deterministic ±1 outcomes.
int chsh_value(int a1, int a2, int b1, int b2);

/// Max of chsh_value over all 16 assignments (exactly 2).
double classical_bound();

/// min/max of chsh_value over all 16 assignments.
std::pair<int, int> classical_extrema();

/// Haar-random pure two-qubit state: 8 standard normals, normalized.
TwoQubitKet haar_state(Rng& rng);

/// <B(θ)> on n Haar-random states drawn from the given seed.
/// Throws std::invalid_argument when n == 0.
std::vector<double> haar_sample_s(ThetaParam theta, std::size_t n, std::uint64_t seed);

}  // namespace qbound::chsh
