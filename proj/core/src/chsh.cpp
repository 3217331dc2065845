#include "qbound/chsh.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace qbound::chsh {

using linalg::cplx;
using linalg::tensor;

namespace {

constexpr double kPi = std::numbers::pi;

double reduce(double x, double period) {
  double r = std::fmod(x, period);
  if (r < 0.0) r += period;
  if (r >= period) r = 0.0;
  return r;
}

void require_finite(double x, const char* what) {
  if (!std::isfinite(x)) throw std::invalid_argument(std::string(what) + " must be finite");
}

}  // namespace

AnalyzerAngle::AnalyzerAngle(double radians) {
  require_finite(radians, "analyzer angle");
  alpha_ = reduce(radians, 2.0 * kPi);
}

ThetaParam::ThetaParam(double radians) {
  require_finite(radians, "theta");
  constexpr double slack = 1e-12;
  if (radians < -slack || radians > kPi + slack)
    throw std::invalid_argument("theta = " + std::to_string(radians) + " outside [0, pi]");
  theta_ = std::clamp(radians, 0.0, kPi);
}

XiParam::XiParam(double radians) {
  require_finite(radians, "xi");
  xi_ = reduce(radians, kPi);
}

AnalyzerBasis analyzer_basis(AnalyzerAngle alpha) {
  const double c = std::cos(alpha.radians() / 2.0);
  const double s = std::sin(alpha.radians() / 2.0);
  return {Ket2{c, s}, Ket2{s, -c}};
}

Observable2Param observable(AnalyzerAngle alpha) {
  const double a = alpha.radians();
  return {alpha, linalg::pauli::Z() * std::cos(a) + linalg::pauli::X() * std::sin(a)};
}

ComplexMatrix2 observable_from_projectors(AnalyzerAngle alpha) {
  const AnalyzerBasis b = analyzer_basis(alpha);
  return linalg::outer(b.s, b.s) - linalg::outer(b.s_perp, b.s_perp);
}

SettingsQuartet settings(ThetaParam theta) {
  const double t = theta.radians();
  return {AnalyzerAngle(2.0 * t), AnalyzerAngle(0.0), AnalyzerAngle(t), AnalyzerAngle(3.0 * t)};
}

TwoQubitKet state_phi(XiParam xi) {
  const double c = std::cos(xi.radians()) / std::numbers::sqrt2;
  const double s = std::sin(xi.radians()) / std::numbers::sqrt2;
  // cos ξ |φ+> + sin ξ |ψ->, singlet |ψ-> = (|HV> - |VH>)/√2
  return TwoQubitKet({c, s, -s, c});
}

CoincidenceProbabilities coincidence_probabilities(const TwoQubitKet& psi, AnalyzerAngle alpha,
                                                   AnalyzerAngle beta) {
  const AnalyzerBasis a = analyzer_basis(alpha);
  const AnalyzerBasis b = analyzer_basis(beta);
  const auto& amp = psi.amplitudes();
  auto p = [&](const Ket2& ka, const Ket2& kb) { return std::norm(linalg::inner(amp, tensor(ka, kb))); };
  return {p(a.s, b.s), p(a.s, b.s_perp), p(a.s_perp, b.s), p(a.s_perp, b.s_perp)};
}

CoincidenceProbabilities coincidence_probabilities(AnalyzerAngle alpha, AnalyzerAngle beta, XiParam xi) {
  return coincidence_probabilities(state_phi(xi), alpha, beta);
}

double correlation(AnalyzerAngle alpha, AnalyzerAngle beta, XiParam xi) {
  return coincidence_probabilities(alpha, beta, xi).correlation();
}

double correlation_operator(AnalyzerAngle alpha, AnalyzerAngle beta, XiParam xi) {
  return linalg::expectation(state_phi(xi), tensor(observable(alpha).matrix, observable(beta).matrix));
}

double s_parameter(ThetaParam theta, XiParam xi) {
  const SettingsQuartet q = settings(theta);
  return correlation(q.a1, q.b1, xi) + correlation(q.a2, q.b1, xi) + correlation(q.a1, q.b2, xi) -
         correlation(q.a2, q.b2, xi);
}

double amplitude_a(ThetaParam theta) {
  const double t = theta.radians();
  return 3.0 * std::cos(t) - std::cos(3.0 * t);
}

double amplitude_c(ThetaParam theta) {
  const double t = theta.radians();
  return std::sin(t) - std::sin(3.0 * t);
}

double s_closed_form(ThetaParam theta, XiParam xi) {
  const double x = 2.0 * xi.radians();
  return amplitude_a(theta) * std::cos(x) + amplitude_c(theta) * std::sin(x);
}

ComplexMatrix4 bell_operator(ThetaParam theta) {
  const SettingsQuartet q = settings(theta);
  const ComplexMatrix2 a1 = observable(q.a1).matrix;
  const ComplexMatrix2 a2 = observable(q.a2).matrix;
  const ComplexMatrix2 b1 = observable(q.b1).matrix;
  const ComplexMatrix2 b2 = observable(q.b2).matrix;
  return tensor(a1, b1) + tensor(a2, b1) + tensor(a1, b2) - tensor(a2, b2);
}

QuantumBounds quantum_bounds(ThetaParam theta) {
  const auto ev = linalg::herm_eigenvalues(bell_operator(theta));
  return {ev.front(), ev.back()};
}

FamilyExtremum family_extremum(ThetaParam theta) {
  const double a = amplitude_a(theta);
  const double c = amplitude_c(theta);
  const XiParam xi_star((a == 0.0 && c == 0.0) ? 0.0 : 0.5 * std::atan2(c, a));
  return {xi_star, s_parameter(theta, xi_star)};
}

int chsh_value(int a1, int a2, int b1, int b2) { return a1 * b1 + a2 * b1 + a1 * b2 - a2 * b2; }

std::pair<int, int> classical_extrema() {
  int lo = 4;
  int hi = -4;
  for (int mask = 0; mask < 16; ++mask) {
    auto bit = [mask](int k) { return (mask >> k) & 1 ? -1 : 1; };
    const int v = chsh_value(bit(0), bit(1), bit(2), bit(3));
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  return {lo, hi};
}

double classical_bound() { return static_cast<double>(classical_extrema().second); }

TwoQubitKet haar_state(Rng& rng) {
  linalg::Vector<4> v;
  for (cplx& z : v) {
    const double re = rng.normal();
    const double im = rng.normal();
    z = cplx(re, im);
  }
  return TwoQubitKet::normalize(v);
}

std::vector<double> haar_sample_s(ThetaParam theta, std::size_t n, std::uint64_t seed) {
  if (n == 0) throw std::invalid_argument("haar_sample_s: sample count must be at least 1");
  const ComplexMatrix4 b = bell_operator(theta);
  Rng rng(seed);
  std::vector<double> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back(linalg::expectation(haar_state(rng), b));
  return out;
}

}  // namespace qbound::chsh
