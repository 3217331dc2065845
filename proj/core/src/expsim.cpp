#include "qbound/expsim.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "qbound/random.hpp"

namespace qbound::expsim {

using linalg::ComplexMatrix4;

void NoiseModel::validate() const {
  auto fail = [](const std::string& what) { throw std::invalid_argument("noise model: " + what); };
  if (!(visibility >= 0.0 && visibility <= 1.0)) fail("visibility must lie in [0, 1]");
  if (!(accidental_fraction >= 0.0 && accidental_fraction < 1.0)) fail("accidental_fraction must lie in [0, 1)");
  if (!std::isfinite(analyzer_offset_a) || !std::isfinite(analyzer_offset_b)) fail("analyzer offsets must be finite");
}

double CountsRecord::correlation() const {
  const double agree = static_cast<double>(n_pp + n_mm);
  const double disagree = static_cast<double>(n_pm + n_mp);
  return (agree - disagree) / static_cast<double>(pairs_total);
}

double CountsRecord::correlation_variance() const {
  const double e = correlation();
  return (1.0 - e * e) / static_cast<double>(pairs_total);
}

TwoQubitKet prepare_via_hwp(XiParam xi) {
  const double chi = xi.radians() - std::numbers::pi / 2.0;
  const double c = std::cos(chi);
  const double s = std::sin(chi);
  const double r = 1.0 / std::numbers::sqrt2;
  // Singlet (|HV> - |VH>)/√2 with |H>_b -> c|H> + s|V>, |V>_b -> -s|H> + c|V>.
  const linalg::Ket2 h_b{c, s};
  const linalg::Ket2 v_b{-s, c};
  const linalg::Ket2 h{1.0, 0.0};
  const linalg::Ket2 v{0.0, 1.0};
  const auto hv = linalg::tensor(h, v_b);
  const auto vh = linalg::tensor(v, h_b);
  linalg::Vector<4> amp;
  for (std::size_t i = 0; i < 4; ++i) amp[i] = r * (hv[i] - vh[i]);
  return TwoQubitKet(amp);
}

DensityMatrix4 noisy_state(const TwoQubitKet& psi, const NoiseModel& noise) {
  noise.validate();
  const double v = noise.visibility;
  const ComplexMatrix4 pure = linalg::outer(psi.amplitudes(), psi.amplitudes());
  return DensityMatrix4(pure * v + ComplexMatrix4::identity() * ((1.0 - v) / 4.0));
}

CoincidenceProbabilities setting_probabilities(const DensityMatrix4& rho, AnalyzerAngle alpha,
                                               AnalyzerAngle beta, const NoiseModel& noise) {
  noise.validate();
  const auto a = chsh::analyzer_basis(AnalyzerAngle(alpha.radians() + noise.analyzer_offset_a));
  const auto b = chsh::analyzer_basis(AnalyzerAngle(beta.radians() + noise.analyzer_offset_b));
  auto p = [&](const linalg::Ket2& ka, const linalg::Ket2& kb) {
    const auto k = linalg::tensor(ka, kb);
    // <k|rho|k>, real and nonnegative for a valid rho.
    return std::max(0.0, std::real(linalg::inner(k, rho.matrix() * k)));
  };
  const double f = noise.accidental_fraction;
  auto mix = [f](double x) { return (1.0 - f) * x + f / 4.0; };
  return {mix(p(a.s, b.s)), mix(p(a.s, b.s_perp)), mix(p(a.s_perp, b.s)), mix(p(a.s_perp, b.s_perp))};
}

CountsRecord run_setting(const DensityMatrix4& rho, AnalyzerAngle alpha, AnalyzerAngle beta,
                         std::uint64_t pairs, const NoiseModel& noise, std::uint64_t seed) {
  if (pairs == 0) throw std::invalid_argument("run_setting: pairs must be at least 1");
  const CoincidenceProbabilities p = setting_probabilities(rho, alpha, beta, noise);
  // Rounding can leave the sum a few ulps away from 1.
  const double total = p.sum();
  Rng rng(seed);
  const auto n = multinomial(pairs, {p.p_pp / total, p.p_pm / total, p.p_mp / total, p.p_mm / total}, rng);
  return {n[0], n[1], n[2], n[3], alpha, beta, pairs};
}

SEstimate estimate_s(ThetaParam theta, XiParam xi, std::uint64_t pairs_per_setting, const NoiseModel& noise,
                     std::uint64_t seed) {
  if (pairs_per_setting < 2) throw std::invalid_argument("estimate_s: pairs_per_setting must be at least 2");
  const DensityMatrix4 rho = noisy_state(prepare_via_hwp(xi), noise);
  const chsh::SettingsQuartet q = chsh::settings(theta);
  const std::array<std::pair<AnalyzerAngle, AnalyzerAngle>, 4> pairs{
      {{q.a1, q.b1}, {q.a2, q.b1}, {q.a1, q.b2}, {q.a2, q.b2}}};
  constexpr std::array<double, 4> sign{1.0, 1.0, 1.0, -1.0};

  SEstimate est;
  double variance = 0.0;
  for (std::size_t k = 0; k < 4; ++k) {
    est.counts[k] = run_setting(rho, pairs[k].first, pairs[k].second, pairs_per_setting, noise, derive_seed(seed, k));
    est.s_hat += sign[k] * est.counts[k].correlation();
    variance += est.counts[k].correlation_variance();
  }
  est.std_err = std::sqrt(variance);
  return est;
}

}  // namespace qbound::expsim
