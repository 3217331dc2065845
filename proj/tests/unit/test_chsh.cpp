#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "oracles.hpp"
#include "qbound/chsh.hpp"

using namespace qbound::chsh;
using qbound::linalg::cplx;
using qbound::linalg::max_abs_diff;

namespace {

constexpr double kPi = std::numbers::pi;
const double kSqrt2 = std::numbers::sqrt2;

bool close(const Ket2& a, const Ket2& b, double tol = 1e-12) {
  return std::abs(a[0] - b[0]) <= tol && std::abs(a[1] - b[1]) <= tol;
}

}  // namespace

TEST_CASE("parameter types reduce or reject") {
  CHECK(AnalyzerAngle(2 * kPi).radians() == 0.0);
  CHECK(AnalyzerAngle(-kPi / 2).radians() == doctest::Approx(3 * kPi / 2));
  CHECK(XiParam(kPi).radians() == 0.0);
  CHECK(XiParam(5 * kPi / 4).radians() == doctest::Approx(kPi / 4));
  CHECK(ThetaParam(kPi).radians() == kPi);
  CHECK(ThetaParam(kPi + 1e-13).radians() == kPi);
  CHECK_THROWS_AS(ThetaParam(-0.1), std::invalid_argument);
  CHECK_THROWS_AS(ThetaParam(4.0), std::invalid_argument);
  CHECK_THROWS_AS(AnalyzerAngle(std::nan("")), std::invalid_argument);
  CHECK_THROWS_AS(XiParam(std::numeric_limits<double>::infinity()), std::invalid_argument);
}

TEST_CASE("analyzer basis") {
  const auto b0 = analyzer_basis(AnalyzerAngle(0.0));
  CHECK(close(b0.s, {1.0, 0.0}));
  CHECK(close(b0.s_perp, {0.0, -1.0}));

  const auto bpi = analyzer_basis(AnalyzerAngle(kPi));
  CHECK(close(bpi.s, {0.0, 1.0}));
  CHECK(close(bpi.s_perp, {1.0, 0.0}));

  const auto bh = analyzer_basis(AnalyzerAngle(kPi / 2));
  CHECK(close(bh.s, {1 / kSqrt2, 1 / kSqrt2}));
  CHECK(close(bh.s_perp, {1 / kSqrt2, -1 / kSqrt2}));

  std::mt19937_64 gen(3);
  std::uniform_real_distribution<double> ang(0, 2 * kPi);
  for (int i = 0; i < 200; ++i) {
    const auto b = analyzer_basis(AnalyzerAngle(ang(gen)));
    CHECK(std::abs(qbound::linalg::inner(b.s, b.s_perp)) <= 1e-12);
    CHECK(std::abs(qbound::linalg::norm(b.s) - 1.0) <= 1e-12);
    CHECK(std::abs(qbound::linalg::norm(b.s_perp) - 1.0) <= 1e-12);
  }
}

TEST_CASE("observable construction paths agree") {
  namespace pauli = qbound::linalg::pauli;
  CHECK(max_abs_diff(observable(AnalyzerAngle(0.0)).matrix, pauli::Z()) <= 1e-12);
  CHECK(max_abs_diff(observable(AnalyzerAngle(kPi / 2)).matrix, pauli::X()) <= 1e-12);
  CHECK(max_abs_diff(observable(AnalyzerAngle(kPi / 4)).matrix, (pauli::Z() + pauli::X()) * (1 / kSqrt2)) <= 1e-12);

  std::mt19937_64 gen(5);
  std::uniform_real_distribution<double> ang(-10, 10);
  for (int i = 0; i < 500; ++i) {
    const AnalyzerAngle a(ang(gen));
    const ComplexMatrix2 o = observable(a).matrix;
    CHECK(max_abs_diff(o, observable_from_projectors(a)) <= 1e-12);
    CHECK(max_abs_diff(o * o, ComplexMatrix2::identity()) <= 1e-12);  // involution
    CHECK(o.is_hermitian());
  }
}

TEST_CASE("settings quartet multiples") {
  const double t = 0.3;
  const SettingsQuartet q = settings(ThetaParam(t));
  CHECK(q.a1.radians() == doctest::Approx(2 * t));
  CHECK(q.a2.radians() == 0.0);
  CHECK(q.b1.radians() == doctest::Approx(t));
  CHECK(q.b2.radians() == doctest::Approx(3 * t));
}

TEST_CASE("state family") {
  auto amps = [](double xi) { return state_phi(XiParam(xi)).amplitudes(); };
  auto check = [](const std::array<cplx, 4>& got, const std::array<double, 4>& want) {
    for (std::size_t i = 0; i < 4; ++i) CHECK(std::abs(got[i] - want[i]) <= 1e-12);
  };
  check(amps(0.0), {1 / kSqrt2, 0, 0, 1 / kSqrt2});
  check(amps(kPi / 2), {0, 1 / kSqrt2, -1 / kSqrt2, 0});
  check(amps(kPi / 4), {0.5, 0.5, -0.5, 0.5});
}

TEST_CASE("coincidence probabilities") {
  auto check = [](const CoincidenceProbabilities& p, std::array<double, 4> want) {
    CHECK(std::abs(p.p_pp - want[0]) <= 1e-12);
    CHECK(std::abs(p.p_pm - want[1]) <= 1e-12);
    CHECK(std::abs(p.p_mp - want[2]) <= 1e-12);
    CHECK(std::abs(p.p_mm - want[3]) <= 1e-12);
  };
  check(coincidence_probabilities(AnalyzerAngle(0), AnalyzerAngle(0), XiParam(0)), {0.5, 0, 0, 0.5});
  check(coincidence_probabilities(AnalyzerAngle(0), AnalyzerAngle(0), XiParam(kPi / 2)), {0, 0.5, 0.5, 0});
  check(coincidence_probabilities(AnalyzerAngle(kPi / 2), AnalyzerAngle(0), XiParam(0)), {0.25, 0.25, 0.25, 0.25});

  std::mt19937_64 gen(19);
  std::uniform_real_distribution<double> ang(0, 2 * kPi);
  for (int i = 0; i < 1000; ++i) {
    const auto p = coincidence_probabilities(AnalyzerAngle(ang(gen)), AnalyzerAngle(ang(gen)), XiParam(ang(gen)));
    CHECK(std::abs(p.sum() - 1.0) <= 1e-12);
    for (double x : {p.p_pp, p.p_pm, p.p_mp, p.p_mm}) CHECK((x >= 0.0 && x <= 1.0));
  }
}

TEST_CASE("correlation: probability path equals operator path") {
  CHECK(correlation(AnalyzerAngle(0), AnalyzerAngle(0), XiParam(0)) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(correlation(AnalyzerAngle(0), AnalyzerAngle(0), XiParam(kPi / 2)) == doctest::Approx(-1.0).epsilon(1e-14));
  // ξ = 0 matrix oracle: cos(α - β).
  const double e = correlation(AnalyzerAngle(kPi / 3), AnalyzerAngle(0), XiParam(0));
  CHECK(std::abs(e - 0.5) <= 1e-12);
  CHECK(std::abs(oracle::sandwich(oracle::phi(0), oracle::kron(oracle::observable(kPi / 3), oracle::observable(0))).real() -
                 0.5) <= 1e-12);

  std::mt19937_64 gen(23);
  std::uniform_real_distribution<double> ang(0, 2 * kPi);
  for (int i = 0; i < 1000; ++i) {
    const AnalyzerAngle a(ang(gen)), b(ang(gen));
    const XiParam xi(ang(gen));
    const double by_prob = correlation(a, b, xi);
    CHECK(std::abs(by_prob - correlation_operator(a, b, xi)) <= 1e-12);
    CHECK((by_prob >= -1.0 - 1e-12 && by_prob <= 1.0 + 1e-12));
  }
}

TEST_CASE("S at reference points") {
  CHECK(std::abs(s_parameter(ThetaParam(kPi / 4), XiParam(0)) - 2 * kSqrt2) <= 1e-12);
  CHECK(std::abs(s_parameter(ThetaParam(0), XiParam(0)) - 2.0) <= 1e-12);
  CHECK(std::abs(s_parameter(ThetaParam(kPi / 2), XiParam(kPi / 4)) - 2.0) <= 1e-12);
  CHECK(std::abs(oracle::s_value(kPi / 2, kPi / 4) - 2.0) <= 1e-12);
  CHECK(std::abs(oracle::s_value(0, 0) - 2.0) <= 1e-12);

  CHECK(std::abs(s_closed_form(ThetaParam(kPi / 4), XiParam(0)) - 2 * kSqrt2) <= 1e-12);
  // 3 cos(π/8) - cos(3π/8), frozen from an independent numpy evaluation.
  CHECK(std::abs(s_closed_form(ThetaParam(kPi / 8), XiParam(0)) - 2.3889551651687704) <= 1e-12);
  CHECK(std::abs(s_parameter(ThetaParam(kPi / 8), XiParam(0)) - 2.3889551651687704) <= 1e-12);
  CHECK(std::abs(s_closed_form(ThetaParam(kPi / 2), XiParam(kPi / 4)) - 2.0) <= 1e-12);
}

TEST_CASE("closed form and matrix oracle agree with s_parameter over the grid") {
  for (int i = 0; i <= 180; i += 3) {
    const double t = kPi * i / 180.0;
    for (int j = 0; j <= 180; j += 3) {
      const double x = kPi * j / 180.0;
      const double s = s_parameter(ThetaParam(t), XiParam(x));
      CHECK(std::abs(s - s_closed_form(ThetaParam(t), XiParam(x))) <= 1e-12);
      CHECK(std::abs(s - oracle::s_value(t, x)) <= 1e-12);
      CHECK(std::abs(s) <= kCirelsonBound + 1e-9);
    }
  }
}

TEST_CASE("Bell operator") {
  namespace pauli = qbound::linalg::pauli;
  const ComplexMatrix4 b0 = bell_operator(ThetaParam(0));
  CHECK(max_abs_diff(b0, qbound::linalg::tensor(pauli::Z(), pauli::Z()) * 2.0) <= 1e-12);

  std::mt19937_64 gen(29);
  std::uniform_real_distribution<double> th(0, kPi);
  for (int i = 0; i < 200; ++i) {
    const ThetaParam t(th(gen));
    const XiParam x(th(gen));
    const ComplexMatrix4 b = bell_operator(t);
    CHECK(b.is_hermitian());
    CHECK(std::abs(b.trace()) <= 1e-12);
    CHECK(std::abs(qbound::linalg::expectation(state_phi(x), b) - s_parameter(t, x)) <= 1e-12);
    const auto ob = oracle::bell(t.radians());
    for (std::size_t r = 0; r < 4; ++r)
      for (std::size_t c = 0; c < 4; ++c) CHECK(std::abs(b(r, c) - ob[r][c]) <= 1e-12);
  }
}

TEST_CASE("quantum bounds against power-iteration oracle and closed form") {
  auto check = [](double t, double lo, double hi) {
    const QuantumBounds q = quantum_bounds(ThetaParam(t));
    CHECK(std::abs(q.s_min - lo) <= 1e-9);
    CHECK(std::abs(q.s_max - hi) <= 1e-9);
  };
  check(kPi / 4, -2 * kSqrt2, 2 * kSqrt2);
  check(0.0, -2.0, 2.0);
  check(kPi / 8, -std::sqrt(6.0), std::sqrt(6.0));

  for (int i = 0; i <= 180; ++i) {
    const double t = kPi * i / 180.0;
    const QuantumBounds q = quantum_bounds(ThetaParam(t));
    const auto ob = oracle::bell(t);
    const double hi = oracle::max_eigenvalue(ob);
    const double lo = oracle::min_eigenvalue(ob);
    CHECK(std::abs(q.s_max - hi) <= 1e-9);
    CHECK(std::abs(q.s_min - lo) <= 1e-9);
    // The closed form ±2√(1 + sin²2θ) is checked here against the oracle spectrum.
    const double closed = 2.0 * std::sqrt(1.0 + std::pow(std::sin(2 * t), 2));
    CHECK(std::abs(hi - closed) <= 1e-9);
    CHECK(std::abs(q.s_max - closed) <= 1e-9);
    CHECK(std::abs(q.s_min + closed) <= 1e-9);
    CHECK(q.s_min <= q.s_max);
    CHECK(q.s_max <= kCirelsonBound + 1e-9);
  }
}

TEST_CASE("family extremum attains the spectral bound") {
  const auto e4 = family_extremum(ThetaParam(kPi / 4));
  CHECK(e4.xi_star.radians() == doctest::Approx(0.0));
  CHECK(std::abs(e4.s_star - 2 * kSqrt2) <= 1e-9);

  const auto e2 = family_extremum(ThetaParam(kPi / 2));
  CHECK(std::abs(e2.xi_star.radians() - kPi / 4) <= 1e-12);
  CHECK(std::abs(e2.s_star - 2.0) <= 1e-9);

  const auto e8 = family_extremum(ThetaParam(kPi / 8));
  CHECK(std::abs(e8.s_star - std::sqrt(6.0)) <= 1e-9);

  for (int i = 0; i <= 180; ++i) {
    const ThetaParam t(kPi * i / 180.0);
    const auto e = family_extremum(t);
    CHECK(e.xi_star.radians() >= 0.0);
    CHECK(e.xi_star.radians() < kPi);
    CHECK(std::abs(e.s_star - std::hypot(amplitude_a(t), amplitude_c(t))) <= 1e-9);
    CHECK(std::abs(e.s_star - quantum_bounds(t).s_max) <= 1e-9);
  }
}

TEST_CASE("classical bound by enumeration") {
  CHECK(classical_bound() == 2.0);
  CHECK(classical_extrema() == std::pair{-2, 2});
  CHECK(chsh_value(1, 1, 1, 1) == 2);
  // (a1, a2, b1, b2) = (1, -1, 1, -1): 1 - 1 - 1 - 1, saturating |S| = 2 from below.
  CHECK(chsh_value(1, -1, 1, -1) == -2);
  CHECK(std::abs(chsh_value(1, -1, 1, -1)) == 2);
  CHECK(chsh_value(1, -1, -1, 1) == 2);
}

TEST_CASE("superquantum gap at θ = π/2") {
  const QuantumBounds q = quantum_bounds(ThetaParam(kPi / 2));
  CHECK(std::abs(q.s_min + 2.0) <= 1e-9);
  CHECK(std::abs(q.s_max - 2.0) <= 1e-9);
  CHECK(q.s_max < kCirelsonBound);
}

TEST_CASE("Haar sampling") {
  CHECK_THROWS_AS(haar_sample_s(ThetaParam(0.5), 0, 1), std::invalid_argument);

  const auto a = haar_sample_s(ThetaParam(0.7), 1000, 42);
  const auto b = haar_sample_s(ThetaParam(0.7), 1000, 42);
  CHECK(a == b);
  CHECK(a != haar_sample_s(ThetaParam(0.7), 1000, 43));

  for (double t : {0.0, kPi / 8, kPi / 4, 3 * kPi / 8, kPi / 2}) {
    const QuantumBounds q = quantum_bounds(ThetaParam(t));
    const auto s = haar_sample_s(ThetaParam(t), 10000, 99);
    for (double v : s) CHECK((v >= q.s_min - 1e-9 && v <= q.s_max + 1e-9));
  }

  // Traceless B: Haar average of <B> is Tr(B)/4 = 0, with standard deviation
  // ‖B‖_F / √20 per sample for dimension 4.
  const auto s = haar_sample_s(ThetaParam(kPi / 4), 20000, 5);
  double mean = 0.0;
  for (double v : s) mean += v;
  mean /= static_cast<double>(s.size());
  const double sd = bell_operator(ThetaParam(kPi / 4)).frobenius_norm() / std::sqrt(20.0);
  CHECK(std::abs(mean) < 5.0 * sd / std::sqrt(20000.0));
}

TEST_CASE("Haar calibration: near-maximal samples at θ = π/4") {
  // Calibrated with the default CLI seed; 10⁵ draws.
  const auto s = haar_sample_s(ThetaParam(kPi / 4), 100000, 20260417);
  const double mx = *std::max_element(s.begin(), s.end());
  CHECK(mx >= 0.95 * kCirelsonBound);
  CHECK(mx <= kCirelsonBound + 1e-9);
}
