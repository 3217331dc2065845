#include "qbound/linalg.hpp"

#include <numeric>
#include <sstream>
#include <stdexcept>

namespace qbound::linalg {

namespace pauli {
ComplexMatrix2 I() { return {1.0, 0.0, 0.0, 1.0}; }
ComplexMatrix2 X() { return {0.0, 1.0, 1.0, 0.0}; }
ComplexMatrix2 Y() { return {0.0, cplx(0.0, -1.0), cplx(0.0, 1.0), 0.0}; }
ComplexMatrix2 Z() { return {1.0, 0.0, 0.0, -1.0}; }
}  // namespace pauli

ComplexMatrix4 tensor(const ComplexMatrix2& a, const ComplexMatrix2& b) {
  ComplexMatrix4 r;
  for (std::size_t i1 = 0; i1 < 2; ++i1)
    for (std::size_t j1 = 0; j1 < 2; ++j1)
      for (std::size_t i2 = 0; i2 < 2; ++i2)
        for (std::size_t j2 = 0; j2 < 2; ++j2) r(2 * i1 + i2, 2 * j1 + j2) = a(i1, j1) * b(i2, j2);
  return r;
}

Vector<4> tensor(const Ket2& u, const Ket2& v) {
  return {u[0] * v[0], u[0] * v[1], u[1] * v[0], u[1] * v[1]};
}

TwoQubitKet::TwoQubitKet(const Vector<4>& amplitudes) : amp_(amplitudes) {
  const double n = norm(amp_);
  if (!(std::abs(n - 1.0) <= kIdentityTol)) {
    std::ostringstream msg;
    msg << "two-qubit ket is not normalized (norm " << n << ")";
    throw std::invalid_argument(msg.str());
  }
}

TwoQubitKet TwoQubitKet::normalize(const Vector<4>& v) {
  const double n = norm(v);
  if (!(n > 0.0) || !std::isfinite(n)) throw std::invalid_argument("cannot normalize a zero or non-finite vector");
  Vector<4> u = v;
  for (cplx& c : u) c /= n;
  return TwoQubitKet(u);
}

DensityMatrix4::DensityMatrix4(const ComplexMatrix4& m) : m_(m) {
  const double asym = m_.max_asymmetry();
  if (asym > kIdentityTol) {
    std::ostringstream msg;
    msg << "density matrix is not Hermitian (max asymmetry " << asym << ")";
    throw std::invalid_argument(msg.str());
  }
  const cplx tr = m_.trace();
  if (std::abs(tr - 1.0) > kIdentityTol) {
    std::ostringstream msg;
    msg << "density matrix trace is " << tr.real() << ", expected 1";
    throw std::invalid_argument(msg.str());
  }
  const auto ev = herm_eigenvalues(m_);
  if (ev.front() < -1e-10) {
    std::ostringstream msg;
    msg << "density matrix has negative eigenvalue " << ev.front();
    throw std::invalid_argument(msg.str());
  }
}

DensityMatrix4 DensityMatrix4::pure(const TwoQubitKet& psi) {
  return DensityMatrix4(outer(psi.amplitudes(), psi.amplitudes()));
}

DensityMatrix4 DensityMatrix4::maximally_mixed() {
  return DensityMatrix4(ComplexMatrix4::identity() * 0.25);
}

ComplexMatrix4 jacobi_rotation(std::size_t p, std::size_t q, double c, double s, double phase) {
  const cplx e = std::polar(1.0, -phase);
  ComplexMatrix4 u = ComplexMatrix4::identity();
  u(p, p) = c;
  u(p, q) = s;
  u(q, p) = -s * e;
  u(q, q) = c * e;
  return u;
}

namespace {

double off_diagonal_mass(const ComplexMatrix4& a) {
  double s = 0.0;
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j)
      if (i != j) s += std::norm(a(i, j));
  return std::sqrt(s);
}

constexpr int kMaxSweeps = 100;
constexpr double kOffDiagonalTol = 1e-14;

}  // namespace

EigenSystem4 herm_eigensystem(const ComplexMatrix4& m) {
  const double asym = m.max_asymmetry();
  if (asym > kIdentityTol) {
    std::ostringstream msg;
    msg << "herm_eigensystem: matrix is not Hermitian (max asymmetry " << asym << ")";
    throw std::invalid_argument(msg.str());
  }

  ComplexMatrix4 a = m;
  ComplexMatrix4 v = ComplexMatrix4::identity();
  // Relative to the matrix scale so the threshold stays reachable in double precision.
  const double tol = kOffDiagonalTol * std::max(1.0, m.frobenius_norm());

  int sweep = 0;
  for (; sweep < kMaxSweeps && off_diagonal_mass(a) > tol; ++sweep) {
    for (std::size_t p = 0; p < 3; ++p) {
      for (std::size_t q = p + 1; q < 4; ++q) {
        const double r = std::abs(a(p, q));
        if (r == 0.0) continue;
        const double phase = std::arg(a(p, q));
        const double app = a(p, p).real();
        const double aqq = a(q, q).real();
        const double theta = (aqq - app) / (2.0 * r);
        double t = 1.0 / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        if (theta < 0.0) t = -t;
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        const ComplexMatrix4 u = jacobi_rotation(p, q, c, s, phase);
        a = u.adjoint() * a * u;
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        v = v * u;
      }
    }
  }
  if (off_diagonal_mass(a) > tol) {
    std::ostringstream msg;
    msg << "herm_eigensystem: no convergence after " << kMaxSweeps << " sweeps";
    throw std::runtime_error(msg.str());
  }

  std::array<std::size_t, 4> order{};
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(),
            [&](std::size_t i, std::size_t j) { return a(i, i).real() < a(j, j).real(); });

  EigenSystem4 out;
  out.sweeps = sweep;
  for (std::size_t k = 0; k < 4; ++k) {
    out.values[k] = a(order[k], order[k]).real();
    for (std::size_t i = 0; i < 4; ++i) out.vectors(i, k) = v(i, order[k]);
  }
  return out;
}

std::array<double, 4> herm_eigenvalues(const ComplexMatrix4& m) { return herm_eigensystem(m).values; }

namespace {

double checked_real(cplx z, const char* what) {
  if (std::abs(z.imag()) > kIdentityTol) {
    std::ostringstream msg;
    msg << what << ": imaginary residue " << z.imag() << " exceeds tolerance";
    throw std::logic_error(msg.str());
  }
  return z.real();
}

void require_hermitian(const ComplexMatrix4& m, const char* what) {
  const double asym = m.max_asymmetry();
  if (asym > kIdentityTol) {
    std::ostringstream msg;
    msg << what << ": operator is not Hermitian (max asymmetry " << asym << ")";
    throw std::invalid_argument(msg.str());
  }
}

}  // namespace

double expectation(const TwoQubitKet& psi, const ComplexMatrix4& m) {
  require_hermitian(m, "expectation");
  return checked_real(inner(psi.amplitudes(), m * psi.amplitudes()), "expectation");
}

double trace_expectation(const DensityMatrix4& rho, const ComplexMatrix4& m) {
  require_hermitian(m, "trace_expectation");
  return checked_real((rho.matrix() * m).trace(), "trace_expectation");
}

}  // namespace qbound::linalg
