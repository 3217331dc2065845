#pragma once

// Dense complex linear algebra sized for one and two qubits.
//
// Basis ordering for two-qubit objects is (HH, HV, VH, VV) everywhere, with
// subsystem a as the left (slow) tensor factor.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>

namespace qbound::linalg {

using cplx = std::complex<double>;

inline constexpr double kIdentityTol = 1e-12;
inline constexpr double kEigenTol = 1e-9;

template <std::size_t N>
class Matrix {
public:
  static constexpr std::size_t dim = N;

  constexpr Matrix() = default;

  /// Row-major list of N*N entries.
  Matrix(std::initializer_list<cplx> row_major);

  static Matrix identity();
  static Matrix diagonal(const std::array<double, N>& d);

  cplx& operator()(std::size_t row, std::size_t col) { return m_[row * N + col]; }
  const cplx& operator()(std::size_t row, std::size_t col) const { return m_[row * N + col]; }

  Matrix adjoint() const;
  cplx trace() const;
  double frobenius_norm() const;
  /// max |M - M^dagger| over all entries.
  double max_asymmetry() const;
  bool is_hermitian(double tol = kIdentityTol) const { return max_asymmetry() <= tol; }

  Matrix& operator+=(const Matrix& o);
  Matrix& operator-=(const Matrix& o);
  Matrix& operator*=(cplx s);

  friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
  friend Matrix operator*(Matrix a, cplx s) { return a *= s; }
  friend Matrix operator*(cplx s, Matrix a) { return a *= s; }
  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    Matrix r;
    for (std::size_t i = 0; i < N; ++i)
      for (std::size_t k = 0; k < N; ++k)
        for (std::size_t j = 0; j < N; ++j) r(i, j) += a(i, k) * b(k, j);
    return r;
  }

private:
  std::array<cplx, N * N> m_{};
};

/// Largest entrywise |a - b|.
template <std::size_t N>
double max_abs_diff(const Matrix<N>& a, const Matrix<N>& b) {
  double d = 0.0;
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = 0; j < N; ++j) d = std::max(d, std::abs(a(i, j) - b(i, j)));
  return d;
}

using ComplexMatrix2 = Matrix<2>;
using ComplexMatrix4 = Matrix<4>;

template <std::size_t N>
using Vector = std::array<cplx, N>;

using Ket2 = Vector<2>;

template <std::size_t N>
Vector<N> operator*(const Matrix<N>& m, const Vector<N>& v) {
  Vector<N> r{};
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = 0; j < N; ++j) r[i] += m(i, j) * v[j];
  return r;
}

/// <u|v>, conjugating the left argument.
template <std::size_t N>
cplx inner(const Vector<N>& u, const Vector<N>& v) {
  cplx s{};
  for (std::size_t i = 0; i < N; ++i) s += std::conj(u[i]) * v[i];
  return s;
}

template <std::size_t N>
double norm(const Vector<N>& v) {
  return std::sqrt(std::real(inner(v, v)));
}

/// |u><v|
template <std::size_t N>
Matrix<N> outer(const Vector<N>& u, const Vector<N>& v) {
  Matrix<N> r;
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = 0; j < N; ++j) r(i, j) = u[i] * std::conj(v[j]);
  return r;
}

namespace pauli {
ComplexMatrix2 I();
ComplexMatrix2 X();
ComplexMatrix2 Y();
ComplexMatrix2 Z();
}  // namespace pauli

/// Kronecker product, a is the slow index: (i1 i2, j1 j2) -> a[i1,j1] * b[i2,j2].
ComplexMatrix4 tensor(const ComplexMatrix2& a, const ComplexMatrix2& b);

/// |u> (x) |v> in (HH, HV, VH, VV) order.
Vector<4> tensor(const Ket2& u, const Ket2& v);

/// Normalized two-qubit pure state over (HH, HV, VH, VV).
class TwoQubitKet {
public:
  /// Throws std::invalid_argument unless the norm is 1 within 1e-12.
  explicit TwoQubitKet(const Vector<4>& amplitudes);

  /// Rescales a nonzero vector to unit norm.
  static TwoQubitKet normalize(const Vector<4>& v);

  const Vector<4>& amplitudes() const { return amp_; }
  const cplx& operator[](std::size_t i) const { return amp_[i]; }

private:
  Vector<4> amp_;
};

/// Two-qubit density matrix: Hermitian, unit trace, positive semidefinite.
class DensityMatrix4 {
public:
  /// Validates the invariants; throws std::invalid_argument on violation.
  explicit DensityMatrix4(const ComplexMatrix4& m);

  static DensityMatrix4 pure(const TwoQubitKet& psi);
  static DensityMatrix4 maximally_mixed();

  const ComplexMatrix4& matrix() const { return m_; }

private:
  ComplexMatrix4 m_;
};

struct EigenSystem4 {
  std::array<double, 4> values;  // ascending
  ComplexMatrix4 vectors;        // column k pairs with values[k]
  int sweeps = 0;
};

/// Unitary acting as [[c, s], [-s e^{-i phase}, c e^{-i phase}]] on the (p, q)
/// coordinate plane and as the identity elsewhere. These are the rotations
/// the Jacobi eigensolver applies.
ComplexMatrix4 jacobi_rotation(std::size_t p, std::size_t q, double c, double s, double phase);

/// Cyclic complex Jacobi diagonalization of a Hermitian 4x4 matrix.
/// Throws std::invalid_argument (message carries the max asymmetry) when
/// the input is not Hermitian within 1e-12.
EigenSystem4 herm_eigensystem(const ComplexMatrix4& m);

/// Eigenvalues in ascending order.
std::array<double, 4> herm_eigenvalues(const ComplexMatrix4& m);

/// <psi|M|psi>. Throws std::logic_error if the imaginary residue exceeds 1e-12.
double expectation(const TwoQubitKet& psi, const ComplexMatrix4& m);

/// Tr(rho M), same imaginary-residue policy as expectation().
double trace_expectation(const DensityMatrix4& rho, const ComplexMatrix4& m);

// ---------------------------------------------------------------------------

template <std::size_t N>
Matrix<N>::Matrix(std::initializer_list<cplx> row_major) {
  std::size_t i = 0;
  for (const cplx& v : row_major) {
    if (i == N * N) break;
    m_[i++] = v;
  }
}

template <std::size_t N>
Matrix<N> Matrix<N>::identity() {
  Matrix r;
  for (std::size_t i = 0; i < N; ++i) r(i, i) = 1.0;
  return r;
}

template <std::size_t N>
Matrix<N> Matrix<N>::diagonal(const std::array<double, N>& d) {
  Matrix r;
  for (std::size_t i = 0; i < N; ++i) r(i, i) = d[i];
  return r;
}

template <std::size_t N>
Matrix<N> Matrix<N>::adjoint() const {
  Matrix r;
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = 0; j < N; ++j) r(j, i) = std::conj((*this)(i, j));
  return r;
}

template <std::size_t N>
cplx Matrix<N>::trace() const {
  cplx t{};
  for (std::size_t i = 0; i < N; ++i) t += (*this)(i, i);
  return t;
}

template <std::size_t N>
double Matrix<N>::frobenius_norm() const {
  double s = 0.0;
  for (const cplx& v : m_) s += std::norm(v);
  return std::sqrt(s);
}

template <std::size_t N>
double Matrix<N>::max_asymmetry() const {
  double d = 0.0;
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = i; j < N; ++j)
      d = std::max(d, std::abs((*this)(i, j) - std::conj((*this)(j, i))));
  return d;
}

template <std::size_t N>
Matrix<N>& Matrix<N>::operator+=(const Matrix& o) {
  for (std::size_t i = 0; i < N * N; ++i) m_[i] += o.m_[i];
  return *this;
}

template <std::size_t N>
Matrix<N>& Matrix<N>::operator-=(const Matrix& o) {
  for (std::size_t i = 0; i < N * N; ++i) m_[i] -= o.m_[i];
  return *this;
}

template <std::size_t N>
Matrix<N>& Matrix<N>::operator*=(cplx s) {
  for (cplx& v : m_) v *= s;
  return *this;
}

}  // namespace qbound::linalg
