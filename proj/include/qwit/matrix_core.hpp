#pragma once

#include <Eigen/Dense>

#include <complex>
#include <stdexcept>
#include <utility>

namespace qwit {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

// Absolute entrywise tolerance for Hermiticity checks. All matrices built
// here are exact rationals scaled by 1/(8+8a) or 1/(6+b+c); anything larger
// than this indicates a construction bug, not rounding.
inline constexpr double kHermitianTol = 1e-10;

// Tolerance below which a negative eigenvalue disqualifies a matrix as PSD.
inline constexpr double kPsdTol = 1e-10;

/// Kronecker product: block (i,j) of the result is a(i,j) * b.
template <typename DerivedA, typename DerivedB>
auto kron(const Eigen::MatrixBase<DerivedA>& a, const Eigen::MatrixBase<DerivedB>& b) {
  using Scalar = typename Eigen::ScalarBinaryOpTraits<typename DerivedA::Scalar,
                                                      typename DerivedB::Scalar>::ReturnType;
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> out(a.rows() * b.rows(),
                                                            a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) =
          Scalar(a(i, j)) * b.template cast<Scalar>();
  return out;
}

/// Max-entry absolute difference (Chebyshev distance). Matrix equality in
/// tests is always entrywise, matching the entrywise definitions of the
/// state and observable matrices.
template <typename DerivedA, typename DerivedB>
double chebyshev_distance(const Eigen::MatrixBase<DerivedA>& a,
                          const Eigen::MatrixBase<DerivedB>& b) {
  return (a.derived() - b.derived()).cwiseAbs().maxCoeff();
}

template <typename Derived>
bool is_hermitian(const Eigen::MatrixBase<Derived>& m, double tol = kHermitianTol) {
  if (m.rows() != m.cols()) return false;
  return (m.derived() - m.derived().adjoint()).cwiseAbs().maxCoeff() <= tol;
}

/// All eigenvalues of a Hermitian matrix, ascending. Throws if the input is
/// not Hermitian within tol or the solver fails.
template <typename Derived>
Eigen::VectorXd hermitian_eigenvalues(const Eigen::MatrixBase<Derived>& m,
                             double tol = kHermitianTol) {
  if (!is_hermitian(m, tol))
    throw std::invalid_argument("hermitian_eigenvalues: input is not Hermitian within tolerance");
  using Plain =
      Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  Eigen::SelfAdjointEigenSolver<Plain> solver(m.derived(), Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("hermitian_eigenvalues: eigensolver did not converge");
  return solver.eigenvalues();
}

/// Eigenvalues (ascending) plus eigenvectors, column k pairing with value k.
/// Exposed for residual testing; library code only needs the values.
template <typename Derived>
std::pair<Eigen::VectorXd, Matrix> hermitian_eigensystem(const Eigen::MatrixBase<Derived>& m,
                                                         double tol = kHermitianTol) {
  if (!is_hermitian(m, tol))
    throw std::invalid_argument("hermitian_eigensystem: input is not Hermitian within tolerance");
  using Plain =
      Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  Eigen::SelfAdjointEigenSolver<Plain> solver(m.derived());
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("hermitian_eigensystem: eigensolver did not converge");
  return {solver.eigenvalues(), Matrix(solver.eigenvectors().template cast<Complex>())};
}

template <typename Derived>
double min_eigenvalue(const Eigen::MatrixBase<Derived>& m, double tol = kHermitianTol) {
  return hermitian_eigenvalues(m, tol)(0);
}

}  // namespace qwit
