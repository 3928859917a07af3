#include "qwit/states.hpp"

#include <numbers>
#include <stdexcept>
#include <string>

namespace qwit {

namespace {

constexpr double kTraceTol = 1e-12;

// Invariant gate shared by the validating factories.
void check_density_invariants(const Matrix& m, const char* what) {
  const std::string who(what);
  if (m.rows() != 8 || m.cols() != 8)
    throw std::invalid_argument(who + ": matrix must be 8x8");
  if (!m.allFinite()) throw std::invalid_argument(who + ": matrix has non-finite entries");
  if (!is_hermitian(m, kHermitianTol))
    throw std::invalid_argument(who + ": matrix is not Hermitian");
  if (std::abs(m.trace().real() - 1.0) > kTraceTol || std::abs(m.trace().imag()) > kTraceTol)
    throw std::invalid_argument(who + ": trace must be 1");
  if (min_eigenvalue(m) < -kPsdTol)
    throw std::invalid_argument(who + ": matrix is not positive semidefinite");
}

}  // namespace

std::string family_name(StateFamily f) {
  switch (f) {
    case StateFamily::Kay: return "kay";
    case StateFamily::Kye: return "kye";
    case StateFamily::Product: return "product";
    case StateFamily::Custom: return "custom";
  }
  throw std::invalid_argument("family_name: bad family tag");
}

DensityMatrix kay_state(double a) {
  if (!(a >= 2.0)) throw std::invalid_argument("kay_state: a must be >= 2");
  Matrix m = Matrix::Zero(8, 8);
  for (int i = 0; i < 8; ++i) m(i, i) = a;
  m(0, 0) = m(7, 7) = 4.0 + a;
  m(0, 7) = m(7, 0) = 2.0;
  m(1, 6) = m(6, 1) = 2.0;
  m(2, 5) = m(5, 2) = -2.0;
  m(3, 4) = m(4, 3) = 2.0;
  m /= 8.0 + 8.0 * a;
  check_density_invariants(m, "kay_state");
  return {std::move(m), StateFamily::Kay, {{"a", a}}};
}

DensityMatrix kye_state(double b, double c) {
  if (!(b > 0.0)) throw std::invalid_argument("kye_state: b must be > 0");
  if (!(c > 0.0)) throw std::invalid_argument("kye_state: c must be > 0");
  if (!(b * c >= 1.0)) throw std::invalid_argument("kye_state: bc must be >= 1");
  Matrix m = Matrix::Zero(8, 8);
  for (int i = 0; i < 8; ++i) m(i, i) = 1.0;
  m(3, 3) = b;
  m(4, 4) = c;
  m(0, 7) = m(7, 0) = -1.0;
  m(1, 6) = m(6, 1) = -1.0;
  m(2, 5) = m(5, 2) = 1.0;
  m(3, 4) = m(4, 3) = -1.0;
  m /= 6.0 + b + c;
  check_density_invariants(m, "kye_state");
  return {std::move(m), StateFamily::Kye, {{"b", b}, {"c", c}}};
}

DensityMatrix custom_state(Matrix mat) {
  check_density_invariants(mat, "custom_state");
  return {std::move(mat), StateFamily::Custom, {}};
}

Eigen::Vector2cd single_qubit_ket(const BlochVector& v) {
  Eigen::Vector2cd ket;
  ket << Complex(std::cos(v.theta / 2.0), 0.0),
      std::exp(Complex(0.0, v.phi)) * std::sin(v.theta / 2.0);
  return ket;
}

Vector product_ket(const ProductState& p) {
  return kron(single_qubit_ket(p.q1),
              kron(single_qubit_ket(p.q2), single_qubit_ket(p.q3)));
}

DensityMatrix product_density(const ProductState& p) {
  const Vector psi = product_ket(p);
  Matrix m = psi * psi.adjoint();
  // Rank-1 projector onto a normalized ket: PSD and pure by construction,
  // so only the cheap checks run here.
  if (!m.allFinite()) throw std::invalid_argument("product_density: non-finite entries");
  if (std::abs(m.trace().real() - 1.0) > kTraceTol)
    throw std::invalid_argument("product_density: trace must be 1");
  DensityMatrix rho{std::move(m), StateFamily::Product, {}};
  rho.params = {{"theta1", p.q1.theta}, {"theta2", p.q2.theta}, {"theta3", p.q3.theta},
                {"phi1", p.q1.phi},     {"phi2", p.q2.phi},     {"phi3", p.q3.phi}};
  return rho;
}

ProductState random_product_state(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> cos_theta(-1.0, 1.0);
  std::uniform_real_distribution<double> azimuth(0.0, 2.0 * std::numbers::pi);
  ProductState p;
  for (BlochVector* q : {&p.q1, &p.q2, &p.q3}) {
    q->theta = std::acos(cos_theta(rng));
    q->phi = azimuth(rng);
  }
  return p;
}

ProductState random_product_state(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return random_product_state(rng);
}

Matrix partial_transpose(const Matrix& rho, int qubit) {
  if (rho.rows() != 8 || rho.cols() != 8)
    throw std::invalid_argument("partial_transpose: matrix must be 8x8");
  if (qubit < 1 || qubit > 3)
    throw std::invalid_argument("partial_transpose: qubit must be 1, 2 or 3");
  const int shift = 3 - qubit;  // qubit 1 is the most significant bit
  const int mask = 1 << shift;
  Matrix out(8, 8);
  for (int i = 0; i < 8; ++i) {
    for (int j = 0; j < 8; ++j) {
      const int ti = (i & ~mask) | (j & mask);
      const int tj = (j & ~mask) | (i & mask);
      out(ti, tj) = rho(i, j);
    }
  }
  return out;
}

std::array<bool, 3> is_ppt(const Matrix& rho, double tol) {
  if (tol < 0.0) throw std::invalid_argument("is_ppt: tol must be >= 0");
  std::array<bool, 3> flags{};
  for (int q = 1; q <= 3; ++q)
    flags[q - 1] = min_eigenvalue(partial_transpose(rho, q)) >= -tol;
  return flags;
}

std::array<bool, 3> is_ppt(const DensityMatrix& rho, double tol) {
  return is_ppt(rho.mat, tol);
}

}  // namespace qwit
