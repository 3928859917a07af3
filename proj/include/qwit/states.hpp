#pragma once

#include "qwit/matrix_core.hpp"

#include <array>
#include <cmath>
#include <cstdint>
#include <map>
#include <random>
#include <string>

namespace qwit {

/// Polar/azimuth angles of a single-qubit pure state; theta in [0, pi],
/// phi in [0, 2*pi]. Angles outside the nominal ranges are interpreted
/// through the trigonometric functions as usual.
struct BlochVector {
  double theta = 0.0;
  double phi = 0.0;

  double x() const { return std::sin(theta) * std::cos(phi); }
  double y() const { return std::sin(theta) * std::sin(phi); }
  double z() const { return std::cos(theta); }
};

struct ProductState {
  BlochVector q1, q2, q3;
};

enum class StateFamily { Kay, Kye, Product, Custom };

std::string family_name(StateFamily f);

/// 8x8 Hermitian, unit-trace, PSD matrix plus construction metadata.
/// The factories below are the blessed construction path; they enforce
/// the invariants and throw rather than clamp.
struct DensityMatrix {
  Matrix mat;
  StateFamily family = StateFamily::Custom;
  std::map<std::string, double> params;
};

/// Kay family: diagonal a with corners 4+a, antidiagonal couplings
/// +2, +2, -2, +2, all scaled by 1/(8+8a). Valid for a >= 2; below that
/// the eigenvalue (a-2)/(8+8a) goes negative.
DensityMatrix kay_state(double a);

/// Kye family: unit diagonal except entries (3,3) = b and (4,4) = c,
/// antidiagonal couplings -1, -1, +1, -1, scaled by 1/(6+b+c).
/// Requires b > 0, c > 0 and bc >= 1.
DensityMatrix kye_state(double b, double c);

/// Validating wrapper for an externally built 8x8 density matrix.
DensityMatrix custom_state(Matrix mat);

/// (cos(theta/2), e^{i phi} sin(theta/2)); its Pauli expectations are the
/// Bloch components (x, y, z) of v.
Eigen::Vector2cd single_qubit_ket(const BlochVector& v);

/// ket(q1) ⊗ ket(q2) ⊗ ket(q3), an 8-component unit vector.
Vector product_ket(const ProductState& p);

/// Rank-1 projector |psi><psi| onto the product ket.
DensityMatrix product_density(const ProductState& p);

/// Haar-uniform per qubit: cos(theta) uniform on [-1, 1], phi uniform on
/// [0, 2*pi). Draws six values from rng in a fixed order.
ProductState random_product_state(std::mt19937_64& rng);
ProductState random_product_state(std::uint64_t seed);

/// Transpose the indices of one qubit (1, 2 or 3) only. For three qubits
/// this covers every bipartition: transposing the complementary pair equals
/// the global transpose of the single-qubit PT, which has the same spectrum.
Matrix partial_transpose(const Matrix& rho, int qubit);

/// Per-qubit PPT flags: true iff the partially transposed matrix has
/// min eigenvalue >= -tol.
std::array<bool, 3> is_ppt(const Matrix& rho, double tol = kPsdTol);
std::array<bool, 3> is_ppt(const DensityMatrix& rho, double tol = kPsdTol);

}  // namespace qwit
