#pragma once

#include "qwit/matrix_core.hpp"
#include "qwit/optimizer.hpp"
#include "qwit/pauli.hpp"
#include "qwit/states.hpp"

#include <array>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace qwit {

// Certification accepts a maximum product-state objective up to 1 + this
// slack (equivalently a minimum witness expectation down to -this).
inline constexpr double kCertificationTol = 1e-6;

struct Witness {
  Matrix mat;  // 8x8 Hermitian, trace 8
  PauliPermutation perm;
  int sign = 1;
  std::string label;  // "W1", "W2", or "W<code><+|->"
};

/// W = I - sign * (a1 + (a2 + a3)/sqrt(2)) with the triple built from perm
/// at sign +1. Identity/+1 is W1, identity/-1 is W2 = 2I - W1.
Witness build_witness(const PauliPermutation& perm, int sign);

inline Witness witness_w1() { return build_witness(PauliPermutation{}, +1); }
inline Witness witness_w2() { return build_witness(PauliPermutation{}, -1); }

/// All 12 members: 6 permutations (lexicographic code order) x 2 signs
/// (+ before -). Starts with W1, W2's permutation order.
std::vector<Witness> witness_family();

/// Accepts "W1", "W2", or "W" + 3-letter permutation code + sign character,
/// e.g. "Wxzy-". Case-insensitive. Returns nothing on an unknown label.
std::optional<Witness> witness_from_label(std::string_view label);

/// Re(Tr(W rho)). Both operands are Hermitian, so any imaginary residual
/// above 1e-10 signals a construction bug and throws.
double expectation(const Witness& w, const DensityMatrix& rho);

/// Tr(W1 rho_Kay(a)) = 1 - (2*sqrt(2)+1)/(a+1); negative iff a < 2*sqrt(2).
double closed_form_kay(double a);

/// Tr(W2 rho_Kye(b,c)) = -8(sqrt(2)-1)/(6+b+c); negative on the whole domain.
double closed_form_kye(double b, double c);

/// The product-state objective sign*(<a1> + (<a2>+<a3>)/sqrt(2)) evaluated
/// in Bloch coordinates, never through 8x8 matrices. For every witness W
/// and product state p, Tr(W.mat * product_density(p)) = 1 - angle_objective.
/// Separability bounds it by 1.
double angle_objective(const ProductState& p, const PauliPermutation& perm, int sign);

/// Angle layout used by the optimizer: (theta1, theta2, theta3, phi1, phi2, phi3).
ProductState product_state_from_angles(const std::array<double, 6>& angles);
std::array<double, 6> angles_of(const ProductState& p);

struct DetectionRecord {
  StateFamily family = StateFamily::Custom;
  std::map<std::string, double> params;
  std::string witness;
  double expectation = 0.0;
  bool detected = false;  // expectation < 0, strictly
  std::array<bool, 3> ppt{};
};

DetectionRecord evaluate(const Witness& w, const DensityMatrix& rho);

struct CertificationReport {
  std::string witness;
  double max_angle_objective = 0.0;
  double min_expectation = 0.0;  // 1 - max_angle_objective
  bool pass = false;
  OptimumReport optimum;
};

/// Maximize the witness's angle objective over the full angle box; the
/// witness property holds when the maximum does not exceed 1 (up to
/// kCertificationTol). Nonconvergence is reported in the optimum, never
/// swallowed.
CertificationReport certify_witness(const Witness& w, const OptimizerConfig& config = {});

/// Same search applied to an arbitrary product-state functional; lets a
/// broken candidate serve as a negative control.
CertificationReport certify_product_objective(
    std::string label, const std::function<double(const ProductState&)>& objective,
    const OptimizerConfig& config = {});

/// Rule producing c from b in Kye scans: either c = 1/b or a fixed c.
struct CRule {
  bool inverse = true;
  double fixed_c = 0.0;

  static CRule make_inverse() { return {true, 0.0}; }
  static CRule make_fixed(double c) { return {false, c}; }
  double c_for(double b) const { return inverse ? 1.0 / b : fixed_c; }
};

/// Evaluate the witness on kay_state over an inclusive linear grid of
/// `steps` points. With W1 the result is checked against the closed form
/// at every grid point (mismatch beyond 1e-12 throws).
std::vector<DetectionRecord> scan_kay(double a_min, double a_max, int steps, const Witness& w);
std::vector<DetectionRecord> scan_kay(double a_min, double a_max, int steps);

/// Evaluate the witness on kye_state(b, rule(b)) for each listed b. With W2
/// the closed form is checked at every point.
std::vector<DetectionRecord> scan_kye(const std::vector<double>& b_values, const CRule& rule,
                                      const Witness& w);
std::vector<DetectionRecord> scan_kye(const std::vector<double>& b_values, const CRule& rule);

}  // namespace qwit
