#include "qwit/witness.hpp"

#include <cctype>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <utility>

namespace qwit {

namespace {

constexpr double kImagResidualTol = 1e-10;
constexpr double kClosedFormTol = 1e-12;

const double kSqrt2 = std::sqrt(2.0);

std::string witness_label(const PauliPermutation& perm, int sign) {
  if (perm.is_identity()) return sign > 0 ? "W1" : "W2";
  return "W" + perm.code() + (sign > 0 ? "+" : "-");
}

struct BlochTriple {
  double x, y, z;
};

BlochTriple permuted_components(const BlochVector& v, const PauliPermutation& perm) {
  auto component = [&](Pauli p) {
    switch (perm(p)) {
      case Pauli::X: return v.x();
      case Pauli::Y: return v.y();
      case Pauli::Z: return v.z();
      default: throw std::invalid_argument("permuted_components: bad Pauli label");
    }
  };
  return {component(Pauli::X), component(Pauli::Y), component(Pauli::Z)};
}

}  // namespace

Witness build_witness(const PauliPermutation& perm, int sign) {
  const ObservableTriple t = observable_triple(perm, +1);
  Matrix mat = Matrix::Identity(8, 8) -
               static_cast<double>(sign) * (t.a1 + (t.a2 + t.a3) / kSqrt2);
  return {std::move(mat), perm, sign, witness_label(perm, sign)};
}

std::vector<Witness> witness_family() {
  std::vector<Witness> family;
  family.reserve(12);
  for (const PauliPermutation& perm : all_permutations())
    for (int sign : {+1, -1}) family.push_back(build_witness(perm, sign));
  return family;
}

std::optional<Witness> witness_from_label(std::string_view label) {
  std::string lower(label);
  for (char& c : lower) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  if (lower == "w1") return witness_w1();
  if (lower == "w2") return witness_w2();
  if (lower.size() != 5 || lower[0] != 'w') return std::nullopt;
  const char sign_char = lower[4];
  if (sign_char != '+' && sign_char != '-') return std::nullopt;
  const auto perm = permutation_from_code(lower.substr(1, 3));
  if (!perm) return std::nullopt;
  return build_witness(*perm, sign_char == '+' ? +1 : -1);
}

double expectation(const Witness& w, const DensityMatrix& rho) {
  const Complex tr = (w.mat * rho.mat).trace();
  if (std::abs(tr.imag()) > kImagResidualTol)
    throw std::runtime_error(
        "expectation: trace has an imaginary residual above tolerance; "
        "witness or state construction is broken");
  return tr.real();
}

double closed_form_kay(double a) {
  return 1.0 - (2.0 * kSqrt2 + 1.0) / (a + 1.0);
}

double closed_form_kye(double b, double c) {
  return -8.0 * (kSqrt2 - 1.0) / (6.0 + b + c);
}

double angle_objective(const ProductState& p, const PauliPermutation& perm, int sign) {
  const BlochTriple b1 = permuted_components(p.q1, perm);
  const BlochTriple b2 = permuted_components(p.q2, perm);
  const BlochTriple b3 = permuted_components(p.q3, perm);
  const double value = b1.z * b2.z +
                       (b1.x * (b2.x * b3.x - b2.y * b3.y) +
                        b1.y * (b2.x * b3.y - b2.y * b3.x)) /
                           kSqrt2;
  return static_cast<double>(sign) * value;
}

ProductState product_state_from_angles(const std::array<double, 6>& angles) {
  return {{angles[0], angles[3]}, {angles[1], angles[4]}, {angles[2], angles[5]}};
}

std::array<double, 6> angles_of(const ProductState& p) {
  return {p.q1.theta, p.q2.theta, p.q3.theta, p.q1.phi, p.q2.phi, p.q3.phi};
}

DetectionRecord evaluate(const Witness& w, const DensityMatrix& rho) {
  DetectionRecord rec;
  rec.family = rho.family;
  rec.params = rho.params;
  rec.witness = w.label;
  rec.expectation = expectation(w, rho);
  rec.detected = rec.expectation < 0.0;
  rec.ppt = is_ppt(rho);
  return rec;
}

CertificationReport certify_product_objective(
    std::string label, const std::function<double(const ProductState&)>& objective,
    const OptimizerConfig& config) {
  const Objective6 boxed = [&objective](const std::array<double, 6>& angles) {
    return objective(product_state_from_angles(angles));
  };
  CertificationReport report;
  report.witness = std::move(label);
  report.optimum = maximize_box(boxed, angle_box(), config);
  report.max_angle_objective = report.optimum.best_value;
  report.min_expectation = 1.0 - report.max_angle_objective;
  report.pass = report.max_angle_objective <= 1.0 + kCertificationTol;
  return report;
}

CertificationReport certify_witness(const Witness& w, const OptimizerConfig& config) {
  return certify_product_objective(
      w.label, [&w](const ProductState& p) { return angle_objective(p, w.perm, w.sign); },
      config);
}

std::vector<DetectionRecord> scan_kay(double a_min, double a_max, int steps,
                                      const Witness& w) {
  if (!(a_min >= 2.0)) throw std::invalid_argument("scan_kay: a_min must be >= 2");
  if (!(a_min < a_max)) throw std::invalid_argument("scan_kay: need a_min < a_max");
  if (steps < 2) throw std::invalid_argument("scan_kay: steps must be >= 2");
  const bool has_closed_form = w.perm.is_identity() && w.sign == +1;
  std::vector<DetectionRecord> records;
  records.reserve(static_cast<size_t>(steps));
  for (int k = 0; k < steps; ++k) {
    const double a =
        a_min + static_cast<double>(k) * (a_max - a_min) / static_cast<double>(steps - 1);
    DetectionRecord rec = evaluate(w, kay_state(a));
    if (has_closed_form &&
        std::abs(rec.expectation - closed_form_kay(a)) > kClosedFormTol)
      throw std::runtime_error("scan_kay: matrix trace disagrees with the closed form");
    records.push_back(std::move(rec));
  }
  return records;
}

std::vector<DetectionRecord> scan_kay(double a_min, double a_max, int steps) {
  return scan_kay(a_min, a_max, steps, witness_w1());
}

std::vector<DetectionRecord> scan_kye(const std::vector<double>& b_values, const CRule& rule,
                                      const Witness& w) {
  const bool has_closed_form = w.perm.is_identity() && w.sign == -1;
  std::vector<DetectionRecord> records;
  records.reserve(b_values.size());
  for (const double b : b_values) {
    const double c = rule.c_for(b);
    DetectionRecord rec = evaluate(w, kye_state(b, c));
    if (has_closed_form &&
        std::abs(rec.expectation - closed_form_kye(b, c)) > kClosedFormTol)
      throw std::runtime_error("scan_kye: matrix trace disagrees with the closed form");
    records.push_back(std::move(rec));
  }
  return records;
}

std::vector<DetectionRecord> scan_kye(const std::vector<double>& b_values, const CRule& rule) {
  return scan_kye(b_values, rule, witness_w2());
}

}  // namespace qwit
