#include "qwit/pauli.hpp"

#include <algorithm>
#include <stdexcept>

namespace qwit {

namespace {

char label_char(Pauli p) {
  switch (p) {
    case Pauli::I: return 'i';
    case Pauli::X: return 'x';
    case Pauli::Y: return 'y';
    case Pauli::Z: return 'z';
  }
  throw std::invalid_argument("label_char: bad Pauli label");
}

Pauli label_from_char(char c) {
  switch (c) {
    case 'x': case 'X': return Pauli::X;
    case 'y': case 'Y': return Pauli::Y;
    case 'z': case 'Z': return Pauli::Z;
    default: throw std::invalid_argument("label_from_char: bad Pauli letter");
  }
}

}  // namespace

Eigen::Matrix2cd pauli(Pauli p) {
  const Complex i(0.0, 1.0);
  Eigen::Matrix2cd m;
  switch (p) {
    case Pauli::I: m << 1, 0, 0, 1; break;
    case Pauli::X: m << 0, 1, 1, 0; break;
    case Pauli::Y: m << 0, -i, i, 0; break;
    case Pauli::Z: m << 1, 0, 0, -1; break;
  }
  return m;
}

Matrix pauli_string(Pauli p1, Pauli p2, Pauli p3) {
  return kron(pauli(p1), kron(pauli(p2), pauli(p3)));
}

Pauli PauliPermutation::operator()(Pauli p) const {
  switch (p) {
    case Pauli::I: return Pauli::I;
    case Pauli::X: return image[0];
    case Pauli::Y: return image[1];
    case Pauli::Z: return image[2];
  }
  throw std::invalid_argument("PauliPermutation: bad Pauli label");
}

bool PauliPermutation::is_identity() const {
  return image[0] == Pauli::X && image[1] == Pauli::Y && image[2] == Pauli::Z;
}

std::string PauliPermutation::code() const {
  return {label_char(image[0]), label_char(image[1]), label_char(image[2])};
}

std::array<PauliPermutation, 6> all_permutations() {
  using enum Pauli;
  return {{
      {{X, Y, Z}},
      {{X, Z, Y}},
      {{Y, X, Z}},
      {{Y, Z, X}},
      {{Z, X, Y}},
      {{Z, Y, X}},
  }};
}

std::optional<PauliPermutation> permutation_from_code(std::string_view code) {
  if (code.size() != 3) return std::nullopt;
  PauliPermutation perm;
  try {
    for (int k = 0; k < 3; ++k) perm.image[k] = label_from_char(code[k]);
  } catch (const std::invalid_argument&) {
    return std::nullopt;
  }
  auto sorted = perm.image;
  std::sort(sorted.begin(), sorted.end());
  if (sorted != std::array<Pauli, 3>{Pauli::X, Pauli::Y, Pauli::Z}) return std::nullopt;
  return perm;
}

ObservableTriple observable_triple(const PauliPermutation& perm, int sign) {
  if (sign != 1 && sign != -1)
    throw std::invalid_argument("observable_triple: sign must be +1 or -1");
  const Pauli x = perm(Pauli::X), y = perm(Pauli::Y), z = perm(Pauli::Z);
  const double s = static_cast<double>(sign);
  ObservableTriple t;
  t.a1 = s * pauli_string(z, z, Pauli::I);
  t.a2 = s * (pauli_string(x, x, x) - pauli_string(x, y, y));
  t.a3 = s * (pauli_string(y, x, y) - pauli_string(y, y, x));
  t.perm = perm;
  t.sign = sign;
  return t;
}

}  // namespace qwit
