#pragma once

#include "qwit/matrix_core.hpp"

#include <array>
#include <optional>
#include <string>
#include <string_view>

namespace qwit {

enum class Pauli { I, X, Y, Z };

/// The standard single-qubit Pauli matrix (or the 2x2 identity).
Eigen::Matrix2cd pauli(Pauli p);

/// Three-qubit Pauli string p1 ⊗ p2 ⊗ p3 in the computational basis
/// |000>, |001>, ..., |111>, qubit 1 being the most significant bit.
Matrix pauli_string(Pauli p1, Pauli p2, Pauli p3);

/// A bijection {X, Y, Z} -> {X, Y, Z}; the identity label maps to itself.
struct PauliPermutation {
  std::array<Pauli, 3> image{Pauli::X, Pauli::Y, Pauli::Z};  // images of X, Y, Z

  Pauli operator()(Pauli p) const;
  bool is_identity() const;
  std::string code() const;  // lowercase image labels, e.g. "xzy"
};

/// The six axis permutations, in lexicographic order of their codes.
std::array<PauliPermutation, 6> all_permutations();

/// Parse a 3-letter code like "xzy" back into a permutation.
std::optional<PauliPermutation> permutation_from_code(std::string_view code);

struct ObservableTriple {
  Matrix a1, a2, a3;  // 8x8 Hermitian, traceless
  PauliPermutation perm;
  int sign = 1;
};

/// The three correlation observables, with the Pauli axes relabeled by perm
/// and an overall sign. With (x', y', z') = perm(X, Y, Z):
///   a1 = sign * z' ⊗ z' ⊗ I
///   a2 = sign * (x' ⊗ x' ⊗ x'  -  x' ⊗ y' ⊗ y')
///   a3 = sign * (y' ⊗ x' ⊗ y'  -  y' ⊗ y' ⊗ x')
/// The identity permutation with sign +1 is the base triple.
ObservableTriple observable_triple(const PauliPermutation& perm, int sign);

}  // namespace qwit
