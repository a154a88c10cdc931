#pragma once

// Tensor square, exterior powers, symmetric square and Whitehead's quadratic
// functor on finitely generated abelian groups, with induced maps.

#include <cstddef>
#include <string>
#include <vector>

#include "gamma_omega/abelian.hpp"

namespace gamma_omega {

struct FunctorName {
  enum class Kind { TensorSquare, Exterior, Sym2, Gamma2 };

  Kind kind = Kind::Gamma2;
  int degree = 2;  // only meaningful for Exterior

  static FunctorName tensor_square() { return {Kind::TensorSquare, 2}; }
  static FunctorName exterior(int k);
  static FunctorName sym2() { return {Kind::Sym2, 2}; }
  static FunctorName gamma2() { return {Kind::Gamma2, 2}; }

  // "tensor2", "ext:k", "sym2", "gamma2"
  static FunctorName parse(const std::string& text);
  std::string to_string() const;

  bool operator==(const FunctorName&) const = default;
};

// The direct sum of cyclic groups that F(A) splits into when A is given by its
// canonical generators g_1..g_n. Labels name the summands, e.g. "g1^g3",
// "gamma(g2)", "[g1|g2]".
struct StructuralBasis {
  std::vector<Integer> orders;  // 0 = infinite cyclic
  std::vector<std::string> labels;
};

// Summand order: Exterior uses sorted k-subsets in lexicographic order; Sym2
// and Gamma2 list the diagonal terms first, then pairs i < j lexicographically;
// TensorSquare lists all ordered pairs (i, j) lexicographically.
StructuralBasis structural_basis(const FunctorName& f, const FgAbelianGroup& a);

FgAbelianGroup functor_apply(const FunctorName& f, const FgAbelianGroup& a);

// Matrix of F(f) from the structural basis of F(domain) to that of
// F(codomain), before canonicalization.
IntMatrix structural_map_matrix(const FunctorName& f, const AbMap& map);

AbMap functor_map(const FunctorName& f, const AbMap& map);

// Gamma^2(A) presented by one symbol per element of A modulo the defining
// relations. Only for finite A with at most `element_bound` elements.
FgAbelianGroup gamma2_oracle(const FgAbelianGroup& a, std::size_t element_bound);

// Dimension of F(Q^dim) over Q.
Integer rational_dim(const FunctorName& f, std::size_t dim);

// A Q-vector space is infinitely generated as an abelian group exactly when it
// is nonzero.
inline bool infinitely_generated_as_abelian_group(const Integer& q_dim) { return q_dim > 0; }

}  // namespace gamma_omega
