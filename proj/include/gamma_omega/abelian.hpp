#pragma once

// Exact integer linear algebra: matrices over Z, Smith normal form, finitely
// generated abelian groups in invariant-factor form and homomorphisms between
// them.

#include <gmpxx.h>

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace gamma_omega {

using Integer = mpz_class;

class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols);

  static IntMatrix identity(std::size_t n);
  static IntMatrix diagonal(const std::vector<Integer>& diag);
  // `cols` is only consulted when `rows` is empty.
  static IntMatrix from_rows(const std::vector<std::vector<Integer>>& rows, std::size_t cols = 0);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Integer& operator()(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }
  const Integer& operator()(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }

  std::vector<Integer> row(std::size_t r) const;
  std::vector<Integer> column(std::size_t c) const;
  void set_column(std::size_t c, const std::vector<Integer>& values);

  IntMatrix transpose() const;
  IntMatrix operator*(const IntMatrix& rhs) const;
  std::vector<Integer> operator*(const std::vector<Integer>& v) const;
  // Horizontal concatenation [this | rhs]; row counts must agree.
  IntMatrix hconcat(const IntMatrix& rhs) const;
  IntMatrix select_rows(const std::vector<std::size_t>& which) const;
  IntMatrix select_cols(const std::vector<std::size_t>& which) const;

  bool is_zero() const;
  bool operator==(const IntMatrix& rhs) const = default;

  std::string to_string() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Integer> entries_;
};

// Fraction-free determinant of a square matrix.
Integer determinant(const IntMatrix& m);

struct SmithForm {
  IntMatrix U;
  IntMatrix D;
  IntMatrix V;
};

// U * M * V = D with U, V unimodular and D = diag(d1, d2, ...) where
// d1 | d2 | ... and every d_i >= 0 (zeros last).
SmithForm smith_normal_form(const IntMatrix& m);

// Diagonal of the Smith form only (no transforms tracked).
std::vector<Integer> invariant_factors(const IntMatrix& m);

std::size_t matrix_rank(const IntMatrix& m);

// Columns spanning the integer kernel {x : M x = 0}; a basis of that lattice.
IntMatrix integer_nullspace(const IntMatrix& m);

// Finitely generated abelian group Z^free_rank + Z/d1 + ... + Z/dt with
// d1 | d2 | ... | dt and every d_i >= 2. Canonical generators are ordered
// torsion first (ascending), then free.
class FgAbelianGroup {
 public:
  FgAbelianGroup() = default;
  FgAbelianGroup(std::size_t free_rank, std::vector<Integer> torsion);

  static FgAbelianGroup free(std::size_t rank) { return FgAbelianGroup(rank, {}); }
  // Z/n, with n == 0 meaning Z and n == 1 the trivial group.
  static FgAbelianGroup cyclic(const Integer& n);
  // Canonical form of an arbitrary direct sum of cyclic groups Z/n_i.
  static FgAbelianGroup direct_sum_of_cyclics(const std::vector<Integer>& orders);

  std::size_t free_rank() const { return free_rank_; }
  const std::vector<Integer>& torsion() const { return torsion_; }
  std::size_t num_generators() const { return torsion_.size() + free_rank_; }
  // Order of canonical generator i; 0 for the free generators.
  Integer generator_order(std::size_t i) const;

  bool is_trivial() const { return free_rank_ == 0 && torsion_.empty(); }
  bool is_finite() const { return free_rank_ == 0; }
  std::optional<Integer> order() const;

  FgAbelianGroup direct_sum(const FgAbelianGroup& other) const;

  // "0", "Z", "Z/2 + Z/4 + Z^3", ...
  std::string to_string() const;

  bool operator==(const FgAbelianGroup& rhs) const = default;

 private:
  std::size_t free_rank_ = 0;
  std::vector<Integer> torsion_;
};

// Abelian group on `m.rows()` generators modulo the relation columns of m.
FgAbelianGroup from_relations(const IntMatrix& m);

// Homomorphism between canonical forms. Column j holds the image of domain
// generator j in codomain coordinates; entries on torsion coordinates are kept
// reduced into [0, order).
class AbMap {
 public:
  AbMap(FgAbelianGroup domain, FgAbelianGroup codomain, IntMatrix matrix);

  static AbMap identity(const FgAbelianGroup& g);
  static AbMap zero(const FgAbelianGroup& domain, const FgAbelianGroup& codomain);

  const FgAbelianGroup& domain() const { return domain_; }
  const FgAbelianGroup& codomain() const { return codomain_; }
  const IntMatrix& matrix() const { return matrix_; }

  // (*this) after `inner`.
  AbMap compose(const AbMap& inner) const;
  std::vector<Integer> apply(const std::vector<Integer>& x) const;

  bool operator==(const AbMap& rhs) const = default;

 private:
  FgAbelianGroup domain_;
  FgAbelianGroup codomain_;
  IntMatrix matrix_;
};

// Reduces coordinates on torsion generators into [0, order).
std::vector<Integer> reduce_element(const FgAbelianGroup& g, std::vector<Integer> x);

struct KernelCokernel {
  FgAbelianGroup kernel;
  FgAbelianGroup cokernel;
  AbMap projection;  // codomain -> cokernel
};

KernelCokernel map_kernel_cokernel(const AbMap& f);

// ker(outgoing) / im(incoming) for composable maps with outgoing * incoming = 0.
FgAbelianGroup map_homology(const AbMap& incoming, const AbMap& outgoing);

// Quotient K / S of lattices in Z^n given by generating columns, S inside K.
FgAbelianGroup lattice_quotient(const IntMatrix& k_generators, const IntMatrix& s_generators);

// Canonical form of a direct sum of cyclic groups together with the change of
// coordinates in both directions.
struct Canonicalization {
  FgAbelianGroup group;
  IntMatrix to_canonical;    // canonical gens x summands
  IntMatrix from_canonical;  // summands x canonical gens
};

Canonicalization canonicalize_cyclic_sum(const std::vector<Integer>& orders);

// Integer row echelon lattice built by insertion; after `finish()` the rows are
// in reduced Hermite form (positive pivots, entries above a pivot in
// [0, pivot)).
class HermiteLattice {
 public:
  explicit HermiteLattice(std::size_t width) : width_(width) {}

  void insert(std::vector<Integer> row);
  void finish();

  std::size_t width() const { return width_; }
  const std::map<std::size_t, std::vector<Integer>>& rows() const { return rows_; }

 private:
  std::size_t width_;
  std::map<std::size_t, std::vector<Integer>> rows_;  // keyed by pivot column
};

}  // namespace gamma_omega
