#pragma once

// Weighted polycyclic presentations of nilpotent groups and the collector.
//
// Elements are exponent vectors (e_1, ..., e_n) standing for the normal form
// g_1^{e_1} ... g_n^{e_n}, with 0 <= e_i < r_i whenever the relative order r_i
// is finite (r_i = 0 marks an infinite-order generator).

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "gamma_omega/abelian.hpp"

namespace gamma_omega {

using Exponents = std::vector<Integer>;

struct PcPresentation {
  std::vector<int> weights;
  std::vector<Integer> relative_orders;
  // powers[i] = normal form of g_i^{r_i}; only read when r_i > 0.
  std::vector<Exponents> powers;
  // conj[i][j] for j < i: normal form of g_i^{g_j} = g_j^-1 g_i g_j.
  std::vector<std::vector<Exponents>> conj;
};

template <class T>
struct CollectorTables;

class PcGroup {
 public:
  PcGroup();
  // Validates the shape of the relations: g_i^{r_i} must lie in the subgroup
  // generated by g_{i+1}, ..., and g_i^{g_j} must have the form g_i * w with w
  // in that subgroup. Does not check consistency.
  explicit PcGroup(PcPresentation p);

  std::size_t size() const { return pres_.weights.size(); }
  int weight(std::size_t i) const { return pres_.weights[i]; }
  const Integer& relative_order(std::size_t i) const { return pres_.relative_orders[i]; }
  const Exponents& power(std::size_t i) const { return pres_.powers[i]; }
  const Exponents& conjugate_relation(std::size_t i, std::size_t j) const { return pres_.conj[i][j]; }
  const PcPresentation& presentation() const { return pres_; }
  int nilpotency_class() const { return pres_.weights.empty() ? 0 : pres_.weights.back(); }

  // Group order, if finite.
  std::optional<Integer> order() const;

  Exponents identity() const { return Exponents(size(), Integer(0)); }
  Exponents generator(std::size_t i) const;

  Exponents multiply(const Exponents& a, const Exponents& b) const;
  Exponents inverse(const Exponents& a) const;
  Exponents pow(const Exponents& a, const Integer& k) const;
  // a^-1 b^-1 a b
  Exponents commutator(const Exponents& a, const Exponents& b) const;
  // Multiplies in place by g_i^k.
  void multiply_generator(Exponents& e, std::size_t i, const Integer& k) const;
  // Multiplies in place by b.
  void multiply_in_place(Exponents& e, const Exponents& b) const;

  // Order of an element; nullopt if infinite.
  std::optional<Integer> element_order(const Exponents& a) const;

  // Both sides of every overlap test, for the triple test restricted to weight
  // sum <= max_weight_sum (unrestricted when negative).
  struct Overlap {
    std::string label;
    Exponents lhs;
    Exponents rhs;
  };
  std::vector<Overlap> overlaps(int max_weight_sum = -1) const;

  // Empty if consistent; otherwise a description of the first failing test.
  std::string consistency_failure() const;

  // Bound on |exponent| bits during collection; exceeding it throws
  // ResourceLimitError.
  void set_exponent_bit_limit(std::size_t bits) { exponent_bit_limit_ = bits; }

  std::string element_to_string(const Exponents& e) const;

 private:
  // Runs f with the int64 collector when every number fits, and with the GMP
  // collector otherwise.
  template <class F>
  Exponents collect(F&& f) const;

  PcPresentation pres_;
  std::shared_ptr<const CollectorTables<std::int64_t>> small_;
  std::shared_ptr<const CollectorTables<Integer>> big_;
  // trivial_[i][j]: g_i and g_j commute.
  std::vector<std::vector<char>> trivial_;
  std::size_t exponent_bit_limit_ = 1 << 16;
};

}  // namespace gamma_omega
