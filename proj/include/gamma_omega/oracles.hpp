#pragma once

// Brute-force reference computations used by the test suites and by the
// `selftest` subcommand. None of these call into the Smith normal form engine
// unless noted; they enumerate elements directly and are only meant for tiny
// inputs.

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "gamma_omega/abelian.hpp"

namespace gamma_omega::oracles {

using Tuple = std::vector<std::int64_t>;

// All elements of Z/n_1 + ... + Z/n_k (every n_i >= 1), in lexicographic order.
std::vector<Tuple> enumerate_cyclic_sum(const std::vector<std::int64_t>& orders);

// Torsion profile of the finite quotient (Z/n_1 + ... + Z/n_k) / <gens>: entry
// k - 1 is the number of cosets c with k*c = 0, for k = 1..max_k. Two finite
// abelian groups are isomorphic iff their profiles agree for max_k = exponent.
std::vector<std::int64_t> quotient_torsion_profile(const std::vector<std::int64_t>& orders,
                                                   const std::vector<Tuple>& gens, std::int64_t max_k);

// Same profile for a finite group in canonical form, counted by enumeration.
std::vector<std::int64_t> torsion_profile(const FgAbelianGroup& g, std::int64_t max_k);

// Every finite abelian group of order n, as lists of prime-power cyclic orders.
std::vector<std::vector<std::int64_t>> abelian_groups_of_order(std::int64_t n);

// Witt necklace count (1/k) sum_{d | k} mu(d) r^{k/d}.
std::int64_t necklace_count(std::int64_t rank, std::int64_t k);

// Todd-Coxeter coset enumeration (HLT strategy) of the subgroup generated by
// `subgroup` in <gens | relators>. Words are lists of (generator, +-1) letters
// encoded as signed 1-based integers. Returns the index, or -1 once
// `max_cosets` is exceeded.
std::int64_t coset_enumeration(int num_gens, const std::vector<std::vector<int>>& relators,
                               const std::vector<std::vector<int>>& subgroup, std::int64_t max_cosets);

// Lambda^2 of a finite group given as a sum of cyclics: the tensor square on
// the given generators modulo x (x) x for every element x. Uses the Smith form
// only to name the resulting group.
FgAbelianGroup exterior_square_by_enumeration(const std::vector<std::int64_t>& orders);

// Linking numbers of a braid closure by signed crossing count: entry (a, b) is
// half the signed number of crossings between components a and b. Components
// are labelled by their least strand, in increasing order.
std::vector<std::vector<std::int64_t>> braid_linking_matrix(int strands, const std::vector<int>& word);

}  // namespace gamma_omega::oracles
