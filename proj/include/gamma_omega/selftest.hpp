#pragma once

// Cross-module property suites, each checked against an independent oracle.

#include <cstdint>
#include <string>
#include <vector>

#include "gamma_omega/nq.hpp"

namespace gamma_omega {

struct SuiteResult {
  std::string name;
  std::size_t checks = 0;
  std::size_t failures = 0;
  std::vector<std::string> failure_notes;  // at most a handful
  double seconds = 0;

  bool passed() const { return failures == 0; }
};

// The dihedral example: <a, b | a^2, a^-1 b a b>.
FpPresentation dihedral_presentation();
FpPresentation free_presentation(std::size_t rank);

// Structure rule against the element-symbol presentation for every abelian
// group of order <= max_order.
SuiteResult gamma2_suite(std::int64_t max_order = 16);
// Hall basis counts against the necklace formula.
SuiteResult witt_suite(int max_rank = 4, int max_class = 8);
// magnus(uv) = magnus(u) magnus(v) on random pairs.
SuiteResult magnus_suite(std::uint64_t seed, int pairs = 200, int degree = 5);
// Random products of commutators are decomposed as prod [g_i, x_i] and checked
// at every level of the tower.
SuiteResult reconstruction_suite(std::uint64_t seed, const FpPresentation& p, int depth, int samples,
                                 const std::string& name);
// Length-2 mu-bar against signed crossing counts on random 2 and 3 strand braids.
SuiteResult linking_suite(std::uint64_t seed, int braids = 20);

std::vector<SuiteResult> run_selftest(std::uint64_t seed);

}  // namespace gamma_omega
