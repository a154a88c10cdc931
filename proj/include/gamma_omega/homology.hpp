#pragma once

// Homology of cyclic groups with twisted coefficients (periodic resolution),
// E^2 pages of the Lyndon-Hochschild-Serre spectral sequence for split
// extensions A x| C_m, and a conservative assembly of H_i.

#include <optional>
#include <string>
#include <vector>

#include "gamma_omega/abelian.hpp"

namespace gamma_omega {

// Z[C_m]-module: an abelian group with an automorphism t, t^m = 1.
class CyclicModule {
 public:
  CyclicModule(int m, AbMap action);

  static CyclicModule trivial(int m, const FgAbelianGroup& a) { return CyclicModule(m, AbMap::identity(a)); }

  int order() const { return m_; }
  const FgAbelianGroup& underlying() const { return action_.domain(); }
  const AbMap& action() const { return action_; }

  // t - 1 and the norm 1 + t + ... + t^{m-1}.
  AbMap t_minus_one() const;
  AbMap norm() const;

 private:
  int m_;
  AbMap action_;
};

// H_0 .. H_{p_max} of C_m with coefficients in M.
std::vector<FgAbelianGroup> cyclic_homology(const CyclicModule& module, int p_max);

struct E2Cell {
  int p = 0;
  int q = 0;
  std::optional<FgAbelianGroup> group;  // nullopt: not computed
  std::string note;
};

struct E2Page {
  int m = 1;
  int p_max = 0;
  int q_max = 0;
  // Every row above this one is known to vanish (the kernel is free of this
  // rank); nullopt when nothing is known.
  std::optional<int> zero_above_q;
  std::vector<E2Cell> cells;  // q-major, then p

  // Cell lookup; nullptr outside the stored range.
  const E2Cell* find(int p, int q) const;
};

// E^2_{p,q} = H_p(C_m; H_q(A)) for the split extension A x| C_m with C_m
// acting through t. H_q(A) is Lambda^q(A) for free A and for q <= 2; other
// cells are left uncomputed with a note.
E2Page lhs_e2_split(const FgAbelianGroup& a, const AbMap& t, int m, int p_max, int q_max);

struct HomologyAssembly {
  struct Ambiguity {
    int degree;
    std::string reason;
  };
  std::vector<std::optional<FgAbelianGroup>> groups;  // nullopt when unresolved
  std::vector<Ambiguity> ambiguities;

  bool complete() const { return ambiguities.empty(); }
};

// H_0 .. H_{i_max} from a page built by lhs_e2_split. The q = 0 row is
// permanent and splits off because the extension splits. Other cells must be
// untouched by every differential (source or target known to vanish), and an
// antidiagonal with several surviving cells is resolved only when each step
// of the filtration splits (free quotient, or finite pieces of coprime
// orders). Anything else is reported, never guessed.
HomologyAssembly assemble_homology(const E2Page& page, int i_max);

}  // namespace gamma_omega
