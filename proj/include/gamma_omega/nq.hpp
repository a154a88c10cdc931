#pragma once

// Nilpotent quotients of finitely presented groups, towers of them, the
// level-by-level commutator decomposition and normal-generation checks.
//
// Indexing: the class-c quotient is G / gamma_{c+1}(G); class 1 is the
// abelianization.

#include <optional>
#include <string>
#include <vector>

#include "gamma_omega/pc_group.hpp"
#include "gamma_omega/words.hpp"

namespace gamma_omega {

struct FpPresentation {
  std::vector<std::string> generators;
  std::vector<Word> relators;

  // Relators in the word syntax of parse_word; names must be unique.
  static FpPresentation parse(const std::vector<std::string>& generators, const std::vector<std::string>& relators);
  std::size_t rank() const { return generators.size(); }
};

struct NqLimits {
  int max_class = 12;
  std::int64_t max_relator_length = 100000;
  std::size_t max_generators = 4000;
  std::size_t max_exponent_bits = 1 << 14;

  // max_class from GAMMA_OMEGA_MAX_CLASS when set.
  static NqLimits from_environment();
};

// Where a pc generator came from: the image of a presentation generator, the
// tail of a conjugate relation g_a^{g_b}, or the tail of the power relation of
// g_a.
struct PcDefinition {
  enum class Kind { Image, Commutator, Power };
  Kind kind;
  std::size_t a = 0;
  std::size_t b = 0;
};

struct NilpotentQuotient {
  int nilpotency_class = 0;
  PcGroup group;
  std::vector<Exponents> images;  // one per presentation generator
  std::vector<PcDefinition> definitions;

  // Number of pc generators of weight <= k.
  std::size_t generators_up_to_weight(int k) const;
  // Image of a word in the presentation generators.
  Exponents evaluate(const Word& w) const;
  // Invariant factors of gamma_k / gamma_{k+1}, read off the weight-k layer.
  FgAbelianGroup layer(int k) const;
};

// Next class from the previous one (class c - 1); `previous` may be the empty
// class-0 quotient.
NilpotentQuotient nilpotent_quotient_step(const FpPresentation& p, const NilpotentQuotient& previous,
                                          const NqLimits& limits = {});

NilpotentQuotient nilpotent_quotient(const FpPresentation& p, int c, const NqLimits& limits = {});

// Truncation of exponent vectors from a quotient onto a smaller class.
Exponents project(const Exponents& e, const NilpotentQuotient& target);

class Tower {
 public:
  Tower(FpPresentation base, int max_class, const NqLimits& limits = {});

  const FpPresentation& base() const { return base_; }
  int max_class() const { return static_cast<int>(levels_.size()); }
  // Level c for 1 <= c <= max_class.
  const NilpotentQuotient& level(int c) const { return levels_.at(c - 1); }

 private:
  FpPresentation base_;
  std::vector<NilpotentQuotient> levels_;
};

// One exponent vector per level; components must be compatible under the
// projections.
struct TowerElement {
  std::vector<Exponents> components;

  // Image of a word in the presentation generators at every level.
  static TowerElement from_word(const Tower& t, const Word& w);
  // Truncations of an element of the top level.
  static TowerElement from_top(const Tower& t, const Exponents& top);
  bool is_compatible(const Tower& t) const;
  bool is_identity() const;
};

// Given a with trivial level-1 component, finds g_1..g_n with
// a = [g_1, x_1] ... [g_n, x_n] at every level, where x_i ranges over the
// presentation generators listed in `xs`. Throws ComputationError naming the
// level where the defect is not in the span of the commutators.
std::vector<TowerElement> decompose_as_commutators(const Tower& t, const TowerElement& a,
                                                   const std::vector<std::size_t>& xs);

// Product [g_1, x_1] ... [g_n, x_n] at level c.
Exponents commutator_product(const Tower& t, int c, const std::vector<TowerElement>& gs,
                             const std::vector<std::size_t>& xs);

struct NormalGenerationLevel {
  int level = 0;
  bool generated = false;
  // First layer whose span falls short, when not generated.
  int failing_layer = 0;
};

// Whether the images of `xs` normally generate each level.
std::vector<NormalGenerationLevel> normal_generation_check(const Tower& t, const std::vector<std::size_t>& xs);

}  // namespace gamma_omega
