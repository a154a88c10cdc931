#pragma once

// Milnor mu-bar invariants of links given as braid closures.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gamma_omega/abelian.hpp"
#include "gamma_omega/nq.hpp"
#include "gamma_omega/words.hpp"

namespace gamma_omega {

// Artin generators: letter +i is sigma_i, -i its inverse, 1 <= i < strands.
struct BraidWord {
  int strands = 1;
  std::vector<int> letters;

  // "s1 s2^-1 s1^3"; whitespace or '*' separated. strands = 0 takes the least
  // value that fits the letters.
  static BraidWord parse(const std::string& text, int strands = 0);
  std::string to_string() const;
  void validate() const;

  bool operator==(const BraidWord&) const = default;
};

struct LinkData {
  BraidWord braid;
  // Strands (0-based) of each component; components are ordered by their
  // least strand.
  std::vector<std::vector<int>> components;
  std::vector<int> component_of_strand;
  // <x_1..x_n | x_j^-1 beta(x_j)>
  FpPresentation group;
  std::vector<Word> meridians;
  // Zero-framed longitudes as words in x_1..x_n.
  std::vector<Word> longitudes;
  // Power of the meridian appended to the blackboard longitude.
  std::vector<std::int64_t> framing_correction;
  // Signed self-crossings of each component.
  std::vector<std::int64_t> writhe;

  std::size_t num_components() const { return components.size(); }
};

LinkData braid_closure(const BraidWord& b);

// The image of x_j under the braid automorphism, for every strand j.
std::vector<Word> artin_action(const BraidWord& b);

// [meridian, longitude] is trivial in the class-c quotient of the link group
// for every component.
bool peripheral_check(const LinkData& link, int c);

struct MuValue {
  std::vector<int> index;  // 1-based component labels
  Integer value;
  Integer modulus;  // 0: no indeterminacy

  bool operator==(const MuValue&) const = default;
};

struct MilnorLimits {
  int max_length = 12;
};

// Longitudes expanded in the meridian variables Y_1..Y_k up to a fixed degree,
// shared by all indices of length at most degree + 1.
class MilnorExpansion {
 public:
  MilnorExpansion(const LinkData& link, int degree);

  int degree() const { return degree_; }
  const MagnusSeries& longitude(std::size_t component) const { return longitudes_.at(component); }

  // Coefficient of Y_{i_1}..Y_{i_{k-1}} in the longitude of i_k (1-based).
  Integer mu(const std::vector<int>& index) const;
  // Reduced by the gcd of mu over cyclic permutations of proper
  // subsequences of length >= 2.
  MuValue mu_bar(const std::vector<int>& index) const;
  Integer indeterminacy(const std::vector<int>& index) const;

 private:
  void check_index(const std::vector<int>& index) const;

  std::size_t num_components_;
  int degree_;
  std::vector<MagnusSeries> longitudes_;
};

MuValue mu_bar(const LinkData& link, const std::vector<int>& index, const MilnorLimits& limits = {});

struct VanishingLevel {
  int length = 0;
  bool vanishes = true;
  std::optional<MuValue> witness;  // first nonvanishing index
};

// One entry per length 2..q, indices in lexicographic order.
std::vector<VanishingLevel> vanish_up_to(const LinkData& link, int q, const MilnorLimits& limits = {});

}  // namespace gamma_omega
