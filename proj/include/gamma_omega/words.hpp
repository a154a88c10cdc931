#pragma once

// Words in free groups, basic commutators and the truncated Magnus expansion.

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "gamma_omega/abelian.hpp"

namespace gamma_omega {

struct Letter {
  int gen;
  std::int64_t exp;
  bool operator==(const Letter&) const = default;
};

class Word {
 public:
  Word() = default;
  explicit Word(std::vector<Letter> letters) : letters_(std::move(letters)) {}

  static Word generator(int gen, std::int64_t exp = 1) { return Word({{gen, exp}}); }

  const std::vector<Letter>& letters() const { return letters_; }
  bool empty() const { return letters_.empty(); }
  // Sum of |exponent| over letters.
  std::int64_t length() const;
  // Largest generator index used plus one.
  int alphabet_bound() const;

  Word inverse() const;
  Word operator*(const Word& rhs) const;
  Word pow(std::int64_t k) const;

  // "1" for the empty word, otherwise e.g. "a^2*b^-1*a".
  std::string to_string(const std::vector<std::string>& names) const;

  bool operator==(const Word&) const = default;

 private:
  std::vector<Letter> letters_;
};

// Free reduction: merges adjacent letters on the same generator and drops zero
// exponents.
Word reduce(const Word& w);

// [a, b] = a^-1 b^-1 a b, reduced.
Word commutator(const Word& a, const Word& b);

// Default names "a".."z".
std::vector<std::string> default_generator_names(int count);

// Parses the text syntax: generator names (single letters; an uppercase letter
// is the inverse of its lowercase generator), "^k" / "^-k" exponents,
// juxtaposition or "*" for products, parentheses, "1" for the identity and
// brackets "[u,v]" for commutators. "[u,v,w]" is left-normed: [[u,v],w].
Word parse_word(const std::string& text, const std::vector<std::string>& names);

// Basic commutators. Entries with `generator >= 0` are the generators;
// composite entries are [left, right] with indices into the same list.
struct BasicCommutator {
  int weight = 1;
  int generator = -1;
  std::size_t left = 0;
  std::size_t right = 0;
};

// Hall basis up to a given class. The list is ordered by weight; generators
// come first in index order, and within weight k >= 2 the commutators [u, v]
// are sorted by (index of u, index of v). [u, v] is basic when u and v are
// basic, u comes after v in the list, and, if u = [u1, u2], u2 does not come
// after v.
class HallBasis {
 public:
  HallBasis(int rank, int max_class);

  int rank() const { return rank_; }
  int max_class() const { return max_class_; }
  const std::vector<BasicCommutator>& elements() const { return elements_; }
  // Indices of the elements of weight k (1-based weight).
  const std::vector<std::size_t>& of_weight(int k) const { return by_weight_.at(k - 1); }
  std::vector<std::size_t> counts() const;

  Word word(std::size_t i) const;
  std::string to_string(std::size_t i, const std::vector<std::string>& names) const;

 private:
  int rank_;
  int max_class_;
  std::vector<BasicCommutator> elements_;
  std::vector<std::vector<std::size_t>> by_weight_;
};

using Monomial = std::vector<int>;

// Truncated power series in noncommuting variables X_0..X_{n-1} with integer
// coefficients. Only nonzero coefficients are stored.
class MagnusSeries {
 public:
  MagnusSeries(int alphabet_size, int degree);

  static MagnusSeries one(int alphabet_size, int degree);
  // 1 + X_i
  static MagnusSeries generator(int alphabet_size, int degree, int i);

  int alphabet_size() const { return alphabet_size_; }
  int degree() const { return degree_; }
  const std::map<Monomial, Integer>& coefficients() const { return coeffs_; }

  Integer coefficient(const Monomial& m) const;
  void add_term(const Monomial& m, const Integer& c);

  MagnusSeries operator+(const MagnusSeries& rhs) const;
  MagnusSeries operator-(const MagnusSeries& rhs) const;
  MagnusSeries operator*(const MagnusSeries& rhs) const;
  // Inverse of a series with constant term 1.
  MagnusSeries inverse() const;
  MagnusSeries truncated(int degree) const;

  // Least positive degree carrying a nonzero coefficient, or 0 if none.
  int lowest_nonconstant_degree() const;

  // e.g. "1 + X_a*X_b - X_b*X_a"
  std::string to_string(const std::vector<std::string>& names) const;

  bool operator==(const MagnusSeries&) const = default;

 private:
  int alphabet_size_;
  int degree_;
  std::map<Monomial, Integer> coeffs_;
};

// x_i^e expanded as sum_k binom(e, k) X_i^k, k <= degree.
MagnusSeries magnus_letter(int alphabet_size, int degree, int gen, std::int64_t exp);

MagnusSeries magnus_expand(const Word& w, int alphabet_size, int degree);

struct LcsWeight {
  enum class Kind { Exact, AtLeast, Infinite };
  Kind kind = Kind::Infinite;
  int value = 0;

  std::string to_string() const;
  bool operator==(const LcsWeight&) const = default;
};

// Lower central series depth of w, read off as the lowest nonvanishing Magnus
// degree.
LcsWeight lcs_weight(const Word& w, int alphabet_size, int max_class);

}  // namespace gamma_omega
