#pragma once

#include <random>

#include "gamma_omega/abelian.hpp"
#include "gamma_omega/words.hpp"

namespace test_util {

using gamma_omega::AbMap;
using gamma_omega::FgAbelianGroup;
using gamma_omega::IntMatrix;
using gamma_omega::Integer;

inline IntMatrix mat(const std::vector<std::vector<Integer>>& rows, std::size_t cols = 0) {
  return IntMatrix::from_rows(rows, cols);
}

// A random homomorphism: entries are drawn freely and then scaled so that every
// torsion generator is sent to an element of compatible order.
inline AbMap random_abmap(std::mt19937_64& rng, const FgAbelianGroup& dom, const FgAbelianGroup& cod, int range = 6) {
  std::uniform_int_distribution<int> dist(-range, range);
  IntMatrix m(cod.num_generators(), dom.num_generators());
  for (std::size_t j = 0; j < m.cols(); ++j)
    for (std::size_t i = 0; i < m.rows(); ++i) {
      const Integer d = dom.generator_order(j);
      const Integer e = cod.generator_order(i);
      Integer x = dist(rng);
      if (d != 0) {
        if (e == 0) {
          x = 0;
        } else {
          Integer g;
          mpz_gcd(g.get_mpz_t(), d.get_mpz_t(), e.get_mpz_t());
          x *= e / g;
        }
      }
      m(i, j) = x;
    }
  return AbMap(dom, cod, m);
}

// Random word of at most `max_len` letters with exponents in [-2, 2] \ {0}.
inline gamma_omega::Word random_word(std::mt19937_64& rng, int alphabet, int max_len) {
  std::vector<gamma_omega::Letter> letters;
  const int len = static_cast<int>(rng() % (max_len + 1));
  for (int i = 0; i < len; ++i) {
    const int gen = static_cast<int>(rng() % alphabet);
    std::int64_t e = static_cast<std::int64_t>(rng() % 2) + 1;
    if (rng() % 2) e = -e;
    letters.push_back({gen, e});
  }
  return gamma_omega::reduce(gamma_omega::Word(letters));
}

// Letters as signed 1-based integers, the encoding used by coset enumeration.
inline std::vector<int> signed_letters(const gamma_omega::Word& w) {
  std::vector<int> out;
  for (const auto& l : w.letters())
    for (std::int64_t k = 0; k < (l.exp < 0 ? -l.exp : l.exp); ++k) out.push_back(l.exp < 0 ? -(l.gen + 1) : l.gen + 1);
  return out;
}

// Every left-normed commutator [x_1, ..., x_n] in the generators; their normal
// closure is gamma_n.
inline std::vector<gamma_omega::Word> left_normed_commutators(int rank, int n) {
  std::vector<gamma_omega::Word> out;
  for (int g = 0; g < rank; ++g) out.push_back(gamma_omega::Word::generator(g));
  for (int k = 2; k <= n; ++k) {
    std::vector<gamma_omega::Word> next;
    for (const auto& u : out)
      for (int g = 0; g < rank; ++g) next.push_back(gamma_omega::commutator(u, gamma_omega::Word::generator(g)));
    out = std::move(next);
  }
  return out;
}

}  // namespace test_util
