#include <doctest.h>

#include <cstdlib>
#include <random>

#include "gamma_omega/errors.hpp"
#include "gamma_omega/nq.hpp"
#include "gamma_omega/oracles.hpp"
#include "test_util.hpp"

using namespace gamma_omega;

namespace {

const FpPresentation kDihedral = FpPresentation::parse({"a", "b"}, {"a^2", "a^-1*b*a*b"});
const FpPresentation kFree2 = FpPresentation::parse({"a", "b"}, {});

// Order of G / gamma_{c+1} by coset enumeration over the trivial subgroup.
std::int64_t class_quotient_order_by_enumeration(const FpPresentation& p, int c,
                                                 const std::vector<Word>& extra = {}) {
  std::vector<std::vector<int>> rels;
  for (const auto& r : p.relators) rels.push_back(test_util::signed_letters(r));
  for (const auto& r : extra) rels.push_back(test_util::signed_letters(r));
  for (const auto& w : test_util::left_normed_commutators(static_cast<int>(p.rank()), c + 1))
    rels.push_back(test_util::signed_letters(w));
  return oracles::coset_enumeration(static_cast<int>(p.rank()), rels, {}, 200000);
}

Word random_commutator_product(std::mt19937_64& rng, int rank, int factors) {
  Word w;
  for (int i = 0; i < factors; ++i)
    w = w * commutator(test_util::random_word(rng, rank, 5), test_util::random_word(rng, rank, 5));
  return w;
}

}  // namespace

TEST_CASE("dihedral tower orders") {
  const Tower t(kDihedral, 10);
  for (int c = 1; c <= 10; ++c) {
    const auto& q = t.level(c);
    CAPTURE(c);
    CHECK(q.group.order() == Integer(1) << (c + 1));
    CHECK(q.layer(1) == FgAbelianGroup(0, {2, 2}));
    if (c >= 2) CHECK(q.layer(c) == FgAbelianGroup::cyclic(2));
  }
}

TEST_CASE("quotient orders agree with coset enumeration") {
  const FpPresentation c3 = FpPresentation::parse({"a", "b"}, {"a^3", "b^3"});
  const FpPresentation c2c2c2 = FpPresentation::parse({"x", "y", "z"}, {"x^2", "y^2", "z^2"});
  const FpPresentation c4 = FpPresentation::parse({"a", "b"}, {"a^4", "b^4", "[a,b]^2"});
  const std::vector<std::pair<FpPresentation, int>> cases = {{kDihedral, 5}, {c3, 3}, {c2c2c2, 3}, {c4, 4}};
  for (const auto& [p, max_c] : cases) {
    NilpotentQuotient q;
    for (int c = 1; c <= max_c; ++c) {
      q = nilpotent_quotient_step(p, q);
      CAPTURE(c);
      const auto order = q.group.order();
      REQUIRE(order.has_value());
      CHECK(order->get_si() == class_quotient_order_by_enumeration(p, c));
    }
  }
}

TEST_CASE("free nilpotent layers have Witt ranks") {
  for (int r = 1; r <= 3; ++r) {
    const int depth = r == 3 ? 5 : 7;
    std::vector<std::string> names = default_generator_names(r);
    const auto q = nilpotent_quotient(FpPresentation::parse(names, {}), depth);
    for (int k = 1; k <= depth; ++k) {
      CAPTURE(r);
      CAPTURE(k);
      CHECK(q.layer(k) == FgAbelianGroup::free(static_cast<std::size_t>(oracles::necklace_count(r, k))));
    }
  }
}

TEST_CASE("degenerate presentations") {
  const auto trivial = nilpotent_quotient(FpPresentation::parse({"a"}, {"a"}), 3);
  CHECK(trivial.group.size() == 0);
  CHECK(trivial.group.order() == Integer(1));
  const auto z2 = nilpotent_quotient(FpPresentation::parse({"a"}, {"a^2"}), 4);
  CHECK(z2.group.order() == Integer(2));
  const auto z = nilpotent_quotient(FpPresentation::parse({"a"}, {}), 2);
  CHECK(z.layer(1) == FgAbelianGroup::free(1));
  // Trivial abelianization forces every nilpotent quotient to be trivial.
  const auto perfect =
      nilpotent_quotient(FpPresentation::parse({"a", "b"}, {"a*b*a^-1*b^-2", "b*a*b^-1*a^-2"}), 3);
  CHECK(perfect.group.order() == Integer(1));
  CHECK_THROWS_AS(FpPresentation::parse({"a", "a"}, {}), InvalidArgument);
  CHECK_THROWS_AS(nilpotent_quotient(kFree2, 0), InvalidArgument);
  NqLimits small;
  small.max_class = 3;
  CHECK_THROWS_AS(nilpotent_quotient(kFree2, 4, small), ResourceLimitError);
  small.max_class = 12;
  small.max_generators = 5;
  CHECK_THROWS_AS(nilpotent_quotient(kFree2, 4, small), ResourceLimitError);
}

TEST_CASE("evaluation and projection are compatible") {
  const Tower t(kDihedral, 6);
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 30; ++trial) {
    const Word u = test_util::random_word(rng, 2, 10), v = test_util::random_word(rng, 2, 10);
    const auto eu = TowerElement::from_word(t, u);
    CHECK(eu.is_compatible(t));
    const auto& top = t.level(6);
    CHECK(top.evaluate(u * v) == top.group.multiply(top.evaluate(u), top.evaluate(v)));
    CHECK(top.evaluate(kDihedral.relators[1]) == top.group.identity());
  }
}

TEST_CASE("commutator decomposition examples") {
  const Tower t(kDihedral, 10);
  const auto names = kDihedral.generators;
  // b^2 = [b^-1, a] in this group.
  const auto b2 = TowerElement::from_word(t, parse_word("b^2", names));
  const auto gs = decompose_as_commutators(t, b2, {0});
  REQUIRE(gs.size() == 1);
  for (int c = 1; c <= 10; ++c) CHECK(commutator_product(t, c, gs, {0}) == b2.components[c - 1]);

  const Tower f(kFree2, 4);
  const auto ab = TowerElement::from_word(f, parse_word("[a,b]", kFree2.generators));
  const auto hs = decompose_as_commutators(f, ab, {0, 1});
  for (int c = 1; c <= 4; ++c) CHECK(commutator_product(f, c, hs, {0, 1}) == ab.components[c - 1]);
}

TEST_CASE("commutator decomposition on random elements") {
  std::mt19937_64 rng(2024);
  const Tower d(kDihedral, 10);
  const Tower f(kFree2, 6);
  for (const Tower* t : {&d, &f}) {
    for (int trial = 0; trial < 15; ++trial) {
      const Word w = random_commutator_product(rng, 2, 1 + static_cast<int>(rng() % 3));
      const auto a = TowerElement::from_word(*t, w);
      const auto gs = decompose_as_commutators(*t, a, {0, 1});
      for (const auto& g : gs) CHECK(g.is_compatible(*t));
      for (int c = 1; c <= t->max_class(); ++c) CHECK(commutator_product(*t, c, gs, {0, 1}) == a.components[c - 1]);
    }
  }
}

TEST_CASE("commutator decomposition failures") {
  const Tower f(kFree2, 3);
  // [[b,a],b] is not a single commutator with a modulo gamma_4.
  const auto w = TowerElement::from_word(f, parse_word("[[b,a],b]", kFree2.generators));
  CHECK_THROWS_AS(decompose_as_commutators(f, w, {0}), ComputationError);
  try {
    decompose_as_commutators(f, w, {0});
  } catch (const ComputationError& e) {
    CHECK(std::string(e.what()).find("level 3") != std::string::npos);
  }
  const auto a = TowerElement::from_word(f, parse_word("a", kFree2.generators));
  CHECK_THROWS_AS(decompose_as_commutators(f, a, {0, 1}), InvalidArgument);
  CHECK_THROWS_AS(decompose_as_commutators(f, w, {}), InvalidArgument);
  CHECK_THROWS_AS(decompose_as_commutators(f, w, {7}), InvalidArgument);
}

TEST_CASE("decomposition depends on the commutator convention") {
  // Reading the factors with the other convention b a b^-1 a^-1 must break the
  // reconstruction for some element; this guards against a silent swap.
  const Tower f(kFree2, 4);
  std::mt19937_64 rng(8);
  bool differs = false;
  for (int trial = 0; trial < 10 && !differs; ++trial) {
    const auto a = TowerElement::from_word(f, random_commutator_product(rng, 2, 2));
    const auto gs = decompose_as_commutators(f, a, {0, 1});
    const auto& top = f.level(4);
    Exponents other = top.group.identity();
    for (std::size_t i = 0; i < 2; ++i) {
      const Exponents& g = gs[i].components[3];
      const Exponents& x = top.images[i];
      top.group.multiply_in_place(other, top.group.multiply(top.group.multiply(g, x),
                                                            top.group.inverse(top.group.multiply(x, g))));
    }
    differs = other != a.components[3];
  }
  CHECK(differs);
}

TEST_CASE("normal generation agrees with coset enumeration") {
  const Tower t(kDihedral, 5);
  const std::vector<std::vector<std::size_t>> subsets = {{0, 1}, {0}, {1}};
  for (const auto& xs : subsets) {
    const auto report = normal_generation_check(t, xs);
    REQUIRE(report.size() == 5);
    for (int c = 1; c <= 5; ++c) {
      std::vector<Word> extra;
      for (auto x : xs) extra.push_back(Word::generator(static_cast<int>(x)));
      const bool oracle = class_quotient_order_by_enumeration(kDihedral, c, extra) == 1;
      CAPTURE(c);
      CHECK(report[c - 1].generated == oracle);
    }
  }
  // ab kills b only up to a^2 = 1: not normally generating.
  const auto ab = FpPresentation::parse({"a", "b", "ab"}, {"a^2", "a^-1*b*a*b", "ab^-1*a*b"});
  const Tower t3(ab, 3);
  for (const auto& lvl : normal_generation_check(t3, {2})) {
    CHECK(!lvl.generated);
    CHECK(lvl.failing_layer == 1);
  }
  const Tower f(kFree2, 4);
  for (const auto& lvl : normal_generation_check(f, {0, 1})) CHECK(lvl.generated);
  const auto partial = normal_generation_check(f, {0});
  CHECK(!partial[0].generated);
}

TEST_CASE("class cap from the environment") {
  CHECK(NqLimits{}.max_class == 12);
  setenv("GAMMA_OMEGA_MAX_CLASS", "5", 1);
  CHECK(NqLimits::from_environment().max_class == 5);
  setenv("GAMMA_OMEGA_MAX_CLASS", "five", 1);
  CHECK_THROWS_AS(NqLimits::from_environment(), InvalidArgument);
  unsetenv("GAMMA_OMEGA_MAX_CLASS");
  CHECK(NqLimits::from_environment().max_class == 12);
}
