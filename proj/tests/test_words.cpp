#include <doctest.h>

#include <random>

#include "gamma_omega/errors.hpp"
#include "gamma_omega/oracles.hpp"
#include "gamma_omega/words.hpp"
#include "test_util.hpp"

using namespace gamma_omega;

namespace {

const auto kNames = default_generator_names(4);

Word w(const std::string& s) { return parse_word(s, kNames); }

}  // namespace

TEST_CASE("reduction") {
  CHECK(w("a b B a") == Word({{0, 2}}));
  CHECK(reduce(Word()) == Word());
  CHECK(w("[a,b]") == Word({{0, -1}, {1, -1}, {0, 1}, {1, 1}}));
  CHECK(reduce(w("[a,b]")) == w("[a,b]"));
  CHECK(reduce(Word({{0, 1}, {1, 0}, {0, -1}})).empty());
  std::mt19937_64 rng(1);
  for (int i = 0; i < 100; ++i) {
    const Word u = test_util::random_word(rng, 3, 12);
    CHECK((u * u.inverse()).empty());
    CHECK(reduce(reduce(u)) == reduce(u));
  }
}

TEST_CASE("parser") {
  CHECK(w("a^2 b^-1") == Word({{0, 2}, {1, -1}}));
  CHECK(w("a^-1*b*a*b") == Word({{0, -1}, {1, 1}, {0, 1}, {1, 1}}));
  CHECK(w("(ab)^2") == Word({{0, 1}, {1, 1}, {0, 1}, {1, 1}}));
  CHECK(w("(ab)^-1") == Word({{1, -1}, {0, -1}}));
  CHECK(w("[[a,b],b]") == commutator(commutator(w("a"), w("b")), w("b")));
  CHECK(w("[a,b,c]") == w("[[a,b],c]"));
  CHECK(w("[a^2, [b, c^-1]]") == commutator(w("a^2"), commutator(w("b"), w("c^-1"))));
  CHECK(w("1").empty());
  CHECK(w("a^+3") == Word({{0, 3}}));
  CHECK_THROWS_AS(w("a^"), InvalidArgument);
  CHECK_THROWS_AS(w("[a b]"), InvalidArgument);
  CHECK_THROWS_AS(w("z"), InvalidArgument);
  CHECK_THROWS_AS(w(""), InvalidArgument);
  CHECK_THROWS_AS(w("(a"), InvalidArgument);
  // Round trip through the printer.
  std::mt19937_64 rng(9);
  for (int i = 0; i < 50; ++i) {
    const Word u = test_util::random_word(rng, 4, 10);
    CHECK(w(u.to_string(kNames)) == u);
  }
  // Multi-letter names.
  const std::vector<std::string> names = {"x1", "x2", "x10"};
  CHECK(parse_word("x10 x1^-1", names) == Word({{2, 1}, {0, -1}}));
}

TEST_CASE("commutator convention") {
  // [b^-1, a] = b a^-1 b^-1 a.
  CHECK(w("[B,a]") == Word({{1, 1}, {0, -1}, {1, -1}, {0, 1}}));
}

TEST_CASE("hall basis counts") {
  CHECK(HallBasis(2, 5).counts() == std::vector<std::size_t>{2, 1, 2, 3, 6});
  CHECK(HallBasis(2, 8).counts() == std::vector<std::size_t>{2, 1, 2, 3, 6, 9, 18, 30});
  const auto rank1 = HallBasis(1, 6).counts();
  for (std::size_t k = 1; k < rank1.size(); ++k) CHECK(rank1[k] == 0);
  CHECK(HallBasis(3, 2).counts()[1] == 3);
  for (int r = 1; r <= 4; ++r) {
    const auto counts = HallBasis(r, 8).counts();
    for (int k = 1; k <= 8; ++k) {
      CAPTURE(r);
      CAPTURE(k);
      CHECK(static_cast<std::int64_t>(counts[k - 1]) == oracles::necklace_count(r, k));
    }
  }
  CHECK_THROWS_AS(HallBasis(0, 3), InvalidArgument);
}

TEST_CASE("hall basis elements are deterministic and have the right weight") {
  const HallBasis h(2, 4);
  const auto names = default_generator_names(2);
  CHECK(h.to_string(h.of_weight(2)[0], names) == "[b,a]");
  std::vector<std::string> w3;
  for (auto i : h.of_weight(3)) w3.push_back(h.to_string(i, names));
  CHECK(w3 == std::vector<std::string>{"[[b,a],a]", "[[b,a],b]"});
  for (int k = 1; k <= 4; ++k)
    for (auto i : h.of_weight(k)) CHECK(lcs_weight(h.word(i), 2, 6) == LcsWeight{LcsWeight::Kind::Exact, k});
}

TEST_CASE("magnus expansion examples") {
  const auto names = default_generator_names(2);
  CHECK(magnus_expand(w("a"), 1, 3).to_string(names) == "1 + X_a");
  auto inv = magnus_expand(w("A"), 1, 2);
  CHECK(inv.to_string(names) == "1 - X_a + X_a*X_a");
  CHECK(inv * MagnusSeries::generator(1, 2, 0) == MagnusSeries::one(1, 2));
  // (1-X+X^2)(1-Y+Y^2)(1+X)(1+Y) up to degree 2, by hand: 1 + XY - YX.
  MagnusSeries expected = MagnusSeries::one(2, 2);
  expected.add_term({0, 1}, 1);
  expected.add_term({1, 0}, -1);
  CHECK(magnus_expand(w("[a,b]"), 2, 2) == expected);
  CHECK(magnus_expand(Word(), 2, 4) == MagnusSeries::one(2, 4));
  // x^-2 -> 1 - 2X + 3X^2 - 4X^3
  const auto sq = magnus_letter(1, 3, 0, -2);
  CHECK(sq.coefficient({}) == 1);
  CHECK(sq.coefficient({0}) == -2);
  CHECK(sq.coefficient({0, 0}) == 3);
  CHECK(sq.coefficient({0, 0, 0}) == -4);
}

TEST_CASE("lcs weight") {
  CHECK(lcs_weight(w("a"), 2, 5) == LcsWeight{LcsWeight::Kind::Exact, 1});
  CHECK(lcs_weight(w("[a,b]"), 2, 5) == LcsWeight{LcsWeight::Kind::Exact, 2});
  CHECK(lcs_weight(w("[[a,b],b]"), 2, 5) == LcsWeight{LcsWeight::Kind::Exact, 3});
  CHECK(lcs_weight(Word(), 2, 5).kind == LcsWeight::Kind::Infinite);
  CHECK(lcs_weight(w("[[a,b],[a,b,a]]"), 2, 4) == LcsWeight{LcsWeight::Kind::AtLeast, 5});
}

TEST_CASE("magnus homomorphism property") {
  std::mt19937_64 rng(12345);
  for (int trial = 0; trial < 200; ++trial) {
    const int d = 1 + static_cast<int>(rng() % 5);
    const Word u = test_util::random_word(rng, 3, 12);
    const Word v = test_util::random_word(rng, 3, 12);
    const auto eu = magnus_expand(u, 3, d);
    const auto ev = magnus_expand(v, 3, d);
    CHECK(magnus_expand(u * v, 3, d) == eu * ev);
    CHECK(eu * magnus_expand(u.inverse(), 3, d) == MagnusSeries::one(3, d));
    CHECK(eu.inverse() == magnus_expand(u.inverse(), 3, d));
  }
}

TEST_CASE("commutator grading of lcs weight") {
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 100; ++trial) {
    Word u = test_util::random_word(rng, 2, 6);
    Word v = test_util::random_word(rng, 2, 6);
    if (rng() % 2) u = commutator(u, test_util::random_word(rng, 2, 3));
    const int d = 6;
    const auto lu = lcs_weight(u, 2, d);
    const auto lv = lcs_weight(v, 2, d);
    if (lu.kind != LcsWeight::Kind::Exact || lv.kind != LcsWeight::Kind::Exact) continue;
    const auto lc = lcs_weight(commutator(u, v), 2, d);
    if (lc.kind == LcsWeight::Kind::Exact) CHECK(lc.value >= lu.value + lv.value);
  }
}
