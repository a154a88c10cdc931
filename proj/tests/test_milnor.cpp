#include <doctest.h>

#include <algorithm>
#include <random>

#include "gamma_omega/errors.hpp"
#include "gamma_omega/milnor.hpp"
#include "gamma_omega/oracles.hpp"

using namespace gamma_omega;

namespace {

const BraidWord kHopf{2, {1, 1}};
const BraidWord kBorromean{3, {1, -2, 1, -2, 1, -2}};

BraidWord random_braid(std::mt19937_64& rng, int strands, int length) {
  BraidWord b{strands, {}};
  for (int i = 0; i < length; ++i) {
    const int g = 1 + static_cast<int>(rng() % (strands - 1));
    b.letters.push_back(rng() % 2 ? g : -g);
  }
  return b;
}

std::vector<std::vector<int>> all_indices(int components, int max_length) {
  std::vector<std::vector<int>> out;
  for (int len = 2; len <= max_length; ++len) {
    std::vector<int> idx(len, 1);
    for (;;) {
      out.push_back(idx);
      int t = len - 1;
      while (t >= 0 && idx[t] == components) idx[t--] = 1;
      if (t < 0) break;
      ++idx[t];
    }
  }
  return out;
}

// mu-bar residues agree after some relabeling of the components.
bool same_up_to_relabeling(const LinkData& a, const LinkData& b, int max_length) {
  if (a.num_components() != b.num_components()) return false;
  const int k = static_cast<int>(a.num_components());
  const MilnorExpansion ea(a, max_length - 1), eb(b, max_length - 1);
  std::vector<int> perm(k);
  for (int i = 0; i < k; ++i) perm[i] = i + 1;
  do {
    bool ok = true;
    for (const auto& idx : all_indices(k, max_length)) {
      std::vector<int> mapped;
      for (int i : idx) mapped.push_back(perm[i - 1]);
      const MuValue va = ea.mu_bar(idx), vb = eb.mu_bar(mapped);
      if (va.value != vb.value || va.modulus != vb.modulus) {
        ok = false;
        break;
      }
    }
    if (ok) return true;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return false;
}

}  // namespace

TEST_CASE("braid words parse and print") {
  const auto b = BraidWord::parse("s1 s2^-1 s1^3");
  CHECK(b.strands == 3);
  CHECK(b.letters == std::vector<int>{1, -2, 1, 1, 1});
  CHECK(BraidWord::parse(b.to_string(), 3) == b);
  CHECK(BraidWord::parse("1", 4).letters.empty());
  CHECK(BraidWord::parse("", 2).strands == 2);
  CHECK(BraidWord::parse("s1*s1", 0) == kHopf);
  CHECK_THROWS_AS(BraidWord::parse("s0"), InvalidArgument);
  CHECK_THROWS_AS(BraidWord::parse("s3", 3), InvalidArgument);
  CHECK_THROWS_AS(BraidWord::parse("t1"), InvalidArgument);
  CHECK_THROWS_AS(BraidWord::parse("s1^"), InvalidArgument);
  CHECK_THROWS_AS(braid_closure(BraidWord{0, {}}), InvalidArgument);
}

TEST_CASE("artin action is an automorphism action") {
  // sigma_1 sigma_2 sigma_1 = sigma_2 sigma_1 sigma_2 and sigma sigma^-1 = 1.
  CHECK(artin_action(BraidWord{3, {1, 2, 1}}) == artin_action(BraidWord{3, {2, 1, 2}}));
  CHECK(artin_action(BraidWord{3, {2, -2, 1, -1}}) == artin_action(BraidWord{3, {}}));
  // Far commutation on four strands.
  CHECK(artin_action(BraidWord{4, {1, 3}}) == artin_action(BraidWord{4, {3, 1}}));
  // The product of all generators is fixed.
  const auto images = artin_action(BraidWord{4, {1, -3, 2, 2, -1}});
  Word product;
  for (const auto& w : images) product = product * w;
  CHECK(reduce(product) == parse_word("abcd", default_generator_names(4)));
}

TEST_CASE("closure components and longitudes") {
  const LinkData hopf = braid_closure(kHopf);
  CHECK(hopf.num_components() == 2);
  CHECK(hopf.components == std::vector<std::vector<int>>{{0}, {1}});
  const LinkData unlink = braid_closure(BraidWord{2, {}});
  for (const auto& l : unlink.longitudes) CHECK(l.empty());
  const LinkData borromean = braid_closure(kBorromean);
  CHECK(borromean.num_components() == 3);
  const LinkData trefoil = braid_closure(BraidWord{2, {1, 1, 1}});
  CHECK(trefoil.num_components() == 1);
  CHECK(trefoil.components[0] == std::vector<int>{0, 1});
  CHECK(trefoil.writhe[0] == 3);
  for (const BraidWord& b : {kHopf, kBorromean, BraidWord{3, {1, 1, 1, 2, 2}}, BraidWord{3, {1, 2, -1, -1, 2}}}) {
    const LinkData link = braid_closure(b);
    CHECK(peripheral_check(link, 4));
    // Zero framing: the own meridian has exponent sum zero in the longitude.
    for (std::size_t c = 0; c < link.num_components(); ++c) {
      std::int64_t self = 0;
      for (const auto& l : link.longitudes[c].letters())
        if (link.component_of_strand[l.gen] == static_cast<int>(c)) self += l.exp;
      CHECK(self == 0);
    }
  }
}

TEST_CASE("linking numbers agree with signed crossing counts") {
  std::mt19937_64 rng(404);
  for (int trial = 0; trial < 60; ++trial) {
    const int strands = 2 + static_cast<int>(rng() % 2);
    const BraidWord b = random_braid(rng, strands, 1 + static_cast<int>(rng() % 10));
    const LinkData link = braid_closure(b);
    const auto lk = oracles::braid_linking_matrix(b.strands, b.letters);
    const int k = static_cast<int>(link.num_components());
    REQUIRE(lk.size() == link.num_components());
    const MilnorExpansion e(link, 1);
    for (int i = 1; i <= k; ++i)
      for (int j = 1; j <= k; ++j) {
        if (i == j) continue;
        CAPTURE(b.to_string());
        CHECK(e.mu({i, j}) == lk[i - 1][j - 1]);
        CHECK(e.indeterminacy({i, j}) == 0);
      }
  }
}

TEST_CASE("Hopf link and unlinks") {
  const LinkData hopf = braid_closure(kHopf);
  const MuValue v = mu_bar(hopf, {1, 2});
  CHECK(abs(v.value) == 1);
  CHECK(v.modulus == 0);
  const auto levels = vanish_up_to(hopf, 2);
  REQUIRE(levels.size() == 1);
  CHECK(!levels[0].vanishes);
  CHECK(levels[0].witness->index == std::vector<int>{1, 2});

  CHECK(mu_bar(braid_closure(BraidWord{2, {}}), {1, 2}).value == 0);
  const auto unlink = vanish_up_to(braid_closure(BraidWord{3, {}}), 6);
  REQUIRE(unlink.size() == 5);
  for (const auto& level : unlink) CHECK(level.vanishes);
}

TEST_CASE("Borromean rings") {
  const LinkData link = braid_closure(kBorromean);
  const MilnorExpansion e(link, 2);
  for (int i = 1; i <= 3; ++i)
    for (int j = 1; j <= 3; ++j) CHECK(e.mu_bar({i, j}).value == 0);
  const MuValue v = e.mu_bar({1, 2, 3});
  CHECK(abs(v.value) == 1);
  CHECK(v.modulus == 0);
  // Degree-two part of the third longitude is +-(Y1 Y2 - Y2 Y1).
  CHECK(e.longitude(2).coefficient({0, 1}) == -e.longitude(2).coefficient({1, 0}));
  // Cyclic symmetry and antisymmetry at the first nonvanishing length.
  CHECK(e.mu({2, 3, 1}) == v.value);
  CHECK(e.mu({3, 1, 2}) == v.value);
  CHECK(e.mu({2, 1, 3}) == -v.value);
  const auto levels = vanish_up_to(link, 3);
  CHECK(levels[0].vanishes);
  CHECK(!levels[1].vanishes);
  CHECK(levels[1].witness->index == std::vector<int>{1, 2, 3});
}

TEST_CASE("invariance under stabilization and conjugation") {
  std::mt19937_64 rng(77);
  const std::vector<BraidWord> samples = {kHopf, kBorromean, BraidWord{3, {1, 1, 2, 2}}, BraidWord{3, {1, 2, 2, 1}},
                                          random_braid(rng, 3, 8), random_braid(rng, 3, 8)};
  for (const auto& b : samples) {
    CAPTURE(b.to_string());
    const LinkData link = braid_closure(b);
    for (int sign : {1, -1}) {
      BraidWord st{b.strands + 1, b.letters};
      st.letters.push_back(sign * b.strands);
      const LinkData stabilized = braid_closure(st);
      REQUIRE(stabilized.num_components() == link.num_components());
      const MilnorExpansion e1(link, 2), e2(stabilized, 2);
      for (const auto& idx : all_indices(static_cast<int>(link.num_components()), 3))
        CHECK(e1.mu_bar(idx) == e2.mu_bar(idx));
    }
    for (int g = 1; g < b.strands; ++g) {
      BraidWord conj{b.strands, {g}};
      conj.letters.insert(conj.letters.end(), b.letters.begin(), b.letters.end());
      conj.letters.push_back(-g);
      CHECK(same_up_to_relabeling(link, braid_closure(conj), 3));
    }
  }
}

TEST_CASE("relabeling permutes indices") {
  // Borromean rings with strands 1 and 3 swapped by conjugation.
  const LinkData a = braid_closure(kBorromean);
  BraidWord c{3, {1, 2, 1}};
  c.letters.insert(c.letters.end(), kBorromean.letters.begin(), kBorromean.letters.end());
  for (int l : {-1, -2, -1}) c.letters.push_back(l);
  CHECK(same_up_to_relabeling(a, braid_closure(c), 3));
  // Hopf versus unlink is not a relabeling.
  CHECK(!same_up_to_relabeling(braid_closure(kHopf), braid_closure(BraidWord{2, {}}), 2));
}

TEST_CASE("milnor errors and caps") {
  const LinkData hopf = braid_closure(kHopf);
  CHECK_THROWS_AS(mu_bar(hopf, {1}), InvalidArgument);
  CHECK_THROWS_AS(mu_bar(hopf, {1, 3}), InvalidArgument);
  CHECK_THROWS_AS(vanish_up_to(hopf, 1), InvalidArgument);
  MilnorLimits small;
  small.max_length = 3;
  CHECK_THROWS_AS(mu_bar(hopf, {1, 2, 1, 2}, small), ResourceLimitError);
  CHECK_THROWS_AS(vanish_up_to(hopf, 4, small), ResourceLimitError);
  const MilnorExpansion e(hopf, 2);
  CHECK_THROWS_AS(e.mu({1, 2, 1, 2}), InvalidArgument);
}
