#include <doctest.h>

#include <random>

#include "gamma_omega/errors.hpp"
#include "gamma_omega/oracles.hpp"
#include "gamma_omega/quadratic.hpp"
#include "test_util.hpp"

using namespace gamma_omega;
using test_util::mat;

namespace {

const FunctorName kGamma = FunctorName::gamma2();

std::vector<Integer> big(const std::vector<std::int64_t>& v) {
  std::vector<Integer> out;
  for (auto x : v) out.emplace_back(static_cast<long>(x));
  return out;
}

}  // namespace

TEST_CASE("functor names") {
  CHECK(FunctorName::parse("ext:3") == FunctorName::exterior(3));
  CHECK(FunctorName::parse("gamma2").to_string() == "gamma2");
  CHECK(FunctorName::parse("tensor2") == FunctorName::tensor_square());
  CHECK_THROWS_AS(FunctorName::parse("ext:0"), InvalidArgument);
  CHECK_THROWS_AS(FunctorName::parse("ext:x"), InvalidArgument);
  CHECK_THROWS_AS(FunctorName::parse("lambda"), InvalidArgument);
}

TEST_CASE("functor_apply examples") {
  CHECK(functor_apply(kGamma, FgAbelianGroup::free(2)) == FgAbelianGroup::free(3));
  CHECK(functor_apply(kGamma, FgAbelianGroup::cyclic(2)) == FgAbelianGroup::cyclic(4));
  CHECK(functor_apply(kGamma, FgAbelianGroup::cyclic(3)) == FgAbelianGroup::cyclic(3));
  const auto a = FgAbelianGroup::direct_sum_of_cyclics({4, 6});
  CHECK(functor_apply(FunctorName::exterior(2), a) == FgAbelianGroup::cyclic(2));
  CHECK(oracles::exterior_square_by_enumeration({4, 6}) == FgAbelianGroup::cyclic(2));
  CHECK(functor_apply(FunctorName::exterior(2), FgAbelianGroup::free(1)).is_trivial());
  // More factors than generators gives zero.
  CHECK(functor_apply(FunctorName::exterior(3), a).is_trivial());
  CHECK(functor_apply(FunctorName::exterior(1), a) == a);
  CHECK(functor_apply(FunctorName::tensor_square(), a) == FgAbelianGroup::direct_sum_of_cyclics({4, 2, 2, 6}));
  CHECK(functor_apply(FunctorName::sym2(), FgAbelianGroup::free(3)) == FgAbelianGroup::free(6));
}

TEST_CASE("exterior square agrees with enumeration oracle") {
  for (std::int64_t n = 1; n <= 16; ++n)
    for (const auto& orders : oracles::abelian_groups_of_order(n)) {
      const auto a = FgAbelianGroup::direct_sum_of_cyclics(big(orders));
      CHECK(functor_apply(FunctorName::exterior(2), a) == oracles::exterior_square_by_enumeration(orders));
    }
}

TEST_CASE("gamma2 oracle examples") {
  CHECK(gamma2_oracle(FgAbelianGroup::cyclic(2), 16) == FgAbelianGroup::cyclic(4));
  CHECK(gamma2_oracle(FgAbelianGroup::cyclic(3), 16) == FgAbelianGroup::cyclic(3));
  CHECK(gamma2_oracle(FgAbelianGroup(), 16).is_trivial());
  CHECK_THROWS_AS(gamma2_oracle(FgAbelianGroup::free(1), 16), InvalidArgument);
  CHECK_THROWS_AS(gamma2_oracle(FgAbelianGroup::cyclic(17), 16), ResourceLimitError);
}

TEST_CASE("gamma2 structure rule agrees with the oracle for all groups of order <= 16") {
  int types = 0;
  for (std::int64_t n = 1; n <= 16; ++n)
    for (const auto& orders : oracles::abelian_groups_of_order(n)) {
      const auto a = FgAbelianGroup::direct_sum_of_cyclics(big(orders));
      CAPTURE(a.to_string());
      CHECK(functor_apply(kGamma, a) == gamma2_oracle(a, 16));
      ++types;
    }
  CHECK(types == 25);
}

TEST_CASE("rational dimensions") {
  CHECK(rational_dim(FunctorName::exterior(4), 3) == 0);
  CHECK(rational_dim(FunctorName::exterior(4), 2) == 0);
  CHECK(rational_dim(kGamma, 3) == 6);
  CHECK(rational_dim(FunctorName::exterior(2), 0) == 0);
  CHECK(rational_dim(FunctorName::tensor_square(), 3) == 9);
  CHECK(infinitely_generated_as_abelian_group(rational_dim(kGamma, 1)));
  CHECK(!infinitely_generated_as_abelian_group(rational_dim(FunctorName::exterior(4), 3)));
  for (std::size_t d = 0; d <= 10; ++d)
    CHECK(rational_dim(kGamma, d) - rational_dim(FunctorName::exterior(2), d) == Integer(static_cast<long>(d)));
}

TEST_CASE("gamma2 rational dimension matches the oracle rank over F_p") {
  // Gamma^2((Z/p)^d) = (Z/p)^{d(d+1)/2} for odd p; its generator count is the
  // rank of the defining relation system, which equals the rational count.
  for (std::size_t d = 1; d <= 3; ++d) {
    const auto a = FgAbelianGroup::direct_sum_of_cyclics(std::vector<Integer>(d, Integer(3)));
    const auto g = gamma2_oracle(a, 27);
    CHECK(g.is_finite());
    CHECK(Integer(static_cast<long>(g.num_generators())) == rational_dim(kGamma, d));
  }
}

TEST_CASE("functor_map examples") {
  const auto z2 = FgAbelianGroup::cyclic(2);
  CHECK(functor_map(kGamma, AbMap::identity(z2)) == AbMap::identity(FgAbelianGroup::cyclic(4)));

  const auto z = FgAbelianGroup::free(1);
  const auto times2 = functor_map(kGamma, AbMap(z, z, mat({{2}})));
  CHECK(times2.matrix() == mat({{4}}));

  // Z^2 -> Z/2 + Z/2, identity on coordinates.
  const auto v4 = FgAbelianGroup::direct_sum_of_cyclics({2, 2});
  const auto ext = functor_map(FunctorName::exterior(2), AbMap(FgAbelianGroup::free(2), v4, mat({{1, 0}, {0, 1}})));
  CHECK(ext.domain() == z);
  CHECK(ext.codomain() == z2);
  CHECK(map_kernel_cokernel(ext).cokernel.is_trivial());
}

TEST_CASE("functor laws on random maps") {
  std::mt19937_64 rng(2024);
  std::vector<FgAbelianGroup> groups;
  for (std::int64_t n = 1; n <= 12; ++n)
    for (const auto& orders : oracles::abelian_groups_of_order(n))
      groups.push_back(FgAbelianGroup::direct_sum_of_cyclics(big(orders)));
  groups.push_back(FgAbelianGroup::free(1));
  groups.push_back(FgAbelianGroup::free(2));
  groups.push_back(FgAbelianGroup(1, {2}));
  const std::vector<FunctorName> functors = {kGamma, FunctorName::tensor_square(), FunctorName::sym2(),
                                             FunctorName::exterior(2), FunctorName::exterior(3)};
  for (int trial = 0; trial < 150; ++trial) {
    const auto& a = groups[rng() % groups.size()];
    const auto& b = groups[rng() % groups.size()];
    const auto& c = groups[rng() % groups.size()];
    const AbMap f = test_util::random_abmap(rng, a, b);
    const AbMap g = test_util::random_abmap(rng, b, c);
    for (const auto& fn : functors) {
      CAPTURE(fn.to_string());
      CAPTURE(a.to_string());
      CAPTURE(b.to_string());
      CAPTURE(c.to_string());
      CHECK(functor_map(fn, g.compose(f)) == functor_map(fn, g).compose(functor_map(fn, f)));
      CHECK(functor_map(fn, AbMap::identity(a)) == AbMap::identity(functor_apply(fn, a)));
      CHECK(functor_map(fn, f).codomain() == functor_apply(fn, b));
    }
  }
}
