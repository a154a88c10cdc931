#include <doctest.h>

#include "gamma_omega/errors.hpp"
#include "gamma_omega/json_io.hpp"
#include "test_util.hpp"

using namespace gamma_omega;

namespace {

template <class T>
T round_trip(const T& x) {
  const Json j = x;
  const Json parsed = Json::parse(j.dump());
  CHECK(parsed == j);
  return parsed.get<T>();
}

}  // namespace

TEST_CASE("abelian values round-trip") {
  const FgAbelianGroup g(2, {2, 12});
  CHECK(round_trip(g) == g);
  const Json j = g;
  CHECK(j.dump() == R"({"free_rank":2,"torsion":["2","12"]})");
  const IntMatrix m = test_util::mat({{1, -2}, {3, 4}});
  CHECK(round_trip(m) == m);
  Integer big;
  mpz_ui_pow_ui(big.get_mpz_t(), 10, 40);
  const IntMatrix huge = test_util::mat({{big}});
  CHECK(round_trip(huge) == huge);
  CHECK(Json::parse("[[1,2],[3,4]]").get<IntMatrix>() == test_util::mat({{1, 2}, {3, 4}}));
  CHECK(Json::parse(R"({"rows":0,"cols":3,"entries":[]})").get<IntMatrix>().cols() == 3);
  CHECK_THROWS_AS(Json::parse(R"({"rows":1,"cols":2,"entries":[["1"]]})").get<IntMatrix>(), InvalidArgument);
  CHECK_THROWS_AS(Json::parse(R"({"free_rank":-1,"torsion":[]})").get<FgAbelianGroup>(), InvalidArgument);
  CHECK_THROWS_AS(Json::parse(R"({"free_rank":0,"torsion":["x"]})").get<FgAbelianGroup>(), InvalidArgument);

  const AbMap f(FgAbelianGroup::free(1), FgAbelianGroup(1, {2}), test_util::mat({{1}, {2}}));
  const Json fj = f;
  CHECK(abmap_from_json(Json::parse(fj.dump())) == f);
  CHECK(round_trip(FunctorName::exterior(3)) == FunctorName::exterior(3));
}

TEST_CASE("presentations round-trip") {
  const FpPresentation p = FpPresentation::parse({"a", "b"}, {"a^2", "a^-1*b*a*b"});
  const FpPresentation back = round_trip(p);
  CHECK(back.generators == p.generators);
  CHECK(back.relators == p.relators);
  const auto q = nilpotent_quotient(p, 3);
  const PcPresentation pc = round_trip(q.group.presentation());
  CHECK(pc.weights == q.group.presentation().weights);
  CHECK(pc.powers == q.group.presentation().powers);
  CHECK(pc.conj == q.group.presentation().conj);
  const Json qj = quotient_to_json(q);
  CHECK(qj.at("order") == "16");
  CHECK(Json::parse(qj.dump()) == qj);
}

TEST_CASE("pages, braids and reports round-trip") {
  const FgAbelianGroup z = FgAbelianGroup::cyclic(0);
  const E2Page page = lhs_e2_split(z, AbMap(z, z, test_util::mat({{-1}})), 2, 4, 1);
  const E2Page back = round_trip(page);
  REQUIRE(back.cells.size() == page.cells.size());
  for (std::size_t i = 0; i < page.cells.size(); ++i) {
    CHECK(back.cells[i].group == page.cells[i].group);
    CHECK(back.cells[i].note == page.cells[i].note);
  }
  CHECK(back.zero_above_q == page.zero_above_q);

  const BraidWord b{3, {1, -2, 1, -2, 1, -2}};
  CHECK(round_trip(b) == b);
  CHECK(Json(b).dump() == R"({"strands":3,"word":[1,-2,1,-2,1,-2]})");
  CHECK_THROWS_AS(Json::parse(R"({"strands":2,"word":[2]})").get<BraidWord>(), InvalidArgument);
  const MuValue v{{1, 2, 3}, Integer(-1), Integer(0)};
  CHECK(round_trip(v) == v);

  const Report r = verification_pipeline_report();
  const Json rj = r;
  const Report rb = Json::parse(rj.dump()).get<Report>();
  CHECK(Json(rb) == rj);
  CHECK(rj.at("steps").size() == r.steps.size());
  CHECK(Json::parse(link_to_json(braid_closure(b)).dump()) == link_to_json(braid_closure(b)));
}
