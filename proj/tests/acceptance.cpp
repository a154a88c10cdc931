// Acceptance run: one PASS/FAIL line per criterion with its time limit.

#include <fmt/format.h>

#include <chrono>
#include <functional>
#include <iostream>
#include <set>

#include "gamma_omega/homology.hpp"
#include "gamma_omega/json_io.hpp"
#include "gamma_omega/milnor.hpp"
#include "gamma_omega/selftest.hpp"
#include "gamma_omega/whitehead.hpp"

using namespace gamma_omega;

namespace {

constexpr std::uint64_t kSeed = 20240611;

struct Outcome {
  bool ok = true;
  std::string detail;

  void require(bool cond, const std::string& what) {
    if (cond) return;
    if (ok) detail = what;
    ok = false;
  }
};

const FgAbelianGroup kZ = FgAbelianGroup::cyclic(0);
const FgAbelianGroup kZ2 = FgAbelianGroup::cyclic(2);

E2Page negation_page(int p_max, int q_max) {
  return lhs_e2_split(kZ, AbMap(kZ, kZ, IntMatrix::diagonal({-1})), 2, p_max, q_max);
}

std::string suite_detail(const SuiteResult& r) {
  std::string d = fmt::format("{} checks, {} failures", r.checks, r.failures);
  if (!r.failure_notes.empty()) d += "; first: " + r.failure_notes.front();
  return d;
}

Outcome from_suite(const SuiteResult& r) { return {r.passed() && r.checks > 0, suite_detail(r)}; }

Outcome criterion_e2() {
  Outcome o;
  const E2Page page = negation_page(6, 1);
  for (int p = 0; p <= 6; ++p)
    for (int q = 0; q <= 1; ++q) {
      const E2Cell* c = page.find(p, q);
      FgAbelianGroup expected;
      if (p == 0 && q == 0) expected = kZ;
      else if ((q == 1 && p % 2 == 0) || (q == 0 && p % 2 == 1)) expected = kZ2;
      o.require(c && c->group && *c->group == expected,
                fmt::format("E2({},{}) = {}", p, q, c && c->group ? c->group->to_string() : "missing"));
    }
  if (o.ok) o.detail = "14 cells match";
  return o;
}

Outcome criterion_homology() {
  Outcome o;
  const HomologyAssembly h = assemble_homology(negation_page(7, 1), 7);
  o.require(h.complete(), "assembly left ambiguities");
  for (int i = 0; i <= 7 && o.ok; ++i) {
    const FgAbelianGroup expected = i == 0 ? kZ : (i % 2 ? FgAbelianGroup(0, {2, 2}) : FgAbelianGroup());
    o.require(h.groups.at(i) && *h.groups[i] == expected, fmt::format("H_{} wrong", i));
  }
  if (o.ok) o.detail = "H_0..H_7 match";
  return o;
}

// Subgroup generated by gens, by closing under right multiplication.
std::set<Exponents> subgroup(const PcGroup& g, const std::vector<Exponents>& gens) {
  std::set<Exponents> h{g.identity()};
  std::vector<Exponents> frontier{g.identity()};
  while (!frontier.empty()) {
    std::vector<Exponents> next;
    for (const auto& x : frontier)
      for (const auto& s : gens) {
        Exponents y = g.multiply(x, s);
        if (h.insert(y).second) next.push_back(std::move(y));
      }
    frontier = std::move(next);
  }
  return h;
}

// Derived subgroup of <gens> by brute force: normal closure of [s, t].
std::set<Exponents> derived_subgroup(const PcGroup& g, const std::vector<Exponents>& gens) {
  std::vector<Exponents> s;
  for (const auto& x : gens)
    for (const auto& y : gens) s.push_back(g.commutator(x, y));
  std::set<Exponents> h = subgroup(g, s);
  for (bool grown = true; grown;) {
    grown = false;
    for (std::size_t i = 0; i < s.size() && !grown; ++i)
      for (const auto& x : gens) {
        Exponents c = g.multiply(g.multiply(g.inverse(x), s[i]), x);
        if (!h.count(c)) {
          s.push_back(std::move(c));
          h = subgroup(g, s);
          grown = true;
          break;
        }
      }
  }
  return h;
}

Outcome criterion_dihedral() {
  Outcome o;
  const Tower t(dihedral_presentation(), 10);
  for (int c = 1; c <= 10 && o.ok; ++c) {
    const auto& q = t.level(c);
    const PcGroup& g = q.group;
    const Integer order = Integer(1) << (c + 1);
    o.require(g.order() == order, fmt::format("level {} has order {}", c, g.order() ? g.order()->get_str() : "inf"));
    std::vector<Exponents> gens;
    for (std::size_t i = 0; i < g.size(); ++i) gens.push_back(g.generator(i));
    // The whole group is reached from the images of a and b.
    o.require(Integer(static_cast<unsigned long>(subgroup(g, q.images).size())) == order,
              fmt::format("level {}: images do not generate", c));
    const auto derived = derived_subgroup(g, gens);
    const Integer index = order / static_cast<unsigned long>(derived.size());
    o.require(index == 4, fmt::format("level {}: derived subgroup of index {}", c, index.get_str()));
    for (const auto& x : q.images)
      o.require(derived.count(g.multiply(x, x)) == 1, fmt::format("level {}: abelianization not elementary", c));
    // <b> is cyclic of order 2^c, hence of index 2.
    Exponents x = q.images[1];
    Integer k = 1;
    while (x != g.identity() && k <= order) {
      x = g.multiply(x, q.images[1]);
      ++k;
    }
    o.require(k == (Integer(1) << c), fmt::format("level {}: b has order {}", c, k.get_str()));
  }
  if (o.ok) o.detail = "orders 2^(c+1), abelianization Z/2 + Z/2, <b> of index 2 for c = 1..10";
  return o;
}

Outcome criterion_rational() {
  Outcome o;
  const Integer d2 = coker_w(negation_extension_input(2)), d3 = coker_w(negation_extension_input(3));
  o.require(d2 == 1, fmt::format("n=2 gives {}", d2.get_str()));
  o.require(d3 == 6, fmt::format("n=3 gives {}", d3.get_str()));
  o.require(pi3_sequence(negation_extension_input(3)).infinitely_generated, "pi_3 flag not raised for n=3");
  bool flagged = false;
  for (const auto& s : verification_pipeline_report().steps)
    for (const auto& [k, v] : s.data)
      if (k == "pi3_infinitely_generated" && v == "true" && s.status == StepStatus::Checked) flagged = true;
  o.require(flagged, "report does not raise the pi_3 flag");
  if (o.ok) o.detail = "dims 1 and 6, flag raised";
  return o;
}

Outcome criterion_gamma2() {
  const SuiteResult r = gamma2_suite(16);
  Outcome o = from_suite(r);
  o.require(r.checks == 25, fmt::format("{} isomorphism types enumerated", r.checks));
  return o;
}

Outcome criterion_witt() {
  Outcome o = from_suite(witt_suite(4, 8));
  o.require(HallBasis(2, 8).counts() == std::vector<std::size_t>{2, 1, 2, 3, 6, 9, 18, 30}, "rank 2 counts");
  return o;
}

Outcome criterion_reconstruction() {
  const SuiteResult d = reconstruction_suite(kSeed, dihedral_presentation(), 10, 50, "dihedral");
  const SuiteResult f = reconstruction_suite(kSeed + 1, free_presentation(2), 8, 50, "free2");
  Outcome o{d.passed() && f.passed() && d.checks == 50 && f.checks == 50,
            fmt::format("dihedral depth 10: {}; free rank 2 depth 8: {}", suite_detail(d), suite_detail(f))};
  return o;
}

Outcome criterion_milnor() {
  const SuiteResult lk = linking_suite(kSeed, 20);
  Outcome o = from_suite(lk);
  const LinkData hopf = braid_closure(BraidWord{2, {1, 1}});
  o.require(abs(mu_bar(hopf, {1, 2}).value) == 1, "Hopf |mu(12)| != 1");
  const LinkData borromean = braid_closure(BraidWord{3, {1, -2, 1, -2, 1, -2}});
  for (int i = 1; i <= 3; ++i)
    for (int j = 1; j <= 3; ++j)
      if (i != j) o.require(mu_bar(borromean, {i, j}).value == 0, fmt::format("Borromean mu({}{}) != 0", i, j));
  o.require(abs(mu_bar(borromean, {1, 2, 3}).value) == 1, "Borromean |mu(123)| != 1");
  const LinkData unlink = braid_closure(BraidWord{3, {}});
  bool vanishes = true;
  for (const auto& l : vanish_up_to(unlink, 6)) vanishes = vanishes && l.vanishes;
  o.require(vanishes, "unlink does not vanish up to 6");
  if (o.ok) o.detail = suite_detail(lk) + "; Hopf, Borromean and unlink as expected";
  return o;
}

Outcome criterion_magnus() {
  const SuiteResult r = magnus_suite(kSeed, 200, 5);
  Outcome o = from_suite(r);
  o.require(r.checks == 200, "wrong number of pairs");
  return o;
}

Outcome criterion_determinism() {
  Outcome o;
  const Report base = verification_pipeline_report();
  const std::string text = base.to_text(), json = Json(base).dump();
  for (int run = 0; run < 2; ++run) o.require(verification_pipeline_report().to_text() == text, "text differs between runs");
  for (int threads : {2, 4, 8}) {
    ReportOptions opt;
    opt.threads = threads;
    const Report r = verification_pipeline_report(opt);
    o.require(r.to_text() == text, fmt::format("text differs with {} threads", threads));
    o.require(Json(r).dump() == json, fmt::format("JSON differs with {} threads", threads));
  }
  if (o.ok) o.detail = fmt::format("{} steps identical over 3 runs and threads 1,2,4,8", base.steps.size());
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    int number;
    std::string name;
    double limit_seconds;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria = {
      {1, "E2 page of Z x| C_2", 1.0, criterion_e2},
      {2, "homology of Z x| C_2", 1.0, criterion_homology},
      {3, "dihedral tower", 5.0, criterion_dihedral},
      {4, "rational cokernel", 1.0, criterion_rational},
      {5, "Gamma^2 oracle", 10.0, criterion_gamma2},
      {6, "Witt counts", 5.0, criterion_witt},
      {7, "commutator reconstruction", 60.0, criterion_reconstruction},
      {8, "Milnor invariants", 30.0, criterion_milnor},
      {9, "Magnus homomorphism", 10.0, criterion_magnus},
      {10, "report determinism", 60.0, criterion_determinism},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, fmt::format("exception: {}", e.what())};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (secs > c.limit_seconds) {
      o.ok = false;
      o.detail += fmt::format("; over time limit {:.0f} s", c.limit_seconds);
    }
    if (!o.ok) ++failures;
    std::cout << fmt::format("{} criterion {:>2}: {} ({:.3f} s, limit {:.0f} s) {}\n", o.ok ? "PASS" : "FAIL",
                             c.number, c.name, secs, c.limit_seconds, o.detail);
  }
  std::cout << fmt::format("{} of {} criteria passed\n", criteria.size() - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
