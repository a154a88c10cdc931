#include "gamma_omega/whitehead.hpp"

#include <fmt/format.h>

#include <functional>
#include <future>

#include "gamma_omega/errors.hpp"
#include "gamma_omega/homology.hpp"
#include "gamma_omega/quadratic.hpp"

namespace gamma_omega {

bool WhiteheadTerm::infinitely_generated() const {
  if (group) return group->free_rank() > 0;
  return infinitely_generated_as_abelian_group(rational_dim);
}

std::string WhiteheadTerm::to_string() const {
  if (group) return group->to_string();
  if (rational_dim == 0) return "0";
  if (rational_dim == 1) return "Q";
  return "Q^" + rational_dim.get_str();
}

FgAbelianGroup coker_w(const WhiteheadInput& input) {
  if (!(input.w.domain() == input.h4)) throw InvalidArgument("w must be defined on H_4");
  const FgAbelianGroup target = functor_apply(FunctorName::gamma2(), input.h2);
  if (!(input.w.codomain() == target))
    throw InvalidArgument(
        fmt::format("w must land in Gamma^2(H_2) = {}, got {}", target.to_string(), input.w.codomain().to_string()));
  return map_kernel_cokernel(input.w).cokernel;
}

std::size_t rational_rank(const std::vector<std::vector<Rational>>& rows, std::size_t cols) {
  IntMatrix m(rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols) throw InvalidArgument("rational matrix rows have different lengths");
    Integer l = 1;
    for (const auto& x : rows[i]) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den_mpz_t());
    for (std::size_t j = 0; j < cols; ++j) {
      const Rational scaled = rows[i][j] * Rational(l);
      m(i, j) = scaled.get_num();
    }
  }
  return matrix_rank(m);
}

Integer coker_w(const RationalWhiteheadInput& input) {
  const Integer target = rational_dim(FunctorName::gamma2(), input.h2_dim);
  if (Integer(static_cast<unsigned long>(input.w.size())) != target)
    throw InvalidArgument(
        fmt::format("w must have dim Gamma^2(Q^{}) = {} rows, got {}", input.h2_dim, target.get_str(), input.w.size()));
  return target - static_cast<unsigned long>(rational_rank(input.w, input.h4_dim));
}

namespace {

Pi3Report make_pi3(WhiteheadTerm coker, WhiteheadTerm h3) {
  Pi3Report r;
  r.infinitely_generated = coker.infinitely_generated() || h3.infinitely_generated();
  r.statement = fmt::format("0 -> {} -> pi_3 -> {} -> 0", coker.to_string(), h3.to_string());
  r.coker = std::move(coker);
  r.h3 = std::move(h3);
  return r;
}

}  // namespace

Pi3Report pi3_sequence(const WhiteheadInput& input) {
  return make_pi3(WhiteheadTerm::integral(coker_w(input)), WhiteheadTerm::integral(input.h3));
}

Pi3Report pi3_sequence(const RationalWhiteheadInput& input) {
  return make_pi3(WhiteheadTerm::rational(coker_w(input)),
                  WhiteheadTerm::rational(static_cast<unsigned long>(input.h3_dim)));
}

std::vector<Integer> rational_homology_negation(std::size_t n, int i_max) {
  if (i_max < 0) throw InvalidArgument("i_max must be >= 0");
  const FgAbelianGroup zn = FgAbelianGroup::free(n);
  IntMatrix minus(n, n);
  for (std::size_t i = 0; i < n; ++i) minus(i, i) = -1;
  const AbMap negation(zn, zn, minus);
  std::vector<Integer> out{1};
  for (int i = 1; i <= i_max; ++i) {
    const AbMap t = i == 1 ? negation : functor_map(FunctorName::exterior(i), negation);
    const CyclicModule m(2, t);
    // Higher C_2-homology is torsion, so only coinvariants survive over Q.
    out.push_back(static_cast<unsigned long>(cyclic_homology(m, 0)[0].free_rank()));
  }
  return out;
}

RationalWhiteheadInput negation_extension_input(std::size_t n) {
  const auto h = rational_homology_negation(n, 4);
  if (h[4] != 0) throw InvalidArgument(fmt::format("H_4 of Q^{} x| C_2 is nonzero; w is not determined", n));
  RationalWhiteheadInput in;
  in.h2_dim = h[2].get_ui();
  in.h3_dim = h[3].get_ui();
  in.h4_dim = 0;
  in.w.assign(rational_dim(FunctorName::gamma2(), in.h2_dim).get_ui(), {});
  return in;
}

std::string to_string(StepStatus s) { return s == StepStatus::Checked ? "CHECKED" : "ASSUMED"; }

std::string Report::to_text() const {
  std::string out;
  for (const auto& s : steps) {
    out += fmt::format("{:<8} {}", to_string(s.status), s.claim);
    for (std::size_t i = 0; i < s.data.size(); ++i)
      out += fmt::format("{}{}={}", i == 0 ? "  [" : ", ", s.data[i].first, s.data[i].second);
    if (!s.data.empty()) out += "]";
    out += '\n';
  }
  return out;
}

namespace {

using Steps = std::vector<ReportStep>;

ReportStep checked(std::string claim, std::vector<std::pair<std::string, std::string>> data = {}) {
  return {std::move(claim), StepStatus::Checked, std::move(data)};
}

ReportStep assumed(std::string claim, std::vector<std::pair<std::string, std::string>> data = {}) {
  return {std::move(claim), StepStatus::Assumed, std::move(data)};
}

const FgAbelianGroup kZ = FgAbelianGroup::cyclic(0);

AbMap negation_on_z() { return AbMap(kZ, kZ, IntMatrix::from_rows({{-1}})); }

Steps tower_steps(const ReportOptions& o) {
  const FpPresentation g = FpPresentation::parse({"a", "b"}, {"a^2", "a^-1*b*a*b"});
  Steps out;
  out.push_back(checked("G = <a, b | a^2, a^-1*b*a*b> is Z x| C_2 with a acting on b = Z by inversion",
                        {{"generators", "a,b"}, {"relators", "a^2; a^-1*b*a*b"}}));
  const Tower tower(g, o.tower_class, o.limits);
  for (int c = 1; c <= o.tower_class; ++c) {
    const auto& q = tower.level(c);
    const Integer order = q.group.order().value_or(0);
    const auto b_order = q.group.element_order(q.images[1]);
    const bool index_two = b_order && order == 2 * *b_order;
    std::string claim = fmt::format("G/gamma_{}(G) has order {}", c + 1, order.get_str());
    if (index_two) claim += ", with <b> cyclic of index 2";
    out.push_back(checked(claim, {{"class", std::to_string(c)},
                                  {"order", order.get_str()},
                                  {"abelianization", q.layer(1).to_string()},
                                  {"order_of_b", b_order ? b_order->get_str() : "infinite"}}));
  }
  bool onto = true;
  for (const auto& lvl : normal_generation_check(tower, {0, 1})) onto = onto && lvl.generated;
  out.push_back(onto ? checked(fmt::format("the free group on a, b maps onto G/gamma_{}(G)", o.tower_class + 1))
                     : assumed(fmt::format("the free group on a, b maps onto G/gamma_{}(G)", o.tower_class + 1),
                               {{"machine_check", "failed"}}));
  return out;
}

Steps integral_page_steps(const ReportOptions& o) {
  Steps out;
  const E2Page page = lhs_e2_split(kZ, negation_on_z(), 2, o.page_columns, 1);
  for (const auto& cell : page.cells)
    out.push_back(checked(fmt::format("E2({},{}) for Z x| C_2 = {}", cell.p, cell.q, cell.group->to_string()),
                          {{"p", std::to_string(cell.p)}, {"q", std::to_string(cell.q)}, {"cell", cell.note}}));
  out.push_back(checked("E2(p,q) for Z x| C_2 vanishes for q >= 2 (the kernel is free of rank 1)"));
  return out;
}

Steps adic_page_steps(const ReportOptions& o) {
  Steps out;
  // Rows q <= 1 are modeled with Z in place of the 2-adic integers.
  const E2Page page = lhs_e2_split(kZ, negation_on_z(), 2, o.page_columns, 1);
  for (const auto& cell : page.cells)
    out.push_back(assumed(fmt::format("E2({},{}) for Z_2 x| C_2 = {}", cell.p, cell.q, cell.group->to_string()),
                          {{"p", std::to_string(cell.p)},
                           {"q", std::to_string(cell.q)},
                           {"model", "H_p(C_2; Z) and H_p(C_2; Z_2) agree via <b> -> Z_2"}}));
  for (int k = 1; 2 * k <= 6; ++k)
    out.push_back(assumed(fmt::format("E2(0,{}) for Z_2 x| C_2 = Lambda^{}(Z_2), a Q-vector space", 2 * k, 2 * k),
                          {{"p", "0"}, {"q", std::to_string(2 * k)}, {"cell", "symbolic"}}));
  return out;
}

Steps homology_steps(const ReportOptions& o) {
  Steps out;
  const E2Page page = lhs_e2_split(kZ, negation_on_z(), 2, o.homology_degree, 1);
  const HomologyAssembly h = assemble_homology(page, o.homology_degree);
  for (int i = 0; i <= o.homology_degree; ++i) {
    if (h.groups[i]) {
      out.push_back(checked(fmt::format("H_{}(Z x| C_2) = {}", i, h.groups[i]->to_string()),
                            {{"degree", std::to_string(i)}, {"group", h.groups[i]->to_string()}}));
    } else {
      out.push_back(assumed(fmt::format("H_{}(Z x| C_2) is not determined by the page", i),
                            {{"degree", std::to_string(i)}}));
    }
  }
  if (o.homology_degree >= 2 && h.groups[2]) {
    // The surjectivity argument cites H_2(G) = Z/2; the page gives H_2 directly.
    out.push_back(assumed("H_2(G) = Z/2 as cited in the surjectivity argument",
                          {{"computed_H_2", h.groups[2]->to_string()},
                           {"discrepancy", h.groups[2]->is_trivial() ? "true" : "false"}}));
  }
  out.push_back(assumed("H_i(Z_2 x| C_2) = Z/2 + Z/2 for odd i and Lambda^i(Z_2) for even i >= 2"));
  out.push_back(assumed("H_i(cof_G) = Lambda^i(Z_2) for even i >= 2 and 0 for odd i"));
  out.push_back(assumed("cof_G -> cof_1 is a homology equivalence of simply connected spaces"));
  return out;
}

Steps rational_steps() {
  Steps out;
  for (std::size_t n : {2, 3}) {
    const auto h = rational_homology_negation(n, 4);
    std::string dims;
    for (std::size_t i = 0; i < h.size(); ++i) dims += (i ? "," : "") + h[i].get_str();
    out.push_back(checked(fmt::format("dim_Q H_i(Q^{} x| C_2) for i <= 4 = ({})", n, dims),
                          {{"n", std::to_string(n)}, {"dims", dims}}));
    const RationalWhiteheadInput in = negation_extension_input(n);
    const Integer gamma = rational_dim(FunctorName::gamma2(), in.h2_dim);
    const Pi3Report r = pi3_sequence(in);
    out.push_back(checked(fmt::format("Lambda^4(Q^{}) = 0 and dim Gamma^2(Lambda^2(Q^{})) = {}", n, n, gamma.get_str()),
                          {{"n", std::to_string(n)}, {"gamma2_dim", gamma.get_str()}}));
    out.push_back(checked(fmt::format("coker dim (n={}) = {}", n, r.coker.rational_dim.get_str()),
                          {{"n", std::to_string(n)},
                           {"coker_dim", r.coker.rational_dim.get_str()},
                           {"sequence", r.statement},
                           {"pi3_infinitely_generated", r.infinitely_generated ? "true" : "false"}}));
  }
  out.push_back(assumed("Z_2 (x) Q maps onto Q^n, so the 2-adic cokernel maps onto the cokernel for Q^n"));
  return out;
}

Steps chain_steps() {
  Steps out;
  out.push_back(assumed("lim^1 B_k(G) = 0", {{"role", "cited"}}));
  out.push_back(assumed("H_1(F) -> H_1(F^) is an isomorphism, hence H_2(F^) = H_2(K_omega)"));
  out.push_back(assumed("H_2(F^) -> H_2(cof_G) = Lambda^2(Z_2) is onto"));
  out.push_back(assumed("Gamma^2(H_2(F^)) -> Gamma^2(H_2(cof_G)) is onto"));
  out.push_back(assumed("coker(H_4(F^) -> Gamma^2(H_2(F^))) maps onto an infinite divisible group"));
  out.push_back(assumed("H_2(F^) uncountable"));
  out.push_back(assumed("l: pi_3(K_infinity) -> pi_3(K_omega) is onto", {{"open", "true"}}));
  out.push_back(assumed("theta_omega in pi_3(K_omega) needs all mu-bar invariants to vanish; not computed here",
                        {{"computable", "false"}}));
  out.push_back(assumed("pi_3(K_omega) is infinitely generated for F free of rank 2",
                        {{"conclusion", "true"}}));
  return out;
}

}  // namespace

Report verification_pipeline_report(const ReportOptions& options) {
  if (options.tower_class < 1 || options.homology_degree < 0 || options.page_columns < 0)
    throw InvalidArgument("report bounds must be positive");
  if (options.threads < 1) throw InvalidArgument("thread count must be >= 1");
  const std::vector<std::function<Steps()>> tasks = {
      [&] { return tower_steps(options); },        [&] { return integral_page_steps(options); },
      [&] { return adic_page_steps(options); },    [&] { return homology_steps(options); },
      [] { return rational_steps(); },             [] { return chain_steps(); },
  };
  std::vector<Steps> parts(tasks.size());
  if (options.threads == 1) {
    for (std::size_t i = 0; i < tasks.size(); ++i) parts[i] = tasks[i]();
  } else {
    // Tasks are handed out in waves of `threads`; results keep their slot.
    for (std::size_t start = 0; start < tasks.size(); start += static_cast<std::size_t>(options.threads)) {
      std::vector<std::future<Steps>> running;
      const std::size_t end = std::min(tasks.size(), start + static_cast<std::size_t>(options.threads));
      for (std::size_t i = start; i < end; ++i) running.push_back(std::async(std::launch::async, tasks[i]));
      for (std::size_t i = start; i < end; ++i) parts[i] = running[i - start].get();
    }
  }
  Report r;
  for (auto& p : parts)
    for (auto& s : p) r.steps.push_back(std::move(s));
  return r;
}

}  // namespace gamma_omega
