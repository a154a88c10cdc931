#include "gamma_omega/json_io.hpp"

#include <fmt/format.h>

#include "gamma_omega/errors.hpp"

namespace gamma_omega {

namespace {

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw InvalidArgument(fmt::format("JSON: missing field \"{}\"", key));
  return j.at(key);
}

std::size_t count_from_json(const Json& j, const char* what) {
  const Integer x = integer_from_json(j);
  if (x < 0 || !x.fits_ulong_p()) throw InvalidArgument(fmt::format("JSON: {} must be a non-negative count", what));
  return x.get_ui();
}

}  // namespace

Integer integer_from_json(const Json& j) {
  try {
    if (j.is_string()) return Integer(j.get<std::string>(), 10);
    if (j.is_number_integer()) return Integer(j.dump(), 10);
  } catch (const std::invalid_argument&) {
  }
  throw InvalidArgument(fmt::format("JSON: expected an integer, got {}", j.dump()));
}

Json integer_to_json(const Integer& x) { return x.get_str(); }

Json exponents_to_json(const Exponents& e) {
  Json out = Json::array();
  for (const auto& x : e) out.push_back(integer_to_json(x));
  return out;
}

void to_json(Json& j, const IntMatrix& m) {
  Json rows = Json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) rows.push_back(exponents_to_json(m.row(r)));
  j = Json{{"rows", m.rows()}, {"cols", m.cols()}, {"entries", rows}};
}

void from_json(const Json& j, IntMatrix& m) {
  // A bare array of rows is accepted as well.
  const Json& entries = j.is_array() ? j : field(j, "entries");
  if (!entries.is_array()) throw InvalidArgument("JSON: matrix entries must be an array of rows");
  std::vector<std::vector<Integer>> rows;
  for (const auto& row : entries) {
    if (!row.is_array()) throw InvalidArgument("JSON: matrix row must be an array");
    std::vector<Integer> r;
    for (const auto& x : row) r.push_back(integer_from_json(x));
    rows.push_back(std::move(r));
  }
  std::size_t cols = rows.empty() ? 0 : rows.front().size();
  if (j.is_object() && j.contains("cols")) cols = count_from_json(j.at("cols"), "cols");
  for (const auto& r : rows)
    if (r.size() != cols) throw InvalidArgument("JSON: matrix rows have inconsistent lengths");
  if (j.is_object() && j.contains("rows") && count_from_json(j.at("rows"), "rows") != rows.size())
    throw InvalidArgument("JSON: matrix row count does not match entries");
  m = IntMatrix::from_rows(rows, cols);
}

void to_json(Json& j, const FgAbelianGroup& g) {
  j = Json{{"free_rank", g.free_rank()}, {"torsion", exponents_to_json(g.torsion())}};
}

void from_json(const Json& j, FgAbelianGroup& g) {
  const std::size_t free_rank = count_from_json(field(j, "free_rank"), "free_rank");
  std::vector<Integer> torsion;
  for (const auto& d : field(j, "torsion")) torsion.push_back(integer_from_json(d));
  g = FgAbelianGroup(free_rank, torsion);
}

void to_json(Json& j, const AbMap& f) {
  j = Json{{"domain", f.domain()}, {"codomain", f.codomain()}, {"matrix", f.matrix()}};
}

AbMap abmap_from_json(const Json& j) {
  return AbMap(field(j, "domain").get<FgAbelianGroup>(), field(j, "codomain").get<FgAbelianGroup>(),
               field(j, "matrix").get<IntMatrix>());
}

void to_json(Json& j, const FunctorName& f) { j = f.to_string(); }

void from_json(const Json& j, FunctorName& f) {
  if (!j.is_string()) throw InvalidArgument("JSON: functor name must be a string");
  f = FunctorName::parse(j.get<std::string>());
}

void to_json(Json& j, const FpPresentation& p) {
  Json rels = Json::array();
  for (const auto& r : p.relators) rels.push_back(r.to_string(p.generators));
  j = Json{{"generators", p.generators}, {"relators", rels}};
}

void from_json(const Json& j, FpPresentation& p) {
  p = FpPresentation::parse(field(j, "generators").get<std::vector<std::string>>(),
                            field(j, "relators").get<std::vector<std::string>>());
}

void to_json(Json& j, const PcPresentation& p) {
  Json gens = Json::array();
  for (std::size_t i = 0; i < p.weights.size(); ++i)
    gens.push_back({{"weight", p.weights[i]}, {"relative_order", integer_to_json(p.relative_orders[i])}});
  Json powers = Json::array();
  for (std::size_t i = 0; i < p.weights.size(); ++i)
    if (p.relative_orders[i] != 0) powers.push_back({{"generator", i}, {"value", exponents_to_json(p.powers[i])}});
  Json conj = Json::array();
  for (std::size_t i = 0; i < p.conj.size(); ++i)
    for (std::size_t j2 = 0; j2 < p.conj[i].size(); ++j2) {
      // g_i^{g_j} = g_i is left implicit.
      Exponents plain(p.weights.size(), Integer(0));
      plain[i] = 1;
      if (p.conj[i][j2] != plain)
        conj.push_back({{"i", i}, {"j", j2}, {"value", exponents_to_json(p.conj[i][j2])}});
    }
  j = Json{{"generators", gens}, {"powers", powers}, {"conjugates", conj}};
}

void from_json(const Json& j, PcPresentation& p) {
  p = PcPresentation{};
  const Json& gens = field(j, "generators");
  const std::size_t n = gens.size();
  for (const auto& g : gens) {
    p.weights.push_back(field(g, "weight").get<int>());
    p.relative_orders.push_back(integer_from_json(field(g, "relative_order")));
  }
  auto vec = [&](const Json& v) {
    Exponents e;
    for (const auto& x : v) e.push_back(integer_from_json(x));
    if (e.size() != n) throw InvalidArgument("JSON: exponent vector has the wrong length");
    return e;
  };
  p.powers.assign(n, Exponents(n, Integer(0)));
  for (const auto& pw : field(j, "powers")) {
    const std::size_t i = count_from_json(field(pw, "generator"), "generator");
    if (i >= n) throw InvalidArgument("JSON: power relation for a missing generator");
    p.powers[i] = vec(field(pw, "value"));
  }
  p.conj.resize(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < i; ++k) {
      Exponents plain(n, Integer(0));
      plain[i] = 1;
      p.conj[i].push_back(plain);
    }
  for (const auto& c : field(j, "conjugates")) {
    const std::size_t i = count_from_json(field(c, "i"), "i"), k = count_from_json(field(c, "j"), "j");
    if (i >= n || k >= i) throw InvalidArgument("JSON: conjugate relation index out of range");
    p.conj[i][k] = vec(field(c, "value"));
  }
}

Json quotient_to_json(const NilpotentQuotient& q) {
  const auto order = q.group.order();
  Json layers = Json::array();
  for (int k = 1; k <= q.nilpotency_class; ++k) layers.push_back(q.layer(k));
  Json images = Json::array();
  for (const auto& e : q.images) images.push_back(exponents_to_json(e));
  Json defs = Json::array();
  for (const auto& d : q.definitions) {
    switch (d.kind) {
      case PcDefinition::Kind::Image: defs.push_back(fmt::format("image of generator {}", d.a + 1)); break;
      case PcDefinition::Kind::Commutator: defs.push_back(fmt::format("[g{},g{}]", d.a + 1, d.b + 1)); break;
      case PcDefinition::Kind::Power: defs.push_back(fmt::format("g{}^r", d.a + 1)); break;
    }
  }
  return Json{{"class", q.nilpotency_class},
              {"order", order ? Json(integer_to_json(*order)) : Json(nullptr)},
              {"layers", layers},
              {"presentation", q.group.presentation()},
              {"images", images},
              {"definitions", defs}};
}

Json magnus_to_json(const MagnusSeries& s) {
  Json terms = Json::array();
  for (const auto& [m, c] : s.coefficients()) terms.push_back({{"monomial", m}, {"coefficient", integer_to_json(c)}});
  return Json{{"alphabet_size", s.alphabet_size()}, {"degree", s.degree()}, {"terms", terms}};
}

void to_json(Json& j, const E2Page& page) {
  Json cells = Json::array();
  for (const auto& c : page.cells)
    cells.push_back({{"p", c.p}, {"q", c.q}, {"group", c.group ? Json(*c.group) : Json(nullptr)}, {"note", c.note}});
  j = Json{{"m", page.m},
           {"p_max", page.p_max},
           {"q_max", page.q_max},
           {"zero_above_q", page.zero_above_q ? Json(*page.zero_above_q) : Json(nullptr)},
           {"cells", cells}};
}

void from_json(const Json& j, E2Page& page) {
  page = E2Page{};
  page.m = j.contains("m") ? j.at("m").get<int>() : 2;
  page.p_max = field(j, "p_max").get<int>();
  page.q_max = field(j, "q_max").get<int>();
  if (j.contains("zero_above_q") && !j.at("zero_above_q").is_null()) page.zero_above_q = j.at("zero_above_q").get<int>();
  for (const auto& c : field(j, "cells")) {
    E2Cell cell;
    cell.p = field(c, "p").get<int>();
    cell.q = field(c, "q").get<int>();
    if (c.contains("group") && !c.at("group").is_null()) cell.group = c.at("group").get<FgAbelianGroup>();
    if (c.contains("note")) cell.note = c.at("note").get<std::string>();
    page.cells.push_back(std::move(cell));
  }
}

void to_json(Json& j, const HomologyAssembly& h) {
  Json groups = Json::array();
  for (std::size_t i = 0; i < h.groups.size(); ++i)
    groups.push_back({{"degree", i}, {"group", h.groups[i] ? Json(*h.groups[i]) : Json(nullptr)}});
  Json amb = Json::array();
  for (const auto& a : h.ambiguities) amb.push_back({{"degree", a.degree}, {"reason", a.reason}});
  j = Json{{"homology", groups}, {"ambiguities", amb}, {"complete", h.complete()}};
}

void to_json(Json& j, const BraidWord& b) { j = Json{{"strands", b.strands}, {"word", b.letters}}; }

void from_json(const Json& j, BraidWord& b) {
  b.strands = field(j, "strands").get<int>();
  b.letters = field(j, "word").get<std::vector<int>>();
  b.validate();
}

void to_json(Json& j, const MuValue& v) {
  j = Json{{"index", v.index}, {"value", integer_to_json(v.value)}, {"modulus", integer_to_json(v.modulus)}};
}

void from_json(const Json& j, MuValue& v) {
  v.index = field(j, "index").get<std::vector<int>>();
  v.value = integer_from_json(field(j, "value"));
  v.modulus = integer_from_json(field(j, "modulus"));
}

void to_json(Json& j, const VanishingLevel& v) {
  j = Json{{"length", v.length}, {"vanishes", v.vanishes}, {"witness", v.witness ? Json(*v.witness) : Json(nullptr)}};
}

Json link_to_json(const LinkData& link) {
  Json comps = Json::array();
  for (const auto& c : link.components) {
    Json strands = Json::array();
    for (int s : c) strands.push_back(s + 1);
    comps.push_back(strands);
  }
  Json meridians = Json::array(), longitudes = Json::array();
  for (std::size_t c = 0; c < link.num_components(); ++c) {
    meridians.push_back(link.meridians[c].to_string(link.group.generators));
    longitudes.push_back(link.longitudes[c].to_string(link.group.generators));
  }
  return Json{{"braid", link.braid},
              {"components", comps},
              {"group", link.group},
              {"meridians", meridians},
              {"longitudes", longitudes},
              {"framing_correction", link.framing_correction},
              {"writhe", link.writhe}};
}

void to_json(Json& j, const WhiteheadTerm& t) {
  if (t.group)
    j = Json{{"group", *t.group}};
  else
    j = Json{{"q_dim", integer_to_json(t.rational_dim)}};
}

void to_json(Json& j, const Pi3Report& r) {
  j = Json{{"coker_w", r.coker},
           {"h3", r.h3},
           {"statement", r.statement},
           {"infinitely_generated", r.infinitely_generated}};
}

void to_json(Json& j, const Report& r) {
  Json steps = Json::array();
  for (const auto& s : r.steps) {
    Json data = Json::object();
    for (const auto& [k, v] : s.data) data[k] = v;
    steps.push_back({{"claim", s.claim}, {"status", to_string(s.status)}, {"data", data}});
  }
  j = Json{{"steps", steps}};
}

void from_json(const Json& j, Report& r) {
  r.steps.clear();
  for (const auto& s : field(j, "steps")) {
    ReportStep step;
    step.claim = field(s, "claim").get<std::string>();
    const std::string status = field(s, "status").get<std::string>();
    if (status == "CHECKED")
      step.status = StepStatus::Checked;
    else if (status == "ASSUMED")
      step.status = StepStatus::Assumed;
    else
      throw InvalidArgument(fmt::format("JSON: unknown step status \"{}\"", status));
    for (const auto& [k, v] : field(s, "data").items()) step.data.emplace_back(k, v.get<std::string>());
    r.steps.push_back(std::move(step));
  }
}

}  // namespace gamma_omega
