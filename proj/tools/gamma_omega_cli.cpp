// gamma-omega: command-line front end.

#include <CLI11.hpp>
#include <fmt/format.h>

#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include "gamma_omega/errors.hpp"
#include "gamma_omega/json_io.hpp"
#include "gamma_omega/selftest.hpp"

using namespace gamma_omega;

namespace {

struct RunConfig {
  bool json = false;
  int threads = 1;
  std::uint64_t seed = 0;
  int max_class = 0;  // 0: environment or built-in default
  std::int64_t max_word_length = 0;

  NqLimits limits() const {
    NqLimits l = NqLimits::from_environment();
    if (max_class > 0) l.max_class = max_class;
    if (max_word_length > 0) l.max_relator_length = max_word_length;
    return l;
  }
};

void emit(const RunConfig& cfg, const Json& j, const std::string& text) {
  if (cfg.json)
    std::cout << j.dump(2) << "\n";
  else
    std::cout << text << (text.empty() || text.back() == '\n' ? "" : "\n");
}

// Literal JSON, or @path for a file.
Json read_json(const std::string& arg) {
  if (!arg.empty() && arg[0] == '@') {
    std::ifstream in(arg.substr(1));
    if (!in) throw InvalidArgument(fmt::format("cannot read {}", arg.substr(1)));
    std::stringstream ss;
    ss << in.rdbuf();
    return Json::parse(ss.str());
  }
  return Json::parse(arg);
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\n");
  if (b == std::string::npos) return {};
  return s.substr(b, s.find_last_not_of(" \t\n") - b + 1);
}

// JSON, or text such as "Z^2 + Z/2 + Z/12" and "0".
FgAbelianGroup parse_group(const std::string& arg) {
  const std::string t = trim(arg);
  if (!t.empty() && (t[0] == '{' || t[0] == '@')) return read_json(t).get<FgAbelianGroup>();
  std::vector<Integer> orders;
  std::stringstream ss(t);
  std::string term;
  while (std::getline(ss, term, '+')) {
    term = trim(term);
    if (term == "0") continue;
    if (term.empty() || term[0] != 'Z') throw InvalidArgument(fmt::format("bad group term '{}'", term));
    try {
      if (term == "Z") {
        orders.emplace_back(0);
      } else if (term[1] == '^') {
        const long k = std::stol(term.substr(2));
        if (k < 0) throw InvalidArgument("negative rank");
        orders.insert(orders.end(), static_cast<std::size_t>(k), Integer(0));
      } else if (term[1] == '/') {
        const Integer n(term.substr(2));
        if (n <= 0) throw InvalidArgument("cyclic order must be positive");
        orders.push_back(n);
      } else {
        throw InvalidArgument("");
      }
    } catch (const std::exception&) {
      throw InvalidArgument(fmt::format("bad group term '{}'", term));
    }
  }
  return FgAbelianGroup::direct_sum_of_cyclics(orders);
}

IntMatrix parse_matrix(const std::string& arg) { return read_json(arg).get<IntMatrix>(); }

BraidWord parse_braid(const std::string& arg, int strands) {
  const std::string t = trim(arg);
  if (!t.empty() && (t[0] == '{' || t[0] == '@')) {
    BraidWord b = read_json(t).get<BraidWord>();
    if (strands > 0 && strands != b.strands) throw InvalidArgument("--strands disagrees with the JSON braid");
    return b;
  }
  return BraidWord::parse(t, strands);
}

std::vector<std::size_t> generator_indices(const FpPresentation& p, const std::vector<std::string>& names) {
  std::vector<std::size_t> out;
  if (names.empty()) {
    for (std::size_t i = 0; i < p.rank(); ++i) out.push_back(i);
    return out;
  }
  for (const auto& n : names) {
    const auto it = std::find(p.generators.begin(), p.generators.end(), n);
    if (it == p.generators.end()) throw InvalidArgument(fmt::format("unknown generator '{}'", n));
    out.push_back(static_cast<std::size_t>(it - p.generators.begin()));
  }
  return out;
}

std::string join(const std::vector<std::string>& parts, const std::string& sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) out += (i ? sep : "") + parts[i];
  return out;
}

std::string index_string(const std::vector<int>& index) {
  std::vector<std::string> parts;
  for (int i : index) parts.push_back(std::to_string(i));
  return join(parts, ",");
}

std::string order_string(const PcGroup& g) {
  const auto o = g.order();
  return o ? o->get_str() : "infinite";
}

std::string pc_text(const PcGroup& g) {
  std::string out;
  const auto& p = g.presentation();
  for (std::size_t i = 0; i < g.size(); ++i) {
    out += fmt::format("  g{} weight {}", i + 1, p.weights[i]);
    if (p.relative_orders[i] > 0)
      out += fmt::format(", g{}^{} = {}", i + 1, p.relative_orders[i].get_str(), g.element_to_string(p.powers[i]));
    out += "\n";
  }
  for (std::size_t i = 0; i < g.size(); ++i)
    for (std::size_t j = 0; j < i; ++j) {
      Exponents trivial = g.generator(i);
      if (p.conj[i][j] == trivial) continue;
      out += fmt::format("  g{}^g{} = {}\n", i + 1, j + 1, g.element_to_string(p.conj[i][j]));
    }
  return out;
}

struct PresentationArgs {
  std::vector<std::string> gens;
  std::vector<std::string> rels;
  std::string presentation;

  void add(CLI::App* sub) {
    sub->add_option("--gens", gens, "Generator names, comma separated")->delimiter(',');
    sub->add_option("--rel", rels, "Relator word (repeatable)");
    sub->add_option("--presentation", presentation, "Presentation as JSON or @file")->excludes("--gens");
  }

  FpPresentation get() const {
    if (!presentation.empty()) return read_json(presentation).get<FpPresentation>();
    if (gens.empty()) throw InvalidArgument("give --gens or --presentation");
    return FpPresentation::parse(gens, rels);
  }
};

struct ModuleArgs {
  std::string group;
  std::string action;
  int m = 2;

  void add(CLI::App* sub) {
    sub->add_option("--group", group, "Abelian group A, text or JSON")->required();
    sub->add_option("--action", action, "Matrix of the generator action t on A")->required();
    sub->add_option("--m", m, "Order of the cyclic group")->check(CLI::PositiveNumber);
  }

  AbMap t() const {
    const auto a = parse_group(group);
    return AbMap(a, a, parse_matrix(action));
  }
};

using Command = std::function<int()>;

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Nilpotent towers, quadratic functors and Milnor invariants."};
  app.require_subcommand(1);
  app.fallthrough();
  RunConfig cfg;
  app.add_flag("--json", cfg.json, "Emit a single JSON document");
  app.add_option("--threads", cfg.threads, "Worker threads")->check(CLI::PositiveNumber);
  app.add_option("--seed", cfg.seed, "Random seed");
  app.add_option("--max-class", cfg.max_class, "Class cap (default GAMMA_OMEGA_MAX_CLASS or 12)")
      ->check(CLI::PositiveNumber);
  app.add_option("--max-word-length", cfg.max_word_length, "Cap on the length of collected relator words")
      ->check(CLI::PositiveNumber);

  std::vector<std::pair<CLI::App*, Command>> commands;

  // snf
  {
    auto* sub = app.add_subcommand("snf", "Smith normal form U*M*V = D");
    auto matrix = std::make_shared<std::string>();
    sub->add_option("--matrix", *matrix, "Matrix as [[..],..], IntMatrix JSON or @file")->required();
    commands.emplace_back(sub, [=, &cfg] {
      const IntMatrix m = parse_matrix(*matrix);
      const SmithForm s = smith_normal_form(m);
      const auto inv = invariant_factors(m);
      Json j{{"U", s.U}, {"D", s.D}, {"V", s.V}, {"invariant_factors", Json::array()}};
      std::vector<std::string> d;
      for (const auto& x : inv) {
        j["invariant_factors"].push_back(integer_to_json(x));
        d.push_back(x.get_str());
      }
      emit(cfg, j,
           fmt::format("invariant factors: {}\nD =\n{}\nU =\n{}\nV =\n{}", join(d, " "), s.D.to_string(),
                       s.U.to_string(), s.V.to_string()));
      return 0;
    });
  }

  // abgroup
  {
    auto* sub = app.add_subcommand("abgroup", "Canonical form of a finitely generated abelian group");
    auto relations = std::make_shared<std::string>();
    auto group = std::make_shared<std::string>();
    sub->add_option("--relations", *relations, "Relation matrix; generators are rows, relations columns");
    sub->add_option("--group", *group, "Direct sum of cyclics, e.g. \"Z/2 + Z/3 + Z\"")->excludes("--relations");
    commands.emplace_back(sub, [=, &cfg] {
      if (relations->empty() && group->empty()) throw InvalidArgument("give --relations or --group");
      const FgAbelianGroup g = relations->empty() ? parse_group(*group) : from_relations(parse_matrix(*relations));
      const auto o = g.order();
      emit(cfg, Json{{"group", g}, {"order", o ? integer_to_json(*o) : Json()}},
           fmt::format("{}\norder {}", g.to_string(), o ? o->get_str() : "infinite"));
      return 0;
    });
  }

  // functor
  {
    auto* sub = app.add_subcommand("functor", "Apply tensor2, ext:k, sym2 or gamma2");
    auto name = std::make_shared<std::string>();
    auto group = std::make_shared<std::string>();
    auto qdim = std::make_shared<std::size_t>(0);
    sub->add_option("--name", *name, "Functor name")->required();
    sub->add_option("--group", *group, "Abelian group, text or JSON");
    auto* q = sub->add_option("--q-dim", *qdim, "Apply to Q^n instead and report the dimension");
    q->excludes("--group");
    commands.emplace_back(sub, [=, &cfg] {
      const FunctorName f = FunctorName::parse(*name);
      if (q->count() > 0) {
        const Integer d = rational_dim(f, *qdim);
        const bool inf = infinitely_generated_as_abelian_group(d);
        emit(cfg, Json{{"functor", f}, {"q_dim", integer_to_json(d)}, {"infinitely_generated", inf}},
             fmt::format("{}(Q^{}) = Q^{}{}", f.to_string(), *qdim, d.get_str(),
                         inf ? " (infinitely generated as an abelian group)" : ""));
        return 0;
      }
      if (group->empty()) throw InvalidArgument("give --group or --q-dim");
      const auto a = parse_group(*group);
      const auto out = functor_apply(f, a);
      emit(cfg, Json{{"functor", f}, {"input", a}, {"group", out}},
           fmt::format("{}({}) = {}", f.to_string(), a.to_string(), out.to_string()));
      return 0;
    });
  }

  // gamma2-oracle
  {
    auto* sub = app.add_subcommand("gamma2-oracle", "Gamma^2 of a finite group by the symbol presentation");
    auto group = std::make_shared<std::string>();
    auto bound = std::make_shared<std::size_t>(256);
    sub->add_option("--group", *group, "Finite abelian group, text or JSON")->required();
    sub->add_option("--bound", *bound, "Largest group order accepted")->capture_default_str()->check(CLI::PositiveNumber);
    commands.emplace_back(sub, [=, &cfg] {
      const auto a = parse_group(*group);
      const auto oracle = gamma2_oracle(a, *bound);
      const auto rule = functor_apply(FunctorName::gamma2(), a);
      emit(cfg, Json{{"input", a}, {"oracle", oracle}, {"structure_rule", rule}, {"agree", oracle == rule}},
           fmt::format("Gamma2({}) = {} (structure rule: {}, {})", a.to_string(), oracle.to_string(),
                       rule.to_string(), oracle == rule ? "agree" : "DISAGREE"));
      return oracle == rule ? 0 : 1;
    });
  }

  // hall
  {
    auto* sub = app.add_subcommand("hall", "Hall basis of basic commutators");
    auto rank = std::make_shared<int>(2);
    auto cls = std::make_shared<int>(4);
    auto list = std::make_shared<bool>(false);
    sub->add_option("--rank", *rank, "Free rank")->check(CLI::PositiveNumber);
    sub->add_option("--class", *cls, "Largest weight")->check(CLI::PositiveNumber);
    sub->add_flag("--list", *list, "List the basis elements");
    commands.emplace_back(sub, [=, &cfg] {
      const HallBasis h(*rank, *cls);
      const auto names = default_generator_names(*rank);
      const auto counts = h.counts();
      Json j{{"rank", *rank}, {"class", *cls}, {"counts", counts}};
      std::string text = fmt::format("counts by weight: {}\n", fmt::join(counts, " "));
      if (*list) {
        j["elements"] = Json::array();
        for (std::size_t i = 0; i < h.elements().size(); ++i) {
          const auto s = h.to_string(i, names);
          j["elements"].push_back({{"weight", h.elements()[i].weight}, {"commutator", s}});
          text += fmt::format("  {:>3}  weight {}  {}\n", i + 1, h.elements()[i].weight, s);
        }
      }
      emit(cfg, j, text);
      return 0;
    });
  }

  // magnus
  {
    auto* sub = app.add_subcommand("magnus", "Truncated Magnus expansion of a word");
    auto word = std::make_shared<std::string>();
    auto gens = std::make_shared<std::vector<std::string>>(std::vector<std::string>{"a", "b"});
    auto degree = std::make_shared<int>(4);
    sub->add_option("--word", *word, "Word, e.g. \"[a,b]^2 a\"")->required();
    sub->add_option("--gens", *gens, "Generator names")->capture_default_str()->delimiter(',');
    sub->add_option("--degree", *degree, "Truncation degree")->check(CLI::NonNegativeNumber);
    commands.emplace_back(sub, [=, &cfg] {
      const Word w = parse_word(*word, *gens);
      const int n = static_cast<int>(gens->size());
      const auto s = magnus_expand(w, n, *degree);
      const auto weight = lcs_weight(w, n, std::max(*degree, 1));
      Json j = magnus_to_json(s);
      j["lcs_weight"] = weight.to_string();
      emit(cfg, j, fmt::format("{}\nlower central weight: {}", s.to_string(*gens), weight.to_string()));
      return 0;
    });
  }

  // nq
  {
    auto* sub = app.add_subcommand("nq", "Nilpotent quotient G/gamma_{c+1}(G)");
    auto pres = std::make_shared<PresentationArgs>();
    pres->add(sub);
    auto cls = std::make_shared<int>(1);
    sub->add_option("--class", *cls, "Nilpotency class c")->required()->check(CLI::PositiveNumber);
    commands.emplace_back(sub, [=, &cfg] {
      const auto p = pres->get();
      const auto q = nilpotent_quotient(p, *cls, cfg.limits());
      std::string text = fmt::format("class {} quotient of order {}\n", q.nilpotency_class, order_string(q.group));
      for (int k = 1; k <= q.nilpotency_class; ++k) text += fmt::format("  layer {}: {}\n", k, q.layer(k).to_string());
      text += "pc presentation:\n" + pc_text(q.group);
      for (std::size_t i = 0; i < p.rank(); ++i)
        text += fmt::format("  {} -> {}\n", p.generators[i], q.group.element_to_string(q.images[i]));
      emit(cfg, quotient_to_json(q), text);
      return 0;
    });
  }

  // tower
  {
    auto* sub = app.add_subcommand("tower", "Every level of the lower central tower up to a class");
    auto pres = std::make_shared<PresentationArgs>();
    pres->add(sub);
    auto cls = std::make_shared<int>(1);
    sub->add_option("--class", *cls, "Depth")->required()->check(CLI::PositiveNumber);
    commands.emplace_back(sub, [=, &cfg] {
      const Tower t(pres->get(), *cls, cfg.limits());
      Json j{{"levels", Json::array()}};
      std::string text;
      for (int c = 1; c <= t.max_class(); ++c) {
        const auto& q = t.level(c);
        const auto o = q.group.order();
        j["levels"].push_back({{"class", c},
                               {"order", o ? integer_to_json(*o) : Json()},
                               {"layer", q.layer(c)},
                               {"pc_generators", q.group.size()}});
        text += fmt::format("c = {:>2}  order {}  layer {}\n", c, order_string(q.group), q.layer(c).to_string());
      }
      emit(cfg, j, text);
      return 0;
    });
  }

  // lemma22
  {
    auto* sub = app.add_subcommand("lemma22", "Write a level-1 kernel element as a product of [g_i, x_i] at every level");
    auto pres = std::make_shared<PresentationArgs>();
    pres->add(sub);
    auto cls = std::make_shared<int>(1);
    auto element = std::make_shared<std::string>();
    auto xs = std::make_shared<std::vector<std::string>>();
    sub->add_option("--class", *cls, "Depth")->required()->check(CLI::PositiveNumber);
    sub->add_option("--element", *element, "Word in the kernel of G -> G/gamma_2")->required();
    sub->add_option("--xs", *xs, "Normal generators x_i (default: all generators)")->delimiter(',');
    commands.emplace_back(sub, [=, &cfg] {
      const auto p = pres->get();
      const Tower t(p, *cls, cfg.limits());
      const auto idx = generator_indices(p, *xs);
      const auto a = TowerElement::from_word(t, parse_word(*element, p.generators));
      const auto gs = decompose_as_commutators(t, a, idx);
      const auto& top = t.level(t.max_class());
      Json j{{"class", t.max_class()}, {"factors", Json::array()}, {"verified_levels", Json::array()}};
      std::string text = fmt::format("{} = prod [g_i, x_i] in G/gamma_{}(G):\n", *element, t.max_class() + 1);
      for (std::size_t i = 0; i < idx.size(); ++i) {
        const auto& g = gs[i].components.back();
        j["factors"].push_back({{"x", p.generators[idx[i]]}, {"g", exponents_to_json(g)}});
        text += fmt::format("  x = {}  g = {}\n", p.generators[idx[i]], top.group.element_to_string(g));
      }
      bool all = true;
      for (int c = 1; c <= t.max_class(); ++c) {
        const bool ok = commutator_product(t, c, gs, idx) == a.components[c - 1];
        all = all && ok;
        j["verified_levels"].push_back(ok);
      }
      text += fmt::format("reconstruction holds at {} levels", all ? "all" : "NOT all");
      emit(cfg, j, text);
      return all ? 0 : 1;
    });
  }

  // normgen
  {
    auto* sub = app.add_subcommand("normgen", "Check that given elements normally generate each level");
    auto pres = std::make_shared<PresentationArgs>();
    pres->add(sub);
    auto cls = std::make_shared<int>(1);
    auto xs = std::make_shared<std::vector<std::string>>();
    sub->add_option("--class", *cls, "Depth")->required()->check(CLI::PositiveNumber);
    sub->add_option("--xs", *xs, "Candidate normal generators")->required()->delimiter(',');
    commands.emplace_back(sub, [=, &cfg] {
      const auto p = pres->get();
      const Tower t(p, *cls, cfg.limits());
      const auto levels = normal_generation_check(t, generator_indices(p, *xs));
      Json j{{"levels", Json::array()}};
      std::string text;
      for (const auto& l : levels) {
        j["levels"].push_back({{"class", l.level}, {"generated", l.generated}, {"failing_layer", l.failing_layer}});
        text += l.generated ? fmt::format("c = {:>2}  normally generated\n", l.level)
                            : fmt::format("c = {:>2}  not generated (layer {})\n", l.level, l.failing_layer);
      }
      emit(cfg, j, text);
      return 0;
    });
  }

  // cyclic-homology
  {
    auto* sub = app.add_subcommand("cyclic-homology", "H_p(C_m; A) for a C_m-module A");
    auto mod = std::make_shared<ModuleArgs>();
    mod->add(sub);
    auto pmax = std::make_shared<int>(6);
    sub->add_option("--p-max", *pmax, "Largest degree")->capture_default_str()->check(CLI::NonNegativeNumber);
    commands.emplace_back(sub, [=, &cfg] {
      const auto h = cyclic_homology(CyclicModule(mod->m, mod->t()), *pmax);
      Json j{{"m", mod->m}, {"homology", Json::array()}};
      std::string text;
      for (std::size_t p = 0; p < h.size(); ++p) {
        j["homology"].push_back({{"degree", p}, {"group", h[p]}});
        text += fmt::format("H_{}(C_{}; A) = {}\n", p, mod->m, h[p].to_string());
      }
      emit(cfg, j, text);
      return 0;
    });
  }

  // e2 and assemble share the page arguments
  auto page_text = [](const E2Page& page) {
    std::string text;
    for (int q = page.q_max; q >= 0; --q) {
      text += fmt::format("q={:<2}", q);
      for (int p = 0; p <= page.p_max; ++p) {
        const auto* c = page.find(p, q);
        text += fmt::format(" | {:<10}", c && c->group ? c->group->to_string() : (c ? c->note : "?"));
      }
      text += "\n";
    }
    return text;
  };

  {
    auto* sub = app.add_subcommand("e2", "E^2 page of a split extension A x| C_m");
    auto mod = std::make_shared<ModuleArgs>();
    mod->add(sub);
    auto pmax = std::make_shared<int>(6);
    auto qmax = std::make_shared<int>(1);
    sub->add_option("--p-max", *pmax, "Columns 0..p")->capture_default_str()->check(CLI::NonNegativeNumber);
    sub->add_option("--q-max", *qmax, "Rows 0..q")->capture_default_str()->check(CLI::NonNegativeNumber);
    commands.emplace_back(sub, [=, &cfg] {
      const auto a = parse_group(mod->group);
      const auto page = lhs_e2_split(a, mod->t(), mod->m, *pmax, *qmax);
      emit(cfg, Json(page), page_text(page));
      return 0;
    });
  }

  {
    auto* sub = app.add_subcommand("assemble", "Homology H_i from an E^2 page where the pattern forces it");
    auto page_arg = std::make_shared<std::string>();
    auto group = std::make_shared<std::string>();
    auto action = std::make_shared<std::string>();
    auto m = std::make_shared<int>(2);
    auto imax = std::make_shared<int>(-1);
    sub->add_option("--page", *page_arg, "E2Page JSON or @file");
    sub->add_option("--group", *group, "Build the page from A x| C_m instead")->excludes("--page");
    sub->add_option("--action", *action, "Matrix of t on A");
    sub->add_option("--m", *m, "Order of the cyclic group")->check(CLI::PositiveNumber);
    sub->add_option("--i-max", *imax, "Largest degree (default: p_max)")->check(CLI::NonNegativeNumber);
    commands.emplace_back(sub, [=, &cfg] {
      E2Page page;
      if (!page_arg->empty()) {
        page = read_json(*page_arg).get<E2Page>();
      } else {
        if (group->empty() || action->empty()) throw InvalidArgument("give --page, or --group with --action");
        const auto a = parse_group(*group);
        const int i = *imax < 0 ? 7 : *imax;
        page = lhs_e2_split(a, AbMap(a, a, parse_matrix(*action)), *m, i, i);
      }
      const auto h = assemble_homology(page, *imax < 0 ? page.p_max : *imax);
      std::string text;
      for (std::size_t i = 0; i < h.groups.size(); ++i)
        text += fmt::format("H_{} = {}\n", i, h.groups[i] ? h.groups[i]->to_string() : "?");
      for (const auto& amb : h.ambiguities) text += fmt::format("H_{} undetermined: {}\n", amb.degree, amb.reason);
      emit(cfg, Json(h), text);
      return 0;
    });
  }

  // milnor and vanish
  struct BraidArgs {
    std::string braid;
    int strands = 0;
  };
  auto add_braid = [](CLI::App* sub, BraidArgs& b) {
    sub->add_option("--braid", b.braid, "Braid \"s1 s2^-1 ...\" or BraidWord JSON")->required();
    sub->add_option("--strands", b.strands, "Number of strands (default: least that fits)")
        ->check(CLI::PositiveNumber);
  };

  {
    auto* sub = app.add_subcommand("milnor", "Milnor mu-bar invariants of a braid closure");
    auto b = std::make_shared<BraidArgs>();
    add_braid(sub, *b);
    auto index = std::make_shared<std::vector<int>>();
    auto max_len = std::make_shared<int>(3);
    sub->add_option("--index", *index, "1-based index i_1,...,i_k (default: all up to --length)")->delimiter(',');
    sub->add_option("--length", *max_len, "Largest index length when listing")->capture_default_str()->check(CLI::Range(2, 12));
    commands.emplace_back(sub, [=, &cfg] {
      const LinkData link = braid_closure(parse_braid(b->braid, b->strands));
      const int k = static_cast<int>(link.num_components());
      std::vector<MuValue> values;
      if (!index->empty()) {
        values.push_back(mu_bar(link, *index));
      } else {
        const MilnorExpansion e(link, *max_len - 1);
        for (int len = 2; len <= *max_len; ++len) {
          std::vector<int> idx(len, 1);
          while (true) {
            values.push_back(e.mu_bar(idx));
            int pos = len - 1;
            while (pos >= 0 && idx[pos] == k) idx[pos--] = 1;
            if (pos < 0) break;
            ++idx[pos];
          }
        }
      }
      Json j{{"link", link_to_json(link)}, {"invariants", values}};
      std::string text = fmt::format("{} components\n", k);
      for (const auto& v : values)
        text += fmt::format("mu({}) = {}{}\n", index_string(v.index), v.value.get_str(),
                            v.modulus == 0 ? "" : fmt::format(" mod {}", v.modulus.get_str()));
      emit(cfg, j, text);
      return 0;
    });
  }

  {
    auto* sub = app.add_subcommand("vanish", "Do all mu-bar invariants of length <= q vanish");
    auto b = std::make_shared<BraidArgs>();
    add_braid(sub, *b);
    auto q = std::make_shared<int>(2);
    sub->add_option("--q", *q, "Largest length")->required()->check(CLI::Range(2, 12));
    commands.emplace_back(sub, [=, &cfg] {
      const LinkData link = braid_closure(parse_braid(b->braid, b->strands));
      const auto levels = vanish_up_to(link, *q);
      bool all = true;
      std::string text;
      for (const auto& l : levels) {
        all = all && l.vanishes;
        text += l.vanishes ? fmt::format("length {}: all vanish\n", l.length)
                           : fmt::format("length {}: mu({}) = {}\n", l.length, index_string(l.witness->index),
                                         l.witness->value.get_str());
      }
      text += fmt::format("vanish up to {}: {}", *q, all ? "true" : "false");
      emit(cfg, Json{{"q", *q}, {"vanishes", all}, {"levels", levels}}, text);
      return 0;
    });
  }

  // whitehead
  {
    auto* sub = app.add_subcommand("whitehead", "Cokernel of w: H_4 -> Gamma^2(H_2) and the pi_3 sequence");
    auto h2 = std::make_shared<std::string>();
    auto h3 = std::make_shared<std::string>("0");
    auto h4 = std::make_shared<std::string>("0");
    auto w = std::make_shared<std::string>();
    auto negation = std::make_shared<std::size_t>(0);
    auto* neg = sub->add_option("--negation", *negation, "Rational input for Q^n x| C_2 acting by -1")
                    ->check(CLI::PositiveNumber);
    sub->add_option("--h2", *h2, "H_2, text or JSON")->excludes(neg);
    sub->add_option("--h3", *h3, "H_3")->capture_default_str()->excludes(neg);
    sub->add_option("--h4", *h4, "H_4")->capture_default_str()->excludes(neg);
    sub->add_option("--w", *w, "Matrix of w in canonical generators (default zero)")->excludes(neg);
    commands.emplace_back(sub, [=, &cfg] {
      Pi3Report r;
      if (neg->count() > 0) {
        r = pi3_sequence(negation_extension_input(*negation));
      } else {
        if (h2->empty()) throw InvalidArgument("give --h2 or --negation");
        const auto a2 = parse_group(*h2), a4 = parse_group(*h4);
        const auto target = functor_apply(FunctorName::gamma2(), a2);
        const AbMap map = w->empty() ? AbMap::zero(a4, target) : AbMap(a4, target, parse_matrix(*w));
        r = pi3_sequence(WhiteheadInput{a2, parse_group(*h3), a4, map});
      }
      emit(cfg, Json(r),
           fmt::format("coker w = {}\n{}\npi_3 infinitely generated: {}", r.coker.to_string(), r.statement,
                       r.infinitely_generated ? "yes" : "no"));
      return 0;
    });
  }

  // paper-report
  {
    auto* sub = app.add_subcommand("paper-report", "Run the verification pipeline for the dihedral example");
    auto depth = std::make_shared<int>(10);
    sub->add_option("--class", *depth, "Tower depth")->capture_default_str()->check(CLI::PositiveNumber);
    commands.emplace_back(sub, [=, &cfg] {
      ReportOptions o;
      o.tower_class = *depth;
      o.threads = cfg.threads;
      o.limits = cfg.limits();
      const Report r = verification_pipeline_report(o);
      emit(cfg, Json(r), r.to_text());
      return 0;
    });
  }

  // selftest
  {
    auto* sub = app.add_subcommand("selftest", "Cross-module oracle suites; nonzero exit iff any fails");
    commands.emplace_back(sub, [&cfg] {
      const auto results = run_selftest(cfg.seed);
      Json j{{"seed", cfg.seed}, {"suites", Json::array()}};
      std::string text;
      bool ok = true;
      for (const auto& r : results) {
        ok = ok && r.passed();
        j["suites"].push_back({{"name", r.name}, {"checks", r.checks}, {"failures", r.failures},
                               {"notes", r.failure_notes}, {"passed", r.passed()}});
        text += fmt::format("{} {:<16} {} checks, {} failures\n", r.passed() ? "PASS" : "FAIL", r.name, r.checks,
                            r.failures);
        for (const auto& n : r.failure_notes) text += "    " + n + "\n";
      }
      j["passed"] = ok;
      emit(cfg, j, text);
      return ok ? 0 : 1;
    });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    for (auto& [sub, run] : commands)
      if (sub->parsed()) return run();
  } catch (const InvalidArgument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const Json::exception& e) {
    std::cerr << "error: malformed JSON: " << e.what() << "\n";
    return 2;
  } catch (const ResourceLimitError& e) {
    std::cerr << "resource limit: " << e.what() << "\n";
    return 1;
  } catch (const ComputationError& e) {
    std::cerr << "computation failed: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
