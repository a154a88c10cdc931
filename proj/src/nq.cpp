#include "gamma_omega/nq.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cstdlib>
#include <map>
#include <set>

#include "gamma_omega/errors.hpp"

namespace gamma_omega {

FpPresentation FpPresentation::parse(const std::vector<std::string>& generators,
                                     const std::vector<std::string>& relators) {
  std::set<std::string> seen;
  for (const auto& g : generators) {
    if (g.empty()) throw InvalidArgument("empty generator name");
    if (!seen.insert(g).second) throw InvalidArgument("duplicate generator name: " + g);
  }
  FpPresentation p{generators, {}};
  for (const auto& r : relators) p.relators.push_back(reduce(parse_word(r, generators)));
  return p;
}

NqLimits NqLimits::from_environment() {
  NqLimits limits;
  if (const char* v = std::getenv("GAMMA_OMEGA_MAX_CLASS")) {
    char* end = nullptr;
    const long c = std::strtol(v, &end, 10);
    if (end == v || *end != '\0' || c < 1 || c > 1000)
      throw InvalidArgument(fmt::format("GAMMA_OMEGA_MAX_CLASS must be a positive integer, got \"{}\"", v));
    limits.max_class = static_cast<int>(c);
  }
  return limits;
}

std::size_t NilpotentQuotient::generators_up_to_weight(int k) const {
  std::size_t n = 0;
  while (n < group.size() && group.weight(n) <= k) ++n;
  return n;
}

Exponents NilpotentQuotient::evaluate(const Word& w) const {
  Exponents e = group.identity();
  for (const auto& l : w.letters()) {
    if (l.gen < 0 || static_cast<std::size_t>(l.gen) >= images.size())
      throw InvalidArgument("word uses a generator outside the presentation");
    group.multiply_in_place(e, group.pow(images[l.gen], l.exp));
  }
  return e;
}

FgAbelianGroup NilpotentQuotient::layer(int k) const {
  const std::size_t lo = generators_up_to_weight(k - 1);
  const std::size_t hi = generators_up_to_weight(k);
  IntMatrix rel(hi - lo, 0);
  std::vector<std::vector<Integer>> cols;
  for (std::size_t p = lo; p < hi; ++p) {
    if (group.relative_order(p) == 0) continue;
    std::vector<Integer> col(hi - lo);
    for (std::size_t q = lo; q < hi; ++q) col[q - lo] = -group.power(p)[q];
    col[p - lo] += group.relative_order(p);
    cols.push_back(std::move(col));
  }
  if (cols.empty()) return from_relations(rel);
  return from_relations(IntMatrix::from_rows(cols).transpose());
}

Exponents project(const Exponents& e, const NilpotentQuotient& target) {
  const std::size_t n = target.group.size();
  if (e.size() < n) throw InvalidArgument("project: element is shorter than the target");
  return Exponents(e.begin(), e.begin() + static_cast<std::ptrdiff_t>(n));
}

// ---------------------------------------------------------------------------
// One step of the nilpotent quotient algorithm

namespace {

struct TailSlot {
  PcDefinition relation;
};

Exponents extend(const Exponents& e, std::size_t n) {
  Exponents out = e;
  out.resize(n, Integer(0));
  return out;
}

}  // namespace

NilpotentQuotient nilpotent_quotient_step(const FpPresentation& p, const NilpotentQuotient& previous,
                                          const NqLimits& limits) {
  const PcGroup& q = previous.group;
  const std::size_t n = q.size();
  const int c = previous.nilpotency_class + 1;
  if (c > limits.max_class)
    throw ResourceLimitError(fmt::format("class {} exceeds the configured cap {}", c, limits.max_class));
  for (const auto& r : p.relators)
    if (r.length() > limits.max_relator_length)
      throw ResourceLimitError(fmt::format("relator of length {} exceeds the cap {}", r.length(), limits.max_relator_length));

  // Relations that define a generator keep their right-hand side.
  std::set<std::size_t> defining_image, defining_power;
  std::set<std::pair<std::size_t, std::size_t>> defining_conj;
  for (const auto& d : previous.definitions) {
    switch (d.kind) {
      case PcDefinition::Kind::Image: defining_image.insert(d.a); break;
      case PcDefinition::Kind::Power: defining_power.insert(d.a); break;
      case PcDefinition::Kind::Commutator: defining_conj.insert({d.a, d.b}); break;
    }
  }

  // Every other relation gets a central tail of weight c. Commutator tails come
  // last so that the surviving tails prefer commutator definitions.
  std::vector<PcDefinition> tails;
  std::map<std::size_t, std::size_t> image_tail, power_tail;
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> conj_tail;
  for (std::size_t k = 0; k < p.rank(); ++k)
    if (!defining_image.count(k)) {
      image_tail[k] = tails.size();
      tails.push_back({PcDefinition::Kind::Image, k, 0});
    }
  for (std::size_t i = 0; i < n; ++i)
    if (q.relative_order(i) > 0 && !defining_power.count(i)) {
      power_tail[i] = tails.size();
      tails.push_back({PcDefinition::Kind::Power, i, 0});
    }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < i; ++j)
      if (q.weight(i) + q.weight(j) <= c && !defining_conj.count({i, j})) {
        conj_tail[{i, j}] = tails.size();
        tails.push_back({PcDefinition::Kind::Commutator, i, j});
      }
  const std::size_t m = tails.size();
  const std::size_t nc = n + m;

  // Covering group: the tails are central generators of infinite order.
  PcPresentation cover;
  cover.weights.resize(nc, c);
  cover.relative_orders.resize(nc, Integer(0));
  cover.powers.resize(nc);
  cover.conj.resize(nc);
  for (std::size_t i = 0; i < nc; ++i) {
    if (i < n) {
      cover.weights[i] = q.weight(i);
      cover.relative_orders[i] = q.relative_order(i);
      if (q.relative_order(i) > 0) {
        cover.powers[i] = extend(q.power(i), nc);
        if (auto it = power_tail.find(i); it != power_tail.end()) cover.powers[i][n + it->second] = 1;
      }
    }
    for (std::size_t j = 0; j < i; ++j) {
      Exponents rel;
      if (i < n) {
        rel = extend(q.conjugate_relation(i, j), nc);
        if (auto it = conj_tail.find({i, j}); it != conj_tail.end()) rel[n + it->second] = 1;
      } else {
        rel = Exponents(nc, Integer(0));
        rel[i] = 1;
      }
      cover.conj[i].push_back(std::move(rel));
    }
  }
  PcGroup cover_group(std::move(cover));
  cover_group.set_exponent_bit_limit(limits.max_exponent_bits);

  std::vector<Exponents> cover_images;
  for (std::size_t k = 0; k < p.rank(); ++k) {
    Exponents e = extend(previous.images.empty() ? Exponents() : previous.images[k], nc);
    if (auto it = image_tail.find(k); it != image_tail.end()) e[n + it->second] = 1;
    cover_images.push_back(std::move(e));
  }

  HermiteLattice lattice(m);
  auto add_row = [&](const Exponents& lhs, const Exponents& rhs, const std::string& what) {
    for (std::size_t l = 0; l < n; ++l)
      if (lhs[l] != rhs[l])
        throw ComputationError(fmt::format("class {} cover: {} differs outside the tails", c, what));
    std::vector<Integer> row(m);
    bool nonzero = false;
    for (std::size_t t = 0; t < m; ++t) {
      row[t] = lhs[n + t] - rhs[n + t];
      if (row[t] != 0) nonzero = true;
    }
    if (nonzero) lattice.insert(std::move(row));
  };
  for (const auto& o : cover_group.overlaps(c)) add_row(o.lhs, o.rhs, "overlap " + o.label);
  const Exponents cover_identity = cover_group.identity();
  for (std::size_t r = 0; r < p.relators.size(); ++r) {
    Exponents e = cover_group.identity();
    for (const auto& l : p.relators[r].letters())
      cover_group.multiply_in_place(e, cover_group.pow(cover_images[l.gen], l.exp));
    add_row(e, cover_identity, fmt::format("relator {}", r + 1));
  }
  lattice.finish();

  // Tails with pivot 1 are eliminated; pivots > 1 give finite relative orders;
  // columns without a pivot give infinite ones.
  std::vector<long> survivor_index(m, -1);
  std::vector<std::size_t> survivors;
  std::vector<Integer> survivor_orders;
  for (std::size_t t = 0; t < m; ++t) {
    auto it = lattice.rows().find(t);
    if (it != lattice.rows().end() && it->second[t] == 1) continue;
    survivor_index[t] = static_cast<long>(survivors.size());
    survivors.push_back(t);
    survivor_orders.push_back(it == lattice.rows().end() ? Integer(0) : it->second[t]);
  }
  const std::size_t s_count = survivors.size();
  const std::size_t nn = n + s_count;
  if (nn > limits.max_generators)
    throw ResourceLimitError(fmt::format("class {} quotient needs {} generators, cap is {}", c, nn, limits.max_generators));

  // Raw layer vectors (over survivors) for the powers of survivors.
  std::vector<std::vector<Integer>> survivor_powers(s_count);
  for (std::size_t s = 0; s < s_count; ++s) {
    if (survivor_orders[s] == 0) continue;
    const auto& row = lattice.rows().at(survivors[s]);
    std::vector<Integer> v(s_count);
    for (std::size_t t = survivors[s] + 1; t < m; ++t)
      if (row[t] != 0) v[survivor_index[t]] = -row[t];
    survivor_powers[s] = std::move(v);
  }
  // Normal form in the central layer, left to right.
  auto normalize = [&](std::vector<Integer> v) {
    for (std::size_t s = 0; s < s_count; ++s) {
      const Integer& r = survivor_orders[s];
      if (r == 0 || (v[s] >= 0 && v[s] < r)) continue;
      Integer qq, rem;
      mpz_fdiv_qr(qq.get_mpz_t(), rem.get_mpz_t(), v[s].get_mpz_t(), r.get_mpz_t());
      v[s] = rem;
      for (std::size_t u = s + 1; u < s_count; ++u) v[u] += qq * survivor_powers[s][u];
    }
    return v;
  };
  // A tail in survivor coordinates.
  auto tail_value = [&](std::size_t t) {
    std::vector<Integer> v(s_count);
    if (survivor_index[t] >= 0) {
      v[survivor_index[t]] = 1;
      return v;
    }
    const auto& row = lattice.rows().at(t);
    for (std::size_t u = t + 1; u < m; ++u)
      if (row[u] != 0) v[survivor_index[u]] = -row[u];
    return normalize(std::move(v));
  };
  auto with_tail = [&](const Exponents& old, const std::vector<Integer>& layer) {
    Exponents e = extend(old, nn);
    for (std::size_t s = 0; s < s_count; ++s) e[n + s] = layer[s];
    return e;
  };
  const std::vector<Integer> zero_layer(s_count);

  PcPresentation next;
  next.weights.resize(nn, c);
  next.relative_orders.resize(nn, Integer(0));
  next.powers.resize(nn);
  next.conj.resize(nn);
  for (std::size_t i = 0; i < nn; ++i) {
    if (i < n) {
      next.weights[i] = q.weight(i);
      next.relative_orders[i] = q.relative_order(i);
      if (q.relative_order(i) > 0) {
        auto it = power_tail.find(i);
        next.powers[i] = with_tail(q.power(i), it == power_tail.end() ? zero_layer : tail_value(it->second));
      }
    } else {
      const std::size_t s = i - n;
      next.relative_orders[i] = survivor_orders[s];
      if (survivor_orders[s] > 0) next.powers[i] = with_tail(q.identity(), normalize(survivor_powers[s]));
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (i < n) {
        auto it = conj_tail.find({i, j});
        next.conj[i].push_back(
            with_tail(q.conjugate_relation(i, j), it == conj_tail.end() ? zero_layer : tail_value(it->second)));
      } else {
        Exponents e(nn, Integer(0));
        e[i] = 1;
        next.conj[i].push_back(std::move(e));
      }
    }
  }

  NilpotentQuotient out;
  out.nilpotency_class = c;
  out.group = PcGroup(std::move(next));
  out.group.set_exponent_bit_limit(limits.max_exponent_bits);
  for (std::size_t k = 0; k < p.rank(); ++k) {
    const Exponents old = previous.images.empty() ? Exponents() : previous.images[k];
    auto it = image_tail.find(k);
    out.images.push_back(with_tail(old, it == image_tail.end() ? zero_layer : tail_value(it->second)));
  }
  out.definitions = previous.definitions;
  for (std::size_t s = 0; s < s_count; ++s) out.definitions.push_back(tails[survivors[s]]);

  const std::string failure = out.group.consistency_failure();
  if (!failure.empty()) throw ComputationError(fmt::format("class {} quotient is inconsistent: {}", c, failure));
  for (const auto& r : p.relators)
    if (out.evaluate(r) != out.group.identity())
      throw ComputationError(fmt::format("class {} quotient does not satisfy a relator", c));
  return out;
}

NilpotentQuotient nilpotent_quotient(const FpPresentation& p, int c, const NqLimits& limits) {
  if (c < 1) throw InvalidArgument("nilpotency class must be >= 1");
  if (c > limits.max_class) throw ResourceLimitError(fmt::format("class {} exceeds the configured cap {}", c, limits.max_class));
  NilpotentQuotient q;
  for (int k = 1; k <= c; ++k) q = nilpotent_quotient_step(p, q, limits);
  return q;
}

// ---------------------------------------------------------------------------
// Towers

Tower::Tower(FpPresentation base, int max_class, const NqLimits& limits) : base_(std::move(base)) {
  if (max_class < 1) throw InvalidArgument("tower depth must be >= 1");
  if (max_class > limits.max_class)
    throw ResourceLimitError(fmt::format("class {} exceeds the configured cap {}", max_class, limits.max_class));
  NilpotentQuotient q;
  for (int k = 1; k <= max_class; ++k) {
    q = nilpotent_quotient_step(base_, q, limits);
    levels_.push_back(q);
  }
}

TowerElement TowerElement::from_word(const Tower& t, const Word& w) {
  return from_top(t, t.level(t.max_class()).evaluate(w));
}

TowerElement TowerElement::from_top(const Tower& t, const Exponents& top) {
  TowerElement e;
  for (int c = 1; c <= t.max_class(); ++c) e.components.push_back(project(top, t.level(c)));
  return e;
}

bool TowerElement::is_compatible(const Tower& t) const {
  if (static_cast<int>(components.size()) != t.max_class()) return false;
  for (int c = 1; c <= t.max_class(); ++c)
    if (components[c - 1].size() != t.level(c).group.size()) return false;
  for (int c = 2; c <= t.max_class(); ++c)
    if (project(components[c - 1], t.level(c - 1)) != components[c - 2]) return false;
  return true;
}

bool TowerElement::is_identity() const {
  for (const auto& e : components)
    for (const auto& x : e)
      if (x != 0) return false;
  return true;
}

Exponents commutator_product(const Tower& t, int c, const std::vector<TowerElement>& gs,
                             const std::vector<std::size_t>& xs) {
  const auto& level = t.level(c);
  Exponents e = level.group.identity();
  for (std::size_t i = 0; i < xs.size(); ++i)
    level.group.multiply_in_place(e, level.group.commutator(gs[i].components[c - 1], level.images[xs[i]]));
  return e;
}

namespace {

// Canonical representative of x + ker(m): with the kernel in reduced Hermite
// form, each pivot coordinate is brought into [0, pivot) from left to right.
// This is the lexicographically least solution under the residue order.
std::vector<Integer> least_solution(const IntMatrix& m, std::vector<Integer> x) {
  const IntMatrix kernel = integer_nullspace(m);
  HermiteLattice lattice(x.size());
  for (std::size_t j = 0; j < kernel.cols(); ++j) lattice.insert(kernel.column(j));
  lattice.finish();
  for (const auto& [p, row] : lattice.rows()) {
    Integer k;
    mpz_fdiv_q(k.get_mpz_t(), x[p].get_mpz_t(), row[p].get_mpz_t());
    if (k == 0) continue;
    for (std::size_t c = p; c < x.size(); ++c) x[c] -= k * row[c];
  }
  return x;
}

}  // namespace

std::vector<TowerElement> decompose_as_commutators(const Tower& t, const TowerElement& a,
                                                   const std::vector<std::size_t>& xs) {
  for (std::size_t x : xs)
    if (x >= t.base().rank()) throw InvalidArgument("decompose_as_commutators: generator index out of range");
  if (!a.is_compatible(t)) throw InvalidArgument("decompose_as_commutators: element is not compatible across levels");
  for (const auto& v : a.components[0])
    if (v != 0) throw InvalidArgument("decompose_as_commutators: level-1 component must be trivial");
  if (xs.empty()) {
    for (int c = 1; c <= t.max_class(); ++c)
      if (t.level(c).group.size() > 0)
        throw InvalidArgument("decompose_as_commutators: no generators given for a nontrivial group");
  }

  std::vector<Exponents> g(xs.size(), t.level(1).group.identity());
  for (int c = 2; c <= t.max_class(); ++c) {
    const auto& level = t.level(c);
    const PcGroup& q = level.group;
    for (auto& gi : g) gi = extend(gi, q.size());
    // The defect lies in the weight-c layer, which is central.
    Exponents prod = q.identity();
    for (std::size_t i = 0; i < xs.size(); ++i) q.multiply_in_place(prod, q.commutator(g[i], level.images[xs[i]]));
    // The product also certifies the previous level.
    if (project(prod, t.level(c - 1)) != a.components[c - 2])
      throw ComputationError(fmt::format("level {}: reconstruction failed", c - 1));
    const Exponents defect = q.multiply(q.inverse(prod), a.components[c - 1]);
    const std::size_t lo = level.generators_up_to_weight(c - 1);
    const std::size_t hi = q.size();
    const std::size_t prev_lo = level.generators_up_to_weight(c - 2);
    for (std::size_t l = 0; l < lo; ++l)
      if (defect[l] != 0) throw ComputationError(fmt::format("level {}: defect is not central", c));
    const std::size_t layer = hi - lo;
    if (layer == 0) continue;
    const std::size_t h = lo - prev_lo;

    // Unknowns: c_ij for [h_j, x_i], then one multiplier per power relation.
    std::vector<std::vector<Integer>> cols;
    for (std::size_t i = 0; i < xs.size(); ++i)
      for (std::size_t j = prev_lo; j < lo; ++j) {
        const Exponents v = q.commutator(q.generator(j), level.images[xs[i]]);
        for (std::size_t l = 0; l < lo; ++l)
          if (v[l] != 0) throw ComputationError(fmt::format("level {}: commutator left the last layer", c));
        cols.emplace_back(v.begin() + static_cast<std::ptrdiff_t>(lo), v.end());
      }
    for (std::size_t p = lo; p < hi; ++p) {
      if (q.relative_order(p) == 0) continue;
      std::vector<Integer> col(layer);
      for (std::size_t l = lo; l < hi; ++l) col[l - lo] = -q.power(p)[l];
      col[p - lo] += q.relative_order(p);
      cols.push_back(std::move(col));
    }
    const std::vector<Integer> rhs(defect.begin() + static_cast<std::ptrdiff_t>(lo), defect.end());
    bool solved = !cols.empty() || std::all_of(rhs.begin(), rhs.end(), [](const Integer& x) { return x == 0; });
    std::vector<Integer> solution(cols.size());
    if (!cols.empty()) {
      const IntMatrix mtx = IntMatrix::from_rows(cols).transpose();
      const auto snf = smith_normal_form(mtx);
      const auto y = snf.U * rhs;
      std::vector<Integer> z(mtx.cols());
      for (std::size_t r = 0; r < layer && solved; ++r) {
        const Integer d = r < mtx.cols() ? snf.D(r, r) : Integer(0);
        if (d == 0) {
          if (y[r] != 0) solved = false;
        } else if (!mpz_divisible_p(y[r].get_mpz_t(), d.get_mpz_t())) {
          solved = false;
        } else {
          z[r] = y[r] / d;
        }
      }
      if (solved) solution = least_solution(mtx, snf.V * z);
    }
    if (!solved)
      throw ComputationError(
          fmt::format("level {}: the defect is not a product of commutators with the given generators", c));
    for (std::size_t i = 0; i < xs.size(); ++i) {
      Exponents v = q.identity();
      for (std::size_t j = 0; j < h; ++j) q.multiply_generator(v, prev_lo + j, solution[i * h + j]);
      g[i] = q.multiply(g[i], v);
    }
  }

  // Projections are homomorphisms, so the top level certifies every level.
  std::vector<TowerElement> out;
  for (const auto& gi : g) out.push_back(TowerElement::from_top(t, gi));
  const int top = t.max_class();
  if (commutator_product(t, top, out, xs) != a.components[top - 1])
    throw ComputationError(fmt::format("level {}: reconstruction failed", top));
  return out;
}

std::vector<NormalGenerationLevel> normal_generation_check(const Tower& t, const std::vector<std::size_t>& xs) {
  for (std::size_t x : xs)
    if (x >= t.base().rank()) throw InvalidArgument("normal_generation_check: generator index out of range");
  std::vector<NormalGenerationLevel> report;
  for (int c = 1; c <= t.max_class(); ++c) {
    const auto& level = t.level(c);
    const PcGroup& q = level.group;
    NormalGenerationLevel entry{c, true, 0};
    const std::size_t w1 = level.generators_up_to_weight(1);
    // Spanning vectors of the image of the normal closure in each layer.
    std::vector<Exponents> span;
    for (std::size_t x : xs) {
      Exponents e = level.images[x];
      for (std::size_t l = w1; l < e.size(); ++l) e[l] = 0;
      span.push_back(std::move(e));
    }
    for (int j = 1; j <= c; ++j) {
      const std::size_t lo = level.generators_up_to_weight(j - 1);
      const std::size_t hi = level.generators_up_to_weight(j);
      const std::size_t width = hi - lo;
      HermiteLattice lat(width);
      for (const auto& e : span) lat.insert(std::vector<Integer>(e.begin() + static_cast<std::ptrdiff_t>(lo),
                                                                 e.begin() + static_cast<std::ptrdiff_t>(hi)));
      lat.finish();
      std::vector<std::vector<Integer>> cols;
      for (const auto& [pivot, row] : lat.rows()) cols.push_back(row);
      for (std::size_t p = lo; p < hi; ++p) {
        if (q.relative_order(p) == 0) continue;
        std::vector<Integer> col(width);
        for (std::size_t l = lo; l < hi; ++l) col[l - lo] = -q.power(p)[l];
        col[p - lo] += q.relative_order(p);
        cols.push_back(std::move(col));
      }
      const FgAbelianGroup quotient =
          cols.empty() ? FgAbelianGroup::free(width) : from_relations(IntMatrix::from_rows(cols).transpose());
      if (!quotient.is_trivial()) {
        entry.generated = false;
        entry.failing_layer = j;
        break;
      }
      if (j == c) break;
      std::vector<Exponents> next;
      for (const auto& [pivot, row] : lat.rows()) {
        Exponents s = q.identity();
        for (std::size_t l = 0; l < width; ++l) q.multiply_generator(s, lo + l, row[l]);
        for (std::size_t g1 = 0; g1 < w1; ++g1) next.push_back(q.commutator(s, q.generator(g1)));
      }
      span = std::move(next);
    }
    report.push_back(entry);
  }
  return report;
}

}  // namespace gamma_omega
