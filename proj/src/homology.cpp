#include "gamma_omega/homology.hpp"

#include <fmt/format.h>

#include <map>
#include <tuple>

#include "gamma_omega/errors.hpp"
#include "gamma_omega/quadratic.hpp"

namespace gamma_omega {

namespace {

IntMatrix add_matrices(const IntMatrix& a, const IntMatrix& b, int sign) {
  IntMatrix out(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = a(i, j) + sign * b(i, j);
  return out;
}

}  // namespace

CyclicModule::CyclicModule(int m, AbMap action) : m_(m), action_(std::move(action)) {
  if (m < 1) throw InvalidArgument("cyclic group order must be >= 1");
  if (!(action_.domain() == action_.codomain())) throw InvalidArgument("module action must be an endomorphism");
  AbMap power = AbMap::identity(underlying());
  for (int k = 0; k < m; ++k) power = action_.compose(power);
  if (!(power == AbMap::identity(underlying())))
    throw InvalidArgument(fmt::format("module action does not satisfy t^{} = 1", m));
}

AbMap CyclicModule::t_minus_one() const {
  const auto& a = underlying();
  return AbMap(a, a, add_matrices(action_.matrix(), IntMatrix::identity(a.num_generators()), -1));
}

AbMap CyclicModule::norm() const {
  const auto& a = underlying();
  IntMatrix sum(a.num_generators(), a.num_generators());
  AbMap power = AbMap::identity(a);
  for (int k = 0; k < m_; ++k) {
    sum = add_matrices(sum, power.matrix(), 1);
    power = action_.compose(power);
  }
  return AbMap(a, a, sum);
}

std::vector<FgAbelianGroup> cyclic_homology(const CyclicModule& module, int p_max) {
  if (p_max < 0) throw InvalidArgument("p_max must be >= 0");
  const AbMap d_odd = module.t_minus_one();  // C_{2k+1} -> C_{2k}
  const AbMap d_even = module.norm();        // C_{2k} -> C_{2k-1}
  std::vector<FgAbelianGroup> out;
  out.push_back(map_kernel_cokernel(d_odd).cokernel);
  if (p_max >= 1) {
    const FgAbelianGroup odd = map_homology(d_even, d_odd);
    const FgAbelianGroup even = map_homology(d_odd, d_even);
    for (int p = 1; p <= p_max; ++p) out.push_back(p % 2 == 1 ? odd : even);
  }
  return out;
}

const E2Cell* E2Page::find(int p, int q) const {
  if (p < 0 || q < 0 || p > p_max || q > q_max) return nullptr;
  for (const auto& c : cells)
    if (c.p == p && c.q == q) return &c;
  return nullptr;
}

E2Page lhs_e2_split(const FgAbelianGroup& a, const AbMap& t, int m, int p_max, int q_max) {
  if (p_max < 0 || q_max < 0) throw InvalidArgument("page bounds must be >= 0");
  if (!(t.domain() == a)) throw InvalidArgument("action is not defined on the given group");
  const CyclicModule base(m, t);  // validates t^m = 1
  E2Page page;
  page.m = m;
  page.p_max = p_max;
  page.q_max = q_max;
  if (a.torsion().empty()) page.zero_above_q = static_cast<int>(a.free_rank());

  for (int q = 0; q <= q_max; ++q) {
    std::optional<CyclicModule> module;
    std::string label;
    if (q == 0) {
      module = CyclicModule::trivial(m, FgAbelianGroup::cyclic(0));
      label = "Z";
    } else if (q == 1) {
      module = base;
      label = "A";
    } else if (a.torsion().empty() || q == 2) {
      const FunctorName f = FunctorName::exterior(q);
      module = CyclicModule(m, functor_map(f, t));
      label = fmt::format("Lambda^{} A", q);
    }
    std::vector<FgAbelianGroup> row;
    if (module) row = cyclic_homology(*module, p_max);
    for (int p = 0; p <= p_max; ++p) {
      E2Cell cell{p, q, std::nullopt, {}};
      if (module) {
        cell.group = row[p];
        cell.note = fmt::format("H_{}(C_{}; {})", p, m, label);
      } else {
        cell.note = fmt::format("not computed: H_{}(A) of an abelian group with torsion is not Lambda^{}", q, q);
      }
      page.cells.push_back(std::move(cell));
    }
  }
  return page;
}

namespace {

enum class CellState { Zero, Nonzero, Unknown };

struct CellView {
  CellState state;
  const FgAbelianGroup* group;
};

CellView view(const E2Page& page, int p, int q) {
  if (p < 0 || q < 0) return {CellState::Zero, nullptr};
  if (page.zero_above_q && q > *page.zero_above_q) return {CellState::Zero, nullptr};
  const E2Cell* c = page.find(p, q);
  if (!c || !c->group) return {CellState::Unknown, nullptr};
  return {c->group->is_trivial() ? CellState::Zero : CellState::Nonzero, &*c->group};
}

bool coprime_finite(const FgAbelianGroup& a, const FgAbelianGroup& b) {
  const auto oa = a.order(), ob = b.order();
  if (!oa || !ob) return false;
  Integer g;
  mpz_gcd(g.get_mpz_t(), oa->get_mpz_t(), ob->get_mpz_t());
  return g == 1;
}

// Hom(a, b) = 0: a finite with order prime to the torsion of b.
bool hom_vanishes(const FgAbelianGroup& a, const FgAbelianGroup& b) {
  if (!a.is_finite()) return false;
  return coprime_finite(a, FgAbelianGroup(0, b.torsion()));
}

// Decides which differentials d_r: (p, q) -> (p - r, q + r - 1) are known to
// vanish. A differential between two nonzero cells is settled by a Hom
// argument only while both cells still equal their E^2 entries, i.e. every
// earlier differential touching them is settled.
class DifferentialOracle {
 public:
  explicit DifferentialOracle(const E2Page& page) : page_(page) {}

  bool settled(int p, int q, int r) {
    const auto key = std::make_tuple(p, q, r);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    bool result = compute(p, q, r);
    memo_[key] = result;
    return result;
  }

  // Every differential in or out of (p, q) vanishes.
  bool permanent(int p, int q, std::vector<std::string>& reasons) {
    bool ok = true;
    for (int r = 2; r <= p; ++r)
      if (!settled(p, q, r)) {
        reasons.push_back(fmt::format("d{} from ({},{}) to ({},{}) is not excluded", r, p, q, p - r, q + r - 1));
        ok = false;
      }
    for (int r = 2; r <= q + 1; ++r)
      if (!settled(p + r, q - r + 1, r)) {
        reasons.push_back(fmt::format("d{} from ({},{}) to ({},{}) is not excluded", r, p + r, q - r + 1, p, q));
        ok = false;
      }
    return ok;
  }

 private:
  bool compute(int p, int q, int r) {
    const CellView src = view(page_, p, q);
    const CellView tgt = view(page_, p - r, q + r - 1);
    if (src.state == CellState::Zero || tgt.state == CellState::Zero) return true;
    if (q == 0) return true;  // the splitting makes row 0 permanent
    if (src.state == CellState::Unknown || tgt.state == CellState::Unknown) return false;
    if (!hom_vanishes(*src.group, *tgt.group)) return false;
    for (int s = 2; s < r; ++s)
      if (!untouched_below(p, q, s) || !untouched_below(p - r, q + r - 1, s)) return false;
    return true;
  }

  bool untouched_below(int p, int q, int s) {
    if (p - s >= 0 && !settled(p, q, s)) return false;
    if (q - s + 1 >= 0 && !settled(p + s, q - s + 1, s)) return false;
    return true;
  }

  const E2Page& page_;
  std::map<std::tuple<int, int, int>, bool> memo_;
};

}  // namespace

HomologyAssembly assemble_homology(const E2Page& page, int i_max) {
  if (i_max < 0) throw InvalidArgument("i_max must be >= 0");
  HomologyAssembly out;
  DifferentialOracle differentials(page);
  for (int i = 0; i <= i_max; ++i) {
    std::vector<std::string> reasons;
    const CellView row0 = view(page, i, 0);
    if (row0.state == CellState::Unknown) reasons.push_back(fmt::format("E2({},0) is outside the page", i));

    // Cells with q >= 1, from the bottom of the filtration (p = 0) upwards.
    std::vector<const FgAbelianGroup*> pieces;
    for (int p = 0; p < i; ++p) {
      const int q = i - p;
      const CellView cell = view(page, p, q);
      if (cell.state == CellState::Unknown) {
        reasons.push_back(fmt::format("E2({},{}) is unknown", p, q));
        continue;
      }
      if (cell.state == CellState::Zero) continue;
      if (differentials.permanent(p, q, reasons)) pieces.push_back(cell.group);
    }

    std::optional<FgAbelianGroup> rest;
    if (reasons.empty()) {
      rest = FgAbelianGroup();
      for (const FgAbelianGroup* piece : pieces) {
        if (rest->is_trivial() || piece->torsion().empty() || coprime_finite(*rest, *piece)) {
          rest = rest->direct_sum(*piece);
        } else {
          reasons.push_back(fmt::format("extension of {} by {} is not determined", piece->to_string(), rest->to_string()));
          break;
        }
      }
    }
    if (reasons.empty()) {
      out.groups.push_back(rest->direct_sum(*row0.group));
    } else {
      out.groups.push_back(std::nullopt);
      for (auto& r : reasons) out.ambiguities.push_back({i, std::move(r)});
    }
  }
  return out;
}

}  // namespace gamma_omega
