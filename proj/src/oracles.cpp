#include "gamma_omega/oracles.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>

#include "gamma_omega/errors.hpp"

namespace gamma_omega::oracles {

namespace {

std::int64_t mod(std::int64_t a, std::int64_t n) {
  const std::int64_t r = a % n;
  return r < 0 ? r + n : r;
}

Tuple add(const Tuple& a, const Tuple& b, const std::vector<std::int64_t>& orders) {
  Tuple out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = mod(a[i] + b[i], orders[i]);
  return out;
}

Tuple scale(const Tuple& a, std::int64_t k, const std::vector<std::int64_t>& orders) {
  Tuple out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = mod(a[i] * k, orders[i]);
  return out;
}

}  // namespace

std::vector<Tuple> enumerate_cyclic_sum(const std::vector<std::int64_t>& orders) {
  std::vector<Tuple> out;
  Tuple cur(orders.size(), 0);
  for (;;) {
    out.push_back(cur);
    std::size_t i = orders.size();
    while (i > 0) {
      --i;
      if (++cur[i] < orders[i]) break;
      cur[i] = 0;
      if (i == 0) return out;
    }
    if (orders.empty()) return out;
  }
}

std::vector<std::int64_t> quotient_torsion_profile(const std::vector<std::int64_t>& orders,
                                                   const std::vector<Tuple>& gens, std::int64_t max_k) {
  std::vector<Tuple> reduced_gens;
  for (const auto& g : gens) reduced_gens.push_back(scale(g, 1, orders));
  // Closure of the subgroup H.
  std::set<Tuple> h{Tuple(orders.size(), 0)};
  std::vector<Tuple> frontier(h.begin(), h.end());
  while (!frontier.empty()) {
    std::vector<Tuple> next;
    for (const auto& x : frontier)
      for (const auto& g : reduced_gens) {
        Tuple y = add(x, g, orders);
        if (h.insert(y).second) next.push_back(std::move(y));
      }
    frontier = std::move(next);
  }
  // One representative per coset.
  std::set<Tuple> seen;
  std::vector<Tuple> reps;
  for (const auto& x : enumerate_cyclic_sum(orders)) {
    if (seen.count(x)) continue;
    reps.push_back(x);
    for (const auto& y : h) seen.insert(add(x, y, orders));
  }
  std::vector<std::int64_t> profile;
  for (std::int64_t k = 1; k <= max_k; ++k) {
    std::int64_t count = 0;
    for (const auto& x : reps)
      if (h.count(scale(x, k, orders))) ++count;
    profile.push_back(count);
  }
  return profile;
}

std::vector<std::int64_t> torsion_profile(const FgAbelianGroup& g, std::int64_t max_k) {
  if (!g.is_finite()) throw InvalidArgument("torsion_profile: group is infinite");
  std::vector<std::int64_t> orders;
  for (const auto& d : g.torsion()) orders.push_back(d.get_si());
  return quotient_torsion_profile(orders, {}, max_k);
}

std::vector<std::vector<std::int64_t>> abelian_groups_of_order(std::int64_t n) {
  std::vector<std::pair<std::int64_t, int>> factors;
  for (std::int64_t p = 2; p * p <= n; ++p) {
    int e = 0;
    while (n % p == 0) n /= p, ++e;
    if (e) factors.emplace_back(p, e);
  }
  if (n > 1) factors.emplace_back(n, 1);

  // Partitions of e as non-increasing part lists.
  std::function<void(int, int, std::vector<int>&, std::vector<std::vector<int>>&)> partitions =
      [&](int rest, int max_part, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
        if (rest == 0) {
          out.push_back(cur);
          return;
        }
        for (int part = std::min(rest, max_part); part >= 1; --part) {
          cur.push_back(part);
          partitions(rest - part, part, cur, out);
          cur.pop_back();
        }
      };

  std::vector<std::vector<std::int64_t>> groups{{}};
  for (const auto& [p, e] : factors) {
    std::vector<std::vector<int>> parts;
    std::vector<int> cur;
    partitions(e, e, cur, parts);
    std::vector<std::vector<std::int64_t>> next;
    for (const auto& g : groups)
      for (const auto& part : parts) {
        auto h = g;
        for (int k : part) {
          std::int64_t q = 1;
          for (int i = 0; i < k; ++i) q *= p;
          h.push_back(q);
        }
        next.push_back(std::move(h));
      }
    groups = std::move(next);
  }
  return groups;
}

std::int64_t necklace_count(std::int64_t rank, std::int64_t k) {
  auto moebius = [](std::int64_t d) {
    int sign = 1;
    for (std::int64_t p = 2; p * p <= d; ++p) {
      if (d % p) continue;
      d /= p;
      if (d % p == 0) return 0;
      sign = -sign;
    }
    if (d > 1) sign = -sign;
    return sign;
  };
  std::int64_t total = 0;
  for (std::int64_t d = 1; d <= k; ++d) {
    if (k % d) continue;
    std::int64_t power = 1;
    for (std::int64_t i = 0; i < k / d; ++i) power *= rank;
    total += moebius(d) * power;
  }
  return total / k;
}

// ---------------------------------------------------------------------------
// Coset enumeration

namespace {

class CosetTable {
 public:
  CosetTable(int num_gens, std::int64_t max_cosets)
      : cols_(2 * num_gens), max_cosets_(max_cosets) {
    new_coset();
  }

  static int column(int letter) { return letter > 0 ? 2 * (letter - 1) : 2 * (-letter - 1) + 1; }
  static int inverse_column(int col) { return col ^ 1; }

  std::int64_t define(std::int64_t c, int col) {
    const std::int64_t d = new_coset();
    if (d < 0) return -1;
    table_[c][col] = d;
    table_[d][inverse_column(col)] = c;
    return d;
  }

  // Scan the word from coset c, defining new cosets where needed.
  bool scan_and_fill(std::int64_t c, const std::vector<int>& word) {
    std::int64_t f = c;
    std::int64_t b = c;
    std::size_t i = 0;
    std::size_t j = word.size();
    for (;;) {
      while (i < j && table_[f][column(word[i])] >= 0) f = table_[f][column(word[i++])];
      if (i == j) {
        if (f != b) coincidence(f, b);
        return true;
      }
      while (j > i && table_[b][inverse_column(column(word[j - 1]))] >= 0)
        b = table_[b][inverse_column(column(word[--j]))];
      if (i == j) {
        if (f != b) coincidence(f, b);
        return true;
      }
      if (j == i + 1) {
        const int col = column(word[i]);
        table_[f][col] = b;
        table_[b][inverse_column(col)] = f;
        return true;
      }
      if (define(f, column(word[i])) < 0) return false;
    }
  }

  // Defines every missing entry in the row of c.
  bool fill_row(std::int64_t c) {
    for (int col = 0; col < cols_; ++col)
      if (alive(c) && table_[c][col] < 0 && define(c, col) < 0) return false;
    return true;
  }

  bool alive(std::int64_t c) const { return parent_[c] == c; }
  std::int64_t size() const { return static_cast<std::int64_t>(table_.size()); }
  std::int64_t live_count() const {
    std::int64_t n = 0;
    for (std::int64_t c = 0; c < size(); ++c)
      if (alive(c)) ++n;
    return n;
  }

 private:
  std::int64_t new_coset() {
    if (live_count_ >= max_cosets_) return -1;
    table_.emplace_back(cols_, -1);
    parent_.push_back(size() - 1);
    ++live_count_;
    return size() - 1;
  }

  std::int64_t rep(std::int64_t c) {
    while (parent_[c] != c) c = parent_[c] = parent_[parent_[c]];
    return c;
  }

  void merge(std::int64_t a, std::int64_t b, std::vector<std::int64_t>& queue) {
    a = rep(a);
    b = rep(b);
    if (a == b) return;
    if (a > b) std::swap(a, b);
    parent_[b] = a;
    --live_count_;
    queue.push_back(b);
  }

  void coincidence(std::int64_t a, std::int64_t b) {
    std::vector<std::int64_t> queue;
    merge(a, b, queue);
    for (std::size_t qi = 0; qi < queue.size(); ++qi) {
      const std::int64_t e = queue[qi];
      for (int col = 0; col < cols_; ++col) {
        const std::int64_t f = table_[e][col];
        if (f < 0) continue;
        table_[f][inverse_column(col)] = -1;
        const std::int64_t e1 = rep(e);
        const std::int64_t f1 = rep(f);
        if (table_[e1][col] >= 0) {
          merge(f1, table_[e1][col], queue);
        } else if (table_[f1][inverse_column(col)] >= 0) {
          merge(e1, table_[f1][inverse_column(col)], queue);
        } else {
          table_[e1][col] = f1;
          table_[f1][inverse_column(col)] = e1;
        }
      }
    }
  }

  int cols_;
  std::int64_t max_cosets_;
  std::int64_t live_count_ = 0;
  std::vector<std::vector<std::int64_t>> table_;
  std::vector<std::int64_t> parent_;

};

}  // namespace

std::int64_t coset_enumeration(int num_gens, const std::vector<std::vector<int>>& relators,
                               const std::vector<std::vector<int>>& subgroup, std::int64_t max_cosets) {
  CosetTable t(num_gens, max_cosets);
  for (const auto& w : subgroup)
    if (!t.scan_and_fill(0, w)) return -1;
  for (std::int64_t c = 0; c < t.size(); ++c) {
    for (const auto& r : relators) {
      if (!t.alive(c)) break;
      if (!t.scan_and_fill(c, r)) return -1;
    }
    if (!t.alive(c)) continue;
    if (!t.fill_row(c)) return -1;
  }
  return t.live_count();
}

FgAbelianGroup exterior_square_by_enumeration(const std::vector<std::int64_t>& orders) {
  const std::size_t k = orders.size();
  std::vector<std::vector<Integer>> relation_cols;
  auto idx = [k](std::size_t i, std::size_t j) { return i * k + j; };
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) {
      std::vector<Integer> col(k * k);
      col[idx(i, j)] = std::gcd(orders[i], orders[j]);
      relation_cols.push_back(std::move(col));
    }
  for (const auto& x : enumerate_cyclic_sum(orders)) {
    std::vector<Integer> col(k * k);
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j) col[idx(i, j)] = x[i] * x[j];
    relation_cols.push_back(std::move(col));
  }
  return from_relations(IntMatrix::from_rows(relation_cols, k * k).transpose());
}

std::vector<std::vector<std::int64_t>> braid_linking_matrix(int strands, const std::vector<int>& word) {
  std::vector<int> at(strands);
  std::iota(at.begin(), at.end(), 0);
  std::vector<std::vector<std::int64_t>> crossings(strands, std::vector<std::int64_t>(strands, 0));
  for (int letter : word) {
    const int i = std::abs(letter) - 1;
    if (i < 0 || i + 1 >= strands) throw InvalidArgument("braid letter out of range");
    const int sign = letter > 0 ? 1 : -1;
    crossings[at[i]][at[i + 1]] += sign;
    crossings[at[i + 1]][at[i]] += sign;
    std::swap(at[i], at[i + 1]);
  }
  // Strand at[p] ends at position p and continues as strand p.
  std::vector<int> comp(strands, -1);
  std::vector<int> next(strands);
  for (int p = 0; p < strands; ++p) next[at[p]] = p;
  int num = 0;
  for (int s = 0; s < strands; ++s) {
    if (comp[s] >= 0) continue;
    for (int t = s; comp[t] < 0; t = next[t]) comp[t] = num;
    ++num;
  }
  std::vector<std::vector<std::int64_t>> lk(num, std::vector<std::int64_t>(num, 0));
  for (int a = 0; a < strands; ++a)
    for (int b = a + 1; b < strands; ++b)
      if (comp[a] != comp[b]) {
        lk[comp[a]][comp[b]] += crossings[a][b];
        lk[comp[b]][comp[a]] += crossings[a][b];
      }
  for (auto& row : lk)
    for (auto& x : row) x /= 2;
  return lk;
}

}  // namespace gamma_omega::oracles
