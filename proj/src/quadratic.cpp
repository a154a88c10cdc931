#include "gamma_omega/quadratic.hpp"

#include <fmt/format.h>

#include <charconv>
#include <map>

#include "gamma_omega/errors.hpp"

namespace gamma_omega {

FunctorName FunctorName::exterior(int k) {
  if (k < 1) throw InvalidArgument("exterior power degree must be >= 1");
  return {Kind::Exterior, k};
}

FunctorName FunctorName::parse(const std::string& text) {
  if (text == "tensor2") return tensor_square();
  if (text == "sym2") return sym2();
  if (text == "gamma2") return gamma2();
  if (text.rfind("ext:", 0) == 0) {
    int k = 0;
    const char* first = text.data() + 4;
    const char* last = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(first, last, k);
    if (ec != std::errc() || ptr != last || first == last) throw InvalidArgument("bad functor name: " + text);
    return exterior(k);
  }
  throw InvalidArgument("unknown functor: " + text);
}

std::string FunctorName::to_string() const {
  switch (kind) {
    case Kind::TensorSquare: return "tensor2";
    case Kind::Exterior: return fmt::format("ext:{}", degree);
    case Kind::Sym2: return "sym2";
    case Kind::Gamma2: return "gamma2";
  }
  return "";
}

namespace {

Integer gcd_order(const Integer& a, const Integer& b) {
  Integer g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

std::vector<std::vector<std::size_t>> k_subsets(std::size_t n, std::size_t k) {
  std::vector<std::vector<std::size_t>> out;
  if (k > n) return out;
  std::vector<std::size_t> cur(k);
  for (std::size_t i = 0; i < k; ++i) cur[i] = i;
  for (;;) {
    out.push_back(cur);
    std::size_t i = k;
    while (i > 0 && cur[i - 1] == n - k + (i - 1)) --i;
    if (i == 0) return out;
    ++cur[i - 1];
    for (std::size_t j = i; j < k; ++j) cur[j] = cur[j - 1] + 1;
  }
}

// Pairs (i, j) with i < j in lexicographic order.
std::vector<std::pair<std::size_t, std::size_t>> upper_pairs(std::size_t n) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) out.emplace_back(i, j);
  return out;
}

std::string gen(std::size_t i) { return fmt::format("g{}", i + 1); }

Integer gamma_order(const Integer& o) {
  if (o == 0) return 0;
  if (o % 2 == 0) return 2 * o;
  return o;
}

}  // namespace

StructuralBasis structural_basis(const FunctorName& f, const FgAbelianGroup& a) {
  const std::size_t n = a.num_generators();
  StructuralBasis b;
  switch (f.kind) {
    case FunctorName::Kind::TensorSquare:
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
          b.orders.push_back(gcd_order(a.generator_order(i), a.generator_order(j)));
          b.labels.push_back(gen(i) + "(x)" + gen(j));
        }
      break;
    case FunctorName::Kind::Exterior:
      for (const auto& s : k_subsets(n, static_cast<std::size_t>(f.degree))) {
        Integer o = 0;
        std::string label;
        for (std::size_t i : s) {
          o = gcd_order(o, a.generator_order(i));
          if (!label.empty()) label += "^";
          label += gen(i);
        }
        b.orders.push_back(o);
        b.labels.push_back(label);
      }
      break;
    case FunctorName::Kind::Sym2:
      for (std::size_t i = 0; i < n; ++i) {
        b.orders.push_back(a.generator_order(i));
        b.labels.push_back(gen(i) + "." + gen(i));
      }
      for (const auto& [i, j] : upper_pairs(n)) {
        b.orders.push_back(gcd_order(a.generator_order(i), a.generator_order(j)));
        b.labels.push_back(gen(i) + "." + gen(j));
      }
      break;
    case FunctorName::Kind::Gamma2:
      for (std::size_t i = 0; i < n; ++i) {
        b.orders.push_back(gamma_order(a.generator_order(i)));
        b.labels.push_back("gamma(" + gen(i) + ")");
      }
      for (const auto& [i, j] : upper_pairs(n)) {
        b.orders.push_back(gcd_order(a.generator_order(i), a.generator_order(j)));
        b.labels.push_back("[" + gen(i) + "|" + gen(j) + "]");
      }
      break;
  }
  return b;
}

FgAbelianGroup functor_apply(const FunctorName& f, const FgAbelianGroup& a) {
  return FgAbelianGroup::direct_sum_of_cyclics(structural_basis(f, a).orders);
}

IntMatrix structural_map_matrix(const FunctorName& f, const AbMap& map) {
  const IntMatrix& m = map.matrix();
  const std::size_t n = map.domain().num_generators();
  const std::size_t p = map.codomain().num_generators();
  switch (f.kind) {
    case FunctorName::Kind::TensorSquare: {
      IntMatrix s(p * p, n * n);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
          for (std::size_t k = 0; k < p; ++k)
            for (std::size_t l = 0; l < p; ++l) s(k * p + l, i * n + j) = m(k, i) * m(l, j);
      return s;
    }
    case FunctorName::Kind::Exterior: {
      const auto src = k_subsets(n, static_cast<std::size_t>(f.degree));
      const auto dst = k_subsets(p, static_cast<std::size_t>(f.degree));
      IntMatrix s(dst.size(), src.size());
      for (std::size_t c = 0; c < src.size(); ++c)
        for (std::size_t r = 0; r < dst.size(); ++r) s(r, c) = determinant(m.select_rows(dst[r]).select_cols(src[c]));
      return s;
    }
    case FunctorName::Kind::Sym2:
    case FunctorName::Kind::Gamma2: {
      // Sym2: x.y bilinear symmetric. Gamma2: gamma quadratic with cross term
      // [x|y] = gamma(x+y) - gamma(x) - gamma(y), and [h|h] = 2 gamma(h).
      const bool gamma = f.kind == FunctorName::Kind::Gamma2;
      const auto src_pairs = upper_pairs(n);
      const auto dst_pairs = upper_pairs(p);
      IntMatrix s(p + dst_pairs.size(), n + src_pairs.size());
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t k = 0; k < p; ++k) s(k, i) = m(k, i) * m(k, i);
        for (std::size_t r = 0; r < dst_pairs.size(); ++r) {
          const auto [k, l] = dst_pairs[r];
          s(p + r, i) = (gamma ? 1 : 2) * m(k, i) * m(l, i);
        }
      }
      for (std::size_t c = 0; c < src_pairs.size(); ++c) {
        const auto [i, j] = src_pairs[c];
        for (std::size_t k = 0; k < p; ++k) s(k, n + c) = (gamma ? 2 : 1) * m(k, i) * m(k, j);
        for (std::size_t r = 0; r < dst_pairs.size(); ++r) {
          const auto [k, l] = dst_pairs[r];
          s(p + r, n + c) = m(k, i) * m(l, j) + m(l, i) * m(k, j);
        }
      }
      return s;
    }
  }
  return {};
}

AbMap functor_map(const FunctorName& f, const AbMap& map) {
  const auto src = canonicalize_cyclic_sum(structural_basis(f, map.domain()).orders);
  const auto dst = canonicalize_cyclic_sum(structural_basis(f, map.codomain()).orders);
  const IntMatrix s = structural_map_matrix(f, map);
  return AbMap(src.group, dst.group, dst.to_canonical * s * src.from_canonical);
}

FgAbelianGroup gamma2_oracle(const FgAbelianGroup& a, std::size_t element_bound) {
  const auto order = a.order();
  if (!order) throw InvalidArgument("gamma2_oracle: group is infinite");
  if (*order > element_bound)
    throw ResourceLimitError(fmt::format("gamma2_oracle: |A| = {} exceeds the element bound {}", order->get_str(),
                                         element_bound));
  const std::size_t n = order->get_ui();
  const auto& t = a.torsion();

  // Mixed-radix indexing of elements by canonical coordinates.
  std::vector<std::vector<Integer>> elements;
  {
    std::vector<Integer> cur(t.size(), Integer(0));
    for (std::size_t e = 0; e < n; ++e) {
      elements.push_back(cur);
      for (std::size_t i = t.size(); i-- > 0;) {
        if (++cur[i] < t[i]) break;
        cur[i] = 0;
      }
    }
  }
  std::map<std::vector<Integer>, std::size_t> index;
  for (std::size_t e = 0; e < n; ++e) index[elements[e]] = e;
  auto sum = [&](std::size_t x, std::size_t y) {
    std::vector<Integer> s(t.size());
    for (std::size_t i = 0; i < t.size(); ++i) s[i] = (elements[x][i] + elements[y][i]) % t[i];
    return index.at(s);
  };
  auto neg = [&](std::size_t x) {
    std::vector<Integer> s(t.size());
    for (std::size_t i = 0; i < t.size(); ++i) s[i] = (t[i] - elements[x][i]) % t[i];
    return index.at(s);
  };

  HermiteLattice relations(n);
  for (std::size_t x = 0; x < n; ++x) {
    std::vector<Integer> row(n, Integer(0));
    row[neg(x)] += 1;
    row[x] -= 1;
    relations.insert(std::move(row));
  }
  // The second relation is symmetric in x, y, z.
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = x; y < n; ++y)
      for (std::size_t z = y; z < n; ++z) {
        std::vector<Integer> row(n, Integer(0));
        const std::size_t xy = sum(x, y);
        row[sum(xy, z)] += 1;
        row[xy] -= 1;
        row[sum(y, z)] -= 1;
        row[sum(x, z)] -= 1;
        row[x] += 1;
        row[y] += 1;
        row[z] += 1;
        relations.insert(std::move(row));
      }
  std::vector<std::vector<Integer>> rows;
  for (const auto& [pivot, row] : relations.rows()) rows.push_back(row);
  return from_relations(IntMatrix::from_rows(rows, n).transpose());
}

Integer rational_dim(const FunctorName& f, std::size_t dim) {
  const Integer d = static_cast<unsigned long>(dim);
  switch (f.kind) {
    case FunctorName::Kind::TensorSquare: return d * d;
    case FunctorName::Kind::Exterior: {
      Integer c;
      mpz_bin_uiui(c.get_mpz_t(), dim, static_cast<unsigned long>(f.degree));
      return c;
    }
    case FunctorName::Kind::Sym2:
    case FunctorName::Kind::Gamma2: return d * (d + 1) / 2;
  }
  return 0;
}

}  // namespace gamma_omega
