#include "gamma_omega/abelian.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <utility>

#include "gamma_omega/errors.hpp"

namespace gamma_omega {

// ---------------------------------------------------------------------------
// IntMatrix

IntMatrix::IntMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), entries_(rows * cols) {}

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::diagonal(const std::vector<Integer>& diag) {
  IntMatrix m(diag.size(), diag.size());
  for (std::size_t i = 0; i < diag.size(); ++i) m(i, i) = diag[i];
  return m;
}

IntMatrix IntMatrix::from_rows(const std::vector<std::vector<Integer>>& rows, std::size_t cols) {
  if (!rows.empty()) cols = rows.front().size();
  IntMatrix m(rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) throw InvalidArgument("matrix rows have unequal length");
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = rows[r][c];
  }
  return m;
}

std::vector<Integer> IntMatrix::row(std::size_t r) const {
  return {entries_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
          entries_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_)};
}

std::vector<Integer> IntMatrix::column(std::size_t c) const {
  std::vector<Integer> out(rows_);
  for (std::size_t r = 0; r < rows_; ++r) out[r] = (*this)(r, c);
  return out;
}

void IntMatrix::set_column(std::size_t c, const std::vector<Integer>& values) {
  for (std::size_t r = 0; r < rows_; ++r) (*this)(r, c) = values[r];
}

IntMatrix IntMatrix::transpose() const {
  IntMatrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

IntMatrix IntMatrix::operator*(const IntMatrix& rhs) const {
  if (cols_ != rhs.rows_) throw InvalidArgument("matrix product: dimension mismatch");
  IntMatrix out(rows_, rhs.cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k) {
      const Integer& a = (*this)(i, k);
      if (a == 0) continue;
      for (std::size_t j = 0; j < rhs.cols_; ++j) out(i, j) += a * rhs(k, j);
    }
  return out;
}

std::vector<Integer> IntMatrix::operator*(const std::vector<Integer>& v) const {
  if (v.size() != cols_) throw InvalidArgument("matrix-vector product: dimension mismatch");
  std::vector<Integer> out(rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k)
      if (v[k] != 0) out[i] += (*this)(i, k) * v[k];
  return out;
}

IntMatrix IntMatrix::hconcat(const IntMatrix& rhs) const {
  if (rows_ != rhs.rows_) throw InvalidArgument("hconcat: row counts differ");
  IntMatrix out(rows_, cols_ + rhs.cols_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) out(r, c) = (*this)(r, c);
    for (std::size_t c = 0; c < rhs.cols_; ++c) out(r, cols_ + c) = rhs(r, c);
  }
  return out;
}

IntMatrix IntMatrix::select_rows(const std::vector<std::size_t>& which) const {
  IntMatrix out(which.size(), cols_);
  for (std::size_t i = 0; i < which.size(); ++i)
    for (std::size_t c = 0; c < cols_; ++c) out(i, c) = (*this)(which[i], c);
  return out;
}

IntMatrix IntMatrix::select_cols(const std::vector<std::size_t>& which) const {
  IntMatrix out(rows_, which.size());
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t i = 0; i < which.size(); ++i) out(r, i) = (*this)(r, which[i]);
  return out;
}

bool IntMatrix::is_zero() const {
  return std::all_of(entries_.begin(), entries_.end(), [](const Integer& x) { return x == 0; });
}

std::string IntMatrix::to_string() const {
  std::ostringstream os;
  os << '[';
  for (std::size_t r = 0; r < rows_; ++r) {
    if (r) os << ',';
    os << '[';
    for (std::size_t c = 0; c < cols_; ++c) {
      if (c) os << ',';
      os << (*this)(r, c).get_str();
    }
    os << ']';
  }
  os << ']';
  return os.str();
}

Integer determinant(const IntMatrix& m) {
  if (m.rows() != m.cols()) throw InvalidArgument("determinant of a non-square matrix");
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  IntMatrix a = m;
  Integer sign = 1;
  Integer prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && a(p, k) == 0) ++p;
      if (p == n) return 0;
      for (std::size_t c = 0; c < n; ++c) std::swap(a(k, c), a(p, c));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) {
        a(i, j) = a(i, j) * a(k, k) - a(i, k) * a(k, j);
        mpz_divexact(a(i, j).get_mpz_t(), a(i, j).get_mpz_t(), prev.get_mpz_t());
      }
    prev = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

// ---------------------------------------------------------------------------
// Smith normal form

namespace {

int cmpabs(const Integer& a, const Integer& b) { return mpz_cmpabs(a.get_mpz_t(), b.get_mpz_t()); }

// Reduction by elementary operations, pivoting on the entry of least absolute
// value. Each transform is tracked only when requested.
class SmithReducer {
 public:
  SmithReducer(const IntMatrix& m, bool track_u, bool track_u_inv, bool track_v)
      : a_(m), track_u_(track_u), track_u_inv_(track_u_inv), track_v_(track_v) {
    if (track_u_) u_ = IntMatrix::identity(m.rows());
    if (track_u_inv_) u_inv_ = IntMatrix::identity(m.rows());
    if (track_v_) v_ = IntMatrix::identity(m.cols());
  }

  void run() {
    const std::size_t m = a_.rows();
    const std::size_t n = a_.cols();
    const std::size_t lim = std::min(m, n);
    for (std::size_t t = 0; t < lim; ++t) {
      std::size_t pr = 0, pc = 0;
      if (!find_min(t, pr, pc)) break;
      move_to(t, pr, pc);
      for (;;) {
        bool dirty = false;
        for (std::size_t i = t + 1; i < m; ++i) {
          if (a_(i, t) == 0) continue;
          Integer q;
          mpz_tdiv_q(q.get_mpz_t(), a_(i, t).get_mpz_t(), a_(t, t).get_mpz_t());
          if (q != 0) row_addmul(i, t, -q);
          if (a_(i, t) != 0) dirty = true;
        }
        for (std::size_t j = t + 1; j < n; ++j) {
          if (a_(t, j) == 0) continue;
          Integer q;
          mpz_tdiv_q(q.get_mpz_t(), a_(t, j).get_mpz_t(), a_(t, t).get_mpz_t());
          if (q != 0) col_addmul(j, t, -q);
          if (a_(t, j) != 0) dirty = true;
        }
        if (dirty) {
          // Smallest remainder in row t / column t becomes the new pivot.
          std::size_t br = t, bc = t;
          for (std::size_t i = t + 1; i < m; ++i)
            if (a_(i, t) != 0 && cmpabs(a_(i, t), a_(br, bc)) < 0) br = i, bc = t;
          for (std::size_t j = t + 1; j < n; ++j)
            if (a_(t, j) != 0 && cmpabs(a_(t, j), a_(br, bc)) < 0) br = t, bc = j;
          move_to(t, br, bc);
          continue;
        }
        std::size_t bad_row = m;
        for (std::size_t i = t + 1; i < m && bad_row == m; ++i)
          for (std::size_t j = t + 1; j < n; ++j)
            if (!mpz_divisible_p(a_(i, j).get_mpz_t(), a_(t, t).get_mpz_t())) {
              bad_row = i;
              break;
            }
        if (bad_row == m) break;
        row_addmul(t, bad_row, 1);
      }
      if (a_(t, t) < 0) row_negate(t);
    }
  }

  IntMatrix& a() { return a_; }
  IntMatrix& u() { return u_; }
  IntMatrix& u_inv() { return u_inv_; }
  IntMatrix& v() { return v_; }

 private:
  // Least nonzero entry of the block below and right of (t, t).
  bool find_min(std::size_t t, std::size_t& pr, std::size_t& pc) const {
    bool found = false;
    for (std::size_t i = t; i < a_.rows(); ++i)
      for (std::size_t j = t; j < a_.cols(); ++j) {
        const Integer& x = a_(i, j);
        if (x == 0) continue;
        if (!found || cmpabs(x, a_(pr, pc)) < 0) {
          pr = i;
          pc = j;
          found = true;
          if (x == 1 || x == -1) return true;
        }
      }
    return found;
  }

  void move_to(std::size_t t, std::size_t r, std::size_t c) {
    if (r != t) row_swap(t, r);
    if (c != t) col_swap(t, c);
  }

  // row_i += k * row_j
  void row_addmul(std::size_t i, std::size_t j, const Integer& k) {
    for (std::size_t c = 0; c < a_.cols(); ++c)
      if (a_(j, c) != 0) a_(i, c) += k * a_(j, c);
    if (track_u_)
      for (std::size_t c = 0; c < u_.cols(); ++c)
        if (u_(j, c) != 0) u_(i, c) += k * u_(j, c);
    // U' = E U  =>  U'^{-1} = U^{-1} E^{-1}: col_j -= k * col_i
    if (track_u_inv_)
      for (std::size_t r = 0; r < u_inv_.rows(); ++r)
        if (u_inv_(r, i) != 0) u_inv_(r, j) -= k * u_inv_(r, i);
  }

  void row_swap(std::size_t i, std::size_t j) {
    for (std::size_t c = 0; c < a_.cols(); ++c) swap(a_(i, c), a_(j, c));
    if (track_u_)
      for (std::size_t c = 0; c < u_.cols(); ++c) swap(u_(i, c), u_(j, c));
    if (track_u_inv_)
      for (std::size_t r = 0; r < u_inv_.rows(); ++r) swap(u_inv_(r, i), u_inv_(r, j));
  }

  void row_negate(std::size_t i) {
    for (std::size_t c = 0; c < a_.cols(); ++c) a_(i, c) = -a_(i, c);
    if (track_u_)
      for (std::size_t c = 0; c < u_.cols(); ++c) u_(i, c) = -u_(i, c);
    if (track_u_inv_)
      for (std::size_t r = 0; r < u_inv_.rows(); ++r) u_inv_(r, i) = -u_inv_(r, i);
  }

  // col_i += k * col_j
  void col_addmul(std::size_t i, std::size_t j, const Integer& k) {
    for (std::size_t r = 0; r < a_.rows(); ++r)
      if (a_(r, j) != 0) a_(r, i) += k * a_(r, j);
    if (track_v_)
      for (std::size_t r = 0; r < v_.rows(); ++r)
        if (v_(r, j) != 0) v_(r, i) += k * v_(r, j);
  }

  void col_swap(std::size_t i, std::size_t j) {
    for (std::size_t r = 0; r < a_.rows(); ++r) swap(a_(r, i), a_(r, j));
    if (track_v_)
      for (std::size_t r = 0; r < v_.rows(); ++r) swap(v_(r, i), v_(r, j));
  }

  IntMatrix a_;
  IntMatrix u_;
  IntMatrix u_inv_;
  IntMatrix v_;
  bool track_u_;
  bool track_u_inv_;
  bool track_v_;
};

std::vector<Integer> diagonal_of(const IntMatrix& d) {
  std::vector<Integer> out;
  const std::size_t lim = std::min(d.rows(), d.cols());
  for (std::size_t i = 0; i < lim; ++i) out.push_back(d(i, i));
  return out;
}

}  // namespace

SmithForm smith_normal_form(const IntMatrix& m) {
  SmithReducer red(m, true, false, true);
  red.run();
  return {std::move(red.u()), std::move(red.a()), std::move(red.v())};
}

std::vector<Integer> invariant_factors(const IntMatrix& m) {
  SmithReducer red(m, false, false, false);
  red.run();
  return diagonal_of(red.a());
}

std::size_t matrix_rank(const IntMatrix& m) {
  std::size_t r = 0;
  for (const auto& d : invariant_factors(m))
    if (d != 0) ++r;
  return r;
}

IntMatrix integer_nullspace(const IntMatrix& m) {
  SmithReducer red(m, false, false, true);
  red.run();
  const auto diag = diagonal_of(red.a());
  std::size_t rank = 0;
  while (rank < diag.size() && diag[rank] != 0) ++rank;
  std::vector<std::size_t> cols;
  for (std::size_t j = rank; j < m.cols(); ++j) cols.push_back(j);
  return red.v().select_cols(cols);
}

// ---------------------------------------------------------------------------
// FgAbelianGroup

FgAbelianGroup::FgAbelianGroup(std::size_t free_rank, std::vector<Integer> torsion)
    : free_rank_(free_rank), torsion_(std::move(torsion)) {
  for (std::size_t i = 0; i < torsion_.size(); ++i) {
    if (torsion_[i] < 2) throw InvalidArgument("torsion coefficients must be >= 2");
    if (i > 0 && !mpz_divisible_p(torsion_[i].get_mpz_t(), torsion_[i - 1].get_mpz_t()))
      throw InvalidArgument("torsion coefficients must form a divisibility chain");
  }
}

FgAbelianGroup FgAbelianGroup::cyclic(const Integer& n) {
  if (n < 0) return cyclic(-n);
  if (n == 0) return free(1);
  if (n == 1) return {};
  return FgAbelianGroup(0, {n});
}

FgAbelianGroup FgAbelianGroup::direct_sum_of_cyclics(const std::vector<Integer>& orders) {
  std::vector<Integer> abs_orders;
  abs_orders.reserve(orders.size());
  for (const auto& o : orders) abs_orders.push_back(abs(o));
  return from_relations(IntMatrix::diagonal(abs_orders));
}

Integer FgAbelianGroup::generator_order(std::size_t i) const {
  if (i < torsion_.size()) return torsion_[i];
  return 0;
}

std::optional<Integer> FgAbelianGroup::order() const {
  if (free_rank_ > 0) return std::nullopt;
  Integer o = 1;
  for (const auto& d : torsion_) o *= d;
  return o;
}

FgAbelianGroup FgAbelianGroup::direct_sum(const FgAbelianGroup& other) const {
  std::vector<Integer> orders = torsion_;
  orders.insert(orders.end(), other.torsion_.begin(), other.torsion_.end());
  orders.resize(orders.size() + free_rank_ + other.free_rank_, Integer(0));
  return direct_sum_of_cyclics(orders);
}

std::string FgAbelianGroup::to_string() const {
  if (is_trivial()) return "0";
  std::string out;
  for (const auto& d : torsion_) {
    if (!out.empty()) out += " + ";
    out += "Z/" + d.get_str();
  }
  if (free_rank_ > 0) {
    if (!out.empty()) out += " + ";
    out += free_rank_ == 1 ? std::string("Z") : "Z^" + std::to_string(free_rank_);
  }
  return out;
}

FgAbelianGroup from_relations(const IntMatrix& m) {
  const auto diag = invariant_factors(m);
  std::vector<Integer> torsion;
  std::size_t nonzero = 0;
  for (const auto& d : diag) {
    if (d == 0) continue;
    ++nonzero;
    if (d != 1) torsion.push_back(d);
  }
  return FgAbelianGroup(m.rows() - nonzero, std::move(torsion));
}

std::vector<Integer> reduce_element(const FgAbelianGroup& g, std::vector<Integer> x) {
  for (std::size_t i = 0; i < g.torsion().size(); ++i)
    mpz_fdiv_r(x[i].get_mpz_t(), x[i].get_mpz_t(), g.torsion()[i].get_mpz_t());
  return x;
}

// ---------------------------------------------------------------------------
// AbMap

AbMap::AbMap(FgAbelianGroup domain, FgAbelianGroup codomain, IntMatrix matrix)
    : domain_(std::move(domain)), codomain_(std::move(codomain)), matrix_(std::move(matrix)) {
  if (matrix_.rows() != codomain_.num_generators() || matrix_.cols() != domain_.num_generators())
    throw InvalidArgument("AbMap: matrix shape does not match domain/codomain generators");
  for (std::size_t j = 0; j < matrix_.cols(); ++j) {
    const Integer d = domain_.generator_order(j);
    for (std::size_t i = 0; i < matrix_.rows(); ++i) {
      const Integer e = codomain_.generator_order(i);
      Integer& x = matrix_(i, j);
      if (e != 0) mpz_fdiv_r(x.get_mpz_t(), x.get_mpz_t(), e.get_mpz_t());
      if (d == 0) continue;
      // d * x must vanish in Z/e (or in Z when e == 0).
      const Integer dx = d * x;
      const bool ok = e == 0 ? dx == 0 : mpz_divisible_p(dx.get_mpz_t(), e.get_mpz_t()) != 0;
      if (!ok) throw InvalidArgument("AbMap: image of a torsion generator has the wrong order");
    }
  }
}

AbMap AbMap::identity(const FgAbelianGroup& g) {
  return AbMap(g, g, IntMatrix::identity(g.num_generators()));
}

AbMap AbMap::zero(const FgAbelianGroup& domain, const FgAbelianGroup& codomain) {
  return AbMap(domain, codomain, IntMatrix(codomain.num_generators(), domain.num_generators()));
}

AbMap AbMap::compose(const AbMap& inner) const {
  if (!(inner.codomain_ == domain_)) throw InvalidArgument("AbMap::compose: groups do not match");
  return AbMap(inner.domain_, codomain_, matrix_ * inner.matrix_);
}

std::vector<Integer> AbMap::apply(const std::vector<Integer>& x) const {
  return reduce_element(codomain_, matrix_ * x);
}

// ---------------------------------------------------------------------------
// Kernels, cokernels, subquotients

namespace {

// Relation columns d_i e_i for the torsion generators of g.
IntMatrix torsion_relations(const FgAbelianGroup& g) {
  IntMatrix t(g.num_generators(), g.torsion().size());
  for (std::size_t i = 0; i < g.torsion().size(); ++i) t(i, i) = g.torsion()[i];
  return t;
}

// Lattice {x in Z^domain : f(x) = 0 in the codomain}, as generating columns.
IntMatrix kernel_lattice(const AbMap& f) {
  const std::size_t nd = f.domain().num_generators();
  IntMatrix tc = torsion_relations(f.codomain());
  IntMatrix neg_tc = tc;
  for (std::size_t r = 0; r < neg_tc.rows(); ++r)
    for (std::size_t c = 0; c < neg_tc.cols(); ++c) neg_tc(r, c) = -neg_tc(r, c);
  IntMatrix null = integer_nullspace(f.matrix().hconcat(neg_tc));
  std::vector<std::size_t> top(nd);
  std::iota(top.begin(), top.end(), 0);
  return null.select_rows(top);
}

}  // namespace

FgAbelianGroup lattice_quotient(const IntMatrix& k_generators, const IntMatrix& s_generators) {
  const std::size_t n = k_generators.rows();
  if (s_generators.rows() != n) throw InvalidArgument("lattice_quotient: ambient dimensions differ");
  SmithReducer red(k_generators, true, true, false);
  red.run();
  const auto diag = diagonal_of(red.a());
  std::size_t rank = 0;
  while (rank < diag.size() && diag[rank] != 0) ++rank;
  // K has basis d_j * (column j of U^{-1}), j < rank. Coordinates of s in that
  // basis are (U s)_j / d_j.
  IntMatrix coords(rank, s_generators.cols());
  for (std::size_t c = 0; c < s_generators.cols(); ++c) {
    const auto us = red.u() * s_generators.column(c);
    for (std::size_t j = 0; j < n; ++j) {
      if (j < rank) {
        if (!mpz_divisible_p(us[j].get_mpz_t(), diag[j].get_mpz_t()))
          throw InvalidArgument("lattice_quotient: S is not contained in K");
        mpz_divexact(coords(j, c).get_mpz_t(), us[j].get_mpz_t(), diag[j].get_mpz_t());
      } else if (us[j] != 0) {
        throw InvalidArgument("lattice_quotient: S is not contained in K");
      }
    }
  }
  return from_relations(coords);
}

KernelCokernel map_kernel_cokernel(const AbMap& f) {
  const FgAbelianGroup kernel = lattice_quotient(kernel_lattice(f), torsion_relations(f.domain()));

  const IntMatrix rel = f.matrix().hconcat(torsion_relations(f.codomain()));
  SmithReducer red(rel, true, false, false);
  red.run();
  const auto diag = diagonal_of(red.a());
  const std::size_t nc = f.codomain().num_generators();
  std::vector<Integer> torsion;
  std::vector<std::size_t> torsion_rows, free_rows;
  for (std::size_t i = 0; i < nc; ++i) {
    const Integer d = i < diag.size() ? diag[i] : Integer(0);
    if (d == 1) continue;
    if (d == 0) {
      free_rows.push_back(i);
    } else {
      torsion.push_back(d);
      torsion_rows.push_back(i);
    }
  }
  FgAbelianGroup cokernel(free_rows.size(), torsion);
  std::vector<std::size_t> rows = torsion_rows;
  rows.insert(rows.end(), free_rows.begin(), free_rows.end());
  IntMatrix proj = red.u().select_rows(rows);
  return {kernel, cokernel, AbMap(f.codomain(), cokernel, std::move(proj))};
}

FgAbelianGroup map_homology(const AbMap& incoming, const AbMap& outgoing) {
  if (!(incoming.codomain() == outgoing.domain()))
    throw InvalidArgument("map_homology: maps are not composable");
  if (!outgoing.compose(incoming).matrix().is_zero())
    throw InvalidArgument("map_homology: composite is not zero");
  const IntMatrix s = incoming.matrix().hconcat(torsion_relations(outgoing.domain()));
  return lattice_quotient(kernel_lattice(outgoing), s);
}

Canonicalization canonicalize_cyclic_sum(const std::vector<Integer>& orders) {
  std::vector<Integer> abs_orders;
  for (const auto& o : orders) abs_orders.push_back(abs(o));
  SmithReducer red(IntMatrix::diagonal(abs_orders), true, true, false);
  red.run();
  const auto diag = diagonal_of(red.a());
  std::vector<Integer> torsion;
  std::vector<std::size_t> torsion_idx, free_idx;
  for (std::size_t i = 0; i < diag.size(); ++i) {
    if (diag[i] == 1) continue;
    if (diag[i] == 0) {
      free_idx.push_back(i);
    } else {
      torsion.push_back(diag[i]);
      torsion_idx.push_back(i);
    }
  }
  std::vector<std::size_t> idx = torsion_idx;
  idx.insert(idx.end(), free_idx.begin(), free_idx.end());
  FgAbelianGroup group(free_idx.size(), torsion);
  IntMatrix to = red.u().select_rows(idx);
  for (std::size_t r = 0; r < torsion.size(); ++r)
    for (std::size_t c = 0; c < to.cols(); ++c)
      mpz_fdiv_r(to(r, c).get_mpz_t(), to(r, c).get_mpz_t(), torsion[r].get_mpz_t());
  return {std::move(group), std::move(to), red.u_inv().select_cols(idx)};
}

// ---------------------------------------------------------------------------
// HermiteLattice

void HermiteLattice::insert(std::vector<Integer> row) {
  if (row.size() != width_) throw InvalidArgument("HermiteLattice: row width mismatch");
  for (;;) {
    std::size_t p = 0;
    while (p < width_ && row[p] == 0) ++p;
    if (p == width_) return;
    auto it = rows_.find(p);
    if (it == rows_.end()) {
      if (row[p] < 0)
        for (auto& x : row) x = -x;
      rows_.emplace(p, std::move(row));
      return;
    }
    std::vector<Integer>& old = it->second;
    const Integer a = row[p];
    const Integer b = old[p];
    Integer g, s, t;
    mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    const Integer ag = a / g;
    const Integer bg = b / g;
    std::vector<Integer> pivot_row(width_), rest(width_);
    for (std::size_t c = p; c < width_; ++c) {
      pivot_row[c] = s * row[c] + t * old[c];
      rest[c] = bg * row[c] - ag * old[c];
    }
    if (pivot_row[p] < 0)
      for (auto& x : pivot_row) x = -x;
    old = std::move(pivot_row);
    row = std::move(rest);
  }
}

void HermiteLattice::finish() {
  // Reduce entries above each pivot, working from the last pivot upwards.
  for (auto it = rows_.rbegin(); it != rows_.rend(); ++it) {
    const std::size_t p = it->first;
    const std::vector<Integer>& prow = it->second;
    for (auto& [q, row] : rows_) {
      if (q >= p) break;
      if (row[p] == 0) continue;
      Integer k;
      mpz_fdiv_q(k.get_mpz_t(), row[p].get_mpz_t(), prow[p].get_mpz_t());
      if (k == 0) continue;
      for (std::size_t c = p; c < width_; ++c) row[c] -= k * prow[c];
    }
  }
}

}  // namespace gamma_omega
