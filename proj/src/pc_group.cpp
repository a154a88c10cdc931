#include "gamma_omega/pc_group.hpp"

#include <fmt/format.h>

#include <limits>

#include "gamma_omega/errors.hpp"

namespace gamma_omega {

namespace {

bool is_unit(const Exponents& e, std::size_t i) {
  for (std::size_t l = 0; l < e.size(); ++l)
    if (e[l] != (l == i ? 1 : 0)) return false;
  return true;
}

// Thrown by the int64 collector when a number leaves its range; the caller
// then repeats the computation with GMP.
struct Overflow {};

constexpr std::size_t kSmallBits = 62;

std::int64_t add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw Overflow{};
  return r;
}
std::int64_t neg(std::int64_t a) {
  if (a == std::numeric_limits<std::int64_t>::min()) throw Overflow{};
  return -a;
}
void fdiv_qr(std::int64_t a, std::int64_t r, std::int64_t& q, std::int64_t& s) {
  q = a / r;
  s = a % r;
  if (s < 0) {
    s += r;
    --q;
  }
}
bool is_odd(std::int64_t a) { return (a & 1) != 0; }
std::size_t bit_length(std::int64_t a) {
  if (a == 0) return 0;
  const std::uint64_t u = a < 0 ? static_cast<std::uint64_t>(-(a + 1)) + 1 : static_cast<std::uint64_t>(a);
  return 64 - static_cast<std::size_t>(__builtin_clzll(u));
}

Integer add(const Integer& a, const Integer& b) { return a + b; }
Integer neg(const Integer& a) { return -a; }
void fdiv_qr(const Integer& a, const Integer& r, Integer& q, Integer& s) {
  mpz_fdiv_qr(q.get_mpz_t(), s.get_mpz_t(), a.get_mpz_t(), r.get_mpz_t());
}
bool is_odd(const Integer& a) { return mpz_odd_p(a.get_mpz_t()) != 0; }
std::size_t bit_length(const Integer& a) { return a == 0 ? 0 : mpz_sizeinbase(a.get_mpz_t(), 2); }

template <class T>
T from_integer(const Integer& x);
template <>
Integer from_integer<Integer>(const Integer& x) {
  return x;
}
template <>
std::int64_t from_integer<std::int64_t>(const Integer& x) {
  if (bit_length(x) > kSmallBits) throw Overflow{};
  return x.get_si();
}
Integer to_integer(const Integer& x) { return x; }
Integer to_integer(std::int64_t x) { return Integer(static_cast<long>(x)); }

template <class T>
std::vector<T> convert_in(const Exponents& e) {
  std::vector<T> out;
  out.reserve(e.size());
  for (const auto& x : e) out.push_back(from_integer<T>(x));
  return out;
}
template <class T>
Exponents convert_out(const std::vector<T>& e) {
  Exponents out;
  out.reserve(e.size());
  for (const auto& x : e) out.push_back(to_integer(x));
  return out;
}

}  // namespace

template <class T>
struct CollectorTables {
  using Vec = std::vector<T>;
  std::size_t n = 0;
  std::vector<T> orders;
  std::vector<Vec> powers;
  // conj[i][j] = g_i^{g_j}, conj_inv[i][j] = g_i^{g_j^-1}, for j < i.
  std::vector<std::vector<Vec>> conj;
  std::vector<std::vector<Vec>> conj_inv;

  void fill_inverse_conjugates(const std::vector<std::vector<char>>& trivial);
};

namespace {

// Collection from the left over exponent type T.
template <class T>
class Collector {
 public:
  using Vec = std::vector<T>;

  Collector(const CollectorTables<T>& t, const std::vector<std::vector<char>>& trivial, std::size_t bits)
      : t_(t), trivial_(trivial), bits_(bits) {}

  Vec identity() const { return Vec(t_.n, T(0)); }
  Vec unit(std::size_t i) const {
    Vec e = identity();
    e[i] = T(1);
    return e;
  }
  Vec in(const Exponents& e) const { return convert_in<T>(e); }

  void check(const T& k) const {
    if (bit_length(k) > bits_)
      throw ResourceLimitError(fmt::format("collection exponent exceeds {} bits", bits_));
  }

  void multiply_generator(Vec& e, std::size_t i, const T& k) const {
    if (k == 0) return;
    check(k);
    const T& r = t_.orders[i];
    if (r > 0) {
      T q, s;
      fdiv_qr(k, r, q, s);
      if (s != 0) multiply_raw(e, i, s);
      if (q != 0) multiply_in_place(e, pow(t_.powers[i], q));
    } else {
      multiply_raw(e, i, k);
    }
  }

  void multiply_in_place(Vec& e, const Vec& b) const {
    for (std::size_t l = 0; l < t_.n; ++l)
      if (b[l] != 0) multiply_generator(e, l, b[l]);
  }

  Vec multiply(const Vec& a, const Vec& b) const {
    Vec e = a;
    multiply_in_place(e, b);
    return e;
  }

  Vec inverse(const Vec& a) const {
    Vec res = identity();
    for (std::size_t l = t_.n; l-- > 0;)
      if (a[l] != 0) multiply_generator(res, l, neg(a[l]));
    return res;
  }

  Vec pow(const Vec& a, const T& k) const {
    if (k == 1) return a;
    Vec base = k < 0 ? inverse(a) : a;
    T m = k < 0 ? neg(k) : k;
    Vec res = identity();
    while (m > 0) {
      if (is_odd(m)) multiply_in_place(res, base);
      m /= 2;
      if (m > 0) base = multiply(base, base);
    }
    return res;
  }

  // [a, b] is the x with (ba) x = ab.
  Vec commutator(const Vec& a, const Vec& b) const { return solve(multiply(b, a), multiply(a, b)); }

  // x with u x = v, read off one generator at a time.
  Vec solve(Vec u, const Vec& v) const {
    Vec x = identity();
    for (std::size_t l = 0; l < t_.n; ++l) {
      T k = add(v[l], neg(u[l]));
      if (t_.orders[l] > 0) {
        T q;
        fdiv_qr(T(k), t_.orders[l], q, k);
      }
      if (k == 0) continue;
      multiply_generator(u, l, k);
      x[l] = k;
    }
    return x;
  }

  // t supported on generators > i, conjugated by g_i^{sign}.
  Vec conjugate_tail(const Vec& t, std::size_t i, int sign) const {
    Vec res = identity();
    for (std::size_t l = i + 1; l < t_.n; ++l) {
      if (t[l] == 0) continue;
      if (trivial_[l][i]) {
        multiply_generator(res, l, t[l]);
      } else {
        const Vec& c = sign > 0 ? t_.conj[l][i] : t_.conj_inv[l][i];
        multiply_in_place(res, pow(c, t[l]));
      }
    }
    return res;
  }

 private:
  void multiply_raw(Vec& e, std::size_t i, const T& k) const {
    const std::size_t n = t_.n;
    // Entries after the last one that fails to commute with g_i stay put.
    std::size_t last = i;
    for (std::size_t l = i + 1; l < n; ++l)
      if (e[l] != 0 && !trivial_[l][i]) last = l;
    Vec tail;
    bool has_tail = false;
    for (std::size_t l = i + 1; l < n; ++l) {
      if (e[l] == 0) continue;
      if (!has_tail) tail = identity();
      has_tail = true;
      tail[l] = e[l];
      e[l] = T(0);
    }
    e[i] = add(e[i], k);
    // e = prefix * g_i^{e_i + k} * A^{g_i^k} * B, with B commuting with g_i
    if (last > i) {
      Vec commuting = identity();
      for (std::size_t l = last + 1; l < n; ++l) std::swap(commuting[l], tail[l]);
      const int sign = k > 0 ? 1 : -1;
      const T steps = k > 0 ? k : neg(k);
      if (steps <= 16) {
        for (T s = 0; s < steps; s = add(s, T(1))) tail = conjugate_tail(tail, i, sign);
      } else {
        tail = conjugate_tail_power(tail, i, sign, steps);
      }
      multiply_in_place(tail, commuting);
    }
    const T& r = t_.orders[i];
    if (r > 0 && (e[i] < 0 || e[i] >= r)) {
      T q, s;
      fdiv_qr(e[i], r, q, s);
      e[i] = s;
      multiply_in_place(e, pow(t_.powers[i], q));
    }
    if (has_tail) multiply_in_place(e, tail);
  }

  // Square-and-multiply on the automorphism, stored as the images of
  // g_{i+1}, ..., g_n.
  Vec conjugate_tail_power(const Vec& t, std::size_t i, int sign, T steps) const {
    const std::size_t n = t_.n;
    auto apply = [&](const std::vector<Vec>& images, const Vec& x) {
      Vec res = identity();
      for (std::size_t l = i + 1; l < n; ++l)
        if (x[l] != 0) multiply_in_place(res, pow(images[l], x[l]));
      return res;
    };
    std::vector<Vec> base(n);
    for (std::size_t l = i + 1; l < n; ++l) base[l] = conjugate_tail(unit(l), i, sign);
    Vec res = t;
    while (steps > 0) {
      if (is_odd(steps)) res = apply(base, res);
      steps /= 2;
      if (steps > 0) {
        std::vector<Vec> sq(n);
        for (std::size_t l = i + 1; l < n; ++l) sq[l] = apply(base, base[l]);
        base = std::move(sq);
      }
    }
    return res;
  }

  const CollectorTables<T>& t_;
  const std::vector<std::vector<char>>& trivial_;
  std::size_t bits_;
};

template <class T>
std::shared_ptr<CollectorTables<T>> make_tables(const PcPresentation& p) {
  auto t = std::make_shared<CollectorTables<T>>();
  t->n = p.weights.size();
  for (std::size_t i = 0; i < t->n; ++i) {
    t->orders.push_back(from_integer<T>(p.relative_orders[i]));
    t->powers.push_back(p.relative_orders[i] > 0 ? convert_in<T>(p.powers[i]) : std::vector<T>());
    t->conj.emplace_back();
    for (std::size_t j = 0; j < i; ++j) t->conj.back().push_back(convert_in<T>(p.conj[i][j]));
  }
  return t;
}

}  // namespace

template <class T>
void CollectorTables<T>::fill_inverse_conjugates(const std::vector<std::vector<char>>& trivial) {
  conj_inv.assign(n, {});
  for (std::size_t i = 0; i < n; ++i) conj_inv[i].assign(i, Vec());
  const Collector<T> c(*this, trivial, std::numeric_limits<std::size_t>::max());
  // conj_inv[l][j] = g_l * (w^{g_j^-1})^-1 where g_l^{g_j} = g_l w. Conjugating
  // w by g_j^-1 only needs entries with a larger row index.
  for (std::size_t j = n; j-- > 0;) {
    for (std::size_t l = n; l-- > j + 1;) {
      if (trivial[l][j]) {
        conj_inv[l][j] = c.unit(l);
        continue;
      }
      Vec w = conj[l][j];
      w[l] = T(0);
      const Vec d = c.conjugate_tail(w, j, -1);
      Vec e = c.unit(l);
      c.multiply_in_place(e, c.inverse(d));
      conj_inv[l][j] = std::move(e);
    }
  }
}

PcGroup::PcGroup() : PcGroup(PcPresentation{}) {}

PcGroup::PcGroup(PcPresentation p) : pres_(std::move(p)) {
  const std::size_t n = pres_.weights.size();
  if (pres_.relative_orders.size() != n || pres_.powers.size() != n || pres_.conj.size() != n)
    throw InvalidArgument("PcGroup: inconsistent presentation sizes");
  for (std::size_t i = 0; i < n; ++i) {
    if (i > 0 && pres_.weights[i] < pres_.weights[i - 1]) throw InvalidArgument("PcGroup: weights must be non-decreasing");
    const Integer& r = pres_.relative_orders[i];
    if (r < 0 || r == 1) throw InvalidArgument("PcGroup: relative orders must be 0 or >= 2");
    if (r > 0) {
      const Exponents& pw = pres_.powers[i];
      if (pw.size() != n) throw InvalidArgument("PcGroup: power relation has the wrong length");
      for (std::size_t l = 0; l <= i; ++l)
        if (pw[l] != 0) throw InvalidArgument(fmt::format("PcGroup: g{}^r must lie below g{}", i + 1, i + 1));
    }
    if (pres_.conj[i].size() != i) throw InvalidArgument("PcGroup: conjugate relation table has the wrong shape");
    for (std::size_t j = 0; j < i; ++j) {
      const Exponents& c = pres_.conj[i][j];
      if (c.size() != n) throw InvalidArgument("PcGroup: conjugate relation has the wrong length");
      for (std::size_t l = 0; l < i; ++l)
        if (c[l] != 0) throw InvalidArgument(fmt::format("PcGroup: g{}^g{} must have the form g{}*w", i + 1, j + 1, i + 1));
      if (c[i] != 1) throw InvalidArgument(fmt::format("PcGroup: g{}^g{} must have the form g{}*w", i + 1, j + 1, i + 1));
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    auto check_range = [&](const Exponents& e) {
      for (std::size_t l = 0; l < n; ++l) {
        const Integer& r = pres_.relative_orders[l];
        if (r > 0 && (e[l] < 0 || e[l] >= r)) throw InvalidArgument("PcGroup: relation is not in normal form");
      }
    };
    if (pres_.relative_orders[i] > 0) check_range(pres_.powers[i]);
    for (std::size_t j = 0; j < i; ++j) check_range(pres_.conj[i][j]);
  }
  trivial_.assign(n, {});
  for (std::size_t i = 0; i < n; ++i) {
    trivial_[i].assign(i, 0);
    for (std::size_t j = 0; j < i; ++j) trivial_[i][j] = is_unit(pres_.conj[i][j], i);
  }
  try {
    auto small = make_tables<std::int64_t>(pres_);
    small->fill_inverse_conjugates(trivial_);
    small_ = small;
  } catch (const Overflow&) {
    small_.reset();
  }
  auto big = make_tables<Integer>(pres_);
  if (small_) {
    big->conj_inv.assign(n, {});
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < i; ++j) big->conj_inv[i].push_back(convert_out(small_->conj_inv[i][j]));
  } else {
    big->fill_inverse_conjugates(trivial_);
  }
  big_ = big;
}

template <class F>
Exponents PcGroup::collect(F&& f) const {
  if (small_) {
    try {
      return f(Collector<std::int64_t>(*small_, trivial_, exponent_bit_limit_));
    } catch (const Overflow&) {
    }
  }
  return f(Collector<Integer>(*big_, trivial_, exponent_bit_limit_));
}

std::optional<Integer> PcGroup::order() const {
  Integer o = 1;
  for (const auto& r : pres_.relative_orders) {
    if (r == 0) return std::nullopt;
    o *= r;
  }
  return o;
}

Exponents PcGroup::generator(std::size_t i) const {
  Exponents e = identity();
  e.at(i) = 1;
  return e;
}

void PcGroup::multiply_generator(Exponents& e, std::size_t i, const Integer& k) const {
  if (i >= size()) throw InvalidArgument("multiply_generator: index out of range");
  e = collect([&](const auto& c) {
    auto v = c.in(e);
    using T = typename std::decay_t<decltype(v)>::value_type;
    c.multiply_generator(v, i, from_integer<T>(k));
    return convert_out(v);
  });
}

void PcGroup::multiply_in_place(Exponents& e, const Exponents& b) const {
  e = multiply(e, b);
}

Exponents PcGroup::multiply(const Exponents& a, const Exponents& b) const {
  return collect([&](const auto& c) { return convert_out(c.multiply(c.in(a), c.in(b))); });
}

Exponents PcGroup::inverse(const Exponents& a) const {
  return collect([&](const auto& c) { return convert_out(c.inverse(c.in(a))); });
}

Exponents PcGroup::pow(const Exponents& a, const Integer& k) const {
  return collect([&](const auto& c) {
    auto v = c.in(a);
    using T = typename std::decay_t<decltype(v)>::value_type;
    return convert_out(c.pow(v, from_integer<T>(k)));
  });
}

Exponents PcGroup::commutator(const Exponents& a, const Exponents& b) const {
  return collect([&](const auto& c) { return convert_out(c.commutator(c.in(a), c.in(b))); });
}

std::optional<Integer> PcGroup::element_order(const Exponents& a) const {
  Integer order = 1;
  Exponents cur = a;
  for (;;) {
    std::size_t l = 0;
    while (l < size() && cur[l] == 0) ++l;
    if (l == size()) return order;
    const Integer& r = pres_.relative_orders[l];
    if (r == 0) return std::nullopt;
    Integer g;
    mpz_gcd(g.get_mpz_t(), cur[l].get_mpz_t(), r.get_mpz_t());
    const Integer m = r / g;
    order *= m;
    cur = pow(cur, m);
  }
}

std::vector<PcGroup::Overlap> PcGroup::overlaps(int max_weight_sum) const {
  const std::size_t n = size();
  std::vector<Overlap> out;
  const auto& r = pres_.relative_orders;
  // (g_k g_j) g_i = g_k (g_j g_i)
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      if (max_weight_sum >= 0 && pres_.weights[i] + 2 * pres_.weights[j] > max_weight_sum) break;
      for (std::size_t k = j + 1; k < n; ++k) {
        if (max_weight_sum >= 0 && pres_.weights[i] + pres_.weights[j] + pres_.weights[k] > max_weight_sum) break;
        if (trivial_[j][i] && trivial_[k][i] && trivial_[k][j]) continue;
        Exponents lhs = generator(k);
        multiply_generator(lhs, j, 1);
        multiply_generator(lhs, i, 1);
        Exponents ji = generator(j);
        multiply_generator(ji, i, 1);
        Exponents rhs = generator(k);
        multiply_in_place(rhs, ji);
        out.push_back({fmt::format("(g{} g{}) g{}", k + 1, j + 1, i + 1), std::move(lhs), std::move(rhs)});
      }
    }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      if (r[j] > 0) {
        // (g_j^{r_j}) g_i = g_j^{r_j - 1} (g_j g_i)
        Exponents lhs = pres_.powers[j];
        multiply_generator(lhs, i, 1);
        Exponents ji = generator(j);
        multiply_generator(ji, i, 1);
        Exponents rhs = identity();
        rhs[j] = r[j] - 1;
        multiply_in_place(rhs, ji);
        out.push_back({fmt::format("g{}^r g{}", j + 1, i + 1), std::move(lhs), std::move(rhs)});
      }
      if (r[i] > 0) {
        // g_j (g_i^{r_i}) = (g_j g_i) g_i^{r_i - 1}
        Exponents lhs = generator(j);
        multiply_in_place(lhs, pres_.powers[i]);
        Exponents rhs = generator(j);
        multiply_generator(rhs, i, 1);
        multiply_generator(rhs, i, r[i] - 1);
        out.push_back({fmt::format("g{} g{}^r", j + 1, i + 1), std::move(lhs), std::move(rhs)});
      } else {
        // g_j = (g_j g_i^-1) g_i
        Exponents rhs = generator(j);
        multiply_generator(rhs, i, -1);
        multiply_generator(rhs, i, 1);
        out.push_back({fmt::format("g{} g{}^-1 g{}", j + 1, i + 1, i + 1), generator(j), std::move(rhs)});
      }
    }
  for (std::size_t i = 0; i < n; ++i) {
    if (r[i] == 0) continue;
    // g_i (g_i^{r_i}) = (g_i^{r_i}) g_i
    Exponents lhs = generator(i);
    multiply_in_place(lhs, pres_.powers[i]);
    Exponents rhs = pres_.powers[i];
    multiply_generator(rhs, i, 1);
    out.push_back({fmt::format("g{} g{}^r", i + 1, i + 1), std::move(lhs), std::move(rhs)});
  }
  return out;
}

std::string PcGroup::consistency_failure() const {
  for (const auto& o : overlaps())
    if (o.lhs != o.rhs)
      return fmt::format("overlap {} collects to {} and {}", o.label, element_to_string(o.lhs), element_to_string(o.rhs));
  return {};
}

std::string PcGroup::element_to_string(const Exponents& e) const {
  std::string out;
  for (std::size_t l = 0; l < e.size(); ++l) {
    if (e[l] == 0) continue;
    if (!out.empty()) out += "*";
    out += fmt::format("g{}", l + 1);
    if (e[l] != 1) out += "^" + e[l].get_str();
  }
  return out.empty() ? "1" : out;
}

}  // namespace gamma_omega
