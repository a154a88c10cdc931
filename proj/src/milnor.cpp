#include "gamma_omega/milnor.hpp"

#include <fmt/format.h>

#include <cctype>
#include <cstdlib>
#include <numeric>

#include "gamma_omega/errors.hpp"

namespace gamma_omega {

BraidWord BraidWord::parse(const std::string& text, int strands) {
  BraidWord b;
  std::size_t pos = 0;
  int highest = 0;
  auto skip = [&] {
    while (pos < text.size() && (std::isspace(static_cast<unsigned char>(text[pos])) || text[pos] == '*')) ++pos;
  };
  auto read_int = [&](const char* what) {
    const std::size_t start = pos;
    if (pos < text.size() && (text[pos] == '-' || text[pos] == '+')) ++pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
    const std::string digits = text.substr(start, pos - start);
    if (digits.empty() || digits == "-" || digits == "+" || digits.size() > 9)
      throw InvalidArgument(fmt::format("braid word: bad {} at offset {}", what, start));
    return std::stoi(digits);
  };
  skip();
  if (text.substr(pos) == "1") pos = text.size();
  while (skip(), pos < text.size()) {
    if (text[pos] != 's' && text[pos] != 'S')
      throw InvalidArgument(fmt::format("braid word: expected 's<i>' at offset {}", pos));
    ++pos;
    const int i = read_int("generator index");
    if (i < 1) throw InvalidArgument("braid word: generator index must be >= 1");
    int power = 1;
    if (pos < text.size() && text[pos] == '^') {
      ++pos;
      power = read_int("exponent");
    }
    highest = std::max(highest, i);
    for (int k = 0; k < std::abs(power); ++k) b.letters.push_back(power > 0 ? i : -i);
  }
  b.strands = strands > 0 ? strands : highest + 1;
  b.validate();
  return b;
}

std::string BraidWord::to_string() const {
  if (letters.empty()) return "1";
  std::string out;
  for (int l : letters) {
    if (!out.empty()) out += ' ';
    out += l > 0 ? fmt::format("s{}", l) : fmt::format("s{}^-1", -l);
  }
  return out;
}

void BraidWord::validate() const {
  if (strands < 1) throw InvalidArgument("braid must have at least one strand");
  for (int l : letters)
    if (l == 0 || std::abs(l) >= strands)
      throw InvalidArgument(fmt::format("braid letter {} out of range for {} strands", l, strands));
}

namespace {

// Splits a reduced conjugate of a generator as A x_k A^-1.
std::pair<Word, int> split_conjugate(const Word& w) {
  std::vector<Letter> units;
  for (const auto& l : w.letters())
    for (std::int64_t k = 0; k < std::abs(l.exp); ++k) units.push_back({l.gen, l.exp > 0 ? 1 : -1});
  const std::size_t n = units.size();
  if (n % 2 == 0 || units[n / 2].exp != 1) throw ComputationError("braid image is not a conjugate of a generator");
  for (std::size_t i = 0; i < n / 2; ++i) {
    const Letter& a = units[i];
    const Letter& b = units[n - 1 - i];
    if (a.gen != b.gen || a.exp != -b.exp) throw ComputationError("braid image is not a conjugate of a generator");
  }
  return {reduce(Word(std::vector<Letter>(units.begin(), units.begin() + static_cast<std::ptrdiff_t>(n / 2)))),
          units[n / 2].gen};
}

// Truncated series of x^e for a strand series x and its inverse.
MagnusSeries series_power(const MagnusSeries& x, const MagnusSeries& x_inv, std::int64_t e) {
  MagnusSeries out = MagnusSeries::one(x.alphabet_size(), x.degree());
  const MagnusSeries& base = e > 0 ? x : x_inv;
  for (std::int64_t k = 0; k < std::abs(e); ++k) out = out * base;
  return out;
}

}  // namespace

std::vector<Word> artin_action(const BraidWord& b) {
  b.validate();
  const int n = b.strands;
  std::vector<Word> images;
  for (int j = 0; j < n; ++j) images.push_back(Word::generator(j));
  for (int letter : b.letters) {
    const int i = std::abs(letter) - 1;
    const Word xi = images[i], xj = images[i + 1];
    if (letter > 0) {
      images[i] = reduce(xi * xj * xi.inverse());
      images[i + 1] = xi;
    } else {
      images[i] = xj;
      images[i + 1] = reduce(xj.inverse() * xi * xj);
    }
  }
  return images;
}

LinkData braid_closure(const BraidWord& b) {
  b.validate();
  if (b.strands > 26) throw InvalidArgument("braid closures support at most 26 strands");
  const int n = b.strands;
  const std::vector<Word> images = artin_action(b);

  LinkData link;
  link.braid = b;
  link.group.generators = default_generator_names(n);
  std::vector<Word> conjugators(n);
  std::vector<int> next(n);
  for (int j = 0; j < n; ++j) {
    link.group.relators.push_back(reduce(Word::generator(j).inverse() * images[j]));
    std::tie(conjugators[j], next[j]) = split_conjugate(images[j]);
  }

  link.component_of_strand.assign(n, -1);
  for (int s = 0; s < n; ++s) {
    if (link.component_of_strand[s] >= 0) continue;
    const int c = static_cast<int>(link.components.size());
    std::vector<int> cycle;
    for (int t = s; link.component_of_strand[t] < 0; t = next[t]) {
      link.component_of_strand[t] = c;
      cycle.push_back(t);
    }
    link.components.push_back(cycle);
  }

  // Self-crossing signs by following strand positions through the braid.
  std::vector<int> at(n);
  std::iota(at.begin(), at.end(), 0);
  link.writhe.assign(link.components.size(), 0);
  for (int letter : b.letters) {
    const int i = std::abs(letter) - 1;
    const int ca = link.component_of_strand[at[i]], cb = link.component_of_strand[at[i + 1]];
    if (ca == cb) link.writhe[ca] += letter > 0 ? 1 : -1;
    std::swap(at[i], at[i + 1]);
  }

  for (std::size_t c = 0; c < link.components.size(); ++c) {
    const auto& cycle = link.components[c];
    Word blackboard;
    for (int j : cycle) blackboard = blackboard * conjugators[j];
    blackboard = reduce(blackboard);
    std::int64_t self = 0;
    for (const auto& l : blackboard.letters())
      if (link.component_of_strand[l.gen] == static_cast<int>(c)) self += l.exp;
    const Word meridian = Word::generator(cycle.front());
    link.meridians.push_back(meridian);
    link.framing_correction.push_back(-self);
    link.longitudes.push_back(reduce(blackboard * meridian.pow(-self)));
  }
  return link;
}

bool peripheral_check(const LinkData& link, int c) {
  const NilpotentQuotient q = nilpotent_quotient(link.group, c);
  for (std::size_t i = 0; i < link.num_components(); ++i)
    if (q.evaluate(commutator(link.meridians[i], link.longitudes[i])) != q.group.identity()) return false;
  return true;
}

MilnorExpansion::MilnorExpansion(const LinkData& link, int degree)
    : num_components_(link.num_components()), degree_(degree) {
  if (degree < 1) throw InvalidArgument("expansion degree must be >= 1");
  const int k = static_cast<int>(num_components_);
  const int n = link.braid.strands;
  const std::vector<Word> images = artin_action(link.braid);
  std::vector<Word> conjugators(n);
  for (int j = 0; j < n; ++j) conjugators[j] = split_conjugate(images[j]).first;

  // Each strand generator is V^-1 m V for its component's meridian m; V is
  // refined by substituting the current guesses into the conjugators until
  // nothing changes below the truncation degree.
  std::vector<MagnusSeries> x, x_inv;
  for (int j = 0; j < n; ++j) {
    x.push_back(MagnusSeries::generator(k, degree, link.component_of_strand[j]));
    x_inv.push_back(x.back().inverse());
  }
  std::vector<MagnusSeries> blackboard(num_components_, MagnusSeries::one(k, degree));
  bool stable = false;
  for (int iteration = 0; iteration <= degree + 2 && !stable; ++iteration) {
    std::vector<MagnusSeries> next_x = x;
    for (std::size_t c = 0; c < num_components_; ++c) {
      MagnusSeries v = MagnusSeries::one(k, degree);
      for (int j : link.components[c]) {
        const MagnusSeries v_inv = v.inverse();
        next_x[j] = v_inv * MagnusSeries::generator(k, degree, static_cast<int>(c)) * v;
        for (const auto& l : conjugators[j].letters()) v = v * series_power(x[l.gen], x_inv[l.gen], l.exp);
      }
      blackboard[c] = v;
    }
    stable = next_x == x;
    x = std::move(next_x);
    for (int j = 0; j < n; ++j) x_inv[j] = x[j].inverse();
  }
  if (!stable) throw ComputationError("meridian substitution did not stabilize");

  for (std::size_t c = 0; c < num_components_; ++c)
    longitudes_.push_back(blackboard[c] *
                          magnus_letter(k, degree, static_cast<int>(c), link.framing_correction[c]));
}

void MilnorExpansion::check_index(const std::vector<int>& index) const {
  if (index.size() < 2) throw InvalidArgument("Milnor index must have length >= 2");
  if (static_cast<int>(index.size()) > degree_ + 1)
    throw InvalidArgument(fmt::format("index length {} exceeds expansion degree {} + 1", index.size(), degree_));
  for (int i : index)
    if (i < 1 || static_cast<std::size_t>(i) > num_components_)
      throw InvalidArgument(fmt::format("component {} does not exist (link has {})", i, num_components_));
}

Integer MilnorExpansion::mu(const std::vector<int>& index) const {
  check_index(index);
  Monomial m;
  for (std::size_t t = 0; t + 1 < index.size(); ++t) m.push_back(index[t] - 1);
  return longitudes_[index.back() - 1].coefficient(m);
}

Integer MilnorExpansion::indeterminacy(const std::vector<int>& index) const {
  check_index(index);
  const std::size_t k = index.size();
  Integer g = 0;
  for (std::size_t mask = 1; mask + 1 < (std::size_t{1} << k); ++mask) {
    std::vector<int> sub;
    for (std::size_t t = 0; t < k; ++t)
      if (mask >> t & 1) sub.push_back(index[t]);
    if (sub.size() < 2) continue;
    for (std::size_t r = 0; r < sub.size(); ++r) {
      std::vector<int> rotated(sub.begin() + static_cast<std::ptrdiff_t>(r), sub.end());
      rotated.insert(rotated.end(), sub.begin(), sub.begin() + static_cast<std::ptrdiff_t>(r));
      const Integer v = mu(rotated);
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
    }
  }
  return g;
}

MuValue MilnorExpansion::mu_bar(const std::vector<int>& index) const {
  MuValue out{index, mu(index), indeterminacy(index)};
  if (out.modulus > 0) mpz_fdiv_r(out.value.get_mpz_t(), out.value.get_mpz_t(), out.modulus.get_mpz_t());
  return out;
}

namespace {

void check_length(int length, const MilnorLimits& limits) {
  if (length > limits.max_length)
    throw ResourceLimitError(fmt::format("Milnor index length {} exceeds the cap {}", length, limits.max_length));
}

}  // namespace

MuValue mu_bar(const LinkData& link, const std::vector<int>& index, const MilnorLimits& limits) {
  if (index.size() < 2) throw InvalidArgument("Milnor index must have length >= 2");
  check_length(static_cast<int>(index.size()), limits);
  return MilnorExpansion(link, static_cast<int>(index.size()) - 1).mu_bar(index);
}

std::vector<VanishingLevel> vanish_up_to(const LinkData& link, int q, const MilnorLimits& limits) {
  if (q < 2) throw InvalidArgument("vanishing length must be >= 2");
  check_length(q, limits);
  const MilnorExpansion expansion(link, q - 1);
  const int m = static_cast<int>(link.num_components());
  std::vector<VanishingLevel> out;
  for (int length = 2; length <= q; ++length) {
    VanishingLevel level{length, true, std::nullopt};
    std::vector<int> index(length, 1);
    for (;;) {
      const MuValue v = expansion.mu_bar(index);
      if (v.value != 0) {
        level.vanishes = false;
        level.witness = v;
        break;
      }
      int t = length - 1;
      while (t >= 0 && index[t] == m) index[t--] = 1;
      if (t < 0) break;
      ++index[t];
    }
    out.push_back(std::move(level));
  }
  return out;
}

}  // namespace gamma_omega
