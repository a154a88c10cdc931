#include "gamma_omega/words.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cctype>
#include <limits>

#include "gamma_omega/errors.hpp"

namespace gamma_omega {

std::int64_t Word::length() const {
  std::int64_t n = 0;
  for (const auto& l : letters_) n += l.exp < 0 ? -l.exp : l.exp;
  return n;
}

int Word::alphabet_bound() const {
  int n = 0;
  for (const auto& l : letters_) n = std::max(n, l.gen + 1);
  return n;
}

Word Word::inverse() const {
  std::vector<Letter> out(letters_.rbegin(), letters_.rend());
  for (auto& l : out) l.exp = -l.exp;
  return Word(std::move(out));
}

Word Word::operator*(const Word& rhs) const {
  std::vector<Letter> out = letters_;
  out.insert(out.end(), rhs.letters_.begin(), rhs.letters_.end());
  return reduce(Word(std::move(out)));
}

Word Word::pow(std::int64_t k) const {
  if (letters_.size() == 1) return reduce(Word({{letters_[0].gen, letters_[0].exp * k}}));
  const Word base = k < 0 ? inverse() : *this;
  if (k < 0) k = -k;
  if (!base.empty() && k > (std::int64_t{1} << 24) / static_cast<std::int64_t>(base.letters_.size()))
    throw ResourceLimitError("word power too long");
  std::vector<Letter> out;
  for (std::int64_t i = 0; i < k; ++i) out.insert(out.end(), base.letters_.begin(), base.letters_.end());
  return reduce(Word(std::move(out)));
}

std::string Word::to_string(const std::vector<std::string>& names) const {
  if (letters_.empty()) return "1";
  std::string out;
  for (const auto& l : letters_) {
    if (!out.empty()) out += '*';
    out += l.gen < static_cast<int>(names.size()) ? names[l.gen] : fmt::format("x{}", l.gen + 1);
    if (l.exp != 1) out += fmt::format("^{}", l.exp);
  }
  return out;
}

Word reduce(const Word& w) {
  std::vector<Letter> out;
  for (const auto& l : w.letters()) {
    if (l.exp == 0) continue;
    if (!out.empty() && out.back().gen == l.gen) {
      out.back().exp += l.exp;
      if (out.back().exp == 0) out.pop_back();
    } else {
      out.push_back(l);
    }
  }
  return Word(std::move(out));
}

Word commutator(const Word& a, const Word& b) { return a.inverse() * b.inverse() * a * b; }

std::vector<std::string> default_generator_names(int count) {
  if (count > 26) throw InvalidArgument("at most 26 default generator names");
  std::vector<std::string> out;
  for (int i = 0; i < count; ++i) out.emplace_back(1, static_cast<char>('a' + i));
  return out;
}

// ---------------------------------------------------------------------------
// Parser

namespace {

class WordParser {
 public:
  WordParser(const std::string& text, const std::vector<std::string>& names) : text_(text), names_(names) {}

  Word parse() {
    Word w = product();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected character");
    return w;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw InvalidArgument(fmt::format("cannot parse word \"{}\" at offset {}: {}", text_, pos_, what));
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool peek(char c) {
    skip_space();
    return pos_ < text_.size() && text_[pos_] == c;
  }

  void expect(char c) {
    if (!peek(c)) fail(fmt::format("expected '{}'", c));
    ++pos_;
  }

  bool at_factor_start() {
    skip_space();
    if (pos_ >= text_.size()) return false;
    const char c = text_[pos_];
    return c == '(' || c == '[' || c == '1' || std::isalpha(static_cast<unsigned char>(c));
  }

  Word product() {
    Word w;
    if (!at_factor_start()) fail("expected a word");
    w = factor();
    for (;;) {
      if (peek('*')) {
        ++pos_;
        w = w * factor();
      } else if (at_factor_start()) {
        w = w * factor();
      } else {
        return w;
      }
    }
  }

  Word factor() {
    Word base = atom();
    while (peek('^')) {
      ++pos_;
      skip_space();
      bool negative = false;
      if (pos_ < text_.size() && (text_[pos_] == '-' || text_[pos_] == '+')) negative = text_[pos_++] == '-';
      const std::size_t start = pos_;
      std::int64_t k = 0;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        if (k > (std::numeric_limits<std::int64_t>::max() - 9) / 10) fail("exponent too large");
        k = 10 * k + (text_[pos_++] - '0');
      }
      if (pos_ == start) fail("expected an exponent");
      base = base.pow(negative ? -k : k);
    }
    return base;
  }

  Word atom() {
    skip_space();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      Word w = product();
      expect(')');
      return w;
    }
    if (c == '[') {
      ++pos_;
      Word w = product();
      expect(',');
      w = commutator(w, product());
      while (peek(',')) {
        ++pos_;
        w = commutator(w, product());
      }
      expect(']');
      return w;
    }
    if (c == '1') {
      ++pos_;
      return Word();
    }
    // Longest matching generator name.
    int best = -1;
    std::size_t best_len = 0;
    for (std::size_t i = 0; i < names_.size(); ++i) {
      const auto& n = names_[i];
      if (n.size() > best_len && text_.compare(pos_, n.size(), n) == 0) {
        best = static_cast<int>(i);
        best_len = n.size();
      }
    }
    if (best >= 0) {
      pos_ += best_len;
      return Word::generator(best);
    }
    if (std::isupper(static_cast<unsigned char>(c))) {
      const std::string lower(1, static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
      auto it = std::find(names_.begin(), names_.end(), lower);
      if (it != names_.end()) {
        ++pos_;
        return Word::generator(static_cast<int>(it - names_.begin()), -1);
      }
    }
    fail("unknown generator");
  }

  const std::string& text_;
  const std::vector<std::string>& names_;
  std::size_t pos_ = 0;
};

}  // namespace

Word parse_word(const std::string& text, const std::vector<std::string>& names) {
  return WordParser(text, names).parse();
}

// ---------------------------------------------------------------------------
// Hall basis

HallBasis::HallBasis(int rank, int max_class) : rank_(rank), max_class_(max_class) {
  if (rank < 1) throw InvalidArgument("hall_basis: rank must be >= 1");
  if (max_class < 1) throw InvalidArgument("hall_basis: class must be >= 1");
  by_weight_.resize(max_class);
  for (int g = 0; g < rank; ++g) {
    by_weight_[0].push_back(elements_.size());
    elements_.push_back({1, g, 0, 0});
  }
  for (int k = 2; k <= max_class; ++k) {
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (int wv = 1; 2 * wv <= k; ++wv) {
      const int wu = k - wv;
      for (std::size_t u : by_weight_[wu - 1])
        for (std::size_t v : by_weight_[wv - 1]) {
          if (u <= v) continue;
          const auto& eu = elements_[u];
          if (eu.generator < 0 && eu.right > v) continue;
          pairs.emplace_back(u, v);
        }
    }
    std::sort(pairs.begin(), pairs.end());
    for (const auto& [u, v] : pairs) {
      by_weight_[k - 1].push_back(elements_.size());
      elements_.push_back({k, -1, u, v});
    }
  }
}

std::vector<std::size_t> HallBasis::counts() const {
  std::vector<std::size_t> out;
  for (const auto& w : by_weight_) out.push_back(w.size());
  return out;
}

Word HallBasis::word(std::size_t i) const {
  const auto& e = elements_.at(i);
  if (e.generator >= 0) return Word::generator(e.generator);
  return commutator(word(e.left), word(e.right));
}

std::string HallBasis::to_string(std::size_t i, const std::vector<std::string>& names) const {
  const auto& e = elements_.at(i);
  if (e.generator >= 0) return names.at(e.generator);
  return "[" + to_string(e.left, names) + "," + to_string(e.right, names) + "]";
}

// ---------------------------------------------------------------------------
// Magnus expansion

MagnusSeries::MagnusSeries(int alphabet_size, int degree) : alphabet_size_(alphabet_size), degree_(degree) {
  if (degree < 0) throw InvalidArgument("Magnus degree must be >= 0");
}

MagnusSeries MagnusSeries::one(int alphabet_size, int degree) {
  MagnusSeries s(alphabet_size, degree);
  s.coeffs_[{}] = 1;
  return s;
}

MagnusSeries MagnusSeries::generator(int alphabet_size, int degree, int i) {
  MagnusSeries s = one(alphabet_size, degree);
  if (degree >= 1) s.coeffs_[{i}] = 1;
  return s;
}

Integer MagnusSeries::coefficient(const Monomial& m) const {
  auto it = coeffs_.find(m);
  return it == coeffs_.end() ? Integer(0) : it->second;
}

void MagnusSeries::add_term(const Monomial& m, const Integer& c) {
  if (c == 0 || static_cast<int>(m.size()) > degree_) return;
  auto [it, inserted] = coeffs_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) coeffs_.erase(it);
  }
}

MagnusSeries MagnusSeries::operator+(const MagnusSeries& rhs) const {
  MagnusSeries out(alphabet_size_, std::min(degree_, rhs.degree_));
  for (const auto& [m, c] : coeffs_) out.add_term(m, c);
  for (const auto& [m, c] : rhs.coeffs_) out.add_term(m, c);
  return out;
}

MagnusSeries MagnusSeries::operator-(const MagnusSeries& rhs) const {
  MagnusSeries out(alphabet_size_, std::min(degree_, rhs.degree_));
  for (const auto& [m, c] : coeffs_) out.add_term(m, c);
  for (const auto& [m, c] : rhs.coeffs_) out.add_term(m, -c);
  return out;
}

MagnusSeries MagnusSeries::operator*(const MagnusSeries& rhs) const {
  MagnusSeries out(alphabet_size_, std::min(degree_, rhs.degree_));
  for (const auto& [m1, c1] : coeffs_) {
    for (const auto& [m2, c2] : rhs.coeffs_) {
      if (static_cast<int>(m1.size() + m2.size()) > out.degree_) continue;
      Monomial m = m1;
      m.insert(m.end(), m2.begin(), m2.end());
      out.add_term(m, c1 * c2);
    }
  }
  return out;
}

MagnusSeries MagnusSeries::inverse() const {
  if (coefficient({}) != 1) throw InvalidArgument("MagnusSeries::inverse: constant term must be 1");
  // (1 + n)^-1 = sum_k (-n)^k; n^k vanishes past the truncation degree.
  MagnusSeries minus_n(alphabet_size_, degree_);
  for (const auto& [m, c] : coeffs_)
    if (!m.empty()) minus_n.add_term(m, -c);
  MagnusSeries result = one(alphabet_size_, degree_);
  MagnusSeries power = one(alphabet_size_, degree_);
  for (int k = 1; k <= degree_; ++k) {
    power = power * minus_n;
    if (power.coeffs_.empty()) break;
    result = result + power;
  }
  return result;
}

MagnusSeries MagnusSeries::truncated(int degree) const {
  MagnusSeries out(alphabet_size_, degree);
  for (const auto& [m, c] : coeffs_) out.add_term(m, c);
  return out;
}

int MagnusSeries::lowest_nonconstant_degree() const {
  int best = 0;
  for (const auto& [m, c] : coeffs_)
    if (!m.empty() && (best == 0 || static_cast<int>(m.size()) < best)) best = static_cast<int>(m.size());
  return best;
}

std::string MagnusSeries::to_string(const std::vector<std::string>& names) const {
  // Degree-major order keeps the output readable.
  std::vector<std::pair<Monomial, Integer>> terms(coeffs_.begin(), coeffs_.end());
  std::stable_sort(terms.begin(), terms.end(),
                   [](const auto& a, const auto& b) { return a.first.size() < b.first.size(); });
  if (terms.empty()) return "0";
  std::string out;
  for (const auto& [m, c] : terms) {
    Integer mag = abs(c);
    if (out.empty()) {
      if (c < 0) out += "-";
    } else {
      out += c < 0 ? " - " : " + ";
    }
    std::string mono;
    for (int g : m) {
      if (!mono.empty()) mono += "*";
      mono += "X_" + (g < static_cast<int>(names.size()) ? names[g] : fmt::format("{}", g + 1));
    }
    if (mono.empty()) {
      out += mag.get_str();
    } else {
      if (mag != 1) out += mag.get_str() + "*";
      out += mono;
    }
  }
  return out;
}

MagnusSeries magnus_letter(int alphabet_size, int degree, int gen, std::int64_t exp) {
  MagnusSeries s(alphabet_size, degree);
  // Generalized binomial coefficients binom(e, k) = e (e-1) ... (e-k+1) / k!.
  Integer binom = 1;
  Monomial m;
  for (int k = 0; k <= degree; ++k) {
    if (k > 0) {
      binom *= Integer(static_cast<long>(exp)) - (k - 1);
      mpz_divexact_ui(binom.get_mpz_t(), binom.get_mpz_t(), static_cast<unsigned long>(k));
      m.push_back(gen);
    }
    if (binom == 0) break;
    s.add_term(m, binom);
  }
  return s;
}

MagnusSeries magnus_expand(const Word& w, int alphabet_size, int degree) {
  if (w.alphabet_bound() > alphabet_size) throw InvalidArgument("magnus_expand: word uses a generator outside the alphabet");
  MagnusSeries s = MagnusSeries::one(alphabet_size, degree);
  for (const auto& l : w.letters()) s = s * magnus_letter(alphabet_size, degree, l.gen, l.exp);
  return s;
}

std::string LcsWeight::to_string() const {
  switch (kind) {
    case Kind::Exact: return fmt::format("{}", value);
    case Kind::AtLeast: return fmt::format(">={}", value);
    case Kind::Infinite: return "infinity";
  }
  return "";
}

LcsWeight lcs_weight(const Word& w, int alphabet_size, int max_class) {
  const Word r = reduce(w);
  if (r.empty()) return {LcsWeight::Kind::Infinite, 0};
  const int low = magnus_expand(r, alphabet_size, max_class).lowest_nonconstant_degree();
  if (low == 0) return {LcsWeight::Kind::AtLeast, max_class + 1};
  return {LcsWeight::Kind::Exact, low};
}

}  // namespace gamma_omega
