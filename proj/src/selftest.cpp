#include "gamma_omega/selftest.hpp"

#include <fmt/format.h>

#include <chrono>
#include <random>

#include "gamma_omega/milnor.hpp"
#include "gamma_omega/oracles.hpp"
#include "gamma_omega/quadratic.hpp"
#include "gamma_omega/words.hpp"

namespace gamma_omega {

namespace {

constexpr std::size_t kMaxNotes = 5;

class Recorder {
 public:
  explicit Recorder(std::string name) : start_(std::chrono::steady_clock::now()) { r_.name = std::move(name); }

  void check(bool ok, const std::string& note) {
    ++r_.checks;
    if (ok) return;
    ++r_.failures;
    if (r_.failure_notes.size() < kMaxNotes) r_.failure_notes.push_back(note);
  }

  void error(const std::exception& e) { check(false, fmt::format("exception: {}", e.what())); }

  SuiteResult finish() {
    r_.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    return std::move(r_);
  }

 private:
  SuiteResult r_;
  std::chrono::steady_clock::time_point start_;
};

Word random_word(std::mt19937_64& rng, int alphabet, int max_len) {
  std::vector<Letter> letters;
  const int len = static_cast<int>(rng() % (max_len + 1));
  for (int i = 0; i < len; ++i) {
    const int gen = static_cast<int>(rng() % alphabet);
    std::int64_t e = static_cast<std::int64_t>(rng() % 2) + 1;
    if (rng() % 2) e = -e;
    letters.push_back({gen, e});
  }
  return reduce(Word(letters));
}

}  // namespace

FpPresentation dihedral_presentation() { return FpPresentation::parse({"a", "b"}, {"a^2", "a^-1*b*a*b"}); }

FpPresentation free_presentation(std::size_t rank) {
  return FpPresentation::parse(default_generator_names(static_cast<int>(rank)), {});
}

SuiteResult gamma2_suite(std::int64_t max_order) {
  Recorder rec("gamma2-oracle");
  for (std::int64_t n = 1; n <= max_order; ++n)
    for (const auto& orders : oracles::abelian_groups_of_order(n)) {
      std::vector<Integer> big(orders.begin(), orders.end());
      const auto a = FgAbelianGroup::direct_sum_of_cyclics(big);
      try {
        const auto rule = functor_apply(FunctorName::gamma2(), a);
        const auto oracle = gamma2_oracle(a, static_cast<std::size_t>(max_order));
        rec.check(rule == oracle, fmt::format("Gamma2({}) = {} but oracle gives {}", a.to_string(), rule.to_string(),
                                              oracle.to_string()));
      } catch (const std::exception& e) {
        rec.error(e);
      }
    }
  return rec.finish();
}

SuiteResult witt_suite(int max_rank, int max_class) {
  Recorder rec("witt");
  for (int r = 1; r <= max_rank; ++r) {
    try {
      const auto counts = HallBasis(r, max_class).counts();
      for (int k = 1; k <= max_class; ++k) {
        const auto expected = oracles::necklace_count(r, k);
        rec.check(static_cast<std::int64_t>(counts.at(k - 1)) == expected,
                  fmt::format("rank {} class {}: {} basic commutators, necklace count {}", r, k, counts.at(k - 1),
                              expected));
      }
    } catch (const std::exception& e) {
      rec.error(e);
    }
  }
  return rec.finish();
}

SuiteResult magnus_suite(std::uint64_t seed, int pairs, int degree) {
  Recorder rec("magnus");
  std::mt19937_64 rng(seed);
  const auto names = default_generator_names(3);
  for (int i = 0; i < pairs; ++i) {
    const int alphabet = 2 + static_cast<int>(rng() % 2);
    const Word u = random_word(rng, alphabet, 8), v = random_word(rng, alphabet, 8);
    try {
      const auto lhs = magnus_expand(u * v, alphabet, degree);
      const auto rhs = magnus_expand(u, alphabet, degree) * magnus_expand(v, alphabet, degree);
      rec.check(lhs == rhs, fmt::format("u = {}, v = {}", u.to_string(names), v.to_string(names)));
    } catch (const std::exception& e) {
      rec.error(e);
    }
  }
  return rec.finish();
}

SuiteResult reconstruction_suite(std::uint64_t seed, const FpPresentation& p, int depth, int samples,
                                 const std::string& name) {
  Recorder rec(name);
  std::mt19937_64 rng(seed);
  const int rank = static_cast<int>(p.rank());
  std::vector<std::size_t> xs(p.rank());
  for (std::size_t i = 0; i < xs.size(); ++i) xs[i] = i;
  try {
    const Tower t(p, depth);
    for (int s = 0; s < samples; ++s) {
      Word w;
      const int factors = 1 + static_cast<int>(rng() % 3);
      for (int f = 0; f < factors; ++f) w = w * commutator(random_word(rng, rank, 5), random_word(rng, rank, 5));
      try {
        const auto a = TowerElement::from_word(t, w);
        const auto gs = decompose_as_commutators(t, a, xs);
        int bad = 0;
        for (int c = 1; c <= t.max_class() && bad == 0; ++c)
          if (commutator_product(t, c, gs, xs) != a.components[c - 1]) bad = c;
        rec.check(bad == 0, fmt::format("{}: reconstruction fails at level {}", w.to_string(p.generators), bad));
      } catch (const std::exception& e) {
        rec.error(e);
      }
    }
  } catch (const std::exception& e) {
    rec.error(e);
  }
  return rec.finish();
}

SuiteResult linking_suite(std::uint64_t seed, int braids) {
  Recorder rec("linking");
  std::mt19937_64 rng(seed);
  for (int i = 0; i < braids; ++i) {
    const int strands = 2 + static_cast<int>(rng() % 2);
    BraidWord b{strands, {}};
    const int length = 1 + static_cast<int>(rng() % 10);
    for (int j = 0; j < length; ++j) {
      const int g = 1 + static_cast<int>(rng() % (strands - 1));
      b.letters.push_back(rng() % 2 ? g : -g);
    }
    try {
      const LinkData link = braid_closure(b);
      const auto lk = oracles::braid_linking_matrix(b.strands, b.letters);
      const MilnorExpansion e(link, 1);
      const int k = static_cast<int>(link.num_components());
      bool ok = lk.size() == link.num_components();
      for (int x = 1; ok && x <= k; ++x)
        for (int y = 1; y <= k; ++y)
          if (x != y && e.mu({x, y}) != lk[x - 1][y - 1]) ok = false;
      rec.check(ok, fmt::format("braid {}", b.to_string()));
    } catch (const std::exception& e) {
      rec.error(e);
    }
  }
  return rec.finish();
}

std::vector<SuiteResult> run_selftest(std::uint64_t seed) {
  std::vector<SuiteResult> out;
  out.push_back(gamma2_suite());
  out.push_back(witt_suite());
  out.push_back(magnus_suite(seed));
  out.push_back(reconstruction_suite(seed, dihedral_presentation(), 10, 20, "reconstruction"));
  out.push_back(linking_suite(seed));
  return out;
}

}  // namespace gamma_omega
