#pragma once

// Bookkeeping for Whitehead's exact sequence of a simply connected space
//   H_4 -> Gamma^2(H_2) -> pi_3 -> H_3 -> 0
// and the end-to-end verification report built on the other modules.

#include <gmpxx.h>

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gamma_omega/abelian.hpp"
#include "gamma_omega/nq.hpp"

namespace gamma_omega {

using Rational = mpq_class;

// w : H_4 -> Gamma^2(H_2) with integral homology.
struct WhiteheadInput {
  FgAbelianGroup h2;
  FgAbelianGroup h3;
  FgAbelianGroup h4;
  AbMap w;
};

// Rational homology given by dimensions; w has dim Gamma^2(Q^h2_dim) rows and
// h4_dim columns.
struct RationalWhiteheadInput {
  std::size_t h2_dim = 0;
  std::size_t h3_dim = 0;
  std::size_t h4_dim = 0;
  std::vector<std::vector<Rational>> w;
};

// A finitely generated abelian group, or a Q-vector space of given dimension.
struct WhiteheadTerm {
  std::optional<FgAbelianGroup> group;
  Integer rational_dim = 0;

  static WhiteheadTerm integral(FgAbelianGroup g) { return {std::move(g), 0}; }
  static WhiteheadTerm rational(Integer dim) { return {std::nullopt, std::move(dim)}; }

  bool infinitely_generated() const;
  std::string to_string() const;
  bool operator==(const WhiteheadTerm&) const = default;
};

FgAbelianGroup coker_w(const WhiteheadInput& input);
Integer coker_w(const RationalWhiteheadInput& input);

// Rank over Q; rows may have different denominators.
std::size_t rational_rank(const std::vector<std::vector<Rational>>& rows, std::size_t cols);

struct Pi3Report {
  WhiteheadTerm coker;
  WhiteheadTerm h3;
  // 0 -> coker -> pi_3 -> H_3 -> 0; the extension is left open.
  std::string statement;
  bool infinitely_generated = false;
};

Pi3Report pi3_sequence(const WhiteheadInput& input);
Pi3Report pi3_sequence(const RationalWhiteheadInput& input);

// Rational homology of Q^n x| C_2 (C_2 acting by negation) in degrees
// 0..i_max, read off as the free ranks of H_0(C_2; Lambda^i Z^n).
std::vector<Integer> rational_homology_negation(std::size_t n, int i_max);

// The rational input for Q^n x| C_2: H_2, H_3, H_4 from the previous function
// and w = 0 (its domain vanishes for n <= 3; otherwise rejected).
RationalWhiteheadInput negation_extension_input(std::size_t n);

enum class StepStatus { Checked, Assumed };

struct ReportStep {
  std::string claim;
  StepStatus status = StepStatus::Checked;
  // Values are strings; integers are written in decimal.
  std::vector<std::pair<std::string, std::string>> data;
};

struct Report {
  std::vector<ReportStep> steps;

  std::string to_text() const;
};

std::string to_string(StepStatus s);

struct ReportOptions {
  int tower_class = 10;
  int homology_degree = 7;
  int page_columns = 6;
  int threads = 1;
  NqLimits limits;
};

// Dihedral tower, E^2 pages, assembled homology, rational cokernel counts and
// the remaining chain of cited facts, in that order. Output does not depend on
// the thread count.
Report verification_pipeline_report(const ReportOptions& options = {});

}  // namespace gamma_omega
