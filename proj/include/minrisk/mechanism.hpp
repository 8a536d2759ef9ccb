#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "minrisk/core.hpp"

namespace minrisk {

// A row-stochastic conditional distribution p(y|x) over finite inputs and a
// named output alphabet. rows[x][j] is p(outputs[j] | x).
struct Mechanism {
  std::vector<std::vector<double>> rows;
  std::vector<std::string> outputs;

  std::uint32_t input_count() const { return static_cast<std::uint32_t>(rows.size()); }
  std::uint32_t output_count() const { return static_cast<std::uint32_t>(outputs.size()); }

  // Rows sum to 1 within 1e-12, entries nonnegative, output names unique.
  void validate() const;
  std::uint32_t output_index(std::string_view y) const;

  // Deterministic mechanism: row x puts probability 1 on assignment[x].
  static Mechanism from_function(const std::vector<std::uint32_t>& assignment,
                                 std::vector<std::string> outputs);
  static Mechanism from_function(const std::vector<std::uint32_t>& assignment,
                                 std::uint32_t output_count);
  // Binary mechanism of a labeling; outputs are "-1" and "+1".
  static Mechanism from_hypothesis(const Hypothesis& h);
};

// Posterior over inputs after observing one output, under a uniform prior.
struct ActualRepertoire {
  Distribution posterior;
  std::string output;
};

// p(y) under the uniform input prior: (1/|X|) sum_x p(y|x).
double output_marginal(const Mechanism& mech, std::string_view y);

// Bayes posterior p(x|y) = p(y|x) / sum_x' p(y|x').
ActualRepertoire actual_repertoire(const Mechanism& mech, std::string_view y);

// KL divergence in bits from uniform to the posterior:
// sum_x q(x) log2(q(x) |X|), with the 0 log 0 = 0 convention.
double effective_information(const Mechanism& mech, std::string_view y);

}  // namespace minrisk
