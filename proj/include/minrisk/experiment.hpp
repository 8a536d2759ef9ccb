#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "minrisk/bounds.hpp"
#include "minrisk/core.hpp"
#include "minrisk/learning.hpp"

namespace minrisk {

struct DistributionSpec {
  enum class Kind { uniform, explicit_values };
  Kind kind = Kind::uniform;
  std::vector<double> probs;  // explicit_values only
};

struct SupervisorSpec {
  enum class Kind { explicit_labels, random };
  Kind kind = Kind::explicit_labels;
  std::string labels;       // explicit: bitstring, '1' = +1
  std::uint64_t seed = 0;   // random: drawn once, fixed across trials
};

struct RepertoireSpec {
  enum class Kind { thresholds, intervals, random_k, explicit_members };
  Kind kind = Kind::thresholds;
  std::uint32_t k = 1;       // random_k only
  std::uint64_t seed = 0;    // random_k only
  std::vector<std::string> members;  // explicit_members only
};

struct ExperimentConfig {
  std::uint32_t m = 0;
  std::uint32_t l = 0;
  std::uint32_t trials = 0;
  double delta = 0.05;
  std::uint64_t seed = 0;
  DistributionSpec distribution;
  SupervisorSpec supervisor;
  RepertoireSpec repertoire;

  void validate() const;
};

// Trial evaluation order of the four bounds.
inline constexpr std::array<BoundKind, 4> kBoundOrder = {
    BoundKind::vc, BoundKind::rademacher, BoundKind::ei_vc, BoundKind::ei_rademacher};

// One bound's fate in one trial. Bounds whose preconditions the drawn sample
// does not meet (duplicates for ei routes, distinct points beyond the
// histogram cap for rademacher routes) are marked inapplicable and excluded
// from coverage denominators.
struct BoundOutcome {
  bool applicable = false;
  double total = 0;
  bool held = false;
  bool vacuous = false;
};

struct TrialRecord {
  std::uint64_t seed = 0;
  Sample sample;
  Labels labels;
  std::size_t erm_index = 0;
  RiskValue empirical;
  double true_risk = 0;
  bool distinct = false;
  std::array<BoundOutcome, 4> bounds;  // kBoundOrder
};

struct BoundCoverage {
  std::uint64_t applicable = 0;
  std::uint64_t violations = 0;
  std::uint64_t vacuous_count = 0;
  double slack_sum = 0;

  double coverage() const {
    return applicable == 0 ? 1.0 : 1.0 - static_cast<double>(violations) / applicable;
  }
  double mean_slack() const { return applicable == 0 ? 0.0 : slack_sum / applicable; }
  double vacuous_fraction() const {
    return applicable == 0 ? 0.0 : static_cast<double>(vacuous_count) / applicable;
  }
};

struct CoverageSummary {
  std::uint64_t trials = 0;
  double delta = 0.05;
  std::array<BoundCoverage, 4> per_bound;  // kBoundOrder
};

struct ResolvedExperiment {
  Repertoire repertoire;
  Hypothesis supervisor;
  Distribution distribution;
};

struct ExperimentResult {
  CoverageSummary summary;
  std::vector<TrialRecord> records;
};

// Probability under p that f and the supervisor disagree; summed exactly
// over the finite input space, no holdout estimation.
double true_risk(const Hypothesis& f, const Hypothesis& supervisor, const Distribution& p);

Hypothesis random_hypothesis(std::uint32_t m, std::uint64_t seed);

Repertoire generate_repertoire(const RepertoireSpec& spec, std::uint32_t m);

ResolvedExperiment resolve_experiment(const ExperimentConfig& cfg);

// One i.i.d. draw + ERM + bound evaluation; deterministic in trial_seed.
TrialRecord run_trial(const ExperimentConfig& cfg, std::uint64_t trial_seed,
                      const BoundConstants& constants = BoundConstants::standard());

// cfg.trials independent trials with seeds cfg.seed xor index. Trials are
// independent; aggregation is order-free counting, so any schedule gives
// identical results.
ExperimentResult run_experiment(const ExperimentConfig& cfg,
                                const BoundConstants& constants = BoundConstants::standard());

// Mean true risk and mean applicable bound totals, re-run over a grid of
// sample sizes up to cfg.l; feeds external plotting.
struct PlotPoint {
  std::uint32_t l = 0;
  double mean_true_risk = 0;
  std::array<std::optional<double>, 4> mean_total;  // kBoundOrder
};

std::vector<PlotPoint> plot_series(const ExperimentConfig& cfg,
                                   const BoundConstants& constants = BoundConstants::standard());

}  // namespace minrisk
