#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "minrisk/core.hpp"
#include "minrisk/rational.hpp"

namespace minrisk {

// Histogram enumeration walks all 2^d sign patterns on the distinct sample
// points; the cap keeps that desk sized.
inline constexpr std::uint32_t kHistogramCap = 24;

// A finite ordered family of hypotheses over a common input space. Order is
// significant: ERM ties break toward the smallest index.
struct Repertoire {
  std::uint32_t m = 0;
  std::vector<Hypothesis> members;
  std::string name;

  void validate() const;  // nonempty, every member labels exactly m inputs
};

// An exact empirical risk: k disagreements out of l sample points.
struct RiskValue {
  std::uint32_t errors = 0;
  std::uint32_t sample_size = 1;

  Rational value() const { return Rational(errors, sample_size); }

  bool operator==(const RiskValue&) const = default;
};

// Exact preimage sizes of the min-risk map over sign patterns on the sample.
// counts[k] = number of the 2^d patterns (d = distinct points) whose best
// member of F still makes exactly k errors on the full length-l sequence.
struct MinRiskHistogram {
  std::vector<std::uint64_t> counts;  // indexed 0..l
  std::uint32_t l = 0;
  std::uint32_t m = 0;
  std::uint32_t distinct_points = 0;
  bool distinct = false;

  std::uint64_t pattern_universe() const { return std::uint64_t{1} << distinct_points; }
};

struct ErmResult {
  std::size_t index = 0;
  RiskValue risk;
};

// Fraction of sample positions where f disagrees with lab; exact.
RiskValue empirical_risk(const Hypothesis& f, const Sample& d, const Labels& lab);

// Member of F with minimal empirical risk; ties go to the smallest index.
ErmResult erm(const Repertoire& F, const Sample& d, const Labels& lab);

// The risk component of erm, exposed as the measurement R_{F,D} applied to lab.
RiskValue min_risk(const Repertoire& F, const Sample& d, const Labels& lab);

// Exact min-risk preimage histogram over all 2^d sign patterns.
// Production path: per-point distance transform over the pattern lattice;
// counts[k] = patterns at weighted flip distance k from the member patterns.
MinRiskHistogram min_risk_histogram(const Repertoire& F, const Sample& d);

// Reference path: per-pattern minimum over members via XOR + weighted
// popcount. Output-identical to min_risk_histogram; kept as its oracle.
MinRiskHistogram min_risk_histogram_direct(const Repertoire& F, const Sample& d);

// Number of full hypotheses (out of 2^m) whose min-risk is exactly k/l:
// counts[k] * 2^(m-l). Valid only for all-distinct samples, where the
// hypothesis space factors into on-sample and off-sample assignments.
std::uint64_t sigma_preimage_count(const MinRiskHistogram& h, std::uint32_t k);

// Distribution of min-risk values under a uniformly random hypothesis:
// p(k/l) = counts[k] / 2^l. Keys are exact risks, values exact probabilities.
std::map<Rational, Rational> rademacher_distribution(const MinRiskHistogram& h);

// The image q_D(F): distinct sign patterns of members on the sample sequence,
// in ascending canonical order.
std::vector<Labels> dichotomies(const Repertoire& F, const Sample& d);
std::uint64_t dichotomy_count(const Repertoire& F, const Sample& d);

namespace detail {

// Collapse of a sample into its distinct points, order of first occurrence.
struct SamplePoints {
  std::vector<std::uint32_t> points;        // distinct input indices
  std::vector<std::uint32_t> multiplicity;  // occurrences of each point
  std::vector<std::uint32_t> position_of;   // sample position -> point slot
};

SamplePoints collapse(const Sample& d);

// Pattern word of h on the distinct points: bit j set iff h(points[j]) = +1.
std::uint64_t member_word(const Hypothesis& h, const SamplePoints& pts);

}  // namespace detail

}  // namespace minrisk
