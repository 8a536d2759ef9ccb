#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "minrisk/core.hpp"
#include "minrisk/learning.hpp"
#include "minrisk/rational.hpp"

namespace minrisk {

// log2 of the number of distinct sign patterns F realizes on the sample.
double vc_entropy(const Repertoire& F, const Sample& d);

// Bits of hypothesis space ruled out by observing min-risk k/l:
// m - log2(counts[k] 2^(m-l)) = l - log2 counts[k].
double ei_min_risk(const MinRiskHistogram& h, std::uint32_t k);

// l - ei at level zero; equals vc_entropy through the integer identity
// counts[0] = |dichotomies|.
double vc_entropy_via_ei(const MinRiskHistogram& h);

// Averaged supremum correlation over the full hypothesis space, exact.
// Enumeration oracle: costs 2^m scans, capped at kSigmaEnumCap.
Rational rademacher_direct(const Repertoire& F, InputSpace space, const Sample& d);

// Same quantity through the min-risk distribution: 1 - 2 E[min-risk], exact.
// Production route; costs only the histogram.
Rational rademacher_via_distribution(const MinRiskHistogram& h);

// Code length of the true hypothesis against prefix-free codes induced by F:
// vc_entropy + (m - l) bits, the log2 of the zero-level preimage count.
double mml_length(const Repertoire& F, const Sample& d, InputSpace space);

struct EiLevel {
  std::uint32_t errors = 0;
  double bits = 0;
};

// One-stop summary of the capacity quantities computable for (F, d).
// ei and MML fields need an all-distinct sample; the rademacher field needs
// the histogram (distinct points within cap). provenance names the route
// that produced each present field.
struct CapacityReport {
  std::uint32_t m = 0;
  std::uint32_t l = 0;
  std::uint64_t dichotomies = 0;
  double vc_entropy_bits = 0;
  std::optional<double> ei_zero_bits;  // also reported as falsified_bits
  std::optional<Rational> rademacher;
  std::optional<double> mml_length_bits;
  std::vector<EiLevel> levels;
  bool sample_distinct = false;
  std::map<std::string, std::string> provenance;
};

CapacityReport capacity_report(const Repertoire& F, InputSpace space, const Sample& d);

}  // namespace minrisk
