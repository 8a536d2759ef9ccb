#pragma once

#include <cstdint>
#include <optional>

#include "minrisk/core.hpp"
#include "minrisk/learning.hpp"
#include "minrisk/rational.hpp"

namespace minrisk {

// Failure probability delta in (0, 1).
struct Confidence {
  double delta;

  explicit Confidence(double d) : delta(d) {
    if (!(d > 0.0) || !(d < 1.0)) {
      throw Error(ErrorKind::invalid_confidence, "delta must lie strictly between 0 and 1");
    }
  }
};

// c1 = sqrt(6/log2 e), c2 = sqrt(1/log2 e), c3 = sqrt(2/log2 e).
// Overridable so a harness can deliberately cripple a bound (negative
// controls for the coverage tests).
struct BoundConstants {
  double c1;
  double c2;
  double c3;

  static BoundConstants standard();
};

enum class BoundKind { vc, rademacher, ei_vc, ei_rademacher };

const char* bound_kind_name(BoundKind kind);

// One evaluated right-hand side: total = empirical + capacity + confidence.
// capacity_exact carries the rational form when the capacity term is one
// (rademacher routes); vacuous flags totals that guarantee nothing.
struct BoundReport {
  BoundKind kind = BoundKind::vc;
  Rational empirical_term;
  double capacity_term = 0;
  double confidence_term = 0;
  double total = 0;
  bool vacuous = false;
  std::optional<Rational> capacity_exact;
};

// emp + c1 sqrt(V/l) + c2 sqrt((1 - log2 delta)/l).
BoundReport vc_bound(RiskValue emp, double v_bits, std::uint32_t l, Confidence conf,
                     const BoundConstants& constants = BoundConstants::standard());

// emp + R + c3 sqrt((1 - log2 delta)/l).
BoundReport rademacher_bound(RiskValue emp, const Rational& rademacher, std::uint32_t l,
                             Confidence conf,
                             const BoundConstants& constants = BoundConstants::standard());

// emp + c1 sqrt(1 - ei0/l) + c2 sqrt((1 - log2 delta)/l).
BoundReport ei_vc_bound(RiskValue emp, double ei_zero_bits, std::uint32_t l, Confidence conf,
                        const BoundConstants& constants = BoundConstants::standard());

// emp + [1 - 2 sum_k (k/l) p(k/l)] + c3 sqrt((1 - log2 delta)/l), the
// capacity term evaluated exactly from the histogram.
BoundReport ei_rademacher_bound(RiskValue emp, const MinRiskHistogram& h, Confidence conf,
                                const BoundConstants& constants = BoundConstants::standard());

}  // namespace minrisk
