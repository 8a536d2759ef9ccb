#include "minrisk/bounds.hpp"

#include <cmath>

#include "minrisk/capacity.hpp"

namespace minrisk {

BoundConstants BoundConstants::standard() {
  const double ln2 = std::log(2.0);
  return {std::sqrt(6.0 * ln2), std::sqrt(ln2), std::sqrt(2.0 * ln2)};
}

const char* bound_kind_name(BoundKind kind) {
  switch (kind) {
    case BoundKind::vc: return "vc";
    case BoundKind::rademacher: return "rademacher";
    case BoundKind::ei_vc: return "ei_vc";
    case BoundKind::ei_rademacher: return "ei_rademacher";
  }
  return "unknown";
}

namespace {

double confidence_term(double c, std::uint32_t l, Confidence conf) {
  return c * std::sqrt((1.0 - std::log2(conf.delta)) / l);
}

BoundReport assemble(BoundKind kind, RiskValue emp, std::uint32_t l, double capacity,
                     double confidence) {
  if (emp.sample_size != l) {
    throw Error(ErrorKind::length_mismatch, "empirical risk denominator differs from l");
  }
  BoundReport report;
  report.kind = kind;
  report.empirical_term = emp.value();
  report.capacity_term = capacity;
  report.confidence_term = confidence;
  report.total = report.empirical_term.to_double() + capacity + confidence;
  report.vacuous = report.total >= 1.0;
  return report;
}

}  // namespace

BoundReport vc_bound(RiskValue emp, double v_bits, std::uint32_t l, Confidence conf,
                     const BoundConstants& constants) {
  if (v_bits < 0.0) {
    throw Error(ErrorKind::invalid_spec, "vc entropy must be nonnegative");
  }
  return assemble(BoundKind::vc, emp, l, constants.c1 * std::sqrt(v_bits / l),
                  confidence_term(constants.c2, l, conf));
}

BoundReport rademacher_bound(RiskValue emp, const Rational& rademacher, std::uint32_t l,
                             Confidence conf, const BoundConstants& constants) {
  if (rademacher < Rational(-1) || rademacher > Rational(1)) {
    throw Error(ErrorKind::invalid_spec, "rademacher complexity must lie in [-1, 1]");
  }
  BoundReport report = assemble(BoundKind::rademacher, emp, l, rademacher.to_double(),
                                confidence_term(constants.c3, l, conf));
  report.capacity_exact = rademacher;
  return report;
}

BoundReport ei_vc_bound(RiskValue emp, double ei_zero_bits, std::uint32_t l, Confidence conf,
                        const BoundConstants& constants) {
  if (ei_zero_bits < 0.0 || ei_zero_bits > static_cast<double>(l)) {
    throw Error(ErrorKind::ei_exceeds_l, "ei at level zero must lie in [0, l]");
  }
  return assemble(BoundKind::ei_vc, emp, l,
                  constants.c1 * std::sqrt(1.0 - ei_zero_bits / l),
                  confidence_term(constants.c2, l, conf));
}

BoundReport ei_rademacher_bound(RiskValue emp, const MinRiskHistogram& h, Confidence conf,
                                const BoundConstants& constants) {
  Rational capacity = rademacher_via_distribution(h);
  BoundReport report = assemble(BoundKind::ei_rademacher, emp, h.l, capacity.to_double(),
                                confidence_term(constants.c3, h.l, conf));
  report.capacity_exact = capacity;
  return report;
}

}  // namespace minrisk
