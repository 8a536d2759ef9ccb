#include "minrisk/capacity.hpp"

#include <cmath>

namespace minrisk {

double vc_entropy(const Repertoire& F, const Sample& d) {
  return std::log2(static_cast<double>(dichotomy_count(F, d)));
}

double ei_min_risk(const MinRiskHistogram& h, std::uint32_t k) {
  if (!h.distinct) {
    throw Error(ErrorKind::requires_distinct_sample,
                "falsification counts need an all-distinct sample");
  }
  if (k >= h.counts.size() || h.counts[k] == 0) {
    throw Error(ErrorKind::empty_level, "no hypothesis attains that min-risk level");
  }
  return static_cast<double>(h.l) - std::log2(static_cast<double>(h.counts[k]));
}

double vc_entropy_via_ei(const MinRiskHistogram& h) {
  return static_cast<double>(h.l) - ei_min_risk(h, 0);
}

Rational rademacher_direct(const Repertoire& F, InputSpace space, const Sample& d) {
  F.validate();
  if (space.size != F.m) {
    throw Error(ErrorKind::space_mismatch, "repertoire and input space disagree on size");
  }
  if (space.size > kSigmaEnumCap) {
    throw Error(ErrorKind::cap_exceeded, "hypothesis enumeration is capped at 24 inputs");
  }
  detail::SamplePoints pts = detail::collapse(d);
  const std::uint32_t dcnt = static_cast<std::uint32_t>(pts.points.size());

  std::vector<std::uint64_t> words;
  words.reserve(F.members.size());
  for (const Hypothesis& f : F.members) {
    words.push_back(detail::member_word(f, pts));
  }

  // sup_f (1/l) sum_i sigma(x_i) f(x_i) = (l - 2 min_f errors(f, sigma)) / l.
  const std::uint32_t l = d.length();
  std::int64_t correlation_sum = 0;
  for (std::uint64_t code = 0; code < (std::uint64_t{1} << space.size); ++code) {
    std::uint64_t sigma_word = 0;
    for (std::uint32_t j = 0; j < dcnt; ++j) {
      sigma_word |= ((code >> pts.points[j]) & 1) << j;
    }
    std::uint32_t best = l;
    for (std::uint64_t w : words) {
      std::uint64_t diff = sigma_word ^ w;
      std::uint32_t errors = 0;
      for (std::uint32_t j = 0; j < dcnt; ++j) {
        errors += ((diff >> j) & 1) * pts.multiplicity[j];
      }
      best = std::min(best, errors);
    }
    correlation_sum += static_cast<std::int64_t>(l) - 2 * static_cast<std::int64_t>(best);
  }
  return Rational(correlation_sum,
                  static_cast<std::int64_t>(std::uint64_t{1} << space.size) * l);
}

Rational rademacher_via_distribution(const MinRiskHistogram& h) {
  // 1 - 2 sum_k (counts[k] / 2^d) (k / l), all exact.
  Rational expected(0);
  const std::int64_t universe = std::int64_t{1} << h.distinct_points;
  for (std::uint32_t k = 0; k < h.counts.size(); ++k) {
    if (h.counts[k] > 0) {
      expected += Rational(static_cast<std::int64_t>(h.counts[k]), universe) * Rational(k, h.l);
    }
  }
  return Rational(1) - Rational(2) * expected;
}

double mml_length(const Repertoire& F, const Sample& d, InputSpace space) {
  F.validate();
  if (space.size != F.m) {
    throw Error(ErrorKind::space_mismatch, "repertoire and input space disagree on size");
  }
  if (!d.distinct) {
    throw Error(ErrorKind::requires_distinct_sample, "code lengths need an all-distinct sample");
  }
  std::uint64_t zero_level = dichotomy_count(F, d);
  if (zero_level == 0) {
    throw Error(ErrorKind::no_perfect_fit, "no sign pattern attains min-risk zero");
  }
  return std::log2(static_cast<double>(zero_level)) +
         (static_cast<double>(space.size) - static_cast<double>(d.length()));
}

CapacityReport capacity_report(const Repertoire& F, InputSpace space, const Sample& d) {
  F.validate();
  if (space.size != F.m) {
    throw Error(ErrorKind::space_mismatch, "repertoire and input space disagree on size");
  }
  CapacityReport report;
  report.m = space.size;
  report.l = d.length();
  report.dichotomies = dichotomy_count(F, d);
  report.vc_entropy_bits = std::log2(static_cast<double>(report.dichotomies));
  report.sample_distinct = d.distinct;
  report.provenance["vc_entropy_bits"] = "dichotomy count";

  detail::SamplePoints pts = detail::collapse(d);
  const bool histogram_ok = pts.points.size() <= kHistogramCap;
  if (histogram_ok) {
    MinRiskHistogram h = min_risk_histogram(F, d);
    report.rademacher = rademacher_via_distribution(h);
    report.provenance["rademacher"] = "min-risk distribution";
    if (d.distinct) {
      report.ei_zero_bits = ei_min_risk(h, 0);
      report.provenance["ei_zero_bits"] = "min-risk histogram";
      for (std::uint32_t k = 0; k < h.counts.size(); ++k) {
        if (h.counts[k] > 0) {
          report.levels.push_back({k, ei_min_risk(h, k)});
        }
      }
    }
  } else if (d.distinct) {
    // Beyond the histogram cap the zero level is still the dichotomy count.
    report.ei_zero_bits = static_cast<double>(report.l) - report.vc_entropy_bits;
    report.provenance["ei_zero_bits"] = "dichotomy count";
  }
  if (d.distinct) {
    report.mml_length_bits = mml_length(F, d, space);
    report.provenance["mml_length_bits"] = "vc entropy plus unseen inputs";
  }
  return report;
}

}  // namespace minrisk
