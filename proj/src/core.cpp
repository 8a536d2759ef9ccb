#include "minrisk/core.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <unordered_set>

namespace minrisk {

Hypothesis Hypothesis::constant(std::uint32_t m, Sign value) {
  if (value != 1 && value != -1) {
    throw Error(ErrorKind::invalid_spec, "label sign must be +1 or -1");
  }
  Hypothesis h;
  h.labels.assign(m, value);
  return h;
}

Hypothesis Hypothesis::from_code(std::uint64_t code, std::uint32_t m) {
  if (m > 64) {
    throw Error(ErrorKind::cap_exceeded, "hypothesis code form is limited to 64 inputs");
  }
  if (m < 64 && code >> m) {
    throw Error(ErrorKind::index_out_of_range, "hypothesis code has bits beyond the input space");
  }
  Hypothesis h;
  h.labels.resize(m);
  for (std::uint32_t i = 0; i < m; ++i) {
    h.labels[i] = (code >> i) & 1 ? Sign{1} : Sign{-1};
  }
  return h;
}

Hypothesis Hypothesis::from_bitstring(std::string_view bits) {
  Hypothesis h;
  h.labels.reserve(bits.size());
  for (char c : bits) {
    if (c == '1') {
      h.labels.push_back(1);
    } else if (c == '0') {
      h.labels.push_back(-1);
    } else {
      throw Error(ErrorKind::parse_error, "hypothesis bitstring must contain only 0 and 1");
    }
  }
  return h;
}

std::uint64_t Hypothesis::code() const {
  if (labels.size() > 64) {
    throw Error(ErrorKind::cap_exceeded, "hypothesis code form is limited to 64 inputs");
  }
  std::uint64_t code = 0;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] == 1) {
      code |= std::uint64_t{1} << i;
    }
  }
  return code;
}

std::string Hypothesis::bitstring() const {
  std::string bits(labels.size(), '0');
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] == 1) {
      bits[i] = '1';
    }
  }
  return bits;
}

Hypothesis Hypothesis::negated() const {
  Hypothesis h;
  h.labels.reserve(labels.size());
  for (Sign s : labels) {
    h.labels.push_back(static_cast<Sign>(-s));
  }
  return h;
}

void Distribution::validate() const {
  if (probs.empty()) {
    throw Error(ErrorKind::invalid_distribution, "distribution over an empty input space");
  }
  double total = 0.0;
  for (double p : probs) {
    if (!(p >= 0.0) || !std::isfinite(p)) {
      throw Error(ErrorKind::invalid_distribution, "distribution entries must be finite and nonnegative");
    }
    total += p;
  }
  if (std::abs(total - 1.0) > kProbabilityTolerance) {
    throw Error(ErrorKind::invalid_distribution, "distribution entries must sum to 1");
  }
}

Distribution Distribution::uniform(std::uint32_t m) {
  if (m == 0) {
    throw Error(ErrorKind::invalid_distribution, "distribution over an empty input space");
  }
  Distribution p;
  p.probs.assign(m, 1.0 / m);
  return p;
}

Distribution Distribution::point_mass(std::uint32_t m, std::uint32_t index) {
  if (index >= m) {
    throw Error(ErrorKind::index_out_of_range, "point mass index outside the input space");
  }
  Distribution p;
  p.probs.assign(m, 0.0);
  p.probs[index] = 1.0;
  return p;
}

Sample Sample::of(std::vector<std::uint32_t> indices) {
  if (indices.empty()) {
    throw Error(ErrorKind::invalid_spec, "sample must contain at least one point");
  }
  Sample d;
  d.indices = std::move(indices);
  std::unordered_set<std::uint32_t> seen(d.indices.begin(), d.indices.end());
  d.distinct = seen.size() == d.indices.size();
  return d;
}

Labels Labels::from_bitstring(std::string_view bits) {
  Labels y;
  y.values.reserve(bits.size());
  for (char c : bits) {
    if (c == '1') {
      y.values.push_back(1);
    } else if (c == '0') {
      y.values.push_back(-1);
    } else {
      throw Error(ErrorKind::parse_error, "label bitstring must contain only 0 and 1");
    }
  }
  return y;
}

std::string Labels::bitstring() const {
  std::string bits(values.size(), '0');
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (values[i] == 1) {
      bits[i] = '1';
    }
  }
  return bits;
}

HypothesisEnumeration::HypothesisEnumeration(InputSpace space) : m_(space.size) {
  if (m_ > kSigmaEnumCap) {
    throw Error(ErrorKind::cap_exceeded, "hypothesis enumeration is capped at 24 inputs");
  }
}

HypothesisEnumeration enumerate_hypotheses(InputSpace space) {
  return HypothesisEnumeration(space);
}

Labels restrict(const Hypothesis& h, const Sample& d) {
  Labels y;
  y.values.reserve(d.indices.size());
  for (std::uint32_t i : d.indices) {
    if (i >= h.size()) {
      throw Error(ErrorKind::index_out_of_range, "sample point outside the hypothesis domain");
    }
    y.values.push_back(h.labels[i]);
  }
  return y;
}

Sample sample_iid(const Distribution& p, std::uint32_t l, std::uint64_t seed) {
  p.validate();
  if (l == 0) {
    throw Error(ErrorKind::invalid_spec, "sample must contain at least one point");
  }
  // Cumulative sums close exactly at 1 so the final bucket absorbs rounding.
  std::vector<double> cdf(p.probs.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < p.probs.size(); ++i) {
    acc += p.probs[i];
    cdf[i] = acc;
  }
  cdf.back() = 1.0;

  std::mt19937_64 gen(seed);
  std::vector<std::uint32_t> indices;
  indices.reserve(l);
  for (std::uint32_t i = 0; i < l; ++i) {
    // 53-bit mantissa draw in [0, 1); avoids std::uniform_real_distribution,
    // whose output is implementation defined.
    double u = static_cast<double>(gen() >> 11) * 0x1.0p-53;
    auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
    if (it == cdf.end()) {
      --it;
    }
    indices.push_back(static_cast<std::uint32_t>(it - cdf.begin()));
  }
  return Sample::of(std::move(indices));
}

}  // namespace minrisk
