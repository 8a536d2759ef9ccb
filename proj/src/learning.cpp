#include "minrisk/learning.hpp"

#include <algorithm>
#include <bit>
#include <limits>
#include <unordered_map>

namespace minrisk {

void Repertoire::validate() const {
  if (members.empty()) {
    throw Error(ErrorKind::invalid_spec, "repertoire must contain at least one member");
  }
  for (const Hypothesis& h : members) {
    if (h.size() != m) {
      throw Error(ErrorKind::space_mismatch, "repertoire member labels a different input space");
    }
  }
}

namespace detail {

SamplePoints collapse(const Sample& d) {
  SamplePoints pts;
  pts.position_of.reserve(d.indices.size());
  std::unordered_map<std::uint32_t, std::uint32_t> slot_of;
  for (std::uint32_t idx : d.indices) {
    auto [it, inserted] = slot_of.try_emplace(idx, static_cast<std::uint32_t>(pts.points.size()));
    if (inserted) {
      pts.points.push_back(idx);
      pts.multiplicity.push_back(0);
    }
    ++pts.multiplicity[it->second];
    pts.position_of.push_back(it->second);
  }
  return pts;
}

std::uint64_t member_word(const Hypothesis& h, const SamplePoints& pts) {
  std::uint64_t word = 0;
  for (std::size_t j = 0; j < pts.points.size(); ++j) {
    if (pts.points[j] >= h.size()) {
      throw Error(ErrorKind::index_out_of_range, "sample point outside the hypothesis domain");
    }
    if (h.labels[pts.points[j]] == 1) {
      word |= std::uint64_t{1} << j;
    }
  }
  return word;
}

}  // namespace detail

RiskValue empirical_risk(const Hypothesis& f, const Sample& d, const Labels& lab) {
  if (d.length() != lab.length()) {
    throw Error(ErrorKind::length_mismatch, "sample and labels differ in length");
  }
  std::uint32_t errors = 0;
  for (std::uint32_t i = 0; i < d.length(); ++i) {
    std::uint32_t x = d.indices[i];
    if (x >= f.size()) {
      throw Error(ErrorKind::index_out_of_range, "sample point outside the hypothesis domain");
    }
    if (f.labels[x] != lab.values[i]) {
      ++errors;
    }
  }
  return RiskValue{errors, d.length()};
}

ErmResult erm(const Repertoire& F, const Sample& d, const Labels& lab) {
  F.validate();
  ErmResult best{0, empirical_risk(F.members[0], d, lab)};
  for (std::size_t j = 1; j < F.members.size(); ++j) {
    if (best.risk.errors == 0) {
      break;
    }
    RiskValue r = empirical_risk(F.members[j], d, lab);
    if (r.errors < best.risk.errors) {
      best = ErmResult{j, r};
    }
  }
  return best;
}

RiskValue min_risk(const Repertoire& F, const Sample& d, const Labels& lab) {
  return erm(F, d, lab).risk;
}

std::vector<Labels> dichotomies(const Repertoire& F, const Sample& d) {
  F.validate();
  std::vector<Labels> patterns;
  patterns.reserve(F.members.size());
  for (const Hypothesis& h : F.members) {
    patterns.push_back(restrict(h, d));
  }
  std::sort(patterns.begin(), patterns.end(),
            [](const Labels& a, const Labels& b) { return a.values < b.values; });
  patterns.erase(std::unique(patterns.begin(), patterns.end()), patterns.end());
  return patterns;
}

std::uint64_t dichotomy_count(const Repertoire& F, const Sample& d) {
  return dichotomies(F, d).size();
}

namespace {

// Deduped pattern words of the members on the distinct sample points.
std::vector<std::uint64_t> member_words(const Repertoire& F, const detail::SamplePoints& pts) {
  std::vector<std::uint64_t> words;
  words.reserve(F.members.size());
  for (const Hypothesis& h : F.members) {
    words.push_back(detail::member_word(h, pts));
  }
  std::sort(words.begin(), words.end());
  words.erase(std::unique(words.begin(), words.end()), words.end());
  return words;
}

const detail::SamplePoints& checked_points(const Sample& d, detail::SamplePoints& storage) {
  storage = detail::collapse(d);
  if (storage.points.size() > kHistogramCap) {
    throw Error(ErrorKind::cap_exceeded, "histogram enumeration is capped at 24 distinct points");
  }
  return storage;
}

MinRiskHistogram make_histogram(const Repertoire& F, const Sample& d,
                                const detail::SamplePoints& pts) {
  MinRiskHistogram h;
  h.l = d.length();
  h.m = F.m;
  h.distinct_points = static_cast<std::uint32_t>(pts.points.size());
  h.distinct = d.distinct;
  h.counts.assign(h.l + 1, 0);
  return h;
}

// Exact weighted Hamming distances from every pattern to the member set,
// by one relaxation sweep per point: after processing points 0..j, dist[t]
// is the cheapest cost to reach a member flipping only those points. One
// sequential pass per dimension keeps the whole thing auto-vectorizable.
template <typename T>
void fill_histogram(std::vector<std::uint64_t>& counts, const std::vector<std::uint64_t>& words,
                    const std::vector<std::uint32_t>& multiplicity, std::uint64_t universe,
                    T infinity) {
  std::vector<T> dist(universe, infinity);
  for (std::uint64_t w : words) {
    dist[w] = 0;
  }
  for (std::size_t j = 0; j < multiplicity.size(); ++j) {
    const T cost = static_cast<T>(multiplicity[j]);
    const std::size_t stride = std::size_t{1} << j;
    for (std::size_t base = 0; base < universe; base += 2 * stride) {
      T* lo = dist.data() + base;
      T* hi = lo + stride;
      for (std::size_t i = 0; i < stride; ++i) {
        T a = lo[i];
        T b = hi[i];
        lo[i] = std::min<T>(a, static_cast<T>(b + cost));
        hi[i] = std::min<T>(b, static_cast<T>(a + cost));
      }
    }
  }
  for (std::uint64_t t = 0; t < universe; ++t) {
    ++counts[dist[t]];
  }
}

}  // namespace

MinRiskHistogram min_risk_histogram_direct(const Repertoire& F, const Sample& d) {
  F.validate();
  detail::SamplePoints storage;
  const detail::SamplePoints& pts = checked_points(d, storage);
  MinRiskHistogram h = make_histogram(F, d, pts);

  const std::uint32_t dcnt = h.distinct_points;
  const std::uint64_t universe = std::uint64_t{1} << dcnt;
  std::vector<std::uint64_t> words = member_words(F, pts);

  // Weighted popcount table: wp[t] = total multiplicity of bits set in t.
  std::vector<std::uint32_t> wp(universe);
  wp[0] = 0;
  for (std::uint64_t t = 1; t < universe; ++t) {
    wp[t] = wp[t & (t - 1)] + pts.multiplicity[std::countr_zero(t)];
  }

  for (std::uint64_t t = 0; t < universe; ++t) {
    std::uint32_t best = std::numeric_limits<std::uint32_t>::max();
    for (std::uint64_t w : words) {
      best = std::min(best, wp[t ^ w]);
    }
    ++h.counts[best];
  }
  return h;
}

MinRiskHistogram min_risk_histogram(const Repertoire& F, const Sample& d) {
  F.validate();
  detail::SamplePoints storage;
  const detail::SamplePoints& pts = checked_points(d, storage);
  MinRiskHistogram h = make_histogram(F, d, pts);

  const std::uint64_t universe = std::uint64_t{1} << pts.points.size();
  std::vector<std::uint64_t> words = member_words(F, pts);
  const std::uint32_t max_c = *std::max_element(pts.multiplicity.begin(), pts.multiplicity.end());

  // Distances are at most l; pick the narrowest element type whose
  // saturation point infinity + max_c cannot wrap.
  if (h.l <= 220 && max_c <= 30) {
    fill_histogram<std::uint8_t>(h.counts, words, pts.multiplicity, universe,
                                 static_cast<std::uint8_t>(h.l + 1));
  } else if (h.l <= 32000) {
    fill_histogram<std::uint16_t>(h.counts, words, pts.multiplicity, universe,
                                  static_cast<std::uint16_t>(h.l + 1));
  } else {
    fill_histogram<std::uint32_t>(h.counts, words, pts.multiplicity, universe, h.l + 1);
  }
  return h;
}

std::uint64_t sigma_preimage_count(const MinRiskHistogram& h, std::uint32_t k) {
  if (!h.distinct) {
    throw Error(ErrorKind::requires_distinct_sample,
                "hypothesis-space preimage counts need an all-distinct sample");
  }
  if (k >= h.counts.size()) {
    throw Error(ErrorKind::index_out_of_range, "error count exceeds the sample length");
  }
  const std::uint32_t shift = h.m - h.l;
  if (shift >= 64 || h.counts[k] > (std::numeric_limits<std::uint64_t>::max() >> shift)) {
    throw Error(ErrorKind::cap_exceeded, "preimage count does not fit in 64 bits");
  }
  return h.counts[k] << shift;
}

std::map<Rational, Rational> rademacher_distribution(const MinRiskHistogram& h) {
  if (!h.distinct) {
    throw Error(ErrorKind::requires_distinct_sample,
                "the min-risk distribution needs an all-distinct sample");
  }
  std::map<Rational, Rational> dist;
  const std::int64_t universe = std::int64_t{1} << h.l;
  for (std::uint32_t k = 0; k < h.counts.size(); ++k) {
    if (h.counts[k] > 0) {
      dist.emplace(Rational(k, h.l), Rational(static_cast<std::int64_t>(h.counts[k]), universe));
    }
  }
  return dist;
}

}  // namespace minrisk
