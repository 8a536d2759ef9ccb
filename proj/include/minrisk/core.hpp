#pragma once

#include <cstdint>
#include <iterator>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace minrisk {

enum class ErrorKind {
  cap_exceeded,
  index_out_of_range,
  length_mismatch,
  requires_distinct_sample,
  zero_probability_output,
  unknown_output,
  empty_level,
  no_perfect_fit,
  invalid_confidence,
  ei_exceeds_l,
  space_mismatch,
  invalid_spec,
  invalid_distribution,
  parse_error,
};

class Error : public std::runtime_error {
public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

private:
  ErrorKind kind_;
};

// Labels are signs, +1 or -1; risks count disagreements between sign vectors.
using Sign = std::int8_t;

// Full enumeration of Sigma costs 2^m. The cap keeps oracle suites desk sized.
inline constexpr std::uint32_t kSigmaEnumCap = 24;

inline constexpr double kProbabilityTolerance = 1e-12;

// A finite input space: points are indexed 0 .. size-1.
struct InputSpace {
  std::uint32_t size = 0;
};

// A total labeling of an input space, i.e. one point of Sigma(X, Y).
//
// Canonical integer encoding: bit i of the code is 1 iff the label at input
// index i is +1 (little endian in the input index). The bitstring form uses
// character position 0 for input 0 with '1' meaning +1.
struct Hypothesis {
  std::vector<Sign> labels;

  std::uint32_t size() const { return static_cast<std::uint32_t>(labels.size()); }

  static Hypothesis constant(std::uint32_t m, Sign value);
  static Hypothesis from_code(std::uint64_t code, std::uint32_t m);
  static Hypothesis from_bitstring(std::string_view bits);

  std::uint64_t code() const;  // requires size() <= 64
  std::string bitstring() const;
  Hypothesis negated() const;

  bool operator==(const Hypothesis&) const = default;
};

// A probability distribution over the input space.
struct Distribution {
  std::vector<double> probs;

  std::uint32_t size() const { return static_cast<std::uint32_t>(probs.size()); }
  void validate() const;  // entries >= 0, total within 1e-12 of 1

  static Distribution uniform(std::uint32_t m);
  static Distribution point_mass(std::uint32_t m, std::uint32_t index);
};

// An ordered sample of input indices. Repeats are allowed; `distinct` is a
// derived flag, never a constraint.
struct Sample {
  std::vector<std::uint32_t> indices;
  bool distinct = false;

  static Sample of(std::vector<std::uint32_t> indices);

  std::uint32_t length() const { return static_cast<std::uint32_t>(indices.size()); }
};

// Signs observed on a sample, position-aligned with it.
struct Labels {
  std::vector<Sign> values;

  std::uint32_t length() const { return static_cast<std::uint32_t>(values.size()); }

  static Labels from_bitstring(std::string_view bits);
  std::string bitstring() const;

  bool operator==(const Labels&) const = default;
};

// Restartable stream over all 2^m hypotheses in ascending code order.
class HypothesisEnumeration {
public:
  explicit HypothesisEnumeration(InputSpace space);

  class iterator {
  public:
    using iterator_category = std::input_iterator_tag;
    using value_type = Hypothesis;
    using difference_type = std::ptrdiff_t;

    iterator() = default;
    iterator(std::uint64_t code, std::uint32_t m) : code_(code), m_(m) {}

    Hypothesis operator*() const { return Hypothesis::from_code(code_, m_); }
    iterator& operator++() {
      ++code_;
      return *this;
    }
    iterator operator++(int) {
      iterator old = *this;
      ++code_;
      return old;
    }
    bool operator==(const iterator&) const = default;

  private:
    std::uint64_t code_ = 0;
    std::uint32_t m_ = 0;
  };

  iterator begin() const { return {0, m_}; }
  iterator end() const { return {std::uint64_t{1} << m_, m_}; }
  std::uint64_t count() const { return std::uint64_t{1} << m_; }

private:
  std::uint32_t m_;
};

HypothesisEnumeration enumerate_hypotheses(InputSpace space);

// Pattern of h on the sample: entry i is h.labels[d.indices[i]].
Labels restrict(const Hypothesis& h, const Sample& d);

// l independent draws from p. Identical (p, l, seed) gives an identical
// sample on every platform: the generator is mt19937_64 and the inverse-CDF
// lookup uses only specified arithmetic.
Sample sample_iid(const Distribution& p, std::uint32_t l, std::uint64_t seed);

}  // namespace minrisk
