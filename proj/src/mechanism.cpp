#include "minrisk/mechanism.hpp"

#include <cmath>
#include <unordered_set>

namespace minrisk {

void Mechanism::validate() const {
  if (rows.empty() || outputs.empty()) {
    throw Error(ErrorKind::invalid_spec, "mechanism needs at least one input and one output");
  }
  std::unordered_set<std::string_view> names(outputs.begin(), outputs.end());
  if (names.size() != outputs.size()) {
    throw Error(ErrorKind::invalid_spec, "mechanism output names must be unique");
  }
  for (const auto& row : rows) {
    if (row.size() != outputs.size()) {
      throw Error(ErrorKind::length_mismatch, "mechanism row width differs from the output alphabet");
    }
    double total = 0.0;
    for (double p : row) {
      if (!(p >= 0.0) || !std::isfinite(p)) {
        throw Error(ErrorKind::invalid_distribution, "mechanism entries must be finite and nonnegative");
      }
      total += p;
    }
    if (std::abs(total - 1.0) > kProbabilityTolerance) {
      throw Error(ErrorKind::invalid_distribution, "mechanism rows must sum to 1");
    }
  }
}

std::uint32_t Mechanism::output_index(std::string_view y) const {
  for (std::uint32_t j = 0; j < outputs.size(); ++j) {
    if (outputs[j] == y) {
      return j;
    }
  }
  throw Error(ErrorKind::unknown_output, "output \"" + std::string(y) + "\" is not in the alphabet");
}

Mechanism Mechanism::from_function(const std::vector<std::uint32_t>& assignment,
                                   std::vector<std::string> outputs) {
  Mechanism mech;
  mech.outputs = std::move(outputs);
  mech.rows.assign(assignment.size(), std::vector<double>(mech.outputs.size(), 0.0));
  for (std::size_t x = 0; x < assignment.size(); ++x) {
    if (assignment[x] >= mech.outputs.size()) {
      throw Error(ErrorKind::index_out_of_range, "function value outside the output alphabet");
    }
    mech.rows[x][assignment[x]] = 1.0;
  }
  mech.validate();
  return mech;
}

Mechanism Mechanism::from_function(const std::vector<std::uint32_t>& assignment,
                                   std::uint32_t output_count) {
  std::vector<std::string> names;
  names.reserve(output_count);
  for (std::uint32_t j = 0; j < output_count; ++j) {
    names.push_back(std::to_string(j));
  }
  return from_function(assignment, std::move(names));
}

Mechanism Mechanism::from_hypothesis(const Hypothesis& h) {
  std::vector<std::uint32_t> assignment(h.size());
  for (std::uint32_t x = 0; x < h.size(); ++x) {
    assignment[x] = h.labels[x] == 1 ? 1 : 0;
  }
  return from_function(assignment, {"-1", "+1"});
}

double output_marginal(const Mechanism& mech, std::string_view y) {
  mech.validate();
  std::uint32_t j = mech.output_index(y);
  double total = 0.0;
  for (const auto& row : mech.rows) {
    total += row[j];
  }
  return total / mech.input_count();
}

ActualRepertoire actual_repertoire(const Mechanism& mech, std::string_view y) {
  mech.validate();
  std::uint32_t j = mech.output_index(y);
  double column_sum = 0.0;
  for (const auto& row : mech.rows) {
    column_sum += row[j];
  }
  if (column_sum <= 0.0) {
    throw Error(ErrorKind::zero_probability_output, "output has zero probability");
  }
  ActualRepertoire rep;
  rep.output = std::string(y);
  rep.posterior.probs.reserve(mech.input_count());
  for (const auto& row : mech.rows) {
    rep.posterior.probs.push_back(row[j] / column_sum);
  }
  return rep;
}

double effective_information(const Mechanism& mech, std::string_view y) {
  ActualRepertoire rep = actual_repertoire(mech, y);
  double bits = 0.0;
  double m = static_cast<double>(rep.posterior.size());
  for (double q : rep.posterior.probs) {
    if (q > 0.0) {
      bits += q * std::log2(q * m);
    }
  }
  // Uniform posteriors can land a rounding hair below zero.
  if (bits < 0.0 && bits > -1e-9) {
    bits = 0.0;
  }
  return bits;
}

}  // namespace minrisk
