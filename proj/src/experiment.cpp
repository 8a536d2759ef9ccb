#include "minrisk/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <set>

#include "minrisk/capacity.hpp"

namespace minrisk {

void ExperimentConfig::validate() const {
  if (m == 0) {
    throw Error(ErrorKind::invalid_spec, "experiment needs a nonempty input space");
  }
  if (l == 0 || trials == 0) {
    throw Error(ErrorKind::invalid_spec, "experiment needs l >= 1 and trials >= 1");
  }
  Confidence check(delta);
  switch (distribution.kind) {
    case DistributionSpec::Kind::uniform:
      break;
    case DistributionSpec::Kind::explicit_values: {
      if (distribution.probs.size() != m) {
        throw Error(ErrorKind::length_mismatch, "distribution length differs from m");
      }
      Distribution p{distribution.probs};
      p.validate();
      break;
    }
  }
  if (supervisor.kind == SupervisorSpec::Kind::explicit_labels &&
      supervisor.labels.size() != m) {
    throw Error(ErrorKind::length_mismatch, "supervisor labeling length differs from m");
  }
  if (repertoire.kind == RepertoireSpec::Kind::random_k && repertoire.k == 0) {
    throw Error(ErrorKind::invalid_spec, "random repertoire needs k >= 1");
  }
  if (repertoire.kind == RepertoireSpec::Kind::explicit_members && repertoire.members.empty()) {
    throw Error(ErrorKind::invalid_spec, "explicit repertoire needs at least one member");
  }
}

double true_risk(const Hypothesis& f, const Hypothesis& supervisor, const Distribution& p) {
  if (f.size() != supervisor.size() || f.size() != p.size()) {
    throw Error(ErrorKind::space_mismatch, "hypotheses and distribution disagree on size");
  }
  double risk = 0.0;
  for (std::uint32_t x = 0; x < f.size(); ++x) {
    if (f.labels[x] != supervisor.labels[x]) {
      risk += p.probs[x];
    }
  }
  return risk;
}

Hypothesis random_hypothesis(std::uint32_t m, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  Hypothesis h;
  h.labels.reserve(m);
  for (std::uint32_t i = 0; i < m; ++i) {
    h.labels.push_back(gen() & 1 ? Sign{1} : Sign{-1});
  }
  return h;
}

namespace {

Hypothesis threshold_hypothesis(std::uint32_t m, std::uint32_t t) {
  Hypothesis h;
  h.labels.reserve(m);
  for (std::uint32_t x = 0; x < m; ++x) {
    h.labels.push_back(x >= t ? Sign{1} : Sign{-1});
  }
  return h;
}

}  // namespace

Repertoire generate_repertoire(const RepertoireSpec& spec, std::uint32_t m) {
  if (m == 0) {
    throw Error(ErrorKind::invalid_spec, "repertoire needs a nonempty input space");
  }
  Repertoire F;
  F.m = m;
  switch (spec.kind) {
    case RepertoireSpec::Kind::thresholds: {
      F.name = "thresholds";
      for (std::uint32_t t = 0; t <= m; ++t) {
        F.members.push_back(threshold_hypothesis(m, t));
      }
      break;
    }
    case RepertoireSpec::Kind::intervals: {
      F.name = "intervals";
      F.members.push_back(Hypothesis::constant(m, -1));
      for (std::uint32_t a = 0; a < m; ++a) {
        for (std::uint32_t b = a + 1; b <= m; ++b) {
          Hypothesis h = Hypothesis::constant(m, -1);
          for (std::uint32_t x = a; x < b; ++x) {
            h.labels[x] = 1;
          }
          F.members.push_back(h);
        }
      }
      break;
    }
    case RepertoireSpec::Kind::random_k: {
      F.name = "random";
      if (spec.k == 0) {
        throw Error(ErrorKind::invalid_spec, "random repertoire needs k >= 1");
      }
      if (m < 32 && spec.k > (std::uint64_t{1} << m)) {
        throw Error(ErrorKind::invalid_spec, "fewer than k distinct labelings exist");
      }
      std::mt19937_64 gen(spec.seed);
      std::set<std::string> seen;
      std::uint64_t attempts = 0;
      const std::uint64_t attempt_cap = 64ull * spec.k + 10000;
      while (F.members.size() < spec.k) {
        if (++attempts > attempt_cap) {
          throw Error(ErrorKind::invalid_spec, "could not draw k distinct labelings");
        }
        Hypothesis h;
        h.labels.reserve(m);
        for (std::uint32_t i = 0; i < m; ++i) {
          h.labels.push_back(gen() & 1 ? Sign{1} : Sign{-1});
        }
        if (seen.insert(h.bitstring()).second) {
          F.members.push_back(std::move(h));
        }
      }
      break;
    }
    case RepertoireSpec::Kind::explicit_members: {
      F.name = "explicit";
      for (const std::string& bits : spec.members) {
        if (bits.size() != m) {
          throw Error(ErrorKind::length_mismatch, "repertoire member length differs from m");
        }
        F.members.push_back(Hypothesis::from_bitstring(bits));
      }
      break;
    }
  }
  F.validate();
  return F;
}

ResolvedExperiment resolve_experiment(const ExperimentConfig& cfg) {
  cfg.validate();
  ResolvedExperiment r;
  r.repertoire = generate_repertoire(cfg.repertoire, cfg.m);
  r.supervisor = cfg.supervisor.kind == SupervisorSpec::Kind::explicit_labels
                     ? Hypothesis::from_bitstring(cfg.supervisor.labels)
                     : random_hypothesis(cfg.m, cfg.supervisor.seed);
  r.distribution = cfg.distribution.kind == DistributionSpec::Kind::uniform
                       ? Distribution::uniform(cfg.m)
                       : Distribution{cfg.distribution.probs};
  r.distribution.validate();
  return r;
}

namespace {

TrialRecord run_resolved_trial(const ExperimentConfig& cfg, const ResolvedExperiment& env,
                               std::uint64_t trial_seed, const BoundConstants& constants) {
  TrialRecord rec;
  rec.seed = trial_seed;
  rec.sample = sample_iid(env.distribution, cfg.l, trial_seed);
  rec.labels = restrict(env.supervisor, rec.sample);
  rec.distinct = rec.sample.distinct;

  ErmResult fit = erm(env.repertoire, rec.sample, rec.labels);
  rec.erm_index = fit.index;
  rec.empirical = fit.risk;
  rec.true_risk = true_risk(env.repertoire.members[fit.index], env.supervisor, env.distribution);

  Confidence conf(cfg.delta);
  const double v_bits = vc_entropy(env.repertoire, rec.sample);

  auto record = [&rec](BoundKind kind, const BoundReport& report) {
    std::size_t slot = static_cast<std::size_t>(kind);
    rec.bounds[slot].applicable = true;
    rec.bounds[slot].total = report.total;
    rec.bounds[slot].held = rec.true_risk <= report.total;
    rec.bounds[slot].vacuous = report.vacuous;
  };

  record(BoundKind::vc, vc_bound(rec.empirical, v_bits, cfg.l, conf, constants));

  const std::uint32_t points = static_cast<std::uint32_t>(
      detail::collapse(rec.sample).points.size());
  if (points <= kHistogramCap) {
    MinRiskHistogram h = min_risk_histogram(env.repertoire, rec.sample);
    record(BoundKind::rademacher,
           rademacher_bound(rec.empirical, rademacher_via_distribution(h), cfg.l, conf,
                            constants));
    if (rec.distinct) {
      record(BoundKind::ei_rademacher, ei_rademacher_bound(rec.empirical, h, conf, constants));
    }
  }
  if (rec.distinct) {
    // ei at level zero through the zero-level identity: counts[0] is the
    // dichotomy count, so ei0 = l - V without enumerating the histogram.
    record(BoundKind::ei_vc,
           ei_vc_bound(rec.empirical, cfg.l - v_bits, cfg.l, conf, constants));
  }
  return rec;
}

}  // namespace

TrialRecord run_trial(const ExperimentConfig& cfg, std::uint64_t trial_seed,
                      const BoundConstants& constants) {
  return run_resolved_trial(cfg, resolve_experiment(cfg), trial_seed, constants);
}

ExperimentResult run_experiment(const ExperimentConfig& cfg, const BoundConstants& constants) {
  ResolvedExperiment env = resolve_experiment(cfg);
  ExperimentResult result;
  result.summary.trials = cfg.trials;
  result.summary.delta = cfg.delta;
  result.records.reserve(cfg.trials);
  for (std::uint32_t t = 0; t < cfg.trials; ++t) {
    TrialRecord rec = run_resolved_trial(cfg, env, cfg.seed ^ t, constants);
    for (std::size_t b = 0; b < kBoundOrder.size(); ++b) {
      const BoundOutcome& out = rec.bounds[b];
      if (!out.applicable) {
        continue;
      }
      BoundCoverage& cov = result.summary.per_bound[b];
      ++cov.applicable;
      if (!out.held) {
        ++cov.violations;
      }
      if (out.vacuous) {
        ++cov.vacuous_count;
      }
      cov.slack_sum += out.total - rec.true_risk;
    }
    result.records.push_back(std::move(rec));
  }
  return result;
}

std::vector<PlotPoint> plot_series(const ExperimentConfig& cfg, const BoundConstants& constants) {
  cfg.validate();
  std::vector<std::uint32_t> grid;
  const std::uint32_t steps = std::min<std::uint32_t>(8, cfg.l);
  for (std::uint32_t i = 1; i <= steps; ++i) {
    std::uint32_t lv = std::max<std::uint32_t>(
        1, static_cast<std::uint32_t>(std::llround(static_cast<double>(cfg.l) * i / steps)));
    if (grid.empty() || grid.back() != lv) {
      grid.push_back(lv);
    }
  }

  std::vector<PlotPoint> series;
  series.reserve(grid.size());
  for (std::uint32_t lv : grid) {
    ExperimentConfig sub = cfg;
    sub.l = lv;
    ExperimentResult res = run_experiment(sub, constants);

    PlotPoint pt;
    pt.l = lv;
    double risk_sum = 0;
    std::array<double, 4> total_sum{};
    std::array<std::uint64_t, 4> total_n{};
    for (const TrialRecord& rec : res.records) {
      risk_sum += rec.true_risk;
      for (std::size_t b = 0; b < kBoundOrder.size(); ++b) {
        if (rec.bounds[b].applicable) {
          total_sum[b] += rec.bounds[b].total;
          ++total_n[b];
        }
      }
    }
    pt.mean_true_risk = risk_sum / res.records.size();
    for (std::size_t b = 0; b < kBoundOrder.size(); ++b) {
      if (total_n[b] > 0) {
        pt.mean_total[b] = total_sum[b] / total_n[b];
      }
    }
    series.push_back(pt);
  }
  return series;
}

}  // namespace minrisk
