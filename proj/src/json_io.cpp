#include "minrisk/json_io.hpp"

#include <bit>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace minrisk::io {

namespace {

// %.12g keeps logs byte-stable across runs and readable in spreadsheets.
std::string fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

[[noreturn]] void fail(const std::string& what) {
  throw Error(ErrorKind::parse_error, what);
}

const json& field(const json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end()) {
    fail(std::string("missing field \"") + key + "\"");
  }
  return *it;
}

}  // namespace

json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    fail("cannot open " + path);
  }
  json j = json::parse(in, nullptr, false);
  if (j.is_discarded()) {
    fail("invalid JSON in " + path);
  }
  return j;
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    fail("cannot write " + path);
  }
  out << text;
}

json to_json(const Mechanism& mech) {
  return json{{"outputs", mech.outputs}, {"rows", mech.rows}};
}

Mechanism mechanism_from_json(const json& j) {
  Mechanism mech;
  try {
    field(j, "outputs").get_to(mech.outputs);
    field(j, "rows").get_to(mech.rows);
  } catch (const json::exception& e) {
    fail(std::string("mechanism: ") + e.what());
  }
  mech.validate();
  return mech;
}

json to_json(const Repertoire& F) {
  std::vector<std::string> members;
  members.reserve(F.members.size());
  for (const Hypothesis& h : F.members) {
    members.push_back(h.bitstring());
  }
  return json{{"m", F.m}, {"members", members}, {"name", F.name}};
}

Repertoire repertoire_from_json(const json& j) {
  Repertoire F;
  std::vector<std::string> members;
  try {
    field(j, "m").get_to(F.m);
    field(j, "members").get_to(members);
    if (j.contains("name")) {
      j.at("name").get_to(F.name);
    }
  } catch (const json::exception& e) {
    fail(std::string("repertoire: ") + e.what());
  }
  for (const std::string& bits : members) {
    if (bits.size() != F.m) {
      fail("repertoire member length differs from m");
    }
    F.members.push_back(Hypothesis::from_bitstring(bits));
  }
  F.validate();
  return F;
}

json to_json(const MinRiskHistogram& h) {
  json counts = json::object();
  for (std::uint32_t k = 0; k < h.counts.size(); ++k) {
    if (h.counts[k] > 0) {
      counts[std::to_string(k)] = h.counts[k];
    }
  }
  return json{{"l", h.l}, {"m", h.m}, {"distinct", h.distinct}, {"counts", counts}};
}

MinRiskHistogram histogram_from_json(const json& j) {
  MinRiskHistogram h;
  try {
    field(j, "l").get_to(h.l);
    field(j, "m").get_to(h.m);
    field(j, "distinct").get_to(h.distinct);
    h.counts.assign(h.l + 1, 0);
    std::uint64_t total = 0;
    for (const auto& [key, value] : field(j, "counts").items()) {
      std::uint32_t k = static_cast<std::uint32_t>(std::stoul(key));
      if (k >= h.counts.size()) {
        fail("histogram level exceeds the sample length");
      }
      h.counts[k] = value.get<std::uint64_t>();
      total += h.counts[k];
    }
    if (total == 0 || std::popcount(total) != 1) {
      fail("histogram counts must sum to a power of two");
    }
    h.distinct_points = static_cast<std::uint32_t>(std::countr_zero(total));
  } catch (const json::exception& e) {
    fail(std::string("histogram: ") + e.what());
  } catch (const std::logic_error&) {
    fail("histogram: counts keys must be integers");
  }
  if (h.distinct && h.distinct_points != h.l) {
    fail("distinct histogram must cover 2^l patterns");
  }
  return h;
}

json to_json(const CapacityReport& report) {
  json j{{"m", report.m},
         {"l", report.l},
         {"dichotomies", report.dichotomies},
         {"vc_entropy_bits", report.vc_entropy_bits},
         {"sample_distinct", report.sample_distinct},
         {"provenance", report.provenance}};
  j["ei_zero_bits"] = report.ei_zero_bits ? json(*report.ei_zero_bits) : json();
  j["falsified_bits"] = j["ei_zero_bits"];
  j["mml_length_bits"] = report.mml_length_bits ? json(*report.mml_length_bits) : json();
  if (report.rademacher) {
    j["rademacher"] = report.rademacher->str();
    j["rademacher_value"] = report.rademacher->to_double();
  } else {
    j["rademacher"] = json();
    j["rademacher_value"] = json();
  }
  json levels = json::array();
  for (const EiLevel& level : report.levels) {
    levels.push_back(json{{"errors", level.errors}, {"ei_bits", level.bits}});
  }
  j["ei_levels"] = levels;
  return j;
}

json to_json(const BoundReport& report) {
  json j{{"kind", bound_kind_name(report.kind)},
         {"empirical_term", report.empirical_term.str()},
         {"empirical_value", report.empirical_term.to_double()},
         {"capacity_term", report.capacity_term},
         {"confidence_term", report.confidence_term},
         {"total", report.total},
         {"vacuous", report.vacuous}};
  j["capacity_exact"] = report.capacity_exact ? json(report.capacity_exact->str()) : json();
  return j;
}

json to_json(const ExperimentConfig& cfg) {
  json dist;
  switch (cfg.distribution.kind) {
    case DistributionSpec::Kind::uniform:
      dist = json{{"kind", "uniform"}};
      break;
    case DistributionSpec::Kind::explicit_values:
      dist = json{{"kind", "explicit"}, {"probs", cfg.distribution.probs}};
      break;
  }
  json sup;
  switch (cfg.supervisor.kind) {
    case SupervisorSpec::Kind::explicit_labels:
      sup = json{{"kind", "explicit"}, {"labels", cfg.supervisor.labels}};
      break;
    case SupervisorSpec::Kind::random:
      sup = json{{"kind", "random"}, {"seed", cfg.supervisor.seed}};
      break;
  }
  json rep;
  switch (cfg.repertoire.kind) {
    case RepertoireSpec::Kind::thresholds:
      rep = json{{"kind", "thresholds"}};
      break;
    case RepertoireSpec::Kind::intervals:
      rep = json{{"kind", "intervals"}};
      break;
    case RepertoireSpec::Kind::random_k:
      rep = json{{"kind", "random"}, {"k", cfg.repertoire.k}, {"seed", cfg.repertoire.seed}};
      break;
    case RepertoireSpec::Kind::explicit_members:
      rep = json{{"kind", "explicit"}, {"members", cfg.repertoire.members}};
      break;
  }
  return json{{"m", cfg.m},       {"l", cfg.l},
              {"trials", cfg.trials}, {"delta", cfg.delta},
              {"seed", cfg.seed},     {"distribution", dist},
              {"supervisor", sup},    {"repertoire", rep}};
}

ExperimentConfig config_from_json(const json& j) {
  ExperimentConfig cfg;
  try {
    field(j, "m").get_to(cfg.m);
    field(j, "l").get_to(cfg.l);
    field(j, "trials").get_to(cfg.trials);
    field(j, "delta").get_to(cfg.delta);
    field(j, "seed").get_to(cfg.seed);

    const json& dist = field(j, "distribution");
    std::string kind = field(dist, "kind").get<std::string>();
    if (kind == "uniform") {
      cfg.distribution.kind = DistributionSpec::Kind::uniform;
    } else if (kind == "explicit") {
      cfg.distribution.kind = DistributionSpec::Kind::explicit_values;
      field(dist, "probs").get_to(cfg.distribution.probs);
    } else {
      fail("unknown distribution kind \"" + kind + "\"");
    }

    const json& sup = field(j, "supervisor");
    kind = field(sup, "kind").get<std::string>();
    if (kind == "explicit") {
      cfg.supervisor.kind = SupervisorSpec::Kind::explicit_labels;
      field(sup, "labels").get_to(cfg.supervisor.labels);
    } else if (kind == "random") {
      cfg.supervisor.kind = SupervisorSpec::Kind::random;
      field(sup, "seed").get_to(cfg.supervisor.seed);
    } else {
      fail("unknown supervisor kind \"" + kind + "\"");
    }

    const json& rep = field(j, "repertoire");
    kind = field(rep, "kind").get<std::string>();
    if (kind == "thresholds") {
      cfg.repertoire.kind = RepertoireSpec::Kind::thresholds;
    } else if (kind == "intervals") {
      cfg.repertoire.kind = RepertoireSpec::Kind::intervals;
    } else if (kind == "random") {
      cfg.repertoire.kind = RepertoireSpec::Kind::random_k;
      field(rep, "k").get_to(cfg.repertoire.k);
      field(rep, "seed").get_to(cfg.repertoire.seed);
    } else if (kind == "explicit") {
      cfg.repertoire.kind = RepertoireSpec::Kind::explicit_members;
      field(rep, "members").get_to(cfg.repertoire.members);
    } else {
      fail("unknown repertoire kind \"" + kind + "\"");
    }
  } catch (const json::exception& e) {
    fail(std::string("config: ") + e.what());
  }
  cfg.validate();
  return cfg;
}

json to_json(const CoverageSummary& summary) {
  json bounds = json::object();
  for (std::size_t b = 0; b < kBoundOrder.size(); ++b) {
    const BoundCoverage& cov = summary.per_bound[b];
    bounds[bound_kind_name(kBoundOrder[b])] =
        json{{"applicable", cov.applicable},
             {"violations", cov.violations},
             {"coverage", cov.coverage()},
             {"mean_slack", cov.mean_slack()},
             {"vacuous_fraction", cov.vacuous_fraction()}};
  }
  return json{{"trials", summary.trials}, {"delta", summary.delta}, {"bounds", bounds}};
}

std::string trial_log_csv(const std::vector<TrialRecord>& records) {
  std::ostringstream out;
  out << "seed,emp_k,emp_l,true_risk";
  for (BoundKind kind : kBoundOrder) {
    out << ",total_" << bound_kind_name(kind);
  }
  for (BoundKind kind : kBoundOrder) {
    out << ",held_" << bound_kind_name(kind);
  }
  out << ",distinct\n";
  for (const TrialRecord& rec : records) {
    out << rec.seed << ',' << rec.empirical.errors << ',' << rec.empirical.sample_size << ','
        << fmt(rec.true_risk);
    for (const BoundOutcome& b : rec.bounds) {
      out << ',' << (b.applicable ? fmt(b.total) : "na");
    }
    for (const BoundOutcome& b : rec.bounds) {
      out << ',' << (b.applicable ? (b.held ? "1" : "0") : "na");
    }
    out << ',' << (rec.distinct ? 1 : 0) << '\n';
  }
  return out.str();
}

std::string plot_csv(const std::vector<PlotPoint>& series) {
  std::ostringstream out;
  out << "l,mean_true_risk";
  for (BoundKind kind : kBoundOrder) {
    out << ",mean_total_" << bound_kind_name(kind);
  }
  out << '\n';
  for (const PlotPoint& pt : series) {
    out << pt.l << ',' << fmt(pt.mean_true_risk);
    for (const auto& total : pt.mean_total) {
      out << ',' << (total ? fmt(*total) : "na");
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace minrisk::io
