#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "minrisk/bounds.hpp"
#include "minrisk/capacity.hpp"
#include "minrisk/core.hpp"
#include "minrisk/experiment.hpp"
#include "minrisk/json_io.hpp"
#include "minrisk/learning.hpp"
#include "minrisk/mechanism.hpp"

using namespace minrisk;

namespace {

std::string fmt(double x, const char* spec = "%.6g") {
  char buf[64];
  std::snprintf(buf, sizeof buf, spec, x);
  return buf;
}

Sample parse_sample(const std::string& text) {
  std::vector<std::uint32_t> indices;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      long value = std::stol(item, &used);
      if (used != item.size() || value < 0) {
        throw std::invalid_argument(item);
      }
      indices.push_back(static_cast<std::uint32_t>(value));
    } catch (const std::logic_error&) {
      throw Error(ErrorKind::parse_error, "sample must be comma-separated indices");
    }
  }
  return Sample::of(std::move(indices));
}

Rational parse_rational(const std::string& text) {
  try {
    std::size_t slash = text.find('/');
    if (slash == std::string::npos) {
      return Rational(std::stoll(text));
    }
    return Rational(std::stoll(text.substr(0, slash)), std::stoll(text.substr(slash + 1)));
  } catch (const std::logic_error&) {
    throw Error(ErrorKind::parse_error, "rationals are written p or p/q");
  }
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
  } else {
    io::write_text_file(out_path, text);
  }
}

int run_ei(const std::string& mech_path, const std::string& output, const std::string& format,
           const std::string& out_path) {
  Mechanism mech = io::mechanism_from_json(io::load_json_file(mech_path));
  double marginal = output_marginal(mech, output);
  ActualRepertoire rep = actual_repertoire(mech, output);
  double bits = effective_information(mech, output);

  std::ostringstream text;
  if (format == "json") {
    io::json j{{"output", output},
               {"ei_bits", bits},
               {"marginal", marginal},
               {"posterior", rep.posterior.probs}};
    text << j.dump(2) << '\n';
  } else if (format == "csv") {
    text << "output,ei_bits,marginal\n"
         << output << ',' << fmt(bits, "%.12g") << ',' << fmt(marginal, "%.12g") << '\n';
  } else {
    text << "ei: " << fmt(bits, "%.4f") << " bits\n";
    text << "marginal: " << fmt(marginal) << '\n';
    text << "posterior:";
    for (double q : rep.posterior.probs) {
      text << ' ' << fmt(q);
    }
    text << '\n';
  }
  emit(text.str(), out_path);
  return 0;
}

// Full-enumeration cross-checks behind `capacity --oracle`. Empty string
// means every identity held.
std::string oracle_mismatch(const Repertoire& F, const Sample& d) {
  InputSpace space{F.m};
  MinRiskHistogram h = min_risk_histogram(F, d);
  MinRiskHistogram direct = min_risk_histogram_direct(F, d);
  if (h.counts != direct.counts) {
    return "histogram sweep routes disagree";
  }

  std::vector<std::uint64_t> sigma_counts(d.length() + 1, 0);
  for (const Hypothesis& sigma : enumerate_hypotheses(space)) {
    ++sigma_counts[min_risk(F, d, restrict(sigma, d)).errors];
  }
  const std::uint32_t shift = F.m - h.distinct_points;
  for (std::uint32_t k = 0; k < h.counts.size(); ++k) {
    if (sigma_counts[k] != h.counts[k] << shift) {
      return "histogram disagrees with full enumeration at level " + std::to_string(k);
    }
  }

  if (!(rademacher_direct(F, space, d) == rademacher_via_distribution(h))) {
    return "rademacher routes disagree";
  }

  if (d.distinct) {
    if (h.counts[0] != dichotomy_count(F, d)) {
      return "zero level differs from the dichotomy count";
    }
    double via_preimage = std::log2(static_cast<double>(sigma_preimage_count(h, 0)));
    if (std::abs(mml_length(F, d, space) - via_preimage) > 1e-12) {
      return "code length differs from the preimage count";
    }
  }
  return "";
}

int run_capacity(const std::string& rep_path, const std::string& sample_text, bool oracle,
                 const std::string& format, const std::string& out_path) {
  Repertoire F = io::repertoire_from_json(io::load_json_file(rep_path));
  Sample d = parse_sample(sample_text);
  CapacityReport report = capacity_report(F, InputSpace{F.m}, d);
  if (!report.sample_distinct) {
    std::cerr << "note: sample has duplicate points; ei and code-length fields need"
                 " all-distinct samples and are omitted\n";
  }

  std::string oracle_line;
  int exit_code = 0;
  if (oracle) {
    if (F.m > 12) {
      throw Error(ErrorKind::cap_exceeded, "--oracle enumerates all labelings; needs m <= 12");
    }
    std::string mismatch = oracle_mismatch(F, d);
    if (mismatch.empty()) {
      oracle_line = "oracle: all identities hold";
    } else {
      oracle_line = "oracle: " + mismatch;
      exit_code = 1;
    }
  }

  std::ostringstream text;
  if (format == "json") {
    io::json j = io::to_json(report);
    if (oracle) {
      j["oracle"] = oracle_line;
    }
    text << j.dump(2) << '\n';
  } else if (format == "csv") {
    text << "m,l,dichotomies,vc_entropy_bits,ei_zero_bits,rademacher,mml_length_bits\n";
    text << report.m << ',' << report.l << ',' << report.dichotomies << ','
         << fmt(report.vc_entropy_bits, "%.12g") << ','
         << (report.ei_zero_bits ? fmt(*report.ei_zero_bits, "%.12g") : "na") << ','
         << (report.rademacher ? report.rademacher->str() : "na") << ','
         << (report.mml_length_bits ? fmt(*report.mml_length_bits, "%.12g") : "na") << '\n';
    if (oracle) {
      text << oracle_line << '\n';
    }
  } else {
    text << "m:               " << report.m << '\n';
    text << "l:               " << report.l << '\n';
    text << "dichotomies:     " << report.dichotomies << '\n';
    text << "vc entropy:      " << fmt(report.vc_entropy_bits, "%.4f") << " bits\n";
    text << "ei at level 0:   "
         << (report.ei_zero_bits ? fmt(*report.ei_zero_bits, "%.4f") + " bits" : "n/a") << '\n';
    text << "rademacher:      " << (report.rademacher ? report.rademacher->str() : "n/a") << '\n';
    text << "code length:     "
         << (report.mml_length_bits ? fmt(*report.mml_length_bits, "%.4f") + " bits" : "n/a")
         << '\n';
    for (const EiLevel& level : report.levels) {
      if (level.errors > 0) {
        text << "ei at level " << level.errors << ":   " << fmt(level.bits, "%.4f") << " bits\n";
      }
    }
    if (oracle) {
      text << oracle_line << '\n';
    }
  }
  emit(text.str(), out_path);
  return exit_code;
}

int run_bounds(std::uint32_t emp_errors, std::uint32_t l, double delta, bool has_v, double v_bits,
               bool has_r, const std::string& r_text, bool has_ei0, double ei0,
               const std::string& hist_path, const std::string& format,
               const std::string& out_path) {
  RiskValue emp{emp_errors, l};
  if (emp_errors > l) {
    throw Error(ErrorKind::invalid_spec, "empirical errors cannot exceed l");
  }
  Confidence conf(delta);
  std::vector<BoundReport> reports;
  if (has_v) {
    reports.push_back(vc_bound(emp, v_bits, l, conf));
  }
  if (has_r) {
    reports.push_back(rademacher_bound(emp, parse_rational(r_text), l, conf));
  }
  if (has_ei0) {
    reports.push_back(ei_vc_bound(emp, ei0, l, conf));
  }
  if (!hist_path.empty()) {
    MinRiskHistogram h = io::histogram_from_json(io::load_json_file(hist_path));
    if (h.l != l) {
      throw Error(ErrorKind::length_mismatch, "histogram sample length differs from l");
    }
    reports.push_back(ei_rademacher_bound(emp, h, conf));
  }
  if (reports.empty()) {
    throw Error(ErrorKind::invalid_spec,
                "provide a capacity input: --v-bits, --rademacher, --ei0, or --histogram");
  }

  std::ostringstream text;
  if (format == "json") {
    io::json j = io::json::array();
    for (const BoundReport& report : reports) {
      j.push_back(io::to_json(report));
    }
    text << j.dump(2) << '\n';
  } else if (format == "csv") {
    text << "kind,empirical,capacity_term,confidence_term,total,vacuous\n";
    for (const BoundReport& report : reports) {
      text << bound_kind_name(report.kind) << ',' << report.empirical_term.str() << ','
           << fmt(report.capacity_term, "%.12g") << ',' << fmt(report.confidence_term, "%.12g")
           << ',' << fmt(report.total, "%.12g") << ',' << (report.vacuous ? 1 : 0) << '\n';
    }
  } else {
    for (const BoundReport& report : reports) {
      text << bound_kind_name(report.kind) << ": " << report.empirical_term.str() << " + "
           << fmt(report.capacity_term, "%.4f") << " + " << fmt(report.confidence_term, "%.4f")
           << " = " << fmt(report.total, "%.4f") << (report.vacuous ? " (vacuous)" : "") << '\n';
    }
  }
  emit(text.str(), out_path);
  return 0;
}

int run_gen(const std::string& kind, std::uint32_t m, std::uint32_t k, std::uint64_t seed,
            const std::string& out_path) {
  RepertoireSpec spec;
  if (kind == "thresholds") {
    spec.kind = RepertoireSpec::Kind::thresholds;
  } else if (kind == "intervals") {
    spec.kind = RepertoireSpec::Kind::intervals;
  } else {
    spec.kind = RepertoireSpec::Kind::random_k;
    spec.k = k;
    spec.seed = seed;
  }
  Repertoire F = generate_repertoire(spec, m);
  emit(io::to_json(F).dump(2) + "\n", out_path);
  return 0;
}

int run_validate(const std::string& config_path, const std::string& prefix, bool has_seed,
                 std::uint64_t seed, const std::string& plot_path, double scale_c1,
                 const std::string& format) {
  ExperimentConfig cfg = io::config_from_json(io::load_json_file(config_path));
  if (has_seed) {
    cfg.seed = seed;
  }
  BoundConstants constants = BoundConstants::standard();
  constants.c1 *= scale_c1;

  ExperimentResult result = run_experiment(cfg, constants);
  io::write_text_file(prefix + ".trials.csv", io::trial_log_csv(result.records));
  io::write_text_file(prefix + ".summary.json", io::to_json(result.summary).dump(2) + "\n");
  if (!plot_path.empty()) {
    io::write_text_file(plot_path, io::plot_csv(plot_series(cfg, constants)));
  }

  int exit_code = 0;
  const double required = 1.0 - cfg.delta;
  std::ostringstream text;
  if (format == "json") {
    text << io::to_json(result.summary).dump(2) << '\n';
  } else {
    text << "trials: " << cfg.trials << "  delta: " << fmt(cfg.delta) << '\n';
  }
  for (std::size_t b = 0; b < kBoundOrder.size(); ++b) {
    const BoundCoverage& cov = result.summary.per_bound[b];
    if (format != "json") {
      text << bound_kind_name(kBoundOrder[b]) << ": coverage " << fmt(cov.coverage(), "%.4f")
           << " (" << cov.violations << " violations / " << cov.applicable << " applicable, "
           << fmt(cov.vacuous_fraction(), "%.3f") << " vacuous)\n";
    }
    if (cov.coverage() < required) {
      std::cerr << "coverage shortfall: " << bound_kind_name(kBoundOrder[b]) << " at "
                << fmt(cov.coverage(), "%.4f") << " < " << fmt(required, "%.4f") << '\n';
      exit_code = 1;
    }
  }
  std::cout << text.str();
  return exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"capacity measures and generalization bounds over finite hypothesis spaces"};
  app.require_subcommand(1);

  std::string format = "table";

  auto* ei = app.add_subcommand("ei", "effective information of one mechanism output");
  std::string ei_mech, ei_output, ei_out;
  ei->add_option("mechanism", ei_mech, "mechanism JSON file")->required();
  ei->add_option("output", ei_output, "output value to condition on")->required();
  ei->add_option("--format", format)->check(CLI::IsMember({"json", "table", "csv"}));
  ei->add_option("--out", ei_out, "write the report here instead of stdout");

  auto* capacity = app.add_subcommand("capacity", "capacity report for a repertoire on a sample");
  std::string cap_rep, cap_sample, cap_out;
  bool cap_oracle = false;
  capacity->add_option("repertoire", cap_rep, "repertoire JSON file")->required();
  capacity->add_option("--sample", cap_sample, "comma-separated input indices")->required();
  capacity->add_flag("--oracle", cap_oracle, "cross-check against full enumeration (m <= 12)");
  capacity->add_option("--format", format)->check(CLI::IsMember({"json", "table", "csv"}));
  capacity->add_option("--out", cap_out, "write the report here instead of stdout");

  auto* bounds = app.add_subcommand("bounds", "evaluate generalization bound right-hand sides");
  std::uint32_t b_emp = 0, b_l = 1;
  double b_delta = 0.05, b_v = 0, b_ei0 = 0;
  std::string b_r, b_hist, b_out;
  bounds->add_option("--emp-errors", b_emp, "empirical errors k (risk k/l)");
  bounds->add_option("--l", b_l, "sample size")->required();
  bounds->add_option("--delta", b_delta, "failure probability");
  bounds->add_option("--v-bits", b_v, "vc entropy in bits");
  bounds->add_option("--rademacher", b_r, "rademacher complexity as p/q");
  bounds->add_option("--ei0", b_ei0, "effective information at level zero, bits");
  bounds->add_option("--histogram", b_hist, "min-risk histogram JSON file");
  bounds->add_option("--format", format)->check(CLI::IsMember({"json", "table", "csv"}));
  bounds->add_option("--out", b_out, "write the reports here instead of stdout");

  auto* gen = app.add_subcommand("gen", "generate a repertoire");
  std::string g_kind = "thresholds", g_out;
  std::uint32_t g_m = 0, g_k = 1;
  std::uint64_t g_seed = 0;
  gen->add_option("--kind", g_kind)->check(CLI::IsMember({"thresholds", "intervals", "random"}));
  gen->add_option("--m", g_m, "input space size")->required();
  gen->add_option("--k", g_k, "member count for --kind random");
  gen->add_option("--seed", g_seed, "seed for --kind random");
  gen->add_option("--out", g_out, "write the repertoire here instead of stdout");

  auto* validate = app.add_subcommand("validate", "Monte Carlo bound-coverage experiment");
  std::string v_config, v_prefix = "experiment", v_plot;
  std::uint64_t v_seed = 0;
  double v_scale_c1 = 1.0;
  validate->add_option("config", v_config, "experiment config JSON file")->required();
  validate->add_option("--out", v_prefix, "output prefix for .trials.csv and .summary.json");
  validate->add_option("--seed", v_seed, "override the config seed");
  validate->add_option("--emit-plot-data", v_plot, "write (l, mean bound, mean risk) CSV here");
  validate->add_option("--format", format)->check(CLI::IsMember({"json", "table"}));
  validate->add_option("--test-scale-c1", v_scale_c1)->group("");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (ei->parsed()) {
      return run_ei(ei_mech, ei_output, format, ei_out);
    }
    if (capacity->parsed()) {
      return run_capacity(cap_rep, cap_sample, cap_oracle, format, cap_out);
    }
    if (bounds->parsed()) {
      return run_bounds(b_emp, b_l, b_delta, bounds->count("--v-bits") > 0, b_v,
                        bounds->count("--rademacher") > 0, b_r, bounds->count("--ei0") > 0, b_ei0,
                        b_hist, format, b_out);
    }
    if (gen->parsed()) {
      return run_gen(g_kind, g_m, g_k, g_seed, g_out);
    }
    if (validate->parsed()) {
      return run_validate(v_config, v_prefix, validate->count("--seed") > 0, v_seed, v_plot,
                          v_scale_c1, format);
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 2;
}
