// Command-line front end: treatment-effect estimation, IV estimation, plain
// boosting fits, design expansion and the simulation harness.
#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "l2boost/boosting.hpp"
#include "l2boost/datakit.hpp"
#include "l2boost/dselect.hpp"
#include "l2boost/errors.hpp"
#include "l2boost/ivboost.hpp"
#include "l2boost/simlab.hpp"

using json = nlohmann::ordered_json;
using namespace l2boost;

namespace {

struct BoostFlags {
  std::string variant = "post";
  double stop_threshold = 1e-3;
  double gate_scale = 2.0;
  Index gate_patience = 10;
  Index max_iter = 0;

  void attach(CLI::App* cmd) {
    cmd->add_option("--variant", variant, "Boosting variant: post, orthogonal or classic")
        ->check(CLI::IsMember({"post", "orthogonal", "classic"}));
    cmd->add_option("--stop-threshold", stop_threshold,
                    "Relative fit-improvement threshold (0 disables early stopping)");
    cmd->add_option("--gate-scale", gate_scale, "Scale of the residual noise gate");
    cmd->add_option("--gate-patience", gate_patience,
                    "Tentative steps allowed after the gate trips");
    cmd->add_option("--max-iter", max_iter, "Iteration cap (0 = min(n, p, 200))");
  }

  BoostConfig config() const {
    BoostConfig cfg;
    cfg.variant = variant == "orthogonal" ? BoostVariant::orthogonal
                                          : BoostVariant::classic;
    cfg.stop_threshold = stop_threshold;
    cfg.gate_scale = gate_scale;
    cfg.gate_patience = gate_patience;
    cfg.max_iter = max_iter;
    return cfg;
  }

  bool refit() const { return variant != "classic"; }
};

struct DataFlags {
  std::string path;
  std::string outcome;
  std::string delimiter;
  std::vector<std::string> controls;

  void attach(CLI::App* cmd) {
    cmd->add_option("--data", path, "Input file (delimited text with header)")
        ->required();
    cmd->add_option("--outcome", outcome, "Outcome column")->required();
    cmd->add_option("--controls", controls,
                    "Control columns (default: every unused column)")
        ->delimiter(',');
    cmd->add_option("--delimiter", delimiter,
                    "Field delimiter (default: auto-detect , ; tab)");
  }

  char delim() const {
    if (delimiter.empty()) return '\0';
    if (delimiter == "tab" || delimiter == "\\t") return '\t';
    return delimiter[0];
  }
};

std::vector<std::string> header_columns(const std::string& path, char delim) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open file '" + path + "'");
  std::string line;
  if (!std::getline(in, line)) throw DataError("file '" + path + "' is empty");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (delim == '\0') {
    const std::string cands = ",;\t";
    std::size_t best = 0;
    char chosen = ',';
    for (char c : cands) {
      const auto cnt = static_cast<std::size_t>(std::count(line.begin(), line.end(), c));
      if (cnt > best) {
        best = cnt;
        chosen = c;
      }
    }
    delim = chosen;
  }
  std::vector<std::string> names;
  std::string cell;
  std::stringstream ss(line);
  while (std::getline(ss, cell, delim)) {
    while (!cell.empty() && (cell.back() == ' ' || cell.back() == '\r')) cell.pop_back();
    while (!cell.empty() && cell.front() == ' ') cell.erase(cell.begin());
    names.push_back(cell);
  }
  return names;
}

// Controls default to every column not claimed by another role.
std::vector<std::string> default_controls(const std::vector<std::string>& header,
                                          const std::vector<std::string>& used) {
  std::vector<std::string> out;
  for (const std::string& name : header)
    if (std::find(used.begin(), used.end(), name) == used.end())
      out.push_back(name);
  return out;
}

void write_report(const json& report, const std::string& path) {
  if (path.empty()) return;
  std::ofstream out(path);
  if (!out) throw DataError("cannot write report to '" + path + "'");
  out << report.dump(2) << "\n";
}

json selection_to_json(const std::vector<int>& sel,
                       const std::vector<std::string>& names) {
  json arr = json::array();
  for (int j : sel)
    arr.push_back(names.empty() ? "x" + std::to_string(j)
                                : names[static_cast<std::size_t>(j)]);
  return arr;
}

ExpandedDesign build_design(const LoadedData& data, bool interactions,
                            double corr_cutoff, Index min_ones) {
  ExpansionConfig cfg;
  cfg.include_interactions = interactions;
  cfg.corr_cutoff = corr_cutoff;
  cfg.min_ones = min_ones;
  return expand_design(data.controls, data.control_names, cfg);
}

int cmd_treat(const DataFlags& data_flags, const BoostFlags& boost_flags,
              const std::string& treatment, const std::vector<std::string>& amend,
              bool interactions, double corr_cutoff, Index min_ones,
              double ci_level, bool naive, const std::string& out_path) {
  ColumnRoleMap roles;
  roles.outcome = data_flags.outcome;
  roles.treatment = treatment;
  roles.controls = data_flags.controls;
  if (roles.controls.empty())
    roles.controls = default_controls(
        header_columns(data_flags.path, data_flags.delim()),
        {data_flags.outcome, treatment});
  const LoadedData data = load_csv(data_flags.path, roles, data_flags.delim());
  const ExpandedDesign expanded =
      build_design(data, interactions, corr_cutoff, min_ones);

  DSConfig cfg;
  cfg.boost = boost_flags.config();
  cfg.refit_selection = boost_flags.refit();
  cfg.ci_level = ci_level;
  for (const std::string& name : amend) {
    const auto& names = expanded.design.names();
    const auto it = std::find(names.begin(), names.end(), name);
    if (it == names.end())
      throw DataError("amend column '" + name + "' is not in the expanded design");
    cfg.amend.push_back(static_cast<int>(it - names.begin()));
  }

  const DoubleSelectionResult r =
      naive ? naive_select_estimate(data.y, data.d, expanded.design, cfg)
            : double_select(data.y, data.d, expanded.design, cfg);

  std::printf("%-22s %s\n", "method", naive ? "naive selection" : "double selection");
  std::printf("%-22s %lld\n", "observations", static_cast<long long>(data.y.size()));
  std::printf("%-22s %lld (dropped %lld rows)\n", "design columns",
              static_cast<long long>(expanded.design.cols()),
              static_cast<long long>(data.rows_dropped));
  std::printf("%-22s %.6f\n", "alpha", r.alpha_hat);
  std::printf("%-22s %.6f\n", "se", r.se);
  std::printf("%-22s [%.6f, %.6f]\n", "ci", r.ci_lower, r.ci_upper);
  std::printf("%-22s %.6f\n", "p_value", r.p_value);
  std::printf("%-22s %lld\n", "union_size", static_cast<long long>(r.union_size));
  const auto show = [&](const char* label, const std::vector<int>& sel) {
    std::printf("%-22s", label);
    for (int j : sel)
      std::printf(" %s", expanded.design.names()[static_cast<std::size_t>(j)].c_str());
    std::printf("\n");
  };
  show("selected_treatment", r.set_d);
  show("selected_outcome", r.set_y);

  json report;
  report["command"] = naive ? "naive" : "treat";
  report["n"] = data.y.size();
  report["design_columns"] = expanded.design.cols();
  report["rows_dropped"] = data.rows_dropped;
  report["alpha_hat"] = r.alpha_hat;
  report["se"] = r.se;
  report["ci_lower"] = r.ci_lower;
  report["ci_upper"] = r.ci_upper;
  report["p_value"] = r.p_value;
  report["union_size"] = r.union_size;
  report["selected_treatment"] = selection_to_json(r.set_d, expanded.design.names());
  report["selected_outcome"] = selection_to_json(r.set_y, expanded.design.names());
  write_report(report, out_path);
  return 0;
}

int cmd_iv(const DataFlags& data_flags, const BoostFlags& boost_flags,
           const std::string& endogenous, const std::vector<std::string>& instruments,
           double ci_level, const std::string& out_path) {
  ColumnRoleMap roles;
  roles.outcome = data_flags.outcome;
  roles.endogenous = endogenous;
  roles.instruments = instruments;
  roles.controls = data_flags.controls;  // exogenous, always included
  if (roles.instruments.empty()) {
    std::vector<std::string> used = {data_flags.outcome, endogenous};
    used.insert(used.end(), roles.controls.begin(), roles.controls.end());
    roles.instruments =
        default_controls(header_columns(data_flags.path, data_flags.delim()), used);
  }
  const LoadedData data = load_csv(data_flags.path, roles, data_flags.delim());

  IVConfig cfg;
  cfg.boost = boost_flags.config();
  cfg.refit_first_stage = boost_flags.refit();
  cfg.ci_level = ci_level;
  if (data.controls.cols() > 0) cfg.exog_controls = data.controls;

  const DesignMatrix Z(data.instruments, data.instrument_names);
  const IVResult r = fit_iv(data.y, data.d, Z, cfg);

  std::printf("%-22s %lld\n", "observations", static_cast<long long>(data.y.size()));
  std::printf("%-22s %.6f\n", "alpha", r.alpha_hat);
  std::printf("%-22s %.6f\n", "se", r.se);
  std::printf("%-22s [%.6f, %.6f]\n", "ci", r.ci_lower, r.ci_upper);
  std::printf("%-22s %.6f\n", "p_value", r.p_value);
  std::printf("%-22s", "first_stage");
  for (int j : r.first_stage_support)
    std::printf(" %s", Z.names()[static_cast<std::size_t>(j)].c_str());
  std::printf("\n");

  json report;
  report["command"] = "iv";
  report["n"] = data.y.size();
  report["rows_dropped"] = data.rows_dropped;
  report["alpha_hat"] = r.alpha_hat;
  report["se"] = r.se;
  report["ci_lower"] = r.ci_lower;
  report["ci_upper"] = r.ci_upper;
  report["p_value"] = r.p_value;
  report["q_hat"] = r.q_hat;
  report["omega_hat"] = r.omega_hat;
  report["first_stage"] = selection_to_json(r.first_stage_support, Z.names());
  write_report(report, out_path);
  return 0;
}

int cmd_boost(const DataFlags& data_flags, const BoostFlags& boost_flags,
              const std::string& out_path) {
  ColumnRoleMap roles;
  roles.outcome = data_flags.outcome;
  roles.controls = data_flags.controls;
  if (roles.controls.empty())
    roles.controls = default_controls(
        header_columns(data_flags.path, data_flags.delim()), {data_flags.outcome});
  const LoadedData data = load_csv(data_flags.path, roles, data_flags.delim());

  const DesignMatrix X(data.controls, data.control_names);
  BoostConfig cfg = boost_flags.config();
  const BoostPath path = fit_boost(X, data.y, cfg);
  const Vector beta_std =
      boost_flags.refit() ? refit_post_boost(X, data.y, path.support) : path.beta;
  const auto [coef, intercept] = destandardize(beta_std, X, path.y_mean);

  std::printf("%-5s %-16s %12s %14s\n", "step", "column", "update", "rss");
  std::printf("%-5s %-16s %12s %14.6f\n", "0", "-", "-", path.rss[0]);
  for (std::size_t m = 0; m < path.selected.size(); ++m)
    std::printf("%-5zu %-16s %12.6f %14.6f\n", m + 1,
                X.names()[static_cast<std::size_t>(path.selected[m])].c_str(),
                path.steps[m], path.rss[m + 1]);
  std::printf("stopped: %s after %lld iterations\n",
              path.stopped_reason == StopReason::threshold ? "threshold" : "max_iter",
              static_cast<long long>(path.iterations()));
  std::printf("\n%-16s %14s\n", "column", "coefficient");
  std::printf("%-16s %14.6f\n", "(intercept)", intercept);
  for (int j : path.support)
    std::printf("%-16s %14.6f\n", X.names()[static_cast<std::size_t>(j)].c_str(),
                coef(j));

  json report;
  report["command"] = "boost";
  report["n"] = data.y.size();
  report["iterations"] = path.iterations();
  report["stopped"] =
      path.stopped_reason == StopReason::threshold ? "threshold" : "max_iter";
  report["selected"] = selection_to_json(path.selected, X.names());
  report["rss"] = path.rss;
  report["intercept"] = intercept;
  json coefs = json::object();
  for (int j : path.support)
    coefs[X.names()[static_cast<std::size_t>(j)]] = coef(j);
  report["coefficients"] = coefs;
  write_report(report, out_path);
  return 0;
}

int cmd_expand(const DataFlags& data_flags, bool no_interactions,
               double corr_cutoff, Index min_ones, const std::string& out_path) {
  ColumnRoleMap roles;
  roles.outcome = data_flags.outcome;
  roles.controls = data_flags.controls;
  if (roles.controls.empty())
    roles.controls = default_controls(
        header_columns(data_flags.path, data_flags.delim()), {data_flags.outcome});
  const LoadedData data = load_csv(data_flags.path, roles, data_flags.delim());
  const ExpandedDesign expanded =
      build_design(data, !no_interactions, corr_cutoff, min_ones);

  std::printf("kept %lld columns, dropped %zu\n",
              static_cast<long long>(expanded.design.cols()),
              expanded.dropped.size());
  for (const std::string& name : expanded.design.names())
    std::printf("keep  %s\n", name.c_str());
  for (const DropRecord& rec : expanded.dropped)
    std::printf("drop  %-20s %s (%s)\n", rec.name.c_str(),
                drop_reason_label(rec.reason).c_str(), rec.detail.c_str());

  json report;
  report["command"] = "expand";
  report["kept"] = expanded.design.names();
  json dropped = json::array();
  for (const DropRecord& rec : expanded.dropped)
    dropped.push_back({{"name", rec.name},
                       {"reason", drop_reason_label(rec.reason)},
                       {"detail", rec.detail}});
  report["dropped"] = dropped;
  write_report(report, out_path);
  return 0;
}

json report_to_json(const MonteCarloReport& report) {
  json j;
  j["table"] = table_name(report.spec);
  std::visit(
      [&](const auto& s) {
        using T = std::decay_t<decltype(s)>;
        j["n"] = s.n;
        if constexpr (std::is_same_v<T, ControlsSparseSpec>) {
          j["p"] = s.p;
          j["s"] = s.s;
          j["alpha0"] = s.alpha0;
        } else if constexpr (std::is_same_v<T, ControlsApproxSpec>) {
          j["p"] = s.p;
          j["alpha0"] = s.alpha0;
        } else if constexpr (std::is_same_v<T, IvSparseSpec>) {
          j["p"] = s.p;
          j["s"] = s.s;
          j["mu"] = s.mu;
        } else {
          j["alpha"] = s.alpha;
          j["beta"] = s.beta;
          j["gamma"] = s.gamma;
          j["rho_dx"] = s.rho_dx;
        }
      },
      report.spec);
  j["estimator"] = report.estimator;
  j["reps"] = report.reps;
  j["truth"] = report.truth;
  j["mean_bias"] = report.mean_bias;
  j["median_bias"] = report.median_bias;
  j["rejection_rate"] = report.rejection_rate;
  j["coverage"] = report.coverage;
  j["failures"] = report.failures;
  j["seed"] = report.master_seed;
  return j;
}

void append_grid_csv(const MonteCarloReport& report, const std::string& path) {
  if (path.empty()) return;
  const bool fresh = !std::ifstream(path).good();
  std::ofstream out(path, std::ios::app);
  if (!out) throw DataError("cannot write grid to '" + path + "'");
  if (fresh) out << "n,p,s,estimator,bias,rejection_rate,coverage,R,seed\n";
  Index n = 0, p = 0, s = -1;
  std::visit(
      [&](const auto& sp) {
        using T = std::decay_t<decltype(sp)>;
        n = sp.n;
        if constexpr (std::is_same_v<T, ControlsSparseSpec>) {
          p = sp.p;
          s = sp.s;
        } else if constexpr (std::is_same_v<T, ControlsApproxSpec>) {
          p = sp.p;
        } else if constexpr (std::is_same_v<T, IvSparseSpec>) {
          p = sp.p;
          s = sp.s;
        } else {
          p = 1;
        }
      },
      report.spec);
  char line[256];
  std::snprintf(line, sizeof line, "%lld,%lld,%lld,%s,%.10g,%.10g,%.10g,%d,%llu\n",
                static_cast<long long>(n), static_cast<long long>(p),
                static_cast<long long>(s), report.estimator.c_str(),
                report.mean_bias, report.rejection_rate, report.coverage,
                report.reps, static_cast<unsigned long long>(report.master_seed));
  out << line;
}

void dump_estimates(const MonteCarloReport& report, const std::string& path) {
  if (path.empty()) return;
  std::ofstream out(path);
  if (!out) throw DataError("cannot write estimates to '" + path + "'");
  out << "rep,ok,alpha_hat,se,reject,cover\n";
  for (std::size_t r = 0; r < report.outcomes.size(); ++r) {
    const ReplicationOutcome& o = report.outcomes[r];
    char line[160];
    std::snprintf(line, sizeof line, "%zu,%d,%.17g,%.17g,%d,%d\n", r, o.ok ? 1 : 0,
                  o.alpha_hat, o.se, o.reject ? 1 : 0, o.cover ? 1 : 0);
    out << line;
  }
}

int cmd_simulate(const std::string& table, Index n, Index p, Index s, double mu,
                 double alpha0, const std::vector<std::string>& estimators,
                 int reps, std::uint64_t seed, int threads,
                 const BoostFlags& boost_flags, const std::string& out_path,
                 const std::string& csv_path, const std::string& dump_path) {
  DgpSpec spec;
  if (table == "controls-sparse")
    spec = ControlsSparseSpec{n, p, s, alpha0};
  else if (table == "controls-approx")
    spec = ControlsApproxSpec{n, p, alpha0};
  else if (table == "iv-sparse")
    spec = IvSparseSpec{n, p, s, mu, 0.6};
  else if (table == "naive-demo")
    spec = NaiveDemoSpec{n, alpha0, 0.2, 0.8, 0.8};
  else
    throw InvalidInputError("unknown table '" + table + "'");

  McOptions options;
  options.threads = threads;
  options.boost = boost_flags.config();
  // Estimator labels fix the variant; the shared flags feed the remaining
  // stopping knobs.
  options.boost.variant = BoostVariant::classic;

  std::printf("%-14s %6s %6s %6s %9s %9s %9s %9s %5s\n", "estimator", "n", "p",
              "s", "bias", "med_bias", "reject", "coverage", "fail");
  json all = json::array();
  for (const std::string& label : estimators) {
    const EstimatorKind kind = parse_estimator(label);
    const MonteCarloReport report =
        run_monte_carlo(spec, kind, reps, seed, options);
    std::printf("%-14s %6lld %6lld %6lld %9.4f %9.4f %9.4f %9.4f %5d\n",
                label.c_str(), static_cast<long long>(n),
                static_cast<long long>(p), static_cast<long long>(s),
                report.mean_bias, report.median_bias, report.rejection_rate,
                report.coverage, report.failures);
    all.push_back(report_to_json(report));
    append_grid_csv(report, csv_path);
    if (estimators.size() == 1) dump_estimates(report, dump_path);
  }
  if (!out_path.empty()) {
    json wrapper;
    wrapper["command"] = "simulate";
    wrapper["reports"] = all;
    write_report(wrapper, out_path);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"componentwise boosting for variable selection and causal inference"};
  app.require_subcommand(1);

  // treat
  auto* treat = app.add_subcommand("treat", "double-selection treatment effect from a file");
  DataFlags treat_data;
  BoostFlags treat_boost;
  std::string treatment_col;
  std::vector<std::string> amend_cols;
  bool treat_interactions = false;
  bool treat_naive = false;
  double treat_cutoff = 0.95, treat_ci = 0.95;
  Index treat_min_ones = 20;
  std::string treat_out;
  treat_data.attach(treat);
  treat_boost.attach(treat);
  treat->add_option("--treatment", treatment_col, "Treatment column")->required();
  treat->add_option("--amend", amend_cols, "Always-included controls")->delimiter(',');
  treat->add_flag("--interactions", treat_interactions, "Add two-way interactions");
  treat->add_flag("--naive", treat_naive, "Single-selection baseline instead of double selection");
  treat->add_option("--corr-cutoff", treat_cutoff, "Correlation filter cutoff");
  treat->add_option("--min-ones", treat_min_ones, "Minimum ones for 0/1 columns");
  treat->add_option("--ci-level", treat_ci, "Confidence level");
  treat->add_option("--out", treat_out, "Write a machine-readable report here");

  // iv
  auto* iv = app.add_subcommand("iv", "boosted-first-stage two-stage least squares");
  DataFlags iv_data;
  BoostFlags iv_boost;
  std::string endogenous_col;
  std::vector<std::string> instrument_cols;
  double iv_ci = 0.95;
  std::string iv_out;
  iv_data.attach(iv);
  iv_boost.attach(iv);
  iv->add_option("--endogenous", endogenous_col, "Endogenous regressor column")->required();
  iv->add_option("--instruments", instrument_cols,
                 "Instrument columns (default: every unused column)")
      ->delimiter(',');
  iv->add_option("--ci-level", iv_ci, "Confidence level");
  iv->add_option("--out", iv_out, "Write a machine-readable report here");

  // boost
  auto* boost_cmd = app.add_subcommand("boost", "componentwise boosting fit and path");
  DataFlags boost_data;
  BoostFlags boost_boost;
  std::string boost_out;
  boost_data.attach(boost_cmd);
  boost_boost.attach(boost_cmd);
  boost_cmd->add_option("--out", boost_out, "Write a machine-readable report here");

  // expand
  auto* expand_cmd = app.add_subcommand("expand", "design expansion with provenance");
  DataFlags expand_data;
  bool expand_no_inter = false;
  double expand_cutoff = 0.95;
  Index expand_min_ones = 20;
  std::string expand_out;
  expand_data.attach(expand_cmd);
  expand_cmd->add_flag("--no-interactions", expand_no_inter, "Main effects only");
  expand_cmd->add_option("--corr-cutoff", expand_cutoff, "Correlation filter cutoff");
  expand_cmd->add_option("--min-ones", expand_min_ones, "Minimum ones for 0/1 columns");
  expand_cmd->add_option("--out", expand_out, "Write a machine-readable report here");

  // simulate
  auto* sim = app.add_subcommand("simulate", "run a simulation table replication");
  std::string sim_table;
  Index sim_n = 400, sim_p = 100, sim_s = 10;
  double sim_mu = 180.0, sim_alpha0 = 0.5;
  std::vector<std::string> sim_estimators = {"post-BA"};
  int sim_reps = 500, sim_threads = 0;
  std::uint64_t sim_seed = 1;
  BoostFlags sim_boost;
  std::string sim_out, sim_csv, sim_dump;
  sim->add_option("--table", sim_table, "controls-sparse, controls-approx, iv-sparse or naive-demo")
      ->required()
      ->check(CLI::IsMember({"controls-sparse", "controls-approx", "iv-sparse", "naive-demo"}));
  sim->add_option("--n", sim_n, "Sample size");
  sim->add_option("--p", sim_p, "Number of controls / instruments");
  sim->add_option("--s", sim_s, "Sparsity index");
  sim->add_option("--mu", sim_mu, "Concentration target (instrument table)");
  sim->add_option("--alpha0", sim_alpha0, "True coefficient of interest");
  sim->add_option("--estimator", sim_estimators,
                  "post-BA, oBA, classic-BA, naive or oracle-OLS (repeatable)")
      ->delimiter(',');
  sim->add_option("--reps", sim_reps, "Number of replications");
  sim->add_option("--seed", sim_seed, "Master seed");
  sim->add_option("--threads", sim_threads, "Worker threads (0 = all cores)");
  sim_boost.attach(sim);
  sim->add_option("--out", sim_out, "Write a machine-readable report here");
  sim->add_option("--csv", sim_csv, "Append one grid row per estimator here");
  sim->add_option("--dump-estimates", sim_dump,
                  "Write per-replication estimates (single estimator only)");

  try {
    app.parse(argc, argv);
    if (treat->parsed())
      return cmd_treat(treat_data, treat_boost, treatment_col, amend_cols,
                       treat_interactions, treat_cutoff, treat_min_ones, treat_ci,
                       treat_naive, treat_out);
    if (iv->parsed())
      return cmd_iv(iv_data, iv_boost, endogenous_col, instrument_cols, iv_ci, iv_out);
    if (boost_cmd->parsed()) return cmd_boost(boost_data, boost_boost, boost_out);
    if (expand_cmd->parsed())
      return cmd_expand(expand_data, expand_no_inter, expand_cutoff,
                        expand_min_ones, expand_out);
    if (sim->parsed())
      return cmd_simulate(sim_table, sim_n, sim_p, sim_s, sim_mu, sim_alpha0,
                          sim_estimators, sim_reps, sim_seed, sim_threads,
                          sim_boost, sim_out, sim_csv, sim_dump);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      std::cout << app.help();
      return 0;
    }
    std::cerr << "error: usage: " << e.what() << "\n";
    return 1;
  } catch (const DataError& e) {
    std::cerr << "error: data: " << e.what() << "\n";
    return 2;
  } catch (const EstimationError& e) {
    std::cerr << "error: estimation: " << e.what() << "\n";
    return 3;
  } catch (const Error& e) {
    std::cerr << "error: " << e.category() << ": " << e.what() << "\n";
    return 3;
  }
  return 1;
}
