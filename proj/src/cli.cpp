#include "aoi/cli.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <limits>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "aoi/analytic.hpp"
#include "aoi/csv.hpp"
#include "aoi/errors.hpp"
#include "aoi/model.hpp"
#include "aoi/model_io.hpp"
#include "aoi/sampling.hpp"
#include "aoi/simulate.hpp"

namespace aoi::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string num(double v) { return format_number(v); }
std::string num(std::size_t v) { return std::to_string(v); }
std::string num(int v) { return std::to_string(v); }

std::string time_unit(int m) { return m == 1 ? "time" : "time^" + std::to_string(m); }

// Everything one run needs to write its manifest.
struct RunRecord {
  std::string command;
  std::vector<std::string> argv;
  std::vector<std::string> inputs;
  json parameters = json::object();
  std::optional<std::uint64_t> seed;
  std::string out_dir = ".";
};

fs::path prepare_out_dir(const std::string& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw InputError("cannot create output directory " + dir + ": " + ec.message());
  return fs::path(dir);
}

void write_manifest(const RunRecord& rec) {
  json doc;
  doc["tool"] = kToolName;
  doc["version"] = kToolVersion;
  doc["command"] = rec.command;
  doc["argv"] = rec.argv;
  doc["inputs"] = rec.inputs;
  doc["parameters"] = rec.parameters;
  doc["seed"] = rec.seed ? json(*rec.seed) : json(nullptr);
  doc["out_dir"] = rec.out_dir;
  save(prepare_out_dir(rec.out_dir) / (rec.command + ".manifest.json"), doc.dump(2) + "\n");
}

void add_tolerance_meta(CsvTable& table) {
  const AnalyticTolerances tol;
  table.meta("negative_moment_tol", tol.negative_moment);
  table.meta("region_margin", tol.region_margin);
  table.meta("perron_residual_tol", tol.linalg.perron_residual);
  table.meta("singular_pivot_tol", tol.linalg.singular_pivot);
}

// ---- analyze ---------------------------------------------------------------

struct AnalyzeArgs {
  std::string model;
  int moments = 1;
  std::vector<double> mgf;
};

void run_analyze(const AnalyzeArgs& a, RunRecord& rec) {
  rec.inputs = {a.model};
  rec.parameters = {{"moments", a.moments}, {"mgf", a.mgf}};
  if (a.moments < 1) throw ConfigError("--moments must be at least 1");
  const auto model = load_model(a.model);
  const auto nq = model.num_states();
  const auto n = model.age_dim();

  const auto sm = stationary_moments(model, a.moments);
  const double s0 = mgf_radius(model);

  CsvTable t({"quantity", "state", "component", "order", "s [1/time]", "value", "unit"});
  t.meta("command", "analyze");
  t.meta("model", a.model);
  add_tolerance_meta(t);

  for (std::size_t q = 0; q < nq; ++q) {
    t.row({"stationary_probability", num(q), "", "", "", num(sm.pi[q]), "1"});
  }
  for (int m = 1; m <= a.moments; ++m) {
    const auto& mv = sm.order(m);
    for (std::size_t j = 0; j < n; ++j) {
      t.row({"moment", "all", num(j + 1), num(m), "", num(mv.aggregate[j]), time_unit(m)});
    }
    for (std::size_t q = 0; q < nq; ++q) {
      for (std::size_t j = 0; j < n; ++j) {
        t.row({"moment", num(q), num(j + 1), num(m), "", num(mv.per_state[q][j]), time_unit(m)});
      }
    }
  }
  t.row({"s0", "", "", "", "", num(s0), "1/time"});
  for (double s : a.mgf) {
    const auto e = stationary_mgf(model, s, s0);
    for (std::size_t j = 0; j < n; ++j) {
      t.row({"mgf", "all", num(j + 1), "", num(s), num(e.aggregate[j]), "1"});
    }
    for (std::size_t q = 0; q < nq; ++q) {
      for (std::size_t j = 0; j < n; ++j) {
        t.row({"mgf", num(q), num(j + 1), "", num(s), num(e.per_state[q][j]), "1"});
      }
    }
  }
  save(prepare_out_dir(rec.out_dir) / "analyze.csv", t.str());
}

// ---- simulate --------------------------------------------------------------

struct SimulateArgs {
  std::string model;
  double t_end = 0.0;
  std::uint64_t seed = 1;
  std::size_t reps = 16;
  std::vector<int> orders{1, 2};
  std::vector<double> mgf;
  std::optional<double> warmup;
};

void run_simulate(const SimulateArgs& a, RunRecord& rec) {
  rec.inputs = {a.model};
  rec.seed = a.seed;
  rec.parameters = {{"t_end", a.t_end}, {"reps", a.reps}, {"orders", a.orders}, {"mgf", a.mgf}};
  if (a.warmup) rec.parameters["warmup"] = *a.warmup;
  const auto model = load_model(a.model);
  const auto n = model.age_dim();

  SimConfig cfg;
  cfg.seed = a.seed;
  cfg.t_end = a.t_end;
  cfg.warmup = a.warmup;
  cfg.orders = a.orders;
  cfg.s_values = a.mgf;
  cfg.replications = a.reps;
  validate_config(cfg);

  // Analytic side; left as nan where it does not exist.
  const double nan = std::numeric_limits<double>::quiet_NaN();
  std::vector<double> pi(model.num_states(), nan);
  std::vector<std::vector<double>> moments(a.orders.size(), std::vector<double>(n, nan));
  std::vector<std::vector<double>> mgf(a.mgf.size(), std::vector<double>(n, nan));
  pi = stationary_distribution(model);
  int max_order = 0;
  for (int m : a.orders) max_order = std::max(max_order, m);
  try {
    const auto sm = stationary_moments(model, max_order);
    for (std::size_t k = 0; k < a.orders.size(); ++k) moments[k] = sm.order(a.orders[k]).aggregate;
    const double s0 = mgf_radius(model);
    for (std::size_t k = 0; k < a.mgf.size(); ++k) {
      try {
        mgf[k] = stationary_mgf(model, a.mgf[k], s0).aggregate;
      } catch (const OutOfRegionError&) {
      }
    }
  } catch (const UnstableError&) {
  }

  const auto est = simulate(model, cfg);

  CsvTable t({"quantity", "state", "component", "order", "s [1/time]", "estimate", "stderr", "analytic",
              "unit"});
  t.meta("command", "simulate");
  t.meta("model", a.model);
  t.meta("seed", std::to_string(a.seed));
  t.meta("t_end", cfg.t_end);
  t.meta("warmup", cfg.warmup_time());
  t.meta("replications", std::to_string(cfg.replications));
  t.meta("events", std::to_string(est.events));
  add_tolerance_meta(t);

  for (std::size_t q = 0; q < model.num_states(); ++q) {
    t.row({"occupancy", num(q), "", "", "", num(est.occupancy[q]), num(est.occupancy_stderr[q]), num(pi[q]),
           "1"});
  }
  for (std::size_t k = 0; k < a.orders.size(); ++k) {
    for (std::size_t j = 0; j < n; ++j) {
      t.row({"moment", "all", num(j + 1), num(a.orders[k]), "", num(est.moment_avg[k][j]),
             num(est.moment_stderr[k][j]), num(moments[k][j]), time_unit(a.orders[k])});
    }
  }
  for (std::size_t k = 0; k < a.mgf.size(); ++k) {
    for (std::size_t j = 0; j < n; ++j) {
      t.row({"mgf", "all", num(j + 1), "", num(a.mgf[k]), num(est.mgf_avg[k][j]), num(est.mgf_stderr[k][j]),
             num(mgf[k][j]), "1"});
    }
  }
  save(prepare_out_dir(rec.out_dir) / "simulate.csv", t.str());
}

// ---- transient -------------------------------------------------------------

struct TransientArgs {
  std::string model;
  double t_end = 0.0;
  std::vector<int> orders{1};
  std::vector<double> mgf;
  std::size_t init_state = 0;
  std::vector<double> init_probs;
  std::vector<double> init_ages;
  std::size_t samples = 1000;
};

void run_transient(const TransientArgs& a, RunRecord& rec) {
  rec.inputs = {a.model};
  rec.parameters = {{"t_end", a.t_end},         {"orders", a.orders},       {"mgf", a.mgf},
                    {"init_state", a.init_state}, {"init_probs", a.init_probs}, {"init_ages", a.init_ages},
                    {"samples", a.samples}};
  const auto model = load_model(a.model);
  const auto nq = model.num_states();
  const auto n = model.age_dim();

  TransientInit init;
  init.ages = a.init_ages.empty() ? std::vector<double>(n, 0.0) : a.init_ages;
  if (!a.init_probs.empty()) {
    init.state_probs = a.init_probs;
  } else {
    if (a.init_state >= nq) throw ConfigError("--init-state is out of range");
    init.state_probs.assign(nq, 0.0);
    init.state_probs[a.init_state] = 1.0;
  }
  TransientOptions opt;
  opt.t_end = a.t_end;
  opt.orders = a.orders;
  opt.s_values = a.mgf;
  opt.max_samples = a.samples;
  const auto tr = transient(model, init, opt);

  std::vector<std::string> header{"t [time]"};
  for (std::size_t q = 0; q < nq; ++q) header.push_back("P(q=" + num(q) + ") [1]");
  for (int m : a.orders) {
    const auto u = " [" + time_unit(m) + "]";
    for (std::size_t j = 0; j < n; ++j) header.push_back("E[x" + num(j + 1) + "^" + num(m) + "]" + u);
    for (std::size_t q = 0; q < nq; ++q) {
      for (std::size_t j = 0; j < n; ++j) {
        header.push_back("v" + num(m) + "_q" + num(q) + "_x" + num(j + 1) + u);
      }
    }
  }
  for (double s : a.mgf) {
    for (std::size_t j = 0; j < n; ++j) header.push_back("E[exp(" + num(s) + " x" + num(j + 1) + ")] [1]");
    for (std::size_t q = 0; q < nq; ++q) {
      for (std::size_t j = 0; j < n; ++j) {
        header.push_back("vs" + num(s) + "_q" + num(q) + "_x" + num(j + 1) + " [1]");
      }
    }
  }

  CsvTable t(header);
  t.meta("command", "transient");
  t.meta("model", a.model);
  t.meta("t_end", a.t_end);
  t.meta("step", tr.step);
  add_tolerance_meta(t);

  for (std::size_t i = 0; i < tr.times.size(); ++i) {
    std::vector<std::string> row{num(tr.times[i])};
    for (double p : tr.pi_t[i]) row.push_back(num(p));
    auto emit = [&](const std::vector<double>& v) {
      for (double x : aggregate_over_states(v, nq, n)) row.push_back(num(x));
      for (double x : v) row.push_back(num(x));
    };
    for (const auto& v : tr.moments_t[i]) emit(v);
    for (const auto& v : tr.mgf_t[i]) emit(v);
    t.row(std::move(row));
  }
  save(prepare_out_dir(rec.out_dir) / "transient.csv", t.str());
}

// ---- sample ----------------------------------------------------------------

struct SampleArgs {
  std::string network;
  std::size_t node = 1;
  std::size_t points = kDefaultGridPoints;
  std::optional<double> extent;
  std::optional<double> sim_t_end;
  std::uint64_t seed = 1;
  std::size_t reps = 16;
  std::size_t bins = 100;
};

void run_sample(const SampleArgs& a, RunRecord& rec) {
  rec.inputs = {a.network};
  rec.parameters = {{"node", a.node}, {"points", a.points}, {"bins", a.bins}};
  if (a.extent) rec.parameters["extent"] = *a.extent;
  if (a.sim_t_end) {
    rec.parameters["simulate"] = *a.sim_t_end;
    rec.parameters["reps"] = a.reps;
    rec.seed = a.seed;
  }
  const auto net = load_network(a.network);
  const auto k = a.node;
  if (k < 1 || k > net.hops.size()) {
    throw ConfigError("--node must lie in 1.." + std::to_string(net.hops.size()));
  }
  if (a.points < 3) throw ConfigError("--points must be at least 3");
  if (a.bins < 1) throw ConfigError("--bins must be positive");

  const double extent = a.extent.value_or(required_extent(net, k));
  const auto grid = uniform_grid(extent, a.points);
  const auto cmp = gaussian_comparison(net, k, grid);
  const auto stats = node_age_stats(net, k);
  const auto out = prepare_out_dir(rec.out_dir);

  CsvTable dens({"x [time]", "convolution_pdf [1/time]", "gaussian_pdf [1/time]"});
  dens.meta("command", "sample");
  dens.meta("network", a.network);
  dens.meta("node", std::to_string(k));
  dens.meta("extent", extent);
  dens.meta("points", std::to_string(a.points));
  for (std::size_t i = 0; i < grid.size(); ++i) {
    dens.row({num(grid[i]), num(cmp.convolution.values[i]), num(cmp.gaussian.values[i])});
  }
  save(out / "sample_density.csv", dens.str());

  CsvTable st({"quantity", "node", "value", "stderr", "unit"});
  st.meta("command", "sample");
  st.meta("network", a.network);
  st.meta("extent", extent);
  st.meta("points", std::to_string(a.points));
  const std::string kk = std::to_string(k);
  st.row({"mean", kk, num(stats.mean), "", "time"});
  st.row({"variance", kk, num(stats.variance), "", "time^2"});
  st.row({"grid_mass", kk, num(cmp.convolution.integral()), "", "1"});
  st.row({"grid_mean", kk, num(cmp.convolution.mean()), "", "time"});
  st.row({"grid_variance", kk, num(cmp.convolution.variance()), "", "time^2"});
  st.row({"gaussian_l1", kk, num(cmp.l1), "", "1"});

  if (a.sim_t_end) {
    SamplingSimConfig cfg;
    cfg.seed = a.seed;
    cfg.t_end = *a.sim_t_end;
    cfg.replications = a.reps;
    const double w = extent / static_cast<double>(a.bins);
    for (std::size_t b = 0; b <= a.bins; ++b) cfg.edges.push_back(w * static_cast<double>(b));
    cfg.edges.back() = extent;
    const auto res = simulate_sampling_line(net, cfg);
    const auto& node = res.nodes[k - 1];
    const auto& h = *node.histogram;
    st.meta("seed", std::to_string(a.seed));
    st.meta("t_end", cfg.t_end);
    st.meta("warmup", cfg.warmup_time());
    st.meta("replications", std::to_string(cfg.replications));
    st.row({"sim_mean", kk, num(node.mean), num(node.mean_stderr), "time"});
    st.row({"sim_variance", kk, num(node.variance), num(node.variance_stderr), "time^2"});
    st.row({"histogram_l1", kk, num(histogram_l1(h, cmp.convolution)), "", "1"});

    CsvTable hist({"bin_lo [time]", "bin_hi [time]", "empirical_density [1/time]",
                   "convolution_density [1/time]"});
    hist.meta("command", "sample");
    hist.meta("network", a.network);
    hist.meta("node", kk);
    hist.meta("seed", std::to_string(a.seed));
    hist.meta("t_end", cfg.t_end);
    hist.meta("replications", std::to_string(cfg.replications));
    hist.meta("overflow", h.overflow() / h.total_time());
    const auto dens_emp = h.densities();
    for (std::size_t b = 0; b + 1 < cfg.edges.size(); ++b) {
      const double lo = cfg.edges[b], hi = cfg.edges[b + 1];
      hist.row({num(lo), num(hi), num(dens_emp[b]), num(cmp.convolution.mass_between(lo, hi) / (hi - lo))});
    }
    save(out / "sample_histogram.csv", hist.str());
  }
  save(out / "sample_stats.csv", st.str());
}

// ---- builtin ---------------------------------------------------------------

struct BuiltinArgs {
  std::vector<double> mm11;
  std::vector<double> line;
  std::vector<double> uniform;
  std::string output;
};

void run_builtin(const std::string& which, const BuiltinArgs& a, RunRecord& rec) {
  const auto dir = prepare_out_dir(rec.out_dir);
  std::string text;
  std::string name;
  if (which == "mm11") {
    rec.parameters = {{"mm11", a.mm11}};
    text = to_json(mm11_abandonment(a.mm11.at(0), a.mm11.at(1), a.mm11.at(2)));
    name = "mm11.json";
  } else if (which == "line") {
    rec.parameters = {{"line", a.line}};
    text = to_json(preemptive_line(a.line));
    name = "line.json";
  } else {
    rec.parameters = {{"uniform", a.uniform}};
    const double b = a.uniform.at(0);
    const double nd = a.uniform.at(1);
    if (!(nd >= 1) || nd != std::floor(nd)) throw ConfigError("uniform line length must be a positive integer");
    SamplingNetwork net;
    net.hops.assign(static_cast<std::size_t>(nd), RenewalSpec::uniform(b));
    text = to_json(net);
    name = "uniform_line.json";
  }
  const fs::path target = a.output.empty() ? dir / name : fs::path(a.output);
  save(target, text);
  rec.inputs = {};
  rec.parameters["output"] = target.string();
}

// ---- dispatch --------------------------------------------------------------

int run(const std::vector<std::string>& args, std::ostream& err, int depth);

int run_replay(const std::string& manifest_path, const std::string& out_override, std::ostream& err,
               int depth) {
  if (depth > 0) throw ConfigError("a replay manifest cannot itself be a replay");
  std::ifstream in(manifest_path, std::ios::binary);
  if (!in) throw InputError("cannot open " + manifest_path);
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw InputError(std::string("malformed manifest: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("argv") || !doc["argv"].is_array()) {
    throw InputError("manifest has no argv array");
  }
  if (doc.value("tool", std::string()) != kToolName) throw InputError("manifest was not written by this tool");
  std::vector<std::string> argv;
  try {
    argv = doc["argv"].get<std::vector<std::string>>();
  } catch (const json::exception& e) {
    throw InputError(std::string("manifest argv: ") + e.what());
  }
  if (!out_override.empty()) {
    std::vector<std::string> kept;
    for (std::size_t i = 0; i < argv.size(); ++i) {
      if (argv[i] == "--out") {
        ++i;
        continue;
      }
      if (argv[i].rfind("--out=", 0) == 0) continue;
      kept.push_back(argv[i]);
    }
    kept.push_back("--out");
    kept.push_back(out_override);
    argv = std::move(kept);
  }
  return run(argv, err, depth + 1);
}

int run(const std::vector<std::string>& args, std::ostream& err, int depth) {
  CLI::App app{"Age-of-information analysis for stochastic hybrid systems", kToolName};
  app.require_subcommand(1);
  app.set_version_flag("--version", kToolVersion);

  RunRecord rec;
  rec.argv = args;
  std::string out_dir = ".";
  std::function<void()> action;

  auto add_out = [&](CLI::App* sub) {
    sub->add_option("--out", out_dir, "output directory")->capture_default_str();
  };

  AnalyzeArgs an;
  auto* analyze = app.add_subcommand("analyze", "stationary moments, MGF and s0 of a model");
  analyze->add_option("model", an.model, "model JSON file")->required();
  analyze->add_option("--moments", an.moments, "highest moment order")->capture_default_str();
  analyze->add_option("--mgf", an.mgf, "MGF arguments s")->delimiter(',');
  add_out(analyze);
  analyze->callback([&] { action = [&] { run_analyze(an, rec); }; });

  SimulateArgs sm;
  auto* simulate_cmd = app.add_subcommand("simulate", "sample-path estimates next to analytic values");
  simulate_cmd->add_option("model", sm.model, "model JSON file")->required();
  simulate_cmd->add_option("--t-end", sm.t_end, "horizon per replication")->required();
  simulate_cmd->add_option("--seed", sm.seed, "base seed")->capture_default_str();
  simulate_cmd->add_option("--reps", sm.reps, "replications")->capture_default_str();
  simulate_cmd->add_option("--orders", sm.orders, "moment orders")->delimiter(',');
  simulate_cmd->add_option("--mgf", sm.mgf, "MGF arguments s")->delimiter(',');
  simulate_cmd->add_option("--warmup", sm.warmup, "discarded initial time (default 1% of t_end)");
  add_out(simulate_cmd);
  simulate_cmd->callback([&] { action = [&] { run_simulate(sm, rec); }; });

  TransientArgs tr;
  auto* transient_cmd = app.add_subcommand("transient", "time series of the moment and MGF equations");
  transient_cmd->add_option("model", tr.model, "model JSON file")->required();
  transient_cmd->add_option("--t-end", tr.t_end, "horizon")->required();
  transient_cmd->add_option("--orders", tr.orders, "moment orders")->delimiter(',');
  transient_cmd->add_option("--mgf", tr.mgf, "MGF arguments s")->delimiter(',');
  auto* init_state =
      transient_cmd->add_option("--init-state", tr.init_state, "deterministic initial state")->capture_default_str();
  transient_cmd->add_option("--init-probs", tr.init_probs, "initial state distribution")
      ->delimiter(',')
      ->excludes(init_state);
  transient_cmd->add_option("--init-ages", tr.init_ages, "initial ages (default zeros)")->delimiter(',');
  transient_cmd->add_option("--samples", tr.samples, "output rows after t = 0")->capture_default_str();
  add_out(transient_cmd);
  transient_cmd->callback([&] { action = [&] { run_transient(tr, rec); }; });

  SampleArgs sa;
  auto* sample = app.add_subcommand("sample", "age density of a node on a status-sampling line");
  sample->add_option("network", sa.network, "network JSON file")->required();
  sample->add_option("--node", sa.node, "node index, 1-based")->required();
  sample->add_option("--points", sa.points, "grid points")->capture_default_str();
  sample->add_option("--extent", sa.extent, "grid extent (default: holds all but 1e-6 of the mass)");
  sample->add_option("--simulate", sa.sim_t_end, "also simulate with this horizon per replication");
  sample->add_option("--seed", sa.seed, "base seed")->capture_default_str();
  sample->add_option("--reps", sa.reps, "replications")->capture_default_str();
  sample->add_option("--bins", sa.bins, "histogram bins over the grid")->capture_default_str();
  add_out(sample);
  sample->callback([&] { action = [&] { run_sample(sa, rec); }; });

  BuiltinArgs bi;
  auto* builtin = app.add_subcommand("builtin", "write a canonical model file");
  builtin->require_subcommand(1);
  auto* b_mm11 = builtin->add_subcommand("mm11", "M/M/1/1 with abandonment");
  b_mm11->add_option("rates", bi.mm11, "lambda mu alpha")->expected(3)->required();
  auto* b_line = builtin->add_subcommand("line", "preemptive line network");
  b_line->add_option("rates", bi.line, "mu0,mu1,...")->delimiter(',')->required();
  auto* b_uni = builtin->add_subcommand("uniform", "sampling line with uniform(0,b) hops");
  b_uni->add_option("params", bi.uniform, "b n")->expected(2)->required();
  for (auto* sub : {b_mm11, b_line, b_uni}) {
    sub->add_option("-o,--output", bi.output, "output file (default <out>/<name>.json)");
    add_out(sub);
    sub->callback([&, sub] { action = [&, sub] { run_builtin(sub->get_name(), bi, rec); }; });
  }

  std::string manifest;
  std::string replay_out;
  auto* replay = app.add_subcommand("replay", "re-run the command recorded in a manifest");
  replay->add_option("manifest", manifest, "manifest JSON file")->required();
  replay->add_option("--out", replay_out, "output directory (default: the recorded one)");

  std::vector<const char*> cargv{kToolName};
  for (const auto& s : args) cargv.push_back(s.c_str());
  try {
    app.parse(static_cast<int>(cargv.size()), cargv.data());
  } catch (const CLI::CallForHelp&) {
    err << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    err << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::CallForVersion&) {
    err << kToolVersion << "\n";
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kUsageError;
  }

  if (replay->parsed()) return run_replay(manifest, replay_out, err, depth);

  rec.out_dir = out_dir;
  for (auto* sub : app.get_subcommands()) {
    rec.command = sub->get_name();
    for (auto* inner : sub->get_subcommands()) rec.command += "_" + inner->get_name();
  }
  action();
  write_manifest(rec);
  return kOk;
}

}  // namespace

int execute(const std::vector<std::string>& args, std::ostream& err) {
  try {
    return run(args, err, 0);
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return kUsageError;
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << "\n";
    return kUsageError;
  } catch (const fs::filesystem_error& e) {
    err << "error: " << e.what() << "\n";
    return kUsageError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kAnalysisError;
  }
}

}  // namespace aoi::cli
