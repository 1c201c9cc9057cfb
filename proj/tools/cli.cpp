#include "cli.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "liftspec/errors.hpp"
#include "liftspec/experiments.hpp"
#include "liftspec/format.hpp"
#include "liftspec/markov.hpp"
#include "liftspec/rng.hpp"
#include "liftspec/spectral.hpp"

namespace liftspec::cli {

namespace {

// Option handles for the shared experiment flags, so values from a
// --config file can fill in exactly the flags the user did not pass.
struct ExperimentFlags {
  CLI::Option* graph = nullptr;
  CLI::Option* graph_file = nullptr;
  CLI::Option* k = nullptr;
  CLI::Option* ks = nullptr;
  CLI::Option* sampler = nullptr;
  CLI::Option* trials = nullptr;
  CLI::Option* delta = nullptr;
  CLI::Option* seed = nullptr;
  CLI::Option* out = nullptr;
  CLI::Option* threads = nullptr;
  CLI::Option* allow_large = nullptr;
};

struct ExperimentArgs {
  ExperimentConfig cfg;
  std::string config_path;
  std::string graph_file;
  std::string sampler_name = "uniform";
  ExperimentFlags flags;
};

void add_experiment_flags(CLI::App* cmd, ExperimentArgs& a,
                          const std::string& default_out) {
  a.cfg.out_prefix = default_out;
  cmd->add_option("--config", a.config_path,
                  "JSON config file; explicit flags override its values");
  a.flags.graph =
      cmd->add_option("--graph", a.cfg.graph_source,
                      "Graph source: complete:N, cycle:N, cliques:COPIES,SIZE, "
                      "er:N,P,SEED or file:PATH");
  a.flags.graph_file =
      cmd->add_option("--graph-file", a.graph_file, "Graph file (text format)")
          ->excludes(a.flags.graph);
  a.flags.k = cmd->add_option("--k", a.cfg.k, "Lift order");
  a.flags.ks = cmd->add_option("--ks", a.cfg.ks,
                               "Iterated-lift stage orders, e.g. 2,2,2")
                   ->delimiter(',');
  a.flags.sampler = cmd->add_option("--sampler", a.sampler_name,
                                    "Matching sampler: uniform or cyclic");
  a.flags.trials = cmd->add_option("--trials", a.cfg.trials, "Monte Carlo trials");
  a.flags.delta = cmd->add_option("--delta", a.cfg.delta,
                                  "Failure probability budget in (0,1)");
  a.flags.seed = cmd->add_option("--seed", a.cfg.master_seed, "Master seed");
  a.flags.out = cmd->add_option("--out", a.cfg.out_prefix,
                                "Output prefix (writes PREFIX.csv, PREFIX.json)");
  a.flags.threads = cmd->add_option("--threads", a.cfg.threads,
                                    "Worker threads; 0 = hardware concurrency");
  a.flags.allow_large = cmd->add_flag("--allow-large", a.cfg.allow_large,
                                      "Lift the n*k <= 20000 guardrail");
}

ExperimentConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("config file " + path + ": " + e.what());
  }
  if (!j.is_object()) throw ConfigError("config file " + path + ": expected a JSON object");
  ExperimentConfig cfg;
  try {
    for (const auto& [key, value] : j.items()) {
      if (key == "graph_source") cfg.graph_source = value.get<std::string>();
      else if (key == "k") cfg.k = value.get<int>();
      else if (key == "ks") cfg.ks = value.get<std::vector<int>>();
      else if (key == "sampler") cfg.sampler = sampler_from_string(value.get<std::string>());
      else if (key == "trials") cfg.trials = value.get<int>();
      else if (key == "delta") cfg.delta = value.get<double>();
      else if (key == "master_seed") cfg.master_seed = value.get<std::uint64_t>();
      else if (key == "out_prefix") cfg.out_prefix = value.get<std::string>();
      else if (key == "threads") cfg.threads = value.get<int>();
      else if (key == "allow_large") cfg.allow_large = value.get<bool>();
      else throw ConfigError("config file " + path + ": unknown key \"" + key + "\"");
    }
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("config file " + path + ": " + e.what());
  }
  return cfg;
}

// Flags the user passed win; the config file fills in the rest.
ExperimentConfig resolve_config(ExperimentArgs& a, const std::string& default_out,
                                bool require_graph = true) {
  ExperimentConfig cfg = a.cfg;
  cfg.sampler = sampler_from_string(a.sampler_name);
  if (!a.config_path.empty()) {
    const ExperimentConfig file_cfg = load_config_file(a.config_path);
    if (a.flags.graph->count() == 0 && a.flags.graph_file->count() == 0)
      cfg.graph_source = file_cfg.graph_source;
    if (a.flags.k->count() == 0) cfg.k = file_cfg.k;
    if (a.flags.ks->count() == 0) cfg.ks = file_cfg.ks;
    if (a.flags.sampler->count() == 0) cfg.sampler = file_cfg.sampler;
    if (a.flags.trials->count() == 0) cfg.trials = file_cfg.trials;
    if (a.flags.delta->count() == 0) cfg.delta = file_cfg.delta;
    if (a.flags.seed->count() == 0) cfg.master_seed = file_cfg.master_seed;
    if (a.flags.out->count() == 0 && !file_cfg.out_prefix.empty())
      cfg.out_prefix = file_cfg.out_prefix;
    if (a.flags.threads->count() == 0) cfg.threads = file_cfg.threads;
    if (a.flags.allow_large->count() == 0) cfg.allow_large = file_cfg.allow_large;
  }
  if (a.flags.graph_file->count() > 0) cfg.graph_source = "file:" + a.graph_file;
  if (require_graph && cfg.graph_source.empty())
    throw ConfigError("no graph given; pass --graph, --graph-file or a config file");
  if (cfg.out_prefix.empty()) cfg.out_prefix = default_out;
  return cfg;
}

std::string json_array(const std::vector<double>& xs) {
  std::string out = "[";
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) out += ',';
    out += format_double(xs[i]);
  }
  out += ']';
  return out;
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot open output file " + path);
  out << content;
  if (!out) throw ConfigError("failed writing output file " + path);
}

template <typename Result>
void write_outputs(const Result& result, const std::string& prefix) {
  std::ostringstream csv;
  write_csv(csv, result);
  write_text_file(prefix + ".csv", csv.str());
  write_text_file(prefix + ".json", to_json(result) + "\n");
}

std::string short_num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

int run_lift(ExperimentArgs& a) {
  const ExperimentConfig cfg = resolve_config(a, "");
  const Graph g = resolve_graph_source(cfg.graph_source);
  validate_config(cfg, g);
  const LiftSpec spec = sample_lift(g, cfg.k, cfg.master_seed, cfg.sampler);
  std::ostringstream text;
  write_lift_spec(text, spec);
  if (cfg.out_prefix.empty()) {
    std::cout << text.str();
  } else {
    write_text_file(cfg.out_prefix, text.str());
    const LiftedGraph lifted = realize(spec);
    std::cout << "lift: n=" << g.vertex_count() << " k=" << cfg.k
              << " sampler=" << to_string(cfg.sampler)
              << " lifted_edges=" << lifted.graph.edge_count() << " -> "
              << cfg.out_prefix << "\n";
  }
  return 0;
}

int run_spectrum(ExperimentArgs& a) {
  const ExperimentConfig cfg = resolve_config(a, "");
  const Graph g = resolve_graph_source(cfg.graph_source);
  const Spectrum adj = sym_eigenvalues(adjacency(g));
  const Spectrum lap = sym_eigenvalues(normalized_laplacian(g));
  std::string adj_line = "adjacency:";
  for (const double v : adj.values) adj_line += " " + format_double(v);
  std::string lap_line = "laplacian:";
  for (const double v : lap.values) lap_line += " " + format_double(v);
  std::cout << adj_line << "\n" << lap_line << "\n";
  if (!cfg.out_prefix.empty()) {
    std::string json = "{\"n\":" + std::to_string(g.vertex_count()) +
                       ",\"adjacency\":" + json_array(adj.values) +
                       ",\"laplacian\":" + json_array(lap.values) + "}\n";
    write_text_file(cfg.out_prefix + ".json", json);
  }
  return 0;
}

int run_analyze(ExperimentArgs& a, const std::string& lift_file) {
  const ExperimentConfig cfg = resolve_config(a, "", lift_file.empty());
  LiftSpec spec = [&] {
    if (!lift_file.empty()) {
      std::ifstream in(lift_file);
      if (!in) throw ConfigError("cannot open lift file " + lift_file);
      LiftSpec s = read_lift_spec(in);
      ExperimentConfig guard = cfg;
      guard.k = s.k;
      validate_config(guard, s.base);
      return s;
    }
    const Graph g = resolve_graph_source(cfg.graph_source);
    validate_config(cfg, g);
    return sample_lift(g, cfg.k, cfg.master_seed, cfg.sampler);
  }();
  const AnalysisReport report = analyze(spec.base, spec, cfg.delta);
  const std::string json = to_json(report) + "\n";
  if (cfg.out_prefix.empty()) {
    std::cout << json;
  } else {
    write_text_file(cfg.out_prefix + ".json", json);
    std::cout << "analyze: n=" << spec.base.vertex_count() << " k=" << spec.k
              << " max_new_adj=" << short_num(report.deviation.new_eigs_adjacency.max_abs())
              << " equality_ok=" << (report.deviation.equality_ok ? "true" : "false")
              << " -> " << cfg.out_prefix << ".json\n";
  }
  return 0;
}

int run_theorem1(ExperimentArgs& a) {
  const ExperimentConfig cfg = resolve_config(a, "theorem1");
  const Theorem1Result res = run_theorem1_experiment(cfg);
  write_outputs(res, cfg.out_prefix);
  const ExperimentSummary& s = res.summary;
  std::cout << "theorem1: n=" << res.n << " k=" << cfg.k << " trials=" << s.trials
            << " exceeded_adj=" << s.exceeded_adjacency_count << "/" << s.trials;
  if (s.laplacian_analyzed)
    std::cout << " exceeded_lap=" << *s.exceeded_laplacian_count << "/" << s.trials;
  else
    std::cout << " laplacian=skipped";
  std::cout << " max_new_adj=" << short_num(s.max_observed_new_adj) << " -> "
            << cfg.out_prefix << ".csv " << cfg.out_prefix << ".json\n";
  return 0;
}

int run_corollary(ExperimentArgs& a) {
  const ExperimentConfig cfg = resolve_config(a, "corollary");
  const CorollaryResult res = run_corollary_experiment(cfg);
  write_outputs(res, cfg.out_prefix);
  const CorollarySummary& s = res.summary;
  std::cout << "corollary: n=" << res.n << " k=" << res.k << " trials=" << s.trials
            << " exceeded_adj=" << s.exceeded_adjacency_count << "/" << s.trials
            << " exceeded_lap=" << s.exceeded_laplacian_count << "/" << s.trials
            << " max_adj_distance=" << short_num(s.max_adj_distance) << " -> "
            << cfg.out_prefix << ".csv " << cfg.out_prefix << ".json\n";
  return 0;
}

int run_marginals(ExperimentArgs& a) {
  const ExperimentConfig cfg = resolve_config(a, "marginals");
  if (cfg.trials < 1000)
    std::cerr << "warning: fewer than 1000 trials gives weak marginal resolution\n";
  const MarginalCheck mc = cfg.ks.empty() ? run_marginal_check(cfg)
                                          : run_iterated_marginal_check(cfg);
  write_outputs(mc, cfg.out_prefix);
  std::cout << "marginals: k=" << mc.k << " trials=" << mc.trials << " edge=("
            << mc.edge.first << "," << mc.edge.second << ")"
            << " cells_outside=" << mc.cells_outside << "/" << mc.k * mc.k
            << " pass=" << (mc.pass ? "true" : "false") << " -> "
            << cfg.out_prefix << ".csv " << cfg.out_prefix << ".json\n";
  return 0;
}

int run_sharpness(ExperimentArgs& a) {
  const ExperimentConfig cfg = resolve_config(a, "sharpness");
  const SharpnessResult res = run_sharpness_probe(cfg);
  write_outputs(res, cfg.out_prefix);
  std::cout << "sharpness: n=" << res.n << " k=" << cfg.k << " trials=" << cfg.trials
            << " max_ratio_sqrt_dmax=" << short_num(res.max_ratio_sqrt_dmax)
            << " mean_ratio_sqrt_dmax=" << short_num(res.mean_ratio_sqrt_dmax)
            << " -> " << cfg.out_prefix << ".csv " << cfg.out_prefix << ".json\n";
  return 0;
}

// Simple random walk on a graph: P(i,j) = 1/deg(i) on edges, stationary
// pi(i) = deg(i)/(2m). Reversible since pi(i)P(i,j) = 1/(2m) is symmetric.
ReversibleChain walk_chain(const Graph& g) {
  const DegreeProfile deg = degrees(g);
  if (deg.d_min < 1)
    throw ConfigError("walk chain requires every vertex to have an edge");
  const int n = g.vertex_count();
  Matrix p(n, n);
  for (const auto& [i, j] : g.edges()) {
    p(i - 1, j - 1) = 1.0 / deg.per_vertex[static_cast<std::size_t>(i) - 1];
    p(j - 1, i - 1) = 1.0 / deg.per_vertex[static_cast<std::size_t>(j) - 1];
  }
  const double total = 2.0 * static_cast<double>(g.edge_count());
  std::vector<double> pi(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i)
    pi[static_cast<std::size_t>(i)] = deg.per_vertex[static_cast<std::size_t>(i)] / total;
  return make_chain(p, pi);
}

int run_markov(ExperimentArgs& a, const std::string& chain_file) {
  const ExperimentConfig cfg = resolve_config(a, "markov", false);
  if (chain_file.empty() == cfg.graph_source.empty())
    throw ConfigError(
        "pass exactly one of --chain FILE or --graph SOURCE (walk chain)");
  const ReversibleChain base = [&] {
    if (!chain_file.empty()) {
      std::ifstream in(chain_file);
      if (!in) throw ConfigError("cannot open chain file " + chain_file);
      return read_chain(in);
    }
    return walk_chain(resolve_graph_source(cfg.graph_source));
  }();
  if (cfg.k < 1) throw ConfigError("k must be at least 1");
  if (!(cfg.delta > 0.0 && cfg.delta < 1.0))
    throw ConfigError("delta must lie in (0, 1)");
  const long long nk = static_cast<long long>(base.n) * cfg.k;
  if (nk > 20000 && !cfg.allow_large)
    throw ConfigError("n*k = " + std::to_string(nk) +
                      " exceeds the desk-scale limit 20000; pass --allow-large");

  const double c = c_param(base);
  const double bound = chain_bound(c, base.n, cfg.k, cfg.delta);
  const ReversibleChain lifted = lift_chain(base, cfg.k, cfg.master_seed, cfg.sampler);
  const bool connected = is_connected(lifted);
  if (!connected)
    std::cerr << "warning: lifted chain is not connected; spectral quantities "
                 "describe each component separately\n";
  const Spectrum nw = chain_new_eigenvalues(base, lifted);
  const double max_new_abs = nw.max_abs();
  const bool exceeded = max_new_abs > bound;

  std::string csv = "n,k,c_param,chain_bound,max_new_abs,exceeded\n";
  csv += std::to_string(base.n) + "," + std::to_string(cfg.k) + "," +
         format_double(c) + "," + format_double(bound) + "," +
         format_double(max_new_abs) + "," + (exceeded ? "true" : "false") + "\n";
  write_text_file(cfg.out_prefix + ".csv", csv);

  std::string json = "{\"n\":" + std::to_string(base.n) +
                     ",\"k\":" + std::to_string(cfg.k) +
                     ",\"seed\":" + std::to_string(cfg.master_seed) +
                     ",\"sampler\":\"" + to_string(cfg.sampler) + "\"" +
                     ",\"delta\":" + format_double(cfg.delta) +
                     ",\"c_param\":" + format_double(c) +
                     ",\"chain_bound\":" + format_double(bound) +
                     ",\"max_new_abs\":" + format_double(max_new_abs) +
                     ",\"exceeded\":" + (exceeded ? "true" : "false") +
                     ",\"connected\":" + std::string(connected ? "true" : "false") +
                     ",\"new_eigenvalues\":" + json_array(nw.values) + "}\n";
  write_text_file(cfg.out_prefix + ".json", json);

  std::cout << "markov: n=" << base.n << " k=" << cfg.k
            << " c_param=" << short_num(c) << " bound=" << short_num(bound)
            << " max_new_abs=" << short_num(max_new_abs)
            << " exceeded=" << (exceeded ? "true" : "false") << " -> "
            << cfg.out_prefix << ".csv " << cfg.out_prefix << ".json\n";
  return 0;
}

}  // namespace

int cli_main(int argc, const char* const* argv) {
  CLI::App app{"Random k-lifts of graphs: spectra, deviation bounds, experiments"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "liftspec 0.1.0");

  ExperimentArgs lift_args, spectrum_args, analyze_args, theorem1_args,
      corollary_args, markov_args, marginals_args, sharpness_args;
  std::string analyze_lift_file, markov_chain_file;

  CLI::App* lift_cmd = app.add_subcommand("lift", "Sample one k-lift and write its matchings");
  add_experiment_flags(lift_cmd, lift_args, "");

  CLI::App* spectrum_cmd =
      app.add_subcommand("spectrum", "Print sorted adjacency and Laplacian eigenvalues");
  add_experiment_flags(spectrum_cmd, spectrum_args, "");

  CLI::App* analyze_cmd = app.add_subcommand(
      "analyze", "Full deviation and bound report for one lift");
  add_experiment_flags(analyze_cmd, analyze_args, "");
  analyze_cmd->add_option("--lift", analyze_lift_file,
                          "Analyze this lift file instead of sampling");

  CLI::App* theorem1_cmd = app.add_subcommand(
      "theorem1", "Monte Carlo deviation-vs-bound experiment over k-lifts");
  add_experiment_flags(theorem1_cmd, theorem1_args, "theorem1");

  CLI::App* corollary_cmd = app.add_subcommand(
      "corollary", "Direct vs iterated lift distance experiment");
  add_experiment_flags(corollary_cmd, corollary_args, "corollary");

  CLI::App* markov_cmd = app.add_subcommand(
      "markov", "Lift a reversible chain and check its new spectrum");
  add_experiment_flags(markov_cmd, markov_args, "markov");
  markov_cmd->add_option("--chain", markov_chain_file,
                         "Chain file (text format); without it --graph gives "
                         "the simple random walk");

  CLI::App* marginals_cmd = app.add_subcommand(
      "marginals", "Empirical matching marginals for one base edge");
  add_experiment_flags(marginals_cmd, marginals_args, "marginals");

  CLI::App* sharpness_cmd = app.add_subcommand(
      "sharpness", "Distribution of max new eigenvalue over sqrt(d_max)");
  add_experiment_flags(sharpness_cmd, sharpness_args, "sharpness");

  try {
    app.parse(argc, argv);
    if (lift_cmd->parsed()) return run_lift(lift_args);
    if (spectrum_cmd->parsed()) return run_spectrum(spectrum_args);
    if (analyze_cmd->parsed()) return run_analyze(analyze_args, analyze_lift_file);
    if (theorem1_cmd->parsed()) return run_theorem1(theorem1_args);
    if (corollary_cmd->parsed()) return run_corollary(corollary_args);
    if (markov_cmd->parsed()) return run_markov(markov_args, markov_chain_file);
    if (marginals_cmd->parsed()) return run_marginals(marginals_args);
    if (sharpness_cmd->parsed()) return run_sharpness(sharpness_args);
    return 1;
  } catch (const CLI::ParseError& e) {
    // Usage problems exit 1 regardless of the CLI11-internal code; help and
    // version requests exit 0.
    return app.exit(e) == 0 ? 0 : 1;
  } catch (const EigenFailure& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 2;
  } catch (const SpectrumContainmentViolated& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace liftspec::cli
