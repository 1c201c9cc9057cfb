#include "liftspec/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <fstream>
#include <mutex>
#include <ostream>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "json_writer.hpp"
#include "liftspec/errors.hpp"
#include "liftspec/rng.hpp"

namespace liftspec {

namespace {

constexpr long long kDeskScaleLimit = 20000;

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  for (;;) {
    const std::size_t pos = s.find(sep, start);
    if (pos == std::string::npos) {
      parts.push_back(s.substr(start));
      return parts;
    }
    parts.push_back(s.substr(start, pos - start));
    start = pos + 1;
  }
}

long long parse_int(const std::string& s, const std::string& context) {
  long long v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size())
    throw ConfigError(context + ": expected an integer, got \"" + s + "\"");
  return v;
}

std::uint64_t parse_u64(const std::string& s, const std::string& context) {
  std::uint64_t v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size())
    throw ConfigError(context + ": expected an unsigned integer, got \"" + s + "\"");
  return v;
}

double parse_real(const std::string& s, const std::string& context) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size())
    throw ConfigError(context + ": expected a number, got \"" + s + "\"");
  return v;
}

// Runs per_trial(t) for t = 1..trials across the requested thread count.
// Trial t derives everything from its own subseed, so the partition of
// trials over threads cannot affect any result.
template <typename Fn>
void run_trials(int trials, int threads, Fn&& per_trial) {
  int pool_size = threads == 0
                      ? static_cast<int>(std::thread::hardware_concurrency())
                      : threads;
  pool_size = std::clamp(pool_size, 1, trials);
  if (pool_size == 1) {
    for (int t = 1; t <= trials; ++t) per_trial(t);
    return;
  }
  std::atomic<int> next{1};
  std::mutex err_mu;
  std::exception_ptr err;
  const auto worker = [&] {
    for (;;) {
      const int t = next.fetch_add(1);
      if (t > trials) return;
      try {
        per_trial(t);
      } catch (...) {
        const std::lock_guard<std::mutex> lock(err_mu);
        if (!err) err = std::current_exception();
        next.store(trials + 1);
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(pool_size));
  for (int i = 0; i < pool_size; ++i) pool.emplace_back(worker);
  for (std::thread& th : pool) th.join();
  if (err) std::rethrow_exception(err);
}

long long effective_k(const ExperimentConfig& cfg) {
  if (cfg.ks.empty()) return cfg.k;
  long long k = 1;
  for (const int kt : cfg.ks) {
    k *= kt;
    if (k > (1LL << 30)) throw ConfigError("stage list ks: product overflows");
  }
  return k;
}

}  // namespace

Graph resolve_graph_source(const std::string& source) {
  const std::size_t colon = source.find(':');
  if (colon == std::string::npos)
    throw ConfigError("graph source \"" + source +
                      "\": expected kind:args, e.g. complete:8, cycle:5, "
                      "cliques:2,4, er:10,0.4,7 or file:PATH");
  const std::string kind = source.substr(0, colon);
  const std::string rest = source.substr(colon + 1);
  try {
    if (kind == "complete")
      return complete_graph(static_cast<int>(parse_int(rest, source)));
    if (kind == "cycle")
      return cycle_graph(static_cast<int>(parse_int(rest, source)));
    if (kind == "cliques") {
      const auto parts = split(rest, ',');
      if (parts.size() != 2)
        throw ConfigError("graph source \"" + source +
                          "\": expected cliques:COPIES,SIZE");
      return disjoint_cliques(static_cast<int>(parse_int(parts[0], source)),
                              static_cast<int>(parse_int(parts[1], source)));
    }
    if (kind == "er") {
      const auto parts = split(rest, ',');
      if (parts.size() != 3)
        throw ConfigError("graph source \"" + source +
                          "\": expected er:N,P,SEED");
      return erdos_renyi(static_cast<int>(parse_int(parts[0], source)),
                         parse_real(parts[1], source),
                         parse_u64(parts[2], source));
    }
    if (kind == "file") {
      std::ifstream in(rest);
      if (!in)
        throw ConfigError("graph source \"" + source +
                          "\": cannot open file " + rest);
      return read_graph(in);
    }
  } catch (const InvalidParams& e) {
    throw ConfigError("graph source \"" + source + "\": " + e.what());
  }
  throw ConfigError("graph source \"" + source + "\": unknown kind \"" + kind +
                    "\"");
}

void validate_config(const ExperimentConfig& cfg, const Graph& g) {
  if (cfg.trials < 1) throw ConfigError("trials must be at least 1");
  if (!(cfg.delta > 0.0 && cfg.delta < 1.0))
    throw ConfigError("delta must lie in (0, 1)");
  if (cfg.threads < 0) throw ConfigError("threads must be nonnegative");
  if (cfg.k < 1) throw ConfigError("k must be at least 1");
  for (const int kt : cfg.ks)
    if (kt < 2) throw ConfigError("every stage order in ks must be at least 2");
  const long long nk = g.vertex_count() * effective_k(cfg);
  if (nk > kDeskScaleLimit && !cfg.allow_large)
    throw ConfigError("n*k = " + std::to_string(nk) + " exceeds the desk-scale limit " +
                      std::to_string(kDeskScaleLimit) +
                      "; pass --allow-large to proceed");
}

Theorem1Result run_theorem1_experiment(const ExperimentConfig& cfg) {
  const Graph g = resolve_graph_source(cfg.graph_source);
  validate_config(cfg, g);
  const detail::BaseContext ctx = detail::make_base_context(g, cfg.k);

  Theorem1Result res;
  res.config = cfg;
  res.n = ctx.n;
  res.d_min = ctx.deg.d_min;
  res.d_max = ctx.deg.d_max;

  const double adj_b = adjacency_bound(ctx.deg.d_max, ctx.n, cfg.k, cfg.delta);
  std::optional<double> lap_b;
  if (ctx.laplacian_ok)
    lap_b = laplacian_bound(ctx.deg.d_min, ctx.n, cfg.k, cfg.delta);

  res.records.assign(static_cast<std::size_t>(cfg.trials), TrialRecord{});
  std::vector<double> lap_lo(ctx.laplacian_ok ? cfg.trials : 0);
  std::vector<double> lap_hi(ctx.laplacian_ok ? cfg.trials : 0);

  run_trials(cfg.trials, cfg.threads, [&](int t) {
    const std::uint64_t seed_t =
        substream(cfg.master_seed, static_cast<std::uint64_t>(t));
    const LiftSpec spec = sample_lift(g, cfg.k, seed_t, cfg.sampler);
    const detail::TrialDeviation dev = detail::evaluate_lift(ctx, spec);
    TrialRecord r;
    r.trial = t;
    r.seed = seed_t;
    r.max_new_adj = dev.max_new_adj;
    r.dev_norm_adj = dev.dev_norm_adj;
    r.adjacency_bound = adj_b;
    r.exceeded_adjacency = dev.max_new_adj > adj_b;
    if (ctx.laplacian_ok) {
      r.max_new_lap_dev = dev.max_new_lap_dev;
      r.dev_norm_lap = dev.dev_norm_lap;
      r.laplacian_bound = lap_b;
      r.exceeded_laplacian = *dev.max_new_lap_dev > *lap_b;
      lap_lo[static_cast<std::size_t>(t) - 1] = *dev.lap_spectrum_min;
      lap_hi[static_cast<std::size_t>(t) - 1] = *dev.lap_spectrum_max;
    }
    res.records[static_cast<std::size_t>(t) - 1] = std::move(r);
  });

  ExperimentSummary& s = res.summary;
  s.trials = cfg.trials;
  s.laplacian_analyzed = ctx.laplacian_ok;
  for (const TrialRecord& r : res.records) {
    s.exceeded_adjacency_count += r.exceeded_adjacency ? 1 : 0;
    s.max_observed_new_adj = std::max(s.max_observed_new_adj, r.max_new_adj);
  }
  s.exceedance_fraction_adjacency =
      static_cast<double>(s.exceeded_adjacency_count) / cfg.trials;
  if (ctx.laplacian_ok) {
    int lap_count = 0;
    double lap_max = 0.0;
    for (const TrialRecord& r : res.records) {
      lap_count += *r.exceeded_laplacian ? 1 : 0;
      lap_max = std::max(lap_max, *r.max_new_lap_dev);
    }
    s.exceeded_laplacian_count = lap_count;
    s.exceedance_fraction_laplacian = static_cast<double>(lap_count) / cfg.trials;
    s.max_observed_new_lap_dev = lap_max;
    s.lap_spectrum_min = *std::min_element(lap_lo.begin(), lap_lo.end());
    s.lap_spectrum_max = *std::max_element(lap_hi.begin(), lap_hi.end());
  }
  return res;
}

CorollaryResult run_corollary_experiment(const ExperimentConfig& cfg) {
  const Graph g = resolve_graph_source(cfg.graph_source);
  if (cfg.ks.empty())
    throw ConfigError("corollary experiment requires a nonempty stage list ks");
  validate_config(cfg, g);
  const long long k = effective_k(cfg);
  const DegreeProfile deg = degrees(g);
  if (deg.d_min < 1)
    throw ConfigError(
        "corollary experiment requires every base degree to be positive");

  CorollaryResult res;
  res.config = cfg;
  res.n = g.vertex_count();
  res.k = k;
  res.d_min = deg.d_min;
  res.d_max = deg.d_max;
  const CorollaryBounds cb =
      corollary_bounds(deg.d_min, deg.d_max, res.n, k, cfg.delta);

  res.records.assign(static_cast<std::size_t>(cfg.trials), CorollaryTrialRecord{});
  run_trials(cfg.trials, cfg.threads, [&](int t) {
    const std::uint64_t seed_t =
        substream(cfg.master_seed, static_cast<std::uint64_t>(t));
    const LiftSpec direct =
        sample_uniform_lift(g, static_cast<int>(k), substream(seed_t, 1));
    const IteratedLift iter = iterated_lift(g, cfg.ks, substream(seed_t, 2));
    CorollaryTrialRecord r;
    r.trial = t;
    r.seed = seed_t;
    r.adj_distance =
        operator_norm(lift_adjacency(direct) - lift_adjacency(iter.induced));
    r.corollary_bound_adjacency = cb.adjacency;
    r.exceeded_adjacency = r.adj_distance > cb.adjacency;
    r.lap_distance =
        operator_norm(lift_laplacian(direct) - lift_laplacian(iter.induced));
    r.corollary_bound_laplacian = cb.laplacian;
    r.exceeded_laplacian = r.lap_distance > cb.laplacian;
    res.records[static_cast<std::size_t>(t) - 1] = r;
  });

  CorollarySummary& s = res.summary;
  s.trials = cfg.trials;
  for (const CorollaryTrialRecord& r : res.records) {
    s.exceeded_adjacency_count += r.exceeded_adjacency ? 1 : 0;
    s.exceeded_laplacian_count += r.exceeded_laplacian ? 1 : 0;
    s.max_adj_distance = std::max(s.max_adj_distance, r.adj_distance);
    s.max_lap_distance = std::max(s.max_lap_distance, r.lap_distance);
  }
  s.exceedance_fraction_adjacency =
      static_cast<double>(s.exceeded_adjacency_count) / cfg.trials;
  s.exceedance_fraction_laplacian =
      static_cast<double>(s.exceeded_laplacian_count) / cfg.trials;
  return res;
}

namespace {

void finalize_marginals(MarginalCheck& mc) {
  const double p = 1.0 / mc.k;
  mc.expected = p;
  mc.halfwidth =
      3.0 * std::sqrt(p * (1.0 - p) / static_cast<double>(mc.trials));
  mc.cells_outside = 0;
  for (const long long c : mc.counts) {
    const double freq = static_cast<double>(c) / static_cast<double>(mc.trials);
    if (std::fabs(freq - p) > mc.halfwidth) ++mc.cells_outside;
  }
  mc.pass = mc.cells_outside == 0;
}

}  // namespace

MarginalCheck run_marginal_check(const ExperimentConfig& cfg) {
  const Graph g = resolve_graph_source(cfg.graph_source);
  validate_config(cfg, g);
  if (g.edge_count() == 0)
    throw ConfigError("marginal check requires a base graph with an edge");
  const auto [i, j] = g.edges().front();

  MarginalCheck mc;
  mc.k = cfg.k;
  mc.trials = cfg.trials;
  mc.edge = {i, j};
  mc.counts.assign(static_cast<std::size_t>(cfg.k) * cfg.k, 0);
  for (int t = 1; t <= cfg.trials; ++t) {
    const std::uint64_t seed_t =
        substream(cfg.master_seed, static_cast<std::uint64_t>(t));
    // Equal to the matching sample_lift(g, k, seed_t, sampler) would give
    // this edge: per-edge streams depend only on the endpoints and seed.
    const Matching m =
        sample_matching(cfg.k,
                        substream(seed_t, static_cast<std::uint64_t>(i),
                                  static_cast<std::uint64_t>(j)),
                        cfg.sampler);
    for (int l = 1; l <= cfg.k; ++l)
      ++mc.counts[static_cast<std::size_t>(l - 1) * cfg.k + m.to[l - 1] - 1];
  }
  finalize_marginals(mc);
  return mc;
}

MarginalCheck run_iterated_marginal_check(const ExperimentConfig& cfg) {
  const Graph g = resolve_graph_source(cfg.graph_source);
  if (cfg.ks.empty())
    throw ConfigError("iterated marginal check requires a stage list ks");
  validate_config(cfg, g);
  if (g.edge_count() == 0)
    throw ConfigError("marginal check requires a base graph with an edge");
  const auto edge = g.edges().front();
  const int k = static_cast<int>(effective_k(cfg));

  // The induced matching of one base edge depends only on the stage
  // matchings between its own vertex blocks, and per-edge streams are keyed
  // by global vertex labels. Iterating the single-edge subgraph therefore
  // reproduces exactly the matching the full graph would induce.
  const Graph mini(g.vertex_count(), {edge});

  MarginalCheck mc;
  mc.k = k;
  mc.trials = cfg.trials;
  mc.edge = edge;
  mc.counts.assign(static_cast<std::size_t>(k) * k, 0);
  for (int t = 1; t <= cfg.trials; ++t) {
    const std::uint64_t seed_t =
        substream(cfg.master_seed, static_cast<std::uint64_t>(t));
    const IteratedLift iter = iterated_lift(mini, cfg.ks, seed_t);
    const Matching& m = iter.induced.matchings.front();
    for (int l = 1; l <= k; ++l)
      ++mc.counts[static_cast<std::size_t>(l - 1) * k + m.to[l - 1] - 1];
  }
  finalize_marginals(mc);
  return mc;
}

SharpnessResult run_sharpness_probe(const ExperimentConfig& cfg) {
  const Graph g = resolve_graph_source(cfg.graph_source);
  validate_config(cfg, g);
  const DegreeProfile deg = degrees(g);
  const Spectrum base_spectrum = sym_eigenvalues(adjacency(g));

  SharpnessResult res;
  res.config = cfg;
  res.n = g.vertex_count();
  res.d_max = deg.d_max;
  res.adjacency_bound = adjacency_bound(deg.d_max, res.n, cfg.k, cfg.delta);
  const double sqrt_dmax = std::sqrt(static_cast<double>(deg.d_max));

  res.records.assign(static_cast<std::size_t>(cfg.trials), SharpnessRecord{});
  run_trials(cfg.trials, cfg.threads, [&](int t) {
    const std::uint64_t seed_t =
        substream(cfg.master_seed, static_cast<std::uint64_t>(t));
    const LiftSpec spec = sample_lift(g, cfg.k, seed_t, cfg.sampler);
    const Spectrum big = sym_eigenvalues(lift_adjacency(spec));
    const MultisetDiff diff = multiset_diff(big, base_spectrum,
                                            spectrum_match_tol(big.max_abs()));
    if (diff.match_failure)
      throw SpectrumContainmentViolated(
          "sharpness probe: base spectrum not contained in lift spectrum");
    SharpnessRecord r;
    r.trial = t;
    r.seed = seed_t;
    r.max_new_adj = diff.values.max_abs();
    r.ratio_sqrt_dmax = sqrt_dmax > 0.0 ? r.max_new_adj / sqrt_dmax : 0.0;
    r.ratio_bound =
        res.adjacency_bound > 0.0 ? r.max_new_adj / res.adjacency_bound : 0.0;
    res.records[static_cast<std::size_t>(t) - 1] = r;
  });

  double sum = 0.0;
  for (const SharpnessRecord& r : res.records) {
    res.max_ratio_sqrt_dmax = std::max(res.max_ratio_sqrt_dmax, r.ratio_sqrt_dmax);
    sum += r.ratio_sqrt_dmax;
  }
  res.mean_ratio_sqrt_dmax = sum / cfg.trials;
  return res;
}

namespace {

std::string opt_num(const std::optional<double>& v) {
  return v ? format_double(*v) : std::string();
}

std::string opt_bool(const std::optional<bool>& v) {
  if (!v) return std::string();
  return *v ? "true" : "false";
}

const char* bool_text(bool v) { return v ? "true" : "false"; }

std::string json_int_array(const std::vector<int>& xs) {
  std::string out = "[";
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(xs[i]);
  }
  out += ']';
  return out;
}

std::string config_json(const ExperimentConfig& cfg) {
  internal::JsonObject o;
  o.field("graph_source", cfg.graph_source);
  o.field("k", cfg.k);
  o.field_raw("ks", json_int_array(cfg.ks));
  o.field("sampler", std::string(to_string(cfg.sampler)));
  o.field("trials", cfg.trials);
  o.field("delta", cfg.delta);
  o.field_u64("master_seed", cfg.master_seed);
  o.field("out_prefix", cfg.out_prefix);
  o.field("threads", cfg.threads);
  o.field("allow_large", cfg.allow_large);
  return o.str();
}

std::string summary_json(const ExperimentSummary& s) {
  internal::JsonObject o;
  o.field("trials", s.trials);
  o.field("laplacian_analyzed", s.laplacian_analyzed);
  o.field("exceeded_adjacency_count", s.exceeded_adjacency_count);
  o.field("exceedance_fraction_adjacency", s.exceedance_fraction_adjacency);
  if (s.exceeded_laplacian_count)
    o.field("exceeded_laplacian_count", *s.exceeded_laplacian_count);
  else
    o.field_null("exceeded_laplacian_count");
  if (s.exceedance_fraction_laplacian)
    o.field("exceedance_fraction_laplacian", *s.exceedance_fraction_laplacian);
  else
    o.field_null("exceedance_fraction_laplacian");
  o.field("max_observed_new_adj", s.max_observed_new_adj);
  if (s.max_observed_new_lap_dev)
    o.field("max_observed_new_lap_dev", *s.max_observed_new_lap_dev);
  else
    o.field_null("max_observed_new_lap_dev");
  if (s.lap_spectrum_min)
    o.field("lap_spectrum_min", *s.lap_spectrum_min);
  else
    o.field_null("lap_spectrum_min");
  if (s.lap_spectrum_max)
    o.field("lap_spectrum_max", *s.lap_spectrum_max);
  else
    o.field_null("lap_spectrum_max");
  return o.str();
}

}  // namespace

void write_csv(std::ostream& out, const Theorem1Result& result) {
  out << "trial,seed,max_new_adj,dev_norm_adj,adjacency_bound,exceeded_adj,"
         "max_new_lap_dev,dev_norm_lap,laplacian_bound,exceeded_lap\n";
  for (const TrialRecord& r : result.records) {
    out << r.trial << ',' << r.seed << ',' << format_double(r.max_new_adj)
        << ',' << format_double(r.dev_norm_adj) << ','
        << format_double(r.adjacency_bound) << ','
        << bool_text(r.exceeded_adjacency) << ',' << opt_num(r.max_new_lap_dev)
        << ',' << opt_num(r.dev_norm_lap) << ',' << opt_num(r.laplacian_bound)
        << ',' << opt_bool(r.exceeded_laplacian) << '\n';
  }
}

void write_csv(std::ostream& out, const CorollaryResult& result) {
  out << "trial,seed,adj_distance,corollary_bound_adjacency,exceeded_adj,"
         "lap_distance,corollary_bound_laplacian,exceeded_lap\n";
  for (const CorollaryTrialRecord& r : result.records) {
    out << r.trial << ',' << r.seed << ',' << format_double(r.adj_distance)
        << ',' << format_double(r.corollary_bound_adjacency) << ','
        << bool_text(r.exceeded_adjacency) << ','
        << format_double(r.lap_distance) << ','
        << format_double(r.corollary_bound_laplacian) << ','
        << bool_text(r.exceeded_laplacian) << '\n';
  }
}

void write_csv(std::ostream& out, const MarginalCheck& check) {
  out << "l,r,count,frequency,expected,halfwidth,within\n";
  for (int l = 1; l <= check.k; ++l) {
    for (int r = 1; r <= check.k; ++r) {
      const long long c =
          check.counts[static_cast<std::size_t>(l - 1) * check.k + r - 1];
      const double freq =
          static_cast<double>(c) / static_cast<double>(check.trials);
      out << l << ',' << r << ',' << c << ',' << format_double(freq) << ','
          << format_double(check.expected) << ','
          << format_double(check.halfwidth) << ','
          << bool_text(std::fabs(freq - check.expected) <= check.halfwidth)
          << '\n';
    }
  }
}

void write_csv(std::ostream& out, const SharpnessResult& result) {
  out << "trial,seed,max_new_adj,ratio_sqrt_dmax,ratio_bound\n";
  for (const SharpnessRecord& r : result.records) {
    out << r.trial << ',' << r.seed << ',' << format_double(r.max_new_adj)
        << ',' << format_double(r.ratio_sqrt_dmax) << ','
        << format_double(r.ratio_bound) << '\n';
  }
}

std::string to_json(const Theorem1Result& result) {
  std::string records = "[";
  for (std::size_t idx = 0; idx < result.records.size(); ++idx) {
    const TrialRecord& r = result.records[idx];
    internal::JsonObject o;
    o.field("trial", r.trial);
    o.field_u64("seed", r.seed);
    o.field("max_new_adj", r.max_new_adj);
    o.field("dev_norm_adj", r.dev_norm_adj);
    o.field("adjacency_bound", r.adjacency_bound);
    o.field("exceeded_adjacency", r.exceeded_adjacency);
    if (r.max_new_lap_dev)
      o.field("max_new_lap_dev", *r.max_new_lap_dev);
    else
      o.field_null("max_new_lap_dev");
    if (r.dev_norm_lap)
      o.field("dev_norm_lap", *r.dev_norm_lap);
    else
      o.field_null("dev_norm_lap");
    if (r.laplacian_bound)
      o.field("laplacian_bound", *r.laplacian_bound);
    else
      o.field_null("laplacian_bound");
    if (r.exceeded_laplacian)
      o.field("exceeded_laplacian", *r.exceeded_laplacian);
    else
      o.field_null("exceeded_laplacian");
    if (idx) records += ',';
    records += o.str();
  }
  records += ']';

  internal::JsonObject top;
  top.field_raw("config", config_json(result.config));
  top.field("n", static_cast<long long>(result.n));
  top.field("d_min", result.d_min);
  top.field("d_max", result.d_max);
  top.field_raw("summary", summary_json(result.summary));
  top.field_raw("records", records);
  return top.str();
}

std::string to_json(const CorollaryResult& result) {
  std::string records = "[";
  for (std::size_t idx = 0; idx < result.records.size(); ++idx) {
    const CorollaryTrialRecord& r = result.records[idx];
    internal::JsonObject o;
    o.field("trial", r.trial);
    o.field_u64("seed", r.seed);
    o.field("adj_distance", r.adj_distance);
    o.field("corollary_bound_adjacency", r.corollary_bound_adjacency);
    o.field("exceeded_adjacency", r.exceeded_adjacency);
    o.field("lap_distance", r.lap_distance);
    o.field("corollary_bound_laplacian", r.corollary_bound_laplacian);
    o.field("exceeded_laplacian", r.exceeded_laplacian);
    if (idx) records += ',';
    records += o.str();
  }
  records += ']';

  internal::JsonObject summary;
  summary.field("trials", result.summary.trials);
  summary.field("exceeded_adjacency_count", result.summary.exceeded_adjacency_count);
  summary.field("exceedance_fraction_adjacency",
                result.summary.exceedance_fraction_adjacency);
  summary.field("exceeded_laplacian_count", result.summary.exceeded_laplacian_count);
  summary.field("exceedance_fraction_laplacian",
                result.summary.exceedance_fraction_laplacian);
  summary.field("max_adj_distance", result.summary.max_adj_distance);
  summary.field("max_lap_distance", result.summary.max_lap_distance);

  internal::JsonObject top;
  top.field_raw("config", config_json(result.config));
  top.field("n", static_cast<long long>(result.n));
  top.field("k", static_cast<long long>(result.k));
  top.field("d_min", result.d_min);
  top.field("d_max", result.d_max);
  top.field_raw("summary", summary.str());
  top.field_raw("records", records);
  return top.str();
}

std::string to_json(const MarginalCheck& check) {
  std::string rows = "[";
  for (int l = 0; l < check.k; ++l) {
    if (l) rows += ',';
    rows += '[';
    for (int r = 0; r < check.k; ++r) {
      if (r) rows += ',';
      rows +=
          std::to_string(check.counts[static_cast<std::size_t>(l) * check.k + r]);
    }
    rows += ']';
  }
  rows += ']';

  internal::JsonObject top;
  top.field("k", check.k);
  top.field("trials", static_cast<long long>(check.trials));
  top.field_raw("edge", "[" + std::to_string(check.edge.first) + "," +
                            std::to_string(check.edge.second) + "]");
  top.field("expected", check.expected);
  top.field("halfwidth", check.halfwidth);
  top.field("cells_outside", check.cells_outside);
  top.field("pass", check.pass);
  top.field_raw("counts", rows);
  return top.str();
}

std::string to_json(const SharpnessResult& result) {
  std::string records = "[";
  for (std::size_t idx = 0; idx < result.records.size(); ++idx) {
    const SharpnessRecord& r = result.records[idx];
    internal::JsonObject o;
    o.field("trial", r.trial);
    o.field_u64("seed", r.seed);
    o.field("max_new_adj", r.max_new_adj);
    o.field("ratio_sqrt_dmax", r.ratio_sqrt_dmax);
    o.field("ratio_bound", r.ratio_bound);
    if (idx) records += ',';
    records += o.str();
  }
  records += ']';

  internal::JsonObject top;
  top.field_raw("config", config_json(result.config));
  top.field("n", static_cast<long long>(result.n));
  top.field("d_max", result.d_max);
  top.field("adjacency_bound", result.adjacency_bound);
  top.field("max_ratio_sqrt_dmax", result.max_ratio_sqrt_dmax);
  top.field("mean_ratio_sqrt_dmax", result.mean_ratio_sqrt_dmax);
  top.field_raw("records", records);
  return top.str();
}

}  // namespace liftspec
