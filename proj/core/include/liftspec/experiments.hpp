#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "liftspec/format.hpp"
#include "liftspec/graph.hpp"
#include "liftspec/lift.hpp"
#include "liftspec/spectral.hpp"

namespace liftspec {

// A reproducible Monte Carlo run. Every experiment is fully determined by
// this struct: trial t draws from substream(master_seed, t), so results do
// not depend on the number of threads or on scheduling.
struct ExperimentConfig {
  // Generator spec ("complete:20", "cycle:8", "cliques:2,4",
  // "er:10,0.4,7") or "file:PATH" for the text graph format.
  std::string graph_source;
  int k = 1;
  std::vector<int> ks;  // iterated-lift stages; used by corollary runs
  Sampler sampler = Sampler::uniform;
  int trials = 1;
  double delta = 0.05;
  std::uint64_t master_seed = 0;
  // Prefix for CSV/JSON outputs ("report" writes report.csv and
  // report.json). Empty means the caller handles output itself.
  std::string out_prefix;
  int threads = 1;  // 0 = hardware concurrency
  bool allow_large = false;
};

Graph resolve_graph_source(const std::string& source);

// Validates trials >= 1, delta in (0,1), k or ks sane, and the desk-scale
// guardrail: n * k <= 20000 unless allow_large. Throws ConfigError.
void validate_config(const ExperimentConfig& cfg, const Graph& g);

// One Monte Carlo trial of the main-theorem experiment. Laplacian fields
// are absent (not zero) when the base graph has an isolated vertex.
struct TrialRecord {
  int trial = 0;
  std::uint64_t seed = 0;
  double max_new_adj = 0.0;
  double dev_norm_adj = 0.0;
  double adjacency_bound = 0.0;
  bool exceeded_adjacency = false;
  std::optional<double> max_new_lap_dev;  // max |1 - beta| over new eigs
  std::optional<double> dev_norm_lap;
  std::optional<double> laplacian_bound;
  std::optional<bool> exceeded_laplacian;
};

struct ExperimentSummary {
  int trials = 0;
  bool laplacian_analyzed = false;
  int exceeded_adjacency_count = 0;
  double exceedance_fraction_adjacency = 0.0;
  std::optional<int> exceeded_laplacian_count;
  std::optional<double> exceedance_fraction_laplacian;
  double max_observed_new_adj = 0.0;
  std::optional<double> max_observed_new_lap_dev;
  // Range of the full lifted-Laplacian spectrum over all trials; stays
  // within [0, 2] up to roundoff.
  std::optional<double> lap_spectrum_min;
  std::optional<double> lap_spectrum_max;
};

struct Theorem1Result {
  ExperimentConfig config;
  long long n = 0;
  int d_min = 0;
  int d_max = 0;
  std::vector<TrialRecord> records;  // in trial order regardless of threads
  ExperimentSummary summary;
};

// trials independent k-lifts; per trial, the new-eigenvalue extremes and
// deviation norms against the fixed high-probability bounds at delta.
// The empirical exceedance fraction estimates the failure probability,
// which the bound guarantees is at most delta.
Theorem1Result run_theorem1_experiment(const ExperimentConfig& cfg);

// One trial of the direct-vs-iterated comparison: an independent pair
// (direct uniform k-lift, iterated k_1..k_s-lift), and the operator-norm
// distances between their adjacency (resp. Laplacian) matrices. The runner
// requires positive base degrees, so the Laplacian half is always present.
struct CorollaryTrialRecord {
  int trial = 0;
  std::uint64_t seed = 0;
  double adj_distance = 0.0;
  double corollary_bound_adjacency = 0.0;
  bool exceeded_adjacency = false;
  double lap_distance = 0.0;
  double corollary_bound_laplacian = 0.0;
  bool exceeded_laplacian = false;
};

struct CorollarySummary {
  int trials = 0;
  int exceeded_adjacency_count = 0;
  double exceedance_fraction_adjacency = 0.0;
  int exceeded_laplacian_count = 0;
  double exceedance_fraction_laplacian = 0.0;
  double max_adj_distance = 0.0;
  double max_lap_distance = 0.0;
};

struct CorollaryResult {
  ExperimentConfig config;
  long long n = 0;
  long long k = 1;  // product of config.ks
  int d_min = 0;
  int d_max = 0;
  std::vector<CorollaryTrialRecord> records;
  CorollarySummary summary;
};

// pre: every ks entry >= 2; base degrees > 0 for the Laplacian half.
CorollaryResult run_corollary_experiment(const ExperimentConfig& cfg);

// Empirical per-cell matching frequencies for one designated base edge
// (the first edge in canonical order), against the exact-1/k marginal
// hypothesis at 3-sigma binomial resolution.
struct MarginalCheck {
  int k = 1;
  long long trials = 0;
  std::pair<int, int> edge;     // the designated base edge
  std::vector<long long> counts;  // row-major k x k; (l, r) counts sigma[l] == r
  double expected = 1.0;          // 1/k
  double halfwidth = 0.0;         // 3 sqrt((1/k)(1 - 1/k) / trials)
  int cells_outside = 0;
  bool pass = true;
};

MarginalCheck run_marginal_check(const ExperimentConfig& cfg);

// Same tally over the induced matchings of iterated lifts (stages cfg.ks),
// verifying that composition preserves the exact 1/k marginals.
MarginalCheck run_iterated_marginal_check(const ExperimentConfig& cfg);

// Exploratory only: distribution of max_new_adj / sqrt(d_max) and
// max_new_adj / adjacency_bound. No acceptance threshold is attached.
struct SharpnessRecord {
  int trial = 0;
  std::uint64_t seed = 0;
  double max_new_adj = 0.0;
  double ratio_sqrt_dmax = 0.0;
  double ratio_bound = 0.0;
};

struct SharpnessResult {
  ExperimentConfig config;
  long long n = 0;
  int d_max = 0;
  double adjacency_bound = 0.0;
  std::vector<SharpnessRecord> records;
  double max_ratio_sqrt_dmax = 0.0;
  double mean_ratio_sqrt_dmax = 0.0;
};

SharpnessResult run_sharpness_probe(const ExperimentConfig& cfg);

// CSV emission. Columns are fixed: trial, seed, max_new_adj, dev_norm_adj,
// adjacency_bound, exceeded_adj, max_new_lap_dev, dev_norm_lap,
// laplacian_bound, exceeded_lap. Skipped Laplacian analyses leave their
// four fields empty rather than writing zeros. Floats carry 17 significant
// digits; lines end with LF; identical results give identical bytes.
void write_csv(std::ostream& out, const Theorem1Result& result);
void write_csv(std::ostream& out, const CorollaryResult& result);
void write_csv(std::ostream& out, const MarginalCheck& check);
void write_csv(std::ostream& out, const SharpnessResult& result);

std::string to_json(const Theorem1Result& result);
std::string to_json(const CorollaryResult& result);
std::string to_json(const MarginalCheck& check);
std::string to_json(const SharpnessResult& result);

}  // namespace liftspec
