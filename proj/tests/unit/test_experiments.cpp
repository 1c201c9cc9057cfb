// Experiment runners: graph-source resolution, config validation, the
// Monte Carlo drivers, thread-count independence, and the CSV/JSON formats.

#include <doctest.h>

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "liftspec/errors.hpp"
#include "liftspec/experiments.hpp"
#include "liftspec/rng.hpp"
#include "liftspec/spectral.hpp"

using namespace liftspec;

namespace {

ExperimentConfig base_config(const std::string& source, int k, int trials,
                             std::uint64_t seed) {
  ExperimentConfig cfg;
  cfg.graph_source = source;
  cfg.k = k;
  cfg.trials = trials;
  cfg.master_seed = seed;
  return cfg;
}

std::filesystem::path write_temp_graph(const std::string& name,
                                       const std::string& text) {
  const std::filesystem::path path =
      std::filesystem::temp_directory_path() / name;
  std::ofstream out(path);
  out << text;
  return path;
}

std::string csv_of(const Theorem1Result& r) {
  std::ostringstream out;
  write_csv(out, r);
  return out.str();
}

}  // namespace

TEST_SUITE("experiments") {

TEST_CASE("graph sources resolve") {
  CHECK(resolve_graph_source("complete:4").edge_count() == 6);
  CHECK(resolve_graph_source("cycle:5").edge_count() == 5);
  CHECK(resolve_graph_source("cliques:2,3").vertex_count() == 6);
  const Graph er = resolve_graph_source("er:10,0.4,7");
  CHECK(er.vertex_count() == 10);
  CHECK(er == erdos_renyi(10, 0.4, 7));

  const auto path = write_temp_graph("liftspec_src.txt", "3 1\n1 2\n");
  const Graph from_file =
      resolve_graph_source("file:" + path.string());
  CHECK(from_file.vertex_count() == 3);
  CHECK(from_file.edge_count() == 1);
  std::filesystem::remove(path);
}

TEST_CASE("malformed graph sources raise config errors") {
  CHECK_THROWS_AS((void)resolve_graph_source(""), ConfigError);
  CHECK_THROWS_AS((void)resolve_graph_source("complete"), ConfigError);
  CHECK_THROWS_AS((void)resolve_graph_source("complete:abc"), ConfigError);
  CHECK_THROWS_AS((void)resolve_graph_source("complete:0"), ConfigError);
  CHECK_THROWS_AS((void)resolve_graph_source("cycle:2"), ConfigError);
  CHECK_THROWS_AS((void)resolve_graph_source("cliques:2"), ConfigError);
  CHECK_THROWS_AS((void)resolve_graph_source("er:5,1.5,1"), ConfigError);
  CHECK_THROWS_AS((void)resolve_graph_source("torus:3"), ConfigError);
  CHECK_THROWS_AS((void)resolve_graph_source("file:/no/such/liftspec_graph"),
                  ConfigError);
}

TEST_CASE("config validation") {
  const Graph g = complete_graph(3);
  ExperimentConfig cfg = base_config("complete:3", 2, 4, 1);
  CHECK_NOTHROW(validate_config(cfg, g));

  ExperimentConfig bad = cfg;
  bad.trials = 0;
  CHECK_THROWS_AS(validate_config(bad, g), ConfigError);
  bad = cfg;
  bad.delta = 0.0;
  CHECK_THROWS_AS(validate_config(bad, g), ConfigError);
  bad = cfg;
  bad.delta = 1.0;
  CHECK_THROWS_AS(validate_config(bad, g), ConfigError);
  bad = cfg;
  bad.threads = -1;
  CHECK_THROWS_AS(validate_config(bad, g), ConfigError);
  bad = cfg;
  bad.k = 0;
  CHECK_THROWS_AS(validate_config(bad, g), ConfigError);
  bad = cfg;
  bad.ks = {2, 1};
  CHECK_THROWS_AS(validate_config(bad, g), ConfigError);

  // Desk-scale guardrail: n * k above 20000 needs an explicit opt-in.
  bad = cfg;
  bad.k = 7000;
  CHECK_THROWS_AS(validate_config(bad, g), ConfigError);
  bad.allow_large = true;
  CHECK_NOTHROW(validate_config(bad, g));
}

TEST_CASE("main experiment on a single edge") {
  // Every 2-lift of a single edge is two disjoint edges, so the extremes
  // are pinned: new adjacency eigenvalue 1, new Laplacian deviation 1.
  ExperimentConfig cfg = base_config("complete:2", 2, 4, 99);
  const Theorem1Result res = run_theorem1_experiment(cfg);

  CHECK(res.n == 2);
  CHECK(res.d_min == 1);
  CHECK(res.d_max == 1);
  CHECK(res.records.size() == 4);
  for (int t = 1; t <= 4; ++t) {
    const TrialRecord& rec = res.records[static_cast<std::size_t>(t) - 1];
    CHECK(rec.trial == t);
    CHECK(rec.seed == substream(99, static_cast<std::uint64_t>(t)));
    CHECK(rec.max_new_adj == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(rec.adjacency_bound ==
          doctest::Approx(adjacency_bound(1, 2, 2, cfg.delta)).epsilon(1e-15));
    CHECK_FALSE(rec.exceeded_adjacency);
    REQUIRE(rec.max_new_lap_dev.has_value());
    CHECK(*rec.max_new_lap_dev == doctest::Approx(1.0).epsilon(1e-9));
    CHECK_FALSE(*rec.exceeded_laplacian);
  }
  CHECK(res.summary.trials == 4);
  CHECK(res.summary.laplacian_analyzed);
  CHECK(res.summary.exceeded_adjacency_count == 0);
  CHECK(res.summary.exceedance_fraction_adjacency == 0.0);
  CHECK(res.summary.max_observed_new_adj == doctest::Approx(1.0).epsilon(1e-9));
  REQUIRE(res.summary.lap_spectrum_min.has_value());
  CHECK(*res.summary.lap_spectrum_min >= -1e-8);
  CHECK(*res.summary.lap_spectrum_max <= 2.0 + 1e-8);
}

TEST_CASE("k = 1 lifts add nothing") {
  const Theorem1Result res =
      run_theorem1_experiment(base_config("complete:2", 1, 1, 3));
  const TrialRecord& rec = res.records.at(0);
  CHECK(rec.max_new_adj == 0.0);
  CHECK(rec.dev_norm_adj <= 1e-12);
  CHECK_FALSE(rec.exceeded_adjacency);
  CHECK(*rec.max_new_lap_dev == 0.0);
  CHECK(*res.summary.lap_spectrum_min == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(*res.summary.lap_spectrum_max == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("results do not depend on the thread count") {
  ExperimentConfig cfg = base_config("complete:3", 3, 6, 2024);
  cfg.threads = 1;
  const Theorem1Result seq = run_theorem1_experiment(cfg);
  cfg.threads = 4;
  const Theorem1Result par = run_theorem1_experiment(cfg);

  CHECK(csv_of(seq) == csv_of(par));
  // The JSON config block records the thread count; everything else must
  // be identical.
  auto a = nlohmann::json::parse(to_json(seq));
  auto b = nlohmann::json::parse(to_json(par));
  CHECK(a["config"]["threads"] == 1);
  CHECK(b["config"]["threads"] == 4);
  a["config"].erase("threads");
  b["config"].erase("threads");
  CHECK(a == b);
}

TEST_CASE("isolated vertices skip the Laplacian half") {
  const auto path = write_temp_graph("liftspec_isolated.txt", "3 1\n1 2\n");
  const Theorem1Result res =
      run_theorem1_experiment(base_config("file:" + path.string(), 2, 2, 5));
  std::filesystem::remove(path);

  CHECK(res.d_min == 0);
  CHECK_FALSE(res.summary.laplacian_analyzed);
  CHECK_FALSE(res.summary.exceeded_laplacian_count.has_value());
  CHECK_FALSE(res.summary.lap_spectrum_min.has_value());
  for (const TrialRecord& rec : res.records) {
    CHECK_FALSE(rec.max_new_lap_dev.has_value());
    CHECK_FALSE(rec.laplacian_bound.has_value());
  }
  // Absent analyses leave their CSV fields empty rather than zero.
  std::istringstream rows(csv_of(res));
  std::string line;
  std::getline(rows, line);  // header
  std::getline(rows, line);
  CHECK(line.substr(line.size() - 4) == ",,,,");
}

TEST_CASE("direct and iterated lifts stay close") {
  ExperimentConfig cfg = base_config("complete:4", 1, 3, 17);
  cfg.ks = {2};
  const CorollaryResult res = run_corollary_experiment(cfg);
  CHECK(res.n == 4);
  CHECK(res.k == 2);
  CHECK(res.records.size() == 3);
  const auto [adj_b, lap_b] = corollary_bounds(3, 3, 4, 2, cfg.delta);
  for (const CorollaryTrialRecord& rec : res.records) {
    CHECK(rec.adj_distance >= 0.0);
    CHECK(rec.corollary_bound_adjacency == doctest::Approx(adj_b).epsilon(1e-15));
    CHECK(rec.corollary_bound_laplacian == doctest::Approx(lap_b).epsilon(1e-15));
  }
  CHECK(res.summary.trials == 3);
  CHECK(res.summary.max_adj_distance >= 0.0);
}

TEST_CASE("corollary runner validates its inputs") {
  ExperimentConfig cfg = base_config("complete:4", 1, 2, 1);
  CHECK_THROWS_AS((void)run_corollary_experiment(cfg), ConfigError);  // no ks

  cfg.ks = {2, 1};
  CHECK_THROWS_AS((void)run_corollary_experiment(cfg), ConfigError);

  const auto path = write_temp_graph("liftspec_isolated2.txt", "3 1\n1 2\n");
  ExperimentConfig iso = base_config("file:" + path.string(), 1, 2, 1);
  iso.ks = {2};
  CHECK_THROWS_AS((void)run_corollary_experiment(iso), ConfigError);
  std::filesystem::remove(path);
}

TEST_CASE("matching marginals are uniform") {
  ExperimentConfig cfg = base_config("complete:3", 4, 10000, 6);
  const MarginalCheck mc = run_marginal_check(cfg);
  CHECK(mc.k == 4);
  CHECK(mc.trials == 10000);
  CHECK(mc.edge == std::pair<int, int>(1, 2));
  CHECK(mc.counts.size() == 16);
  long long total = 0;
  for (const long long c : mc.counts) total += c;
  CHECK(total == 4 * 10000);  // each trial places every left cell once
  CHECK(mc.expected == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(mc.halfwidth ==
        doctest::Approx(3.0 * std::sqrt(0.25 * 0.75 / 10000.0)).epsilon(1e-12));
  CHECK(mc.cells_outside == 0);
  CHECK(mc.pass);

  // The cyclic sampler has the same exact marginals.
  cfg.sampler = Sampler::cyclic;
  CHECK(run_marginal_check(cfg).pass);

  // k = 1 is the degenerate certainty case.
  cfg = base_config("complete:3", 1, 50, 5);
  const MarginalCheck one = run_marginal_check(cfg);
  CHECK(one.counts == std::vector<long long>{50});
  CHECK(one.pass);
}

TEST_CASE("iterated lifts keep uniform marginals") {
  ExperimentConfig cfg = base_config("complete:3", 1, 6000, 11);
  cfg.ks = {2, 3};
  const MarginalCheck mc = run_iterated_marginal_check(cfg);
  CHECK(mc.k == 6);
  CHECK(mc.counts.size() == 36);
  CHECK(mc.pass);

  ExperimentConfig missing = base_config("complete:3", 1, 100, 11);
  CHECK_THROWS_AS((void)run_iterated_marginal_check(missing), ConfigError);
}

TEST_CASE("sharpness probe on a single edge") {
  // d_max = 1 and max_new_adj = 1, so the sqrt(d_max) ratio is exactly 1.
  ExperimentConfig cfg = base_config("complete:2", 2, 3, 8);
  const SharpnessResult res = run_sharpness_probe(cfg);
  CHECK(res.d_max == 1);
  CHECK(res.records.size() == 3);
  for (const SharpnessRecord& rec : res.records)
    CHECK(rec.ratio_sqrt_dmax == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(res.max_ratio_sqrt_dmax == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(res.mean_ratio_sqrt_dmax == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("CSV headers are pinned") {
  const Theorem1Result t1 =
      run_theorem1_experiment(base_config("complete:2", 2, 1, 1));
  std::istringstream t1_rows(csv_of(t1));
  std::string header;
  std::getline(t1_rows, header);
  CHECK(header ==
        "trial,seed,max_new_adj,dev_norm_adj,adjacency_bound,exceeded_adj,"
        "max_new_lap_dev,dev_norm_lap,laplacian_bound,exceeded_lap");

  ExperimentConfig ccfg = base_config("complete:3", 1, 1, 1);
  ccfg.ks = {2};
  std::ostringstream cor;
  write_csv(cor, run_corollary_experiment(ccfg));
  CHECK(cor.str().substr(0, cor.str().find('\n')) ==
        "trial,seed,adj_distance,corollary_bound_adjacency,exceeded_adj,"
        "lap_distance,corollary_bound_laplacian,exceeded_lap");

  std::ostringstream marg;
  write_csv(marg, run_marginal_check(base_config("complete:2", 2, 10, 1)));
  CHECK(marg.str().substr(0, marg.str().find('\n')) ==
        "l,r,count,frequency,expected,halfwidth,within");

  std::ostringstream sharp;
  write_csv(sharp, run_sharpness_probe(base_config("complete:2", 2, 1, 1)));
  CHECK(sharp.str().substr(0, sharp.str().find('\n')) ==
        "trial,seed,max_new_adj,ratio_sqrt_dmax,ratio_bound");
}

TEST_CASE("JSON reports parse and echo the run") {
  ExperimentConfig cfg = base_config("cycle:4", 3, 2, 77);
  const Theorem1Result res = run_theorem1_experiment(cfg);
  const auto doc = nlohmann::json::parse(to_json(res));
  CHECK(doc["config"]["graph_source"] == "cycle:4");
  CHECK(doc["config"]["k"] == 3);
  CHECK(doc["config"]["master_seed"] == 77);
  CHECK(doc["n"] == 4);
  CHECK(doc["records"].size() == 2);
  CHECK(doc["records"][0]["seed"].get<std::uint64_t>() == substream(77, 1));
  CHECK(doc["summary"]["trials"] == 2);
  CHECK(doc["summary"]["exceeded_adjacency_count"] == 0);

  // Large seeds survive the round trip as exact unsigned integers.
  cfg.master_seed = 18446744073709551615ULL;
  cfg.trials = 1;
  const auto big =
      nlohmann::json::parse(to_json(run_theorem1_experiment(cfg)));
  CHECK(big["config"]["master_seed"].get<std::uint64_t>() ==
        18446744073709551615ULL);
  CHECK(big["records"][0]["seed"].get<std::uint64_t>() ==
        substream(18446744073709551615ULL, 1));

  const auto mdoc = nlohmann::json::parse(
      to_json(run_marginal_check(base_config("complete:2", 2, 20, 1))));
  CHECK(mdoc["k"] == 2);
  CHECK(mdoc["counts"].size() == 2);
  CHECK(mdoc["counts"][0].size() == 2);
  CHECK(mdoc["pass"].is_boolean());
}

}  // TEST_SUITE
