#pragma once

#include <optional>
#include <string>

#include "liftspec/graph.hpp"
#include "liftspec/lift.hpp"
#include "liftspec/linalg.hpp"

namespace liftspec {

// Adjacency matrix of the lift assembled blockwise from the matchings:
// block (i, j) of base edge i < j is the permutation matrix V_ij, block
// (j, i) its transpose. Equals adjacency(realize(spec).graph) entrywise.
SymmetricMatrix lift_adjacency(const LiftSpec& spec);

// Normalized Laplacian of the lift assembled blockwise: identity minus
// V_ij / sqrt(deg(i) deg(j)) per edge block. Every copy of vertex i keeps
// degree deg(i), so the scaling uses base degrees.
// errors: DegreeZeroUnsupported if the base has an isolated vertex.
SymmetricMatrix lift_laplacian(const LiftSpec& spec);

// Expected value of lift_adjacency over matchings with uniform 1/k cell
// marginals: A tensor Pi_k.
SymmetricMatrix expected_lift_adjacency(const Graph& g, int k);

// Expected value of lift_laplacian under the same marginals:
// I_nk - (I_n - L) tensor Pi_k.
SymmetricMatrix expected_lift_laplacian(const Graph& g, int k);

// Eigenvalues of the lift's adjacency matrix that are not inherited from
// the base, with multiplicity. Containment of the base spectrum is a
// structural fact, so a failed multiset match throws
// SpectrumContainmentViolated rather than returning a flag.
Spectrum new_adjacency_eigenvalues(const Graph& g, const LiftedGraph& lift);

// Same for normalized-Laplacian spectra.
Spectrum new_laplacian_eigenvalues(const Graph& g, const LiftedGraph& lift);

// || lift_adjacency(spec) - expected_lift_adjacency ||. Equals the largest
// |eta| over new adjacency eigenvalues.
double adjacency_deviation_norm(const Graph& g, const LiftSpec& spec);

// || lift_laplacian(spec) - expected_lift_laplacian ||. Equals the largest
// |1 - beta| over new Laplacian eigenvalues.
// errors: DegreeZeroUnsupported on isolated base vertices.
double laplacian_deviation_norm(const Graph& g, const LiftSpec& spec);

// High-probability bound 16 sqrt(d_max ln(2nk/delta)) on the largest new
// adjacency eigenvalue of a uniform k-lift, valid with probability 1-delta.
double adjacency_bound(int d_max, long long n, long long k, double delta);

// 16 sqrt(ln(2nk/delta) / d_min), the Laplacian-side companion bound.
double laplacian_bound(int d_min, long long n, long long k, double delta);

struct CorollaryBounds {
  double adjacency = 0.0;
  double laplacian = 0.0;
};

// Iterated-lift versions: 32 sqrt(d_max ln(4nk/delta)) and
// 32 sqrt(ln(4nk/delta) / d_min).
CorollaryBounds corollary_bounds(int d_min, int d_max, long long n, long long k,
                                 double delta);

// Tail bound 2 dim exp(-t^2 / (8 sigma2 + 4 M t)) for the deviation of a
// sum of independent, mean-zero, norm-bounded symmetric random matrices.
// May exceed 1; callers clip for display.
double freedman_tail(double t, double sigma2, double m_bound, long long dim);

struct VarianceSum {
  SymmetricMatrix matrix;
  double norm = 0.0;
};

// The predictable quadratic-variation proxy for the adjacency deviation:
// [sum_i deg(i) e_i e_i^T] tensor (I_k - Pi_k), and its operator norm.
// The norm equals d_max whenever d_max > 0 and k >= 2.
VarianceSum variance_sum_adjacency(const Graph& g, int k);

struct DeviationReport {
  Spectrum new_eigs_adjacency;
  // Absent when the base graph has an isolated vertex (the Laplacian
  // deviation operator divides by degrees).
  std::optional<Spectrum> new_eigs_laplacian;
  double dev_norm_adjacency = 0.0;
  std::optional<double> dev_norm_laplacian;
  bool match_failure_adjacency = false;
  std::optional<bool> match_failure_laplacian;
  // |max new |eta|| vs deviation norm, recorded as diagnostics: these stay
  // below 1e-6 * max(1, d_max) (resp. 1e-6) unless the eigensolver or the
  // assembly regressed.
  double equality_gap_adjacency = 0.0;
  std::optional<double> equality_gap_laplacian;
  bool equality_ok = true;
};

struct BoundReport {
  long long n = 0;
  long long k = 1;
  double delta = 0.05;
  int d_min = 0;
  int d_max = 0;
  double adjacency_bound = 0.0;
  std::optional<double> laplacian_bound;
  double corollary_bound_adjacency = 0.0;
  std::optional<double> corollary_bound_laplacian;
};

struct AnalysisReport {
  DeviationReport deviation;
  BoundReport bounds;
};

// Full per-instance analysis: new eigenvalues, deviation norms, equality
// diagnostics, and every closed-form bound at the given delta. Skips the
// Laplacian half (optional fields absent) when the base has an isolated
// vertex. Throws SpectrumContainmentViolated if a spectrum diff fails.
AnalysisReport analyze(const Graph& g, const LiftSpec& spec, double delta);

// Flat JSON objects with snake_case keys mirroring the struct fields;
// absent optional fields serialize as null, spectra as sorted arrays.
std::string to_json(const DeviationReport& report);
std::string to_json(const BoundReport& report);
// Single flat object merging both reports (the key sets are disjoint).
std::string to_json(const AnalysisReport& report);

namespace detail {

// Everything about one (base graph, k) pair that per-trial analysis can
// reuse: base spectra and the expected lift operators. Immutable after
// construction, safe to share across threads.
struct BaseContext {
  Graph g;
  int n = 0;
  int k = 1;
  DegreeProfile deg;
  bool laplacian_ok = false;  // all base degrees positive
  Spectrum adj_spectrum;
  Spectrum lap_spectrum;
  SymmetricMatrix expected_adj;
  SymmetricMatrix expected_lap;  // dimension 0 when !laplacian_ok
};

BaseContext make_base_context(const Graph& g, int k);

// Deviation quantities of one sampled lift against a shared context.
// Laplacian members engaged iff ctx.laplacian_ok.
struct TrialDeviation {
  Spectrum new_adj;
  double max_new_adj = 0.0;  // max |eta| over new_adj
  double dev_norm_adj = 0.0;
  std::optional<Spectrum> new_lap;
  std::optional<double> max_new_lap_dev;  // max |1 - beta| over new_lap
  std::optional<double> dev_norm_lap;
  // Extremes of the full lifted Laplacian spectrum (range diagnostics).
  std::optional<double> lap_spectrum_min;
  std::optional<double> lap_spectrum_max;
};

// Throws SpectrumContainmentViolated if a spectrum diff fails to match.
TrialDeviation evaluate_lift(const BaseContext& ctx, const LiftSpec& spec);

}  // namespace detail

}  // namespace liftspec
