#include "liftspec/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "json_writer.hpp"
#include "liftspec/errors.hpp"

namespace liftspec {

namespace {

void check_lift_shape(const Graph& g, int base_n, int k, int lifted_n,
                      const char* who) {
  if (base_n != g.vertex_count() || k < 1 || lifted_n != base_n * k)
    throw InvalidParams(std::string(who) +
                        ": lift does not match the base graph shape");
}

double max_abs_one_minus(const Spectrum& s) {
  if (s.empty()) return 0.0;
  return std::max(std::fabs(1.0 - s.min()), std::fabs(1.0 - s.max()));
}

double log_ratio(double mult, long long n, long long k, double delta) {
  return std::log(mult * static_cast<double>(n) * static_cast<double>(k) /
                  delta);
}

void check_bound_args(long long n, long long k, double delta, const char* who) {
  if (n < 1 || k < 1)
    throw InvalidParams(std::string(who) + ": n and k must be positive");
  if (!(delta > 0.0 && delta < 1.0))
    throw InvalidParams(std::string(who) + ": delta must lie in (0, 1)");
}

}  // namespace

SymmetricMatrix lift_adjacency(const LiftSpec& spec) {
  const int n = spec.base.vertex_count();
  const int k = spec.k;
  SymmetricMatrix a(n * k);
  for (std::size_t e = 0; e < spec.base.edges().size(); ++e) {
    const auto [i, j] = spec.base.edges()[e];
    const Matching& m = spec.matchings[e];
    for (int l = 1; l <= k; ++l)
      a.set((i - 1) * k + l - 1, (j - 1) * k + m.to[l - 1] - 1, 1.0);
  }
  return a;
}

SymmetricMatrix lift_laplacian(const LiftSpec& spec) {
  const int n = spec.base.vertex_count();
  const int k = spec.k;
  const DegreeProfile deg = degrees(spec.base);
  if (deg.d_min < 1)
    throw DegreeZeroUnsupported(
        "lift_laplacian: base graph has an isolated vertex");
  SymmetricMatrix lap = identity_matrix(n * k);
  for (std::size_t e = 0; e < spec.base.edges().size(); ++e) {
    const auto [i, j] = spec.base.edges()[e];
    const double w =
        -1.0 / std::sqrt(static_cast<double>(deg.per_vertex[i - 1]) *
                         static_cast<double>(deg.per_vertex[j - 1]));
    const Matching& m = spec.matchings[e];
    for (int l = 1; l <= k; ++l)
      lap.set((i - 1) * k + l - 1, (j - 1) * k + m.to[l - 1] - 1, w);
  }
  return lap;
}

SymmetricMatrix expected_lift_adjacency(const Graph& g, int k) {
  return kron(adjacency(g), projector_pi(k));
}

SymmetricMatrix expected_lift_laplacian(const Graph& g, int k) {
  const int n = g.vertex_count();
  const SymmetricMatrix walk = identity_matrix(n) - normalized_laplacian(g);
  return identity_matrix(n * k) - kron(walk, projector_pi(k));
}

namespace {

Spectrum new_eigs(const Spectrum& big, const Spectrum& small, const char* who) {
  const MultisetDiff diff =
      multiset_diff(big, small, spectrum_match_tol(big.max_abs()));
  if (diff.match_failure)
    throw SpectrumContainmentViolated(
        std::string(who) + ": base spectrum not contained in lift spectrum");
  return diff.values;
}

}  // namespace

Spectrum new_adjacency_eigenvalues(const Graph& g, const LiftedGraph& lift) {
  check_lift_shape(g, lift.base_n, lift.k, lift.graph.vertex_count(),
                   "new_adjacency_eigenvalues");
  return new_eigs(sym_eigenvalues(adjacency(lift.graph)),
                  sym_eigenvalues(adjacency(g)), "new_adjacency_eigenvalues");
}

Spectrum new_laplacian_eigenvalues(const Graph& g, const LiftedGraph& lift) {
  check_lift_shape(g, lift.base_n, lift.k, lift.graph.vertex_count(),
                   "new_laplacian_eigenvalues");
  return new_eigs(sym_eigenvalues(normalized_laplacian(lift.graph)),
                  sym_eigenvalues(normalized_laplacian(g)),
                  "new_laplacian_eigenvalues");
}

double adjacency_deviation_norm(const Graph& g, const LiftSpec& spec) {
  if (spec.base != g)
    throw InvalidParams(
        "adjacency_deviation_norm: lift spec was built over a different base");
  return operator_norm(lift_adjacency(spec) -
                       expected_lift_adjacency(g, spec.k));
}

double laplacian_deviation_norm(const Graph& g, const LiftSpec& spec) {
  if (spec.base != g)
    throw InvalidParams(
        "laplacian_deviation_norm: lift spec was built over a different base");
  return operator_norm(lift_laplacian(spec) -
                       expected_lift_laplacian(g, spec.k));
}

double adjacency_bound(int d_max, long long n, long long k, double delta) {
  check_bound_args(n, k, delta, "adjacency_bound");
  if (d_max < 0)
    throw InvalidParams("adjacency_bound: d_max must be nonnegative");
  return 16.0 * std::sqrt(d_max * log_ratio(2.0, n, k, delta));
}

double laplacian_bound(int d_min, long long n, long long k, double delta) {
  check_bound_args(n, k, delta, "laplacian_bound");
  if (d_min < 1) throw InvalidParams("laplacian_bound: d_min must be positive");
  return 16.0 * std::sqrt(log_ratio(2.0, n, k, delta) / d_min);
}

CorollaryBounds corollary_bounds(int d_min, int d_max, long long n, long long k,
                                 double delta) {
  check_bound_args(n, k, delta, "corollary_bounds");
  if (d_min < 1) throw InvalidParams("corollary_bounds: d_min must be positive");
  if (d_max < d_min)
    throw InvalidParams("corollary_bounds: d_max must be at least d_min");
  const double lt = log_ratio(4.0, n, k, delta);
  return CorollaryBounds{32.0 * std::sqrt(d_max * lt),
                         32.0 * std::sqrt(lt / d_min)};
}

double freedman_tail(double t, double sigma2, double m_bound, long long dim) {
  if (t < 0.0) throw InvalidParams("freedman_tail: t must be nonnegative");
  if (sigma2 < 0.0)
    throw InvalidParams("freedman_tail: sigma2 must be nonnegative");
  if (!(m_bound > 0.0))
    throw InvalidParams("freedman_tail: the norm bound M must be positive");
  if (dim < 1) throw InvalidParams("freedman_tail: dim must be positive");
  if (t == 0.0) return 2.0 * static_cast<double>(dim);
  return 2.0 * static_cast<double>(dim) *
         std::exp(-t * t / (8.0 * sigma2 + 4.0 * m_bound * t));
}

VarianceSum variance_sum_adjacency(const Graph& g, int k) {
  if (k < 1) throw InvalidParams("variance_sum_adjacency: k must be positive");
  const DegreeProfile deg = degrees(g);
  SymmetricMatrix degree_diag(g.vertex_count());
  for (int v = 0; v < g.vertex_count(); ++v)
    degree_diag.set(v, v, static_cast<double>(deg.per_vertex[v]));
  const SymmetricMatrix centered = identity_matrix(k) - projector_pi(k);
  VarianceSum out{kron(degree_diag, centered), 0.0};
  out.norm = operator_norm(out.matrix);
  return out;
}

namespace detail {

BaseContext make_base_context(const Graph& g, int k) {
  if (k < 1) throw InvalidParams("make_base_context: k must be positive");
  BaseContext ctx;
  ctx.g = g;
  ctx.n = g.vertex_count();
  ctx.k = k;
  ctx.deg = degrees(g);
  ctx.laplacian_ok = ctx.deg.d_min >= 1;
  ctx.adj_spectrum = sym_eigenvalues(adjacency(g));
  ctx.lap_spectrum = sym_eigenvalues(normalized_laplacian(g));
  ctx.expected_adj = expected_lift_adjacency(g, k);
  if (ctx.laplacian_ok) ctx.expected_lap = expected_lift_laplacian(g, k);
  return ctx;
}

TrialDeviation evaluate_lift(const BaseContext& ctx, const LiftSpec& spec) {
  if (spec.base != ctx.g || spec.k != ctx.k)
    throw InvalidParams("evaluate_lift: lift spec does not match the context");
  TrialDeviation out;

  const SymmetricMatrix a_k = lift_adjacency(spec);
  const Spectrum big_a = sym_eigenvalues(a_k);
  out.new_adj = new_eigs(big_a, ctx.adj_spectrum, "evaluate_lift[adjacency]");
  out.max_new_adj = out.new_adj.max_abs();
  out.dev_norm_adj = operator_norm(a_k - ctx.expected_adj);

  if (ctx.laplacian_ok) {
    const SymmetricMatrix l_k = lift_laplacian(spec);
    const Spectrum big_l = sym_eigenvalues(l_k);
    out.lap_spectrum_min = big_l.min();
    out.lap_spectrum_max = big_l.max();
    out.new_lap =
        new_eigs(big_l, ctx.lap_spectrum, "evaluate_lift[laplacian]");
    out.max_new_lap_dev = max_abs_one_minus(*out.new_lap);
    out.dev_norm_lap = operator_norm(l_k - ctx.expected_lap);
  }
  return out;
}

}  // namespace detail

AnalysisReport analyze(const Graph& g, const LiftSpec& spec, double delta) {
  if (!(delta > 0.0 && delta < 1.0))
    throw InvalidParams("analyze: delta must lie in (0, 1)");
  if (spec.base != g)
    throw InvalidParams("analyze: lift spec was built over a different base");

  const detail::BaseContext ctx = detail::make_base_context(g, spec.k);
  const detail::TrialDeviation dev = detail::evaluate_lift(ctx, spec);

  AnalysisReport report;
  DeviationReport& d = report.deviation;
  d.new_eigs_adjacency = dev.new_adj;
  d.dev_norm_adjacency = dev.dev_norm_adj;
  d.match_failure_adjacency = false;  // evaluate_lift would have thrown
  d.equality_gap_adjacency = std::fabs(dev.max_new_adj - dev.dev_norm_adj);
  const double adj_tol = 1e-6 * std::max(1.0, static_cast<double>(ctx.deg.d_max));
  d.equality_ok = d.equality_gap_adjacency <= adj_tol;
  if (ctx.laplacian_ok) {
    d.new_eigs_laplacian = dev.new_lap;
    d.dev_norm_laplacian = dev.dev_norm_lap;
    d.match_failure_laplacian = false;
    d.equality_gap_laplacian =
        std::fabs(*dev.max_new_lap_dev - *dev.dev_norm_lap);
    d.equality_ok = d.equality_ok && *d.equality_gap_laplacian <= 1e-6;
  }

  BoundReport& b = report.bounds;
  b.n = ctx.n;
  b.k = ctx.k;
  b.delta = delta;
  b.d_min = ctx.deg.d_min;
  b.d_max = ctx.deg.d_max;
  b.adjacency_bound = adjacency_bound(ctx.deg.d_max, ctx.n, ctx.k, delta);
  if (ctx.laplacian_ok) {
    b.laplacian_bound = laplacian_bound(ctx.deg.d_min, ctx.n, ctx.k, delta);
    const CorollaryBounds cb =
        corollary_bounds(ctx.deg.d_min, ctx.deg.d_max, ctx.n, ctx.k, delta);
    b.corollary_bound_adjacency = cb.adjacency;
    b.corollary_bound_laplacian = cb.laplacian;
  } else {
    // Only the degree-free adjacency half of the iterated-lift bound is
    // defined when isolated vertices are present.
    b.corollary_bound_adjacency =
        32.0 * std::sqrt(ctx.deg.d_max * log_ratio(4.0, ctx.n, ctx.k, delta));
  }
  return report;
}

namespace {

internal::JsonObject deviation_fields(const DeviationReport& r) {
  internal::JsonObject o;
  o.field_raw("new_eigs_adjacency", internal::json_array(r.new_eigs_adjacency.values));
  if (r.new_eigs_laplacian)
    o.field_raw("new_eigs_laplacian",
                internal::json_array(r.new_eigs_laplacian->values));
  else
    o.field_null("new_eigs_laplacian");
  o.field("dev_norm_adjacency", r.dev_norm_adjacency);
  if (r.dev_norm_laplacian)
    o.field("dev_norm_laplacian", *r.dev_norm_laplacian);
  else
    o.field_null("dev_norm_laplacian");
  std::string failures = "[";
  if (r.match_failure_adjacency) failures += "\"adjacency\"";
  if (r.match_failure_laplacian && *r.match_failure_laplacian)
    failures += (failures.size() > 1 ? ",\"laplacian\"" : "\"laplacian\"");
  failures += ']';
  o.field_raw("match_failures", failures);
  o.field("equality_gap_adjacency", r.equality_gap_adjacency);
  if (r.equality_gap_laplacian)
    o.field("equality_gap_laplacian", *r.equality_gap_laplacian);
  else
    o.field_null("equality_gap_laplacian");
  o.field("equality_ok", r.equality_ok);
  return o;
}

void bound_fields(internal::JsonObject& o, const BoundReport& r) {
  o.field("n", static_cast<long long>(r.n));
  o.field("k", static_cast<long long>(r.k));
  o.field("delta", r.delta);
  o.field("d_min", r.d_min);
  o.field("d_max", r.d_max);
  o.field("adjacency_bound", r.adjacency_bound);
  if (r.laplacian_bound)
    o.field("laplacian_bound", *r.laplacian_bound);
  else
    o.field_null("laplacian_bound");
  o.field("corollary_bound_adjacency", r.corollary_bound_adjacency);
  if (r.corollary_bound_laplacian)
    o.field("corollary_bound_laplacian", *r.corollary_bound_laplacian);
  else
    o.field_null("corollary_bound_laplacian");
}

}  // namespace

std::string to_json(const DeviationReport& report) {
  return deviation_fields(report).str();
}

std::string to_json(const BoundReport& report) {
  internal::JsonObject o;
  bound_fields(o, report);
  return o.str();
}

std::string to_json(const AnalysisReport& report) {
  internal::JsonObject o = deviation_fields(report.deviation);
  bound_fields(o, report.bounds);
  return o.str();
}

}  // namespace liftspec
