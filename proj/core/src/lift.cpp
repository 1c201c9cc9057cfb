#include "liftspec/lift.hpp"

#include <algorithm>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>
#include <string>

#include "liftspec/errors.hpp"
#include "liftspec/rng.hpp"

namespace liftspec {

bool Matching::is_bijection() const {
  if (k < 1 || static_cast<int>(to.size()) != k) return false;
  std::vector<char> seen(k, 0);
  for (const int r : to) {
    if (r < 1 || r > k || seen[r - 1]) return false;
    seen[r - 1] = 1;
  }
  return true;
}

LiftSpec make_lift_spec(Graph base, int k, std::vector<Matching> matchings) {
  if (k < 1) throw InvalidParams("make_lift_spec: k must be at least 1");
  if (matchings.size() != base.edges().size())
    throw InvalidParams("make_lift_spec: expected one matching per base edge (" +
                        std::to_string(base.edges().size()) + ", got " +
                        std::to_string(matchings.size()) + ")");
  for (std::size_t e = 0; e < matchings.size(); ++e) {
    if (matchings[e].k != k)
      throw InvalidParams("make_lift_spec: matching " + std::to_string(e + 1) +
                          " has order " + std::to_string(matchings[e].k) +
                          ", expected " + std::to_string(k));
    if (!matchings[e].is_bijection())
      throw InvalidParams("make_lift_spec: matching " + std::to_string(e + 1) +
                          " is not a bijection on [k]");
  }
  return LiftSpec{std::move(base), k, std::move(matchings)};
}

LiftedGraph realize(const LiftSpec& spec) {
  const int n = spec.base.vertex_count();
  const int k = spec.k;
  std::vector<std::pair<int, int>> edges;
  edges.reserve(spec.base.edges().size() * static_cast<std::size_t>(k));
  for (std::size_t e = 0; e < spec.base.edges().size(); ++e) {
    const auto [i, j] = spec.base.edges()[e];
    const Matching& m = spec.matchings[e];
    for (int l = 1; l <= k; ++l)
      edges.emplace_back((i - 1) * k + l, (j - 1) * k + m.to[l - 1]);
  }
  return LiftedGraph{Graph(n * k, std::move(edges)), n, k};
}

namespace {

Matching sample_uniform_matching(int k, SplitMix64& rng) {
  Matching m{k, std::vector<int>(k)};
  std::iota(m.to.begin(), m.to.end(), 1);
  for (int i = k - 1; i >= 1; --i) {
    const int j = static_cast<int>(rng.next_below(static_cast<std::uint64_t>(i) + 1));
    std::swap(m.to[i], m.to[j]);
  }
  return m;
}

Matching sample_cyclic_matching(int k, SplitMix64& rng) {
  const int s = static_cast<int>(rng.next_below(static_cast<std::uint64_t>(k)));
  Matching m{k, std::vector<int>(k)};
  for (int l = 1; l <= k; ++l) m.to[l - 1] = 1 + (l - 1 + s) % k;
  return m;
}

}  // namespace

namespace {

LiftSpec sample_impl(const Graph& g, int k, std::uint64_t seed, Sampler sampler) {
  if (k < 1) throw InvalidParams("sample_lift: k must be at least 1");
  std::vector<Matching> matchings;
  matchings.reserve(g.edges().size());
  for (const auto& [i, j] : g.edges())
    matchings.push_back(
        sample_matching(k,
                        substream(seed, static_cast<std::uint64_t>(i),
                                  static_cast<std::uint64_t>(j)),
                        sampler));
  return LiftSpec{g, k, std::move(matchings)};
}

}  // namespace

Matching sample_matching(int k, std::uint64_t seed, Sampler sampler) {
  if (k < 1) throw InvalidParams("sample_matching: k must be at least 1");
  SplitMix64 rng(seed);
  return sampler == Sampler::uniform ? sample_uniform_matching(k, rng)
                                     : sample_cyclic_matching(k, rng);
}

const char* to_string(Sampler sampler) noexcept {
  return sampler == Sampler::uniform ? "uniform" : "cyclic";
}

Sampler sampler_from_string(const std::string& name) {
  if (name == "uniform") return Sampler::uniform;
  if (name == "cyclic") return Sampler::cyclic;
  throw InvalidParams("unknown sampler \"" + name +
                      "\"; expected uniform or cyclic");
}

LiftSpec sample_uniform_lift(const Graph& g, int k, std::uint64_t seed) {
  return sample_impl(g, k, seed, Sampler::uniform);
}

LiftSpec sample_cyclic_lift(const Graph& g, int k, std::uint64_t seed) {
  return sample_impl(g, k, seed, Sampler::cyclic);
}

LiftSpec sample_lift(const Graph& g, int k, std::uint64_t seed, Sampler sampler) {
  return sample_impl(g, k, seed, sampler);
}

Matrix permutation_matrix(const Matching& m, MatchingDirection dir) {
  if (!m.is_bijection())
    throw InvalidParams("permutation_matrix: matching is not a bijection");
  Matrix p(m.k, m.k);
  for (int l = 1; l <= m.k; ++l) {
    if (dir == MatchingDirection::i_to_j)
      p(l - 1, m.to[l - 1] - 1) = 1.0;
    else
      p(m.to[l - 1] - 1, l - 1) = 1.0;
  }
  return p;
}

int flatten_index(const std::vector<int>& tuple, const std::vector<int>& ks) {
  if (tuple.empty() || tuple.size() != ks.size())
    throw InvalidParams("flatten_index: tuple and stage list sizes disagree");
  long long idx = 0;
  for (std::size_t t = 0; t < tuple.size(); ++t) {
    if (ks[t] < 1) throw InvalidParams("flatten_index: stage order must be >= 1");
    if (tuple[t] < 1 || tuple[t] > ks[t])
      throw InvalidParams("flatten_index: coordinate " + std::to_string(t + 1) +
                          " outside [1, k_t]");
    idx = idx * ks[t] + (tuple[t] - 1);
  }
  return static_cast<int>(idx + 1);
}

IteratedLift iterated_lift(const Graph& g, const std::vector<int>& ks,
                           std::uint64_t seed) {
  if (ks.empty()) throw InvalidParams("iterated_lift: stage list is empty");
  long long k_total = 1;
  for (const int kt : ks) {
    if (kt < 2) throw InvalidParams("iterated_lift: every stage order must be >= 2");
    k_total *= kt;
    if (k_total > (1LL << 30))
      throw InvalidParams("iterated_lift: total lift order overflows");
  }
  const int k = static_cast<int>(k_total);

  // Realizing stage t labels copy (v, l) of the stage-t base as
  // (v - 1) * k_t + l; unwinding the recursion shows the final label of
  // (i, l_1, .., l_s) is exactly (i - 1) * k + flatten_index(l, ks). The
  // final graph therefore already carries the flattened labelling.
  Graph current = g;
  for (std::size_t t = 0; t < ks.size(); ++t) {
    const LiftSpec stage = sample_uniform_lift(
        current, ks[t], substream(seed, static_cast<std::uint64_t>(t) + 1));
    current = realize(stage).graph;
  }

  // Recover the induced single-stage matchings from the block structure.
  const int m = g.edge_count();
  std::vector<Matching> matchings(m);
  for (Matching& mt : matchings) {
    mt.k = k;
    mt.to.assign(k, 0);
  }
  const auto& base_edges = g.edges();
  for (const auto& [u, v] : current.edges()) {
    const int bi = (u - 1) / k + 1;
    const int bj = (v - 1) / k + 1;
    const auto it = std::lower_bound(base_edges.begin(), base_edges.end(),
                                     std::pair{bi, bj});
    if (it == base_edges.end() || *it != std::pair{bi, bj})
      throw Error("iterated_lift: lifted edge outside the base edge set");
    const int l = u - (bi - 1) * k;
    const int r = v - (bj - 1) * k;
    matchings[it - base_edges.begin()].to[l - 1] = r;
  }

  IteratedLift out;
  out.lifted = LiftedGraph{std::move(current), g.vertex_count(), k};
  out.induced = make_lift_spec(g, k, std::move(matchings));
  return out;
}

namespace {

[[noreturn]] void parse_fail(int line, const std::string& what) {
  throw ParseError("line " + std::to_string(line) + ": " + what);
}

}  // namespace

LiftSpec read_lift_spec(std::istream& in) {
  int line_no = 0;
  std::string line;
  if (!std::getline(in, line))
    parse_fail(1, "unexpected end of input, expected header \"n k m\"");
  ++line_no;
  std::istringstream header(line);
  long long n = 0;
  long long k = 0;
  long long m = 0;
  std::string extra;
  if (!(header >> n >> k >> m) || (header >> extra))
    parse_fail(line_no, "expected header \"n k m\" with three integers");
  if (n < 1) parse_fail(line_no, "vertex count must be at least 1");
  if (k < 1) parse_fail(line_no, "lift order must be at least 1");
  if (m < 0) parse_fail(line_no, "edge count must be nonnegative");

  std::vector<std::pair<int, int>> edges;
  std::vector<Matching> matchings;
  edges.reserve(static_cast<std::size_t>(m));
  matchings.reserve(static_cast<std::size_t>(m));
  for (long long e = 0; e < m; ++e) {
    if (!std::getline(in, line))
      parse_fail(line_no + 1,
                 "unexpected end of input, expected an edge line "
                 "\"i j sigma[1] .. sigma[k]\"");
    ++line_no;
    std::istringstream row(line);
    long long i = 0;
    long long j = 0;
    if (!(row >> i >> j))
      parse_fail(line_no, "expected an edge line starting with two endpoints");
    if (i < 1 || j < 1 || i > n || j > n)
      parse_fail(line_no, "edge endpoint outside [1, " + std::to_string(n) + "]");
    if (i >= j) parse_fail(line_no, "edge must satisfy i < j");
    Matching mt{static_cast<int>(k), std::vector<int>(static_cast<std::size_t>(k))};
    for (long long l = 0; l < k; ++l) {
      long long sig = 0;
      if (!(row >> sig))
        parse_fail(line_no, "expected " + std::to_string(k) +
                                " matching entries after the endpoints");
      if (sig < 1 || sig > k)
        parse_fail(line_no, "matching entry outside [1, " + std::to_string(k) + "]");
      mt.to[static_cast<std::size_t>(l)] = static_cast<int>(sig);
    }
    if (row >> extra)
      parse_fail(line_no, "unexpected content after the matching entries");
    if (!mt.is_bijection())
      parse_fail(line_no, "matching entries are not a permutation of [1, " +
                              std::to_string(k) + "]");
    if (!edges.empty() && std::pair{static_cast<int>(i), static_cast<int>(j)} <= edges.back())
      parse_fail(line_no, "edges must be listed once each, in sorted order");
    edges.emplace_back(static_cast<int>(i), static_cast<int>(j));
    matchings.push_back(std::move(mt));
  }
  {
    std::string rest;
    while (std::getline(in, rest)) {
      ++line_no;
      if (rest.find_first_not_of(" \t\r") != std::string::npos)
        parse_fail(line_no, "unexpected content after the last expected line");
    }
  }
  return make_lift_spec(Graph(static_cast<int>(n), std::move(edges)),
                        static_cast<int>(k), std::move(matchings));
}

void write_lift_spec(std::ostream& out, const LiftSpec& spec) {
  out << spec.base.vertex_count() << ' ' << spec.k << ' '
      << spec.base.edge_count() << '\n';
  for (std::size_t e = 0; e < spec.base.edges().size(); ++e) {
    const auto [i, j] = spec.base.edges()[e];
    out << i << ' ' << j;
    for (const int r : spec.matchings[e].to) out << ' ' << r;
    out << '\n';
  }
}

}  // namespace liftspec
