#include "liftspec/graph.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "liftspec/errors.hpp"
#include "liftspec/rng.hpp"

namespace liftspec {

Graph::Graph(int n, std::vector<std::pair<int, int>> edge_list) : n_(n) {
  if (n < 1) throw InvalidParams("Graph: vertex count must be at least 1");
  for (auto& [i, j] : edge_list) {
    if (i < 1 || i > n || j < 1 || j > n)
      throw InvalidEdge("Graph: edge (" + std::to_string(i) + ", " +
                        std::to_string(j) + ") has an endpoint outside [1, " +
                        std::to_string(n) + "]");
    if (i == j)
      throw InvalidEdge("Graph: self-loop at vertex " + std::to_string(i));
    if (i > j) std::swap(i, j);
  }
  std::sort(edge_list.begin(), edge_list.end());
  edge_list.erase(std::unique(edge_list.begin(), edge_list.end()),
                  edge_list.end());
  edges_ = std::move(edge_list);
}

bool Graph::has_edge(int i, int j) const noexcept {
  if (i == j) return false;
  if (i > j) std::swap(i, j);
  return std::binary_search(edges_.begin(), edges_.end(), std::pair{i, j});
}

Graph make_graph(int n, const std::vector<std::pair<int, int>>& edge_list) {
  return Graph(n, edge_list);
}

DegreeProfile degrees(const Graph& g) {
  DegreeProfile d;
  d.per_vertex.assign(g.vertex_count(), 0);
  for (const auto& [i, j] : g.edges()) {
    ++d.per_vertex[i - 1];
    ++d.per_vertex[j - 1];
  }
  d.d_min = *std::min_element(d.per_vertex.begin(), d.per_vertex.end());
  d.d_max = *std::max_element(d.per_vertex.begin(), d.per_vertex.end());
  return d;
}

SymmetricMatrix adjacency(const Graph& g) {
  SymmetricMatrix a(g.vertex_count());
  for (const auto& [i, j] : g.edges()) a.set(i - 1, j - 1, 1.0);
  return a;
}

SymmetricMatrix normalized_laplacian(const Graph& g) {
  const int n = g.vertex_count();
  const DegreeProfile deg = degrees(g);
  std::vector<double> t(n, 0.0);
  for (int v = 0; v < n; ++v)
    if (deg.per_vertex[v] > 0) t[v] = 1.0 / std::sqrt(deg.per_vertex[v]);
  SymmetricMatrix lap = identity_matrix(n);
  for (const auto& [i, j] : g.edges())
    lap.set(i - 1, j - 1, -t[i - 1] * t[j - 1]);
  return lap;
}

Graph complete_graph(int n) {
  if (n < 1) throw InvalidParams("complete_graph: n must be at least 1");
  std::vector<std::pair<int, int>> edges;
  edges.reserve(static_cast<std::size_t>(n) * (n - 1) / 2);
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j) edges.emplace_back(i, j);
  return Graph(n, std::move(edges));
}

Graph cycle_graph(int n) {
  if (n < 3) throw InvalidParams("cycle_graph: n must be at least 3");
  std::vector<std::pair<int, int>> edges;
  edges.reserve(n);
  for (int i = 1; i < n; ++i) edges.emplace_back(i, i + 1);
  edges.emplace_back(1, n);
  return Graph(n, std::move(edges));
}

Graph disjoint_cliques(int copies, int clique_size) {
  if (copies < 1) throw InvalidParams("disjoint_cliques: copies must be >= 1");
  if (clique_size < 1)
    throw InvalidParams("disjoint_cliques: clique size must be >= 1");
  const int n = copies * clique_size;
  std::vector<std::pair<int, int>> edges;
  for (int c = 0; c < copies; ++c) {
    const int base = c * clique_size;
    for (int i = 1; i <= clique_size; ++i)
      for (int j = i + 1; j <= clique_size; ++j)
        edges.emplace_back(base + i, base + j);
  }
  return Graph(n, std::move(edges));
}

Graph erdos_renyi(int n, double p, std::uint64_t seed) {
  if (n < 1) throw InvalidParams("erdos_renyi: n must be at least 1");
  if (!(p >= 0.0 && p <= 1.0))
    throw InvalidParams("erdos_renyi: p must lie in [0, 1]");
  SplitMix64 rng(seed);
  std::vector<std::pair<int, int>> edges;
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j)
      if (rng.next_unit() < p) edges.emplace_back(i, j);
  return Graph(n, std::move(edges));
}

namespace {

[[noreturn]] void parse_fail(int line, const std::string& what) {
  throw ParseError("line " + std::to_string(line) + ": " + what);
}

// Reads the next line, failing with the expected-content message on EOF.
std::string next_line(std::istream& in, int& line_no, const std::string& expect) {
  std::string line;
  if (!std::getline(in, line))
    parse_fail(line_no + 1, "unexpected end of input, expected " + expect);
  ++line_no;
  return line;
}

void reject_trailing(std::istream& in, int line_no) {
  std::string line;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") != std::string::npos)
      parse_fail(line_no, "unexpected content after the last expected line");
  }
}

}  // namespace

Graph read_graph(std::istream& in) {
  int line_no = 0;
  std::istringstream header(next_line(in, line_no, "header \"n m\""));
  long long n = 0;
  long long m = 0;
  std::string extra;
  if (!(header >> n >> m) || (header >> extra))
    parse_fail(line_no, "expected header \"n m\" with two integers");
  if (n < 1) parse_fail(line_no, "vertex count must be at least 1");
  if (m < 0) parse_fail(line_no, "edge count must be nonnegative");

  std::vector<std::pair<int, int>> edges;
  edges.reserve(static_cast<std::size_t>(m));
  for (long long e = 0; e < m; ++e) {
    std::istringstream row(next_line(in, line_no, "an edge line \"i j\""));
    long long i = 0;
    long long j = 0;
    if (!(row >> i >> j) || (row >> extra))
      parse_fail(line_no, "expected an edge line \"i j\" with two integers");
    if (i < 1 || j < 1 || i > n || j > n)
      parse_fail(line_no, "edge endpoint outside [1, " + std::to_string(n) + "]");
    if (i >= j) parse_fail(line_no, "edge must satisfy i < j");
    edges.emplace_back(static_cast<int>(i), static_cast<int>(j));
  }
  reject_trailing(in, line_no);

  std::vector<std::pair<int, int>> dedup = edges;
  std::sort(dedup.begin(), dedup.end());
  if (std::adjacent_find(dedup.begin(), dedup.end()) != dedup.end())
    throw ParseError("duplicate edge in input");
  return Graph(static_cast<int>(n), std::move(edges));
}

void write_graph(std::ostream& out, const Graph& g) {
  out << g.vertex_count() << ' ' << g.edge_count() << '\n';
  for (const auto& [i, j] : g.edges()) out << i << ' ' << j << '\n';
}

}  // namespace liftspec
