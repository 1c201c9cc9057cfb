#pragma once

#include <cstdint>
#include <iosfwd>
#include <utility>
#include <vector>

#include "liftspec/linalg.hpp"

namespace liftspec {

// Simple undirected graph on vertices 1..n. No self-loops, no parallel
// edges. Edges are stored canonically as (min, max) pairs in sorted order,
// so two graphs compare equal iff they are the same labelled graph.
class Graph {
 public:
  Graph() = default;

  // Canonicalizes, deduplicates and validates the edge list.
  // pre: n >= 1, endpoints in [1, n], no self-loops.
  Graph(int n, std::vector<std::pair<int, int>> edge_list);

  int vertex_count() const noexcept { return n_; }
  int edge_count() const noexcept { return static_cast<int>(edges_.size()); }
  const std::vector<std::pair<int, int>>& edges() const noexcept { return edges_; }

  bool has_edge(int i, int j) const noexcept;

  bool operator==(const Graph&) const = default;

 private:
  int n_ = 0;
  std::vector<std::pair<int, int>> edges_;
};

Graph make_graph(int n, const std::vector<std::pair<int, int>>& edge_list);

struct DegreeProfile {
  std::vector<int> per_vertex;  // index v - 1 holds deg(v)
  int d_min = 0;
  int d_max = 0;
};

DegreeProfile degrees(const Graph& g);

// 0/1 adjacency matrix; rows and columns are vertices 1..n mapped to 0..n-1.
SymmetricMatrix adjacency(const Graph& g);

// Normalized Laplacian I - T A T with T = diag(deg^{-1/2}), taking the T
// entry of an isolated vertex to be 0; such a vertex contributes a diagonal
// 1 and zeros elsewhere.
SymmetricMatrix normalized_laplacian(const Graph& g);

Graph complete_graph(int n);
Graph cycle_graph(int n);  // pre: n >= 3
Graph disjoint_cliques(int copies, int clique_size);

// Includes each pair independently with probability p, iterating pairs in
// lexicographic order over one seeded stream; identical (n, p, seed) gives
// an identical graph on every platform.
Graph erdos_renyi(int n, double p, std::uint64_t seed);

// Text format: first line "n m", then m lines "i j" with 1 <= i < j <= n.
// Parse errors carry 1-based line numbers.
Graph read_graph(std::istream& in);
void write_graph(std::ostream& out, const Graph& g);

}  // namespace liftspec
