#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "liftspec/graph.hpp"
#include "liftspec/linalg.hpp"

namespace liftspec {

// Perfect matching between the k copies of the two endpoints of one
// canonically oriented base edge i < j: copy (i, l) is joined to
// (j, to[l - 1]). `to` is a 1-based permutation of 1..k.
struct Matching {
  int k = 0;
  std::vector<int> to;

  bool is_bijection() const;

  bool operator==(const Matching&) const = default;
};

// A k-lift of a base graph: one matching per base edge, listed in the
// canonical (sorted) edge order of the base.
struct LiftSpec {
  Graph base;
  int k = 0;
  std::vector<Matching> matchings;

  bool operator==(const LiftSpec&) const = default;
};

// Validates k >= 1, one matching per edge, every matching a bijection on
// [k]; throws InvalidParams otherwise.
LiftSpec make_lift_spec(Graph base, int k, std::vector<Matching> matchings);

// The realized lift: a simple graph on n * k vertices, where base vertex i
// copy l carries the label (i - 1) * k + l.
struct LiftedGraph {
  Graph graph;
  int base_n = 0;
  int k = 1;
};

LiftedGraph realize(const LiftSpec& spec);

enum class Sampler { uniform, cyclic };

const char* to_string(Sampler sampler) noexcept;
// Accepts "uniform" or "cyclic"; anything else throws InvalidParams.
Sampler sampler_from_string(const std::string& name);

// Each base edge (i, j) draws its matching from the substream keyed by the
// ordered pair (i, j), so edge samples are independent of edge enumeration
// order and of each other.
LiftSpec sample_uniform_lift(const Graph& g, int k, std::uint64_t seed);

// Cyclic shifts l -> 1 + ((l - 1 + s) mod k) with s uniform on 0..k-1:
// a non-uniform matching family whose single-cell marginals are still
// exactly 1/k.
LiftSpec sample_cyclic_lift(const Graph& g, int k, std::uint64_t seed);

LiftSpec sample_lift(const Graph& g, int k, std::uint64_t seed, Sampler sampler);

// One matching drawn from its own stream: uniform over all k! permutations,
// or a uniform cyclic shift. The building block behind the per-edge draws.
Matching sample_matching(int k, std::uint64_t seed, Sampler sampler);

// Orientation of the k x k permutation block. i_to_j has rows indexed by
// copies of i and columns by copies of j: entry (l, to[l]) is 1, zeros
// elsewhere. j_to_i is its transpose (equivalently its inverse).
enum class MatchingDirection { i_to_j, j_to_i };

Matrix permutation_matrix(const Matching& m, MatchingDirection dir);

// Mixed-radix flattening of a copy tuple (l_1, .., l_s), l_t in [k_t], to a
// single copy index in [k_1 * .. * k_s]; the first coordinate varies
// slowest. flatten_index({l}, {k}) == l.
int flatten_index(const std::vector<int>& tuple, const std::vector<int>& ks);

// A k_1, .., k_s iterated lift with the final vertex set relabelled to
// [n] x [k], k = prod k_t, via flatten_index. `induced` is the equivalent
// single-stage k-lift: realize(induced) reproduces `lifted` exactly.
struct IteratedLift {
  LiftedGraph lifted;
  LiftSpec induced;
};

// Stage t draws from substream(seed, t), t = 1..s. pre: every k_t >= 2.
IteratedLift iterated_lift(const Graph& g, const std::vector<int>& ks,
                           std::uint64_t seed);

// Text format: first line "n k m", then one line per base edge in canonical
// order: "i j sigma[1] .. sigma[k]" meaning copy l of i joins copy sigma[l]
// of j. Parse errors carry 1-based line numbers.
LiftSpec read_lift_spec(std::istream& in);
void write_lift_spec(std::ostream& out, const LiftSpec& spec);

}  // namespace liftspec
