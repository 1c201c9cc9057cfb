// Matchings, lift realization, samplers, permutation blocks, iterated
// lifts and the lift text format. The block conventions here feed every
// spectral computation, so they are pinned precisely.

#include <doctest.h>

#include <cstdint>
#include <sstream>
#include <string>

#include "liftspec/errors.hpp"
#include "liftspec/lift.hpp"
#include "liftspec/rng.hpp"
#include "liftspec/spectral.hpp"

using namespace liftspec;

TEST_SUITE("lift") {

TEST_CASE("matching bijection check") {
  CHECK(Matching{3, {2, 3, 1}}.is_bijection());
  CHECK(Matching{1, {1}}.is_bijection());
  CHECK_FALSE(Matching{3, {2, 2, 1}}.is_bijection());
  CHECK_FALSE(Matching{3, {1, 2}}.is_bijection());
  CHECK_FALSE(Matching{3, {0, 1, 2}}.is_bijection());
  CHECK_FALSE(Matching{3, {2, 3, 4}}.is_bijection());
}

TEST_CASE("lift spec validation") {
  const Graph g = complete_graph(3);
  const Matching id2{2, {1, 2}};
  CHECK_NOTHROW(make_lift_spec(g, 2, {id2, id2, id2}));
  CHECK_THROWS_AS(make_lift_spec(g, 0, {}), InvalidParams);
  CHECK_THROWS_AS(make_lift_spec(g, 2, {id2, id2}), InvalidParams);
  CHECK_THROWS_AS(make_lift_spec(g, 3, {id2, id2, id2}), InvalidParams);
  CHECK_THROWS_AS(
      make_lift_spec(g, 2, {id2, id2, Matching{2, {1, 1}}}), InvalidParams);
}

TEST_CASE("realize with identity matchings gives disjoint copies") {
  // K2, k = 2: copies (i, l) -> (i - 1) * 2 + l, so edges (1,3) and (2,4).
  const LiftSpec spec =
      make_lift_spec(complete_graph(2), 2, {Matching{2, {1, 2}}});
  const LiftedGraph lifted = realize(spec);
  CHECK(lifted.base_n == 2);
  CHECK(lifted.k == 2);
  CHECK(lifted.graph == make_graph(4, {{1, 3}, {2, 4}}));
}

TEST_CASE("realize applies the matching to the higher endpoint") {
  // Edge (1, 2) with sigma = (2, 1): (1,1)-(2,2) and (1,2)-(2,1).
  const LiftSpec spec =
      make_lift_spec(complete_graph(2), 2, {Matching{2, {2, 1}}});
  CHECK(realize(spec).graph == make_graph(4, {{1, 4}, {2, 3}}));
}

TEST_CASE("sampled lifts are deterministic and edge-order independent") {
  const Graph g = make_graph(4, {{1, 2}, {1, 4}, {2, 3}, {3, 4}});
  const LiftSpec a = sample_uniform_lift(g, 5, 77);
  const LiftSpec b = sample_uniform_lift(g, 5, 77);
  CHECK(a == b);
  CHECK(a.matchings.size() == 4);
  // Each edge draws from the substream keyed by its own endpoints, so the
  // edge (2, 3) matching is reproducible in isolation.
  const Matching direct = sample_matching(5, substream(77, 2, 3), Sampler::uniform);
  CHECK(a.matchings[2] == direct);
  // A subgraph containing the edge reproduces the identical matching.
  const LiftSpec sub = sample_uniform_lift(make_graph(4, {{2, 3}}), 5, 77);
  CHECK(sub.matchings[0] == direct);
  CHECK(sample_uniform_lift(g, 5, 78) != a);
}

TEST_CASE("uniform sampler covers all permutations of [3]") {
  // 6 permutations; 600 draws from distinct streams hit each one.
  int counts[6] = {0, 0, 0, 0, 0, 0};
  for (std::uint64_t s = 1; s <= 600; ++s) {
    const Matching m = sample_matching(3, substream(11, s), Sampler::uniform);
    REQUIRE(m.is_bijection());
    const int code = (m.to[0] - 1) * 2 + (m.to[1] > m.to[2] ? 1 : 0);
    ++counts[code];
  }
  for (const int c : counts) CHECK(c > 50);
}

TEST_CASE("cyclic sampler only produces shifts") {
  for (std::uint64_t s = 1; s <= 50; ++s) {
    const Matching m = sample_matching(4, substream(3, s), Sampler::cyclic);
    const int shift = m.to[0] - 1;
    for (int l = 1; l <= 4; ++l) CHECK(m.to[l - 1] == 1 + (l - 1 + shift) % 4);
  }
}

TEST_CASE("sampler names round trip") {
  CHECK(std::string(to_string(Sampler::uniform)) == "uniform");
  CHECK(std::string(to_string(Sampler::cyclic)) == "cyclic");
  CHECK(sampler_from_string("uniform") == Sampler::uniform);
  CHECK(sampler_from_string("cyclic") == Sampler::cyclic);
  CHECK_THROWS_AS(sampler_from_string("other"), InvalidParams);
}

TEST_CASE("permutation matrix orientation") {
  const Matching m{3, {2, 3, 1}};
  const Matrix v = permutation_matrix(m, MatchingDirection::i_to_j);
  // Row l - 1, column to[l] - 1.
  CHECK(v(0, 1) == 1.0);
  CHECK(v(1, 2) == 1.0);
  CHECK(v(2, 0) == 1.0);
  CHECK(v(0, 0) == 0.0);
  const Matrix w = permutation_matrix(m, MatchingDirection::j_to_i);
  CHECK(w == v.transposed());
  const Matrix prod = matmul(v, w);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) CHECK(prod(i, j) == (i == j ? 1.0 : 0.0));
  CHECK_THROWS_AS(permutation_matrix(Matching{2, {1, 1}},
                                     MatchingDirection::i_to_j),
                  InvalidParams);
}

TEST_CASE("flatten index is the mixed-radix value, first digit slowest") {
  CHECK(flatten_index({1}, {4}) == 1);
  CHECK(flatten_index({3}, {4}) == 3);
  CHECK(flatten_index({1, 1}, {2, 4}) == 1);
  CHECK(flatten_index({1, 4}, {2, 4}) == 4);
  CHECK(flatten_index({2, 1}, {2, 4}) == 5);
  CHECK(flatten_index({2, 3}, {2, 4}) == 7);
  CHECK(flatten_index({2, 2, 2}, {2, 2, 2}) == 8);
  CHECK_THROWS_AS(flatten_index({1, 1}, {2}), InvalidParams);
  CHECK_THROWS_AS(flatten_index({3}, {2}), InvalidParams);
  CHECK_THROWS_AS(flatten_index({0}, {2}), InvalidParams);
}

TEST_CASE("iterated lift realizes its induced spec exactly") {
  const Graph g = make_graph(4, {{1, 2}, {2, 3}, {2, 4}, {3, 4}});
  for (const std::uint64_t seed : {1ull, 2ull, 99ull}) {
    const IteratedLift it = iterated_lift(g, {2, 3}, seed);
    CHECK(it.lifted.k == 6);
    CHECK(it.induced.k == 6);
    CHECK(it.induced.base == g);
    CHECK(realize(it.induced).graph == it.lifted.graph);
  }
}

TEST_CASE("iterated lift stage seeds are positional") {
  const Graph g = complete_graph(3);
  const IteratedLift a = iterated_lift(g, {2, 2}, 5);
  const IteratedLift b = iterated_lift(g, {2, 2}, 6);
  CHECK(a.lifted.graph != b.lifted.graph);
  CHECK(iterated_lift(g, {2, 2}, 5).lifted.graph == a.lifted.graph);
}

TEST_CASE("single-edge subgraph reproduces the induced matching") {
  // The induced matching of one base edge depends only on the stage
  // matchings between its own endpoint blocks, which are keyed by global
  // vertex labels; the experiment runner leans on this to check iterated
  // marginals cheaply.
  const Graph g = complete_graph(4);
  for (const std::uint64_t seed : {3ull, 8ull}) {
    const IteratedLift full = iterated_lift(g, {2, 2, 2}, seed);
    for (std::size_t e = 0; e < g.edges().size(); ++e) {
      const Graph mini(4, {g.edges()[e]});
      const IteratedLift one = iterated_lift(mini, {2, 2, 2}, seed);
      CHECK(one.induced.matchings[0] == full.induced.matchings[e]);
    }
  }
}

TEST_CASE("iterated lift validates stages") {
  const Graph g = complete_graph(3);
  CHECK_THROWS_AS(iterated_lift(g, {}, 1), InvalidParams);
  CHECK_THROWS_AS(iterated_lift(g, {2, 1}, 1), InvalidParams);
}

TEST_CASE("lift text format round trip") {
  const LiftSpec spec = sample_uniform_lift(cycle_graph(4), 3, 21);
  std::stringstream io;
  write_lift_spec(io, spec);
  CHECK(read_lift_spec(io) == spec);
}

TEST_CASE("lift parse errors") {
  const auto fails = [](const std::string& text) {
    std::istringstream in(text);
    CHECK_THROWS_AS((void)read_lift_spec(in), ParseError);
  };
  fails("");
  fails("2 2\n");                    // header needs n k m
  fails("2 2 1\n1 2 1 1\n");         // matching not a bijection
  fails("2 2 1\n1 2 1\n");           // short matching row
  fails("2 2 1\n2 1 1 2\n");         // edge not canonical
  fails("2 2 2\n1 2 1 2\n1 2 1 2\n"); // edges must be strictly increasing
  fails("2 2 1\n1 2 1 2\nextra\n");  // trailing content
}

TEST_CASE("k = 1 lift is the base graph relabelled identically") {
  const Graph g = cycle_graph(5);
  const LiftSpec spec = sample_uniform_lift(g, 1, 4);
  CHECK(realize(spec).graph == g);
}

}  // TEST_SUITE
