#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "ytile/fractional.hpp"
#include "ytile/hypergraph.hpp"
#include "ytile/tiling.hpp"

namespace ytile {

inline constexpr std::size_t kDefaultRegularityTrials = 200;

struct SubTriple {
  std::vector<Vertex> a1, a2, a3;
};

/// Sampled (delta, d)-regularity test on a triple. A rejection is sound and comes with a
/// witness sub-triple; an acceptance only means no sampled sub-triple deviated by more than delta.
struct RegularityEstimate {
  bool accept = true;
  mpq_class density;          // d(A1, A2, A3)
  mpq_class worst_deviation;  // max |d(sub) - d(whole)| over tested sub-triples
  std::optional<SubTriple> witness;
};

/// Tests sub-triples of size ceil(delta |A_i|): the lowest- and highest-degree vertices of each
/// part first, then `trials` uniform random choices. Parts smaller than ceil(1/delta) throw.
RegularityEstimate regularity_estimate(const Hypergraph& h, std::span<const Vertex> a1,
                                       std::span<const Vertex> a2, std::span<const Vertex> a3,
                                       double delta, std::size_t trials, std::uint64_t seed);

/// R(delta, d, Q): a 3-graph on cluster indices 0..t-1.
struct ReducedGraph {
  Hypergraph graph;
  Partition partition;
  double delta = 0;
  mpq_class d;
};

ReducedGraph reduced_graph(const Hypergraph& h, const Partition& partition, double delta,
                           const mpq_class& d, std::size_t trials, std::uint64_t seed);

/// x1 = (3|V1| - |V2| - |V3|)/4 and cyclically.
struct TripleSplit {
  mpq_class x1, x2, x3;
};

TripleSplit triple_split(std::size_t s1, std::size_t s2, std::size_t s3);

struct TripleTilingResult {
  Tiling tiling;
  TripleSplit split;
  /// Parts after sorting by size; copies of phase p have two vertices in parts[p].
  std::array<std::vector<Vertex>, 3> parts;
  std::array<std::size_t, 3> phase_counts{};
  /// A phase ended before its quota (floor(x1), floor(x2), or V3 shrinking below 2 delta |V3|).
  bool short_of_target = false;
};

/// Greedy Y-tiling of a crossing triple: floor(x1) copies doubled in V1, floor(x2) doubled in V2,
/// then up to floor(x3) doubled in V3. Each copy comes from the first cross pair (in
/// lexicographic order) with two common neighbours left in the doubled part.
/// Requires |V1| <= |V2| <= |V3| <= 3|V1| - |V2| after sorting the parts by size.
TripleTilingResult greedy_triple_tiling(const Hypergraph& h, std::span<const Vertex> v1,
                                        std::span<const Vertex> v2, std::span<const Vertex> v3,
                                        double delta);

struct FractionalToIntegralResult {
  Tiling tiling;
  std::size_t covered = 0;
  mpq_class target;  // (1 - 4 delta) w(h) m
  /// U^e_{V_i}: the vertices assigned to (cluster i, reduced edge e).
  std::map<std::pair<std::size_t, EdgeIndex>, std::vector<Vertex>> subdivision;
};

/// Splits every cluster into disjoint pieces of size floor(h(i, e) m) and tiles each reduced
/// edge's sub-triple greedily.
FractionalToIntegralResult fractional_to_integral(const Hypergraph& h, const ReducedGraph& reduced,
                                                  const FractionalTiling& fractional);

/// Random equal-size partition: t clusters of floor(n/t) vertices, the remainder exceptional.
Partition random_partition(std::size_t n, std::size_t t, std::uint64_t seed);

}  // namespace ytile
