#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "ytile/hypergraph.hpp"
#include "ytile/tiling.hpp"

namespace ytile {

// ---------------------------------------------------------------------------------------------
// Selection of the set R from a Y-tiling.

struct RConstruction {
  std::vector<Vertex> R;  // v_1..v_t1 in selection order
  std::vector<Vertex> W;  // sorted
  /// Moved copies in the order they were moved, then the remaining copies in input order.
  std::vector<PatternCopy> ordered_tiling;
  std::size_t t1 = 0;
  std::size_t t2 = 0;
  std::size_t threshold = 0;
};

/// Starts from W = U and repeatedly moves a remaining copy with a vertex v satisfying
/// degree_into_set(v, W) >= threshold: v joins R and the copy's other vertices join W. The
/// lowest copy index wins, then the lowest vertex id. U must be exactly the uncovered vertices.
RConstruction construct_R(const Hypergraph& h, const Tiling& tiling, std::span<const Vertex> U,
                          std::size_t threshold);

/// Continues the selection loop on a finished construction. A fixed point returns it unchanged.
RConstruction extend_R(const Hypergraph& h, const RConstruction& state);

/// Checks the construction against the tiling and U it was built from. Empty when consistent.
std::optional<std::string> check_r_construction(const Hypergraph& h, const Tiling& tiling,
                                                std::span<const Vertex> U, const RConstruction& r);

/// A copy of Y_{3,2} with all four vertices in S, if one exists.
std::optional<PatternCopy> y_free_check(const Hypergraph& h, std::span<const Vertex> S);

// ---------------------------------------------------------------------------------------------
// Link graphs.

/// Number of w in W with {u, v, w} an edge.
std::size_t codegree_into(const Hypergraph& h, Vertex u, Vertex v, const std::vector<char>& w_mask);

struct LinkGraph {
  std::vector<Vertex> left, right;                       // copy footprints
  std::vector<std::pair<std::size_t, std::size_t>> edges;  // (left index, right index)
  std::size_t tau = 0;
};

/// {u, v} with u in copy_p and v in copy_q is an edge iff at least tau vertices of W complete it
/// to an edge of H. Copies and W must be pairwise disjoint.
LinkGraph link_graph(const Hypergraph& h, std::span<const Vertex> W, const PatternCopy& copy_p,
                     const PatternCopy& copy_q, std::size_t tau);

struct BipartiteGraph {
  std::size_t left = 0;
  std::size_t right = 0;
  std::vector<std::pair<std::size_t, std::size_t>> edges;
};

struct MatchingCover {
  std::vector<std::pair<std::size_t, std::size_t>> matching;
  std::vector<std::size_t> cover_left;
  std::vector<std::size_t> cover_right;

  std::size_t cover_size() const noexcept { return cover_left.size() + cover_right.size(); }
};

/// Maximum matching by augmenting paths; the cover is read off the alternating-reachable set.
MatchingCover bipartite_matching_cover(const BipartiteGraph& g);
MatchingCover bipartite_matching_cover(const LinkGraph& g);

/// General graph overload: 2-colours the graph (lowest vertex of each component gets colour 0)
/// and throws std::invalid_argument on an odd cycle. Indices in the result are original vertex ids.
MatchingCover bipartite_matching_cover(std::size_t n,
                                       const std::vector<std::pair<std::size_t, std::size_t>>& edges);

// ---------------------------------------------------------------------------------------------
// Triple profiles.

struct PairDiagnostics {
  std::size_t link_edges = 0;  // before the emptying rule
  std::size_t matching = 0;
  bool emptied = false;  // >= 6 edges with a same-side 2-vertex cover
};

struct TripleProfile {
  std::array<std::vector<Vertex>, 3> blocks;
  std::vector<std::pair<Vertex, Vertex>> g_t;  // host vertex pairs
  std::size_t x_t = 0;
  std::size_t f = 0;
  std::optional<std::array<Vertex, 3>> crossing_cover;
  std::array<PairDiagnostics, 3> pairs;  // block pairs (0,1), (0,2), (1,2)
  /// Some pair link graph has a matching of size >= 3.
  bool would_be_improvable = false;
  std::size_t table_bound = 64;  // reference bound on f for this x_t
};

/// Reference upper bound on f for a given x_t: 64, 52, 48, 46, 37 over the ranges
/// 0, 1-10, 11-14, 15-16, 17-24.
std::size_t profile_table_bound(std::size_t x_t);

TripleProfile triple_profile(const Hypergraph& h, std::span<const Vertex> W, const PatternCopy& a,
                             const PatternCopy& b, const PatternCopy& c, std::size_t tau);

inline constexpr std::size_t kDefaultImprovementCap = 12;

struct ImprovementResult {
  std::optional<MixedTiling> tiling;  // host edge indices
  std::vector<Vertex> used_w;         // the capped W' searched
  bool exhausted = false;  // node budget ran out before the search decided
  std::uint64_t nodes = 0;
};

/// Exact search for a {Y,E}-tiling covering at least 13 vertices in H[V(T) ∪ W'], where W' keeps
/// the `w_cap` vertices of W with most edges meeting V(T) (ties to lower ids).
ImprovementResult improvement_search(const Hypergraph& h, std::span<const Vertex> W,
                                     const std::array<PatternCopy, 3>& triple,
                                     std::uint64_t budget = kDefaultNodeBudget,
                                     std::size_t w_cap = kDefaultImprovementCap);

// ---------------------------------------------------------------------------------------------
// Digraphs and ordered 3-graphs.

/// Simple digraph on at most 64 vertices as out-neighbour bitmasks.
class Digraph {
public:
  explicit Digraph(std::size_t n);
  std::size_t size() const noexcept { return out_.size(); }
  void add_arc(std::size_t from, std::size_t to);
  bool has_arc(std::size_t from, std::size_t to) const { return (out_[from] >> to) & 1; }
  std::uint64_t out_mask(std::size_t v) const { return out_[v]; }

private:
  std::vector<std::uint64_t> out_;
};

struct K23Plus {
  std::array<std::size_t, 2> sources;
  std::array<std::size_t, 3> sinks;
};

/// First source pair (lexicographic) with three common out-neighbours; the three lowest are used.
std::optional<K23Plus> find_k23_plus(const Digraph& d);

using OrderedEdge = std::array<Vertex, 3>;

struct VTilingResult {
  std::vector<std::pair<std::size_t, std::size_t>> copies;  // indices into the input edges
  std::size_t pruned_edges = 0;
  bool reached_target = false;
};

/// Deletes edges whose third vertex is third in at most `prune_threshold` edges, then greedily
/// pairs edges that meet exactly in their third coordinate, keeping copies vertex-disjoint.
VTilingResult ordered_v_tiling(std::size_t n, std::span<const OrderedEdge> edges, std::size_t target,
                               std::size_t prune_threshold = 0);

nlohmann::json to_json(const RConstruction& r);
nlohmann::json to_json(const TripleProfile& p);

}  // namespace ytile
