#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "ytile/hypergraph.hpp"

namespace ytile {

inline constexpr std::uint64_t kDefaultNodeBudget = 10'000'000;

/// Two host edges meeting in exactly `b` vertices. `edge_a < edge_b`; `footprint` is the
/// sorted union of their vertices.
struct PatternCopy {
  EdgeIndex edge_a = 0;
  EdgeIndex edge_b = 0;
  std::vector<Vertex> footprint;

  friend bool operator==(const PatternCopy&, const PatternCopy&) = default;
};

/// Builds the copy for an edge pair, or throws if the pair does not meet in exactly b vertices.
PatternCopy make_copy(const Hypergraph& h, const Pattern& pattern, EdgeIndex a, EdgeIndex b);

struct Tiling {
  std::vector<PatternCopy> copies;

  std::size_t size() const noexcept { return copies.size(); }
  std::vector<Vertex> covered() const;
};

/// Vertex-disjoint copies and single edges ({Y,E}-tiling).
struct MixedTiling {
  std::vector<PatternCopy> copies;
  std::vector<EdgeIndex> singles;

  std::size_t coverage(const Pattern& pattern) const noexcept {
    return pattern.footprint_size() * copies.size() + pattern.k * singles.size();
  }
  std::size_t components() const noexcept { return copies.size() + singles.size(); }
};

struct TilingResult {
  Tiling tiling;
  bool optimal = false;
  std::uint64_t nodes = 0;
};

struct MixedResult {
  MixedTiling tiling;
  std::size_t coverage = 0;
  bool optimal = false;
  bool target_reached = false;
  std::uint64_t nodes = 0;
};

struct PatternFreeResult {
  std::size_t edges = 0;
  Hypergraph witness;
  bool optimal = false;
  std::uint64_t nodes = 0;
};

struct Violation {
  std::string what;
  std::size_t first = 0;
  std::size_t second = 0;
};

/// Empty when valid; otherwise the first violation found.
using VerifyResult = std::optional<Violation>;

/// All copies of the pattern, sorted by (footprint, edge_a, edge_b).
std::vector<PatternCopy> enumerate_copies(const Hypergraph& h, const Pattern& pattern);

/// Maximum tiling by branch-and-bound: branch on the smallest vertex still lying in an
/// available copy (take one of its copies, or discard the vertex); prune with greedy
/// completion, floor(live/(2k-b)) and a greedy hitting-set bound.
TilingResult max_tiling_exact(const Hypergraph& h, const Pattern& pattern,
                              std::uint64_t budget = kDefaultNodeBudget);

/// Maximises covered vertices, then prefers fewer components. With `target_coverage`, the
/// search stops as soon as a tiling with at least that coverage is found.
MixedResult max_mixed_tiling_exact(const Hypergraph& h, const Pattern& pattern,
                                   std::uint64_t budget = kDefaultNodeBudget,
                                   std::optional<std::size_t> target_coverage = std::nullopt);

Tiling greedy_tiling(const Hypergraph& h, const Pattern& pattern);

/// Hill-climbing with remove-r / add-(r+1) swaps for r = 0..radius.
Tiling local_search_improve(const Hypergraph& h, const Pattern& pattern, Tiling tiling,
                            std::size_t radius);

VerifyResult verify_tiling(const Hypergraph& h, const Pattern& pattern, const Tiling& tiling);
VerifyResult verify_tiling(const Hypergraph& h, const Pattern& pattern, const MixedTiling& tiling);

/// ex(n, Y_{k,b}) by branch-and-bound over candidate edges in lexicographic order.
PatternFreeResult max_pattern_free_edges(std::size_t n, const Pattern& pattern,
                                         std::uint64_t budget = kDefaultNodeBudget);

nlohmann::json to_json(const TilingResult& r, const Pattern& pattern);
nlohmann::json to_json(const MixedResult& r, const Pattern& pattern);
nlohmann::json copies_json(const std::vector<PatternCopy>& copies);

}  // namespace ytile
