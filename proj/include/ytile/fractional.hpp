#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "json.hpp"
#include "ytile/hypergraph.hpp"
#include "ytile/simplex.hpp"
#include "ytile/tiling.hpp"

namespace ytile {

/// Fractional hom(Y)-tiling: exact weights h(v, e) on vertex/edge pairs of a 3-graph.
/// Zero weights are not stored.
class FractionalTiling {
public:
  using Key = std::pair<Vertex, EdgeIndex>;

  void set(Vertex v, EdgeIndex e, const mpq_class& value);
  void add(Vertex v, EdgeIndex e, const mpq_class& value);
  mpq_class get(Vertex v, EdgeIndex e) const;

  const std::map<Key, mpq_class>& entries() const noexcept { return entries_; }
  bool empty() const noexcept { return entries_.empty(); }

  /// w(h): sum of all values.
  mpq_class weight() const;
  /// Smallest nonzero value; 0 for the empty tiling.
  mpq_class h_min() const;
  /// h(v) = sum over edges of h(v, e).
  mpq_class load(Vertex v) const;

private:
  std::map<Key, mpq_class> entries_;
};

struct FractionalViolation {
  /// 0: value outside [0,1]; 1: weight on a non-incident pair; 2: vertex load above 1;
  /// 3: no labelling of the edge satisfies the sorted chain.
  int property = 0;
  Vertex vertex = 0;
  EdgeIndex edge = 0;
  std::string what;
};

struct FractionalReport {
  bool ok = true;
  std::vector<FractionalViolation> violations;
  mpq_class weight;
  mpq_class h_min;
};

FractionalReport verify_fractional(const Hypergraph& h, const FractionalTiling& tiling);

/// Some labelling (u, v, w) of the three values has h(u) <= h(v) <= h(w) <= 3h(u) - h(v).
bool chain_form_holds(const mpq_class& a, const mpq_class& b, const mpq_class& c);
/// a + b + c <= 4 * min(a, b, c).
bool linear_form_holds(const mpq_class& a, const mpq_class& b, const mpq_class& c);

/// Variable 3e+i is h(edge(e)[i], e). Rows: one load row per vertex, then three rows per
/// edge (sum of the edge's values <= 4 * value at each vertex).
PackingLp fractional_lp(const Hypergraph& h);

struct FractionalLpResult {
  FractionalTiling tiling;
  mpq_class optimum;
  LpSolution solution;
};

/// Maximum-weight fractional hom(Y)-tiling (3-graphs only).
FractionalLpResult lp_max_weight(const Hypergraph& h, std::uint64_t max_pivots = 1'000'000);

/// Each copy contributes 1 at its private vertices and 1/2 at the shared pair, in each edge.
FractionalTiling from_integral(const Hypergraph& h, const Tiling& tiling);

/// Aggregates a Y-tiling of the blow-up R{4^j} (as built by blow_up(R, 4^j)) into a
/// fractional tiling of R with h_min >= 1/4^j.
FractionalTiling from_blowup_tiling(const Hypergraph& r, std::size_t j, const Tiling& blowup_tiling);

nlohmann::json to_json(const FractionalTiling& tiling);
FractionalTiling fractional_from_json(const nlohmann::json& j);

}  // namespace ytile
