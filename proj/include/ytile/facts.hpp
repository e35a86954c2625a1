#pragma once

#include <cstdint>
#include <string>

#include "json.hpp"

namespace ytile {

/// Outcome of a brute-force check of a small extremal fact.
struct FactReport {
  std::string fact;
  nlohmann::json params;
  std::int64_t computed = 0;
  std::int64_t expected = 0;
  nlohmann::json witnesses = nlohmann::json::array();
  /// Extra findings (extremal-graph counts, uniqueness, cross-checks).
  nlohmann::json details = nlohmann::json::object();
  bool match = false;
};

/// Maximum edge count of a 3-partite 3-graph with parts of sizes (a, a, b) and no matching of
/// size a, against (a-1)ab. Exhaustive over edge subsets when ab·a <= 16, otherwise a
/// minimum hitting set of all a-matchings by branch-and-bound (a·a·b <= 64).
FactReport check_fact_f0(std::size_t a, std::size_t b);

/// Maximum edge count of a k-partite k-graph with n vertices per class and no matching of size
/// t+1, against t·n^(k-1), with uniqueness of the extremal graph up to relabelling within
/// classes and a permutation of classes. For t >= 3 also checks that the graphs with one edge
/// fewer are exactly the one-edge-deleted extremal graph. Requires n^k <= 20.
FactReport check_fact_f11_f1(std::size_t k, std::size_t n, std::size_t t);

nlohmann::json to_json(const FactReport& r);

}  // namespace ytile
