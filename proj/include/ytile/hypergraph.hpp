#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace ytile {

using Vertex = std::uint32_t;
using EdgeIndex = std::uint32_t;

/// Raised when raw input does not describe a valid k-uniform hypergraph.
/// `edge_index` points at the offending input edge (or npos when the error is global).
class HypergraphError : public std::invalid_argument {
public:
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  HypergraphError(const std::string& what, std::size_t edge_index = npos)
      : std::invalid_argument(what), edge_index_(edge_index) {}

  std::size_t edge_index() const noexcept { return edge_index_; }

private:
  std::size_t edge_index_;
};

/// Immutable k-uniform hypergraph on vertices 0..n-1.
///
/// Edges are stored as strictly increasing k-tuples in lexicographic order, so an
/// edge index is a stable canonical name for an edge.
class Hypergraph {
public:
  Hypergraph() = default;

  /// Validates and canonicalizes `edges`. Each raw edge may list its vertices in any
  /// order; repeated vertices, out-of-range ids, wrong arity and duplicate edges throw.
  static Hypergraph build(std::size_t n, std::size_t k,
                          const std::vector<std::vector<Vertex>>& edges);

  std::size_t num_vertices() const noexcept { return n_; }
  std::size_t uniformity() const noexcept { return k_; }
  std::size_t num_edges() const noexcept { return k_ == 0 ? 0 : data_.size() / k_; }

  std::span<const Vertex> edge(EdgeIndex e) const {
    return {data_.data() + static_cast<std::size_t>(e) * k_, k_};
  }

  /// Edge indices containing `v`, ascending.
  std::span<const EdgeIndex> incident(Vertex v) const {
    return {incidence_.data() + offsets_[v], offsets_[v + 1] - offsets_[v]};
  }

  std::size_t degree(Vertex v) const { return offsets_[v + 1] - offsets_[v]; }

  /// Index of the edge with exactly these vertices (any order), if present.
  std::optional<EdgeIndex> find_edge(std::span<const Vertex> vertices) const;
  bool has_edge(std::span<const Vertex> vertices) const { return find_edge(vertices).has_value(); }
  bool has_edge(std::initializer_list<Vertex> vertices) const;

  std::vector<std::vector<Vertex>> edge_list() const;

  friend bool operator==(const Hypergraph& a, const Hypergraph& b) {
    return a.n_ == b.n_ && a.k_ == b.k_ && a.data_ == b.data_;
  }

private:
  void index_incidence();

  std::size_t n_ = 0;
  std::size_t k_ = 0;
  std::vector<Vertex> data_;
  std::vector<std::size_t> offsets_{0};
  std::vector<EdgeIndex> incidence_;
};

/// Y_{k,b}: two k-edges meeting in exactly b vertices.
struct Pattern {
  std::size_t k = 3;
  std::size_t b = 2;

  Pattern() = default;
  Pattern(std::size_t k_, std::size_t b_);

  std::size_t footprint_size() const noexcept { return 2 * k - b; }
  static Pattern y32() { return {3, 2}; }
};

/// Cluster decomposition V0 ∪ V1 ∪ ... ∪ Vt with |V1| = ... = |Vt|.
struct Partition {
  std::vector<Vertex> exceptional;
  std::vector<std::vector<Vertex>> clusters;

  std::size_t cluster_size() const { return clusters.empty() ? 0 : clusters.front().size(); }
  /// Throws std::invalid_argument unless this is a valid partition of [0, n).
  void validate(std::size_t n) const;
};

struct InducedSubgraph {
  Hypergraph graph;
  std::vector<Vertex> original;  // new id -> host id
};

struct BlowUp {
  Hypergraph graph;
  std::size_t factor = 1;
  std::vector<Vertex> origin;  // clone id -> original vertex (clone ids v*factor + i)
};

mpz_class binomial(std::size_t n, std::size_t k);

InducedSubgraph induced(const Hypergraph& h, std::span<const Vertex> subset);

/// Number of edges {v, x, y} with x, y ∈ subset (3-graphs only).
std::size_t degree_into_set(const Hypergraph& h, Vertex v, std::span<const Vertex> subset);
std::size_t degree_into_set(const Hypergraph& h, Vertex v, const std::vector<char>& mask);

/// Crossing-edge density e(A1,A2,A3) / (|A1||A2||A3|).
mpq_class density_triple(const Hypergraph& h, std::span<const Vertex> a1,
                         std::span<const Vertex> a2, std::span<const Vertex> a3);
std::size_t crossing_edges(const Hypergraph& h, std::span<const Vertex> a1,
                           std::span<const Vertex> a2, std::span<const Vertex> a3);

BlowUp blow_up(const Hypergraph& f, std::size_t factor);

// Generators. Each documents its distinguished vertex prefix.

Hypergraph complete(std::size_t n, std::size_t k);
/// Complete k-graph on vertices [0, (2k-b)(s+1)-1); remaining vertices isolated.
Hypergraph clique_plus_isolated(std::size_t n, std::size_t s, std::size_t k, std::size_t b);
/// All k-sets meeting the cover set S = [0, s).
Hypergraph cover_construction(std::size_t n, std::size_t s, std::size_t k);
/// K^{(k)}_{t,n} on k*n vertices: class c is [c*n, (c+1)*n); the small part is [0, t)
/// and [t, n) is isolated. With `minus`, the lexicographically first edge is dropped.
Hypergraph kpartite_extremal(std::size_t k, std::size_t n, std::size_t t, bool minus);
/// Binomial random k-graph; deterministic for a fixed seed on every platform.
Hypergraph random_hypergraph(std::size_t n, std::size_t k, double p, std::uint64_t seed);
/// Random tripartite 3-graph on parts [0,a), [a,a+b), [a+b,a+b+c).
Hypergraph random_tripartite(std::size_t a, std::size_t b, std::size_t c, double p,
                             std::uint64_t seed);

/// max{ C((2k-b)(s+1)-1, k), C(n,k) - C(n-s,k) }. The asymptotic o(n^k) slack is not included.
mpz_class conjecture_bound(std::size_t n, std::size_t s, std::size_t k, std::size_t b);

/// Calls `visit` with each k-subset of [0, n) in lexicographic order.
template <typename Fn>
void for_each_subset(std::size_t n, std::size_t k, Fn&& visit) {
  if (k > n) return;
  std::vector<Vertex> c(k);
  for (std::size_t i = 0; i < k; ++i) c[i] = static_cast<Vertex>(i);
  while (true) {
    visit(std::span<const Vertex>(c));
    std::size_t i = k;
    while (i > 0 && c[i - 1] == n - k + i - 1) --i;
    if (i == 0) return;
    ++c[i - 1];
    for (std::size_t j = i; j < k; ++j) c[j] = c[j - 1] + 1;
  }
}

}  // namespace ytile
