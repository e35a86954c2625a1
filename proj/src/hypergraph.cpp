#include "ytile/hypergraph.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <set>

#include "ytile/random.hpp"

namespace ytile {

Hypergraph Hypergraph::build(std::size_t n, std::size_t k,
                             const std::vector<std::vector<Vertex>>& edges) {
  if (k < 2) throw HypergraphError("uniformity must be at least 2");
  if (n >= (std::size_t{1} << 31)) throw HypergraphError("too many vertices");

  std::vector<std::vector<Vertex>> canon;
  canon.reserve(edges.size());
  for (std::size_t i = 0; i < edges.size(); ++i) {
    auto e = edges[i];
    if (e.size() != k) {
      throw HypergraphError("edge " + std::to_string(i) + " has " + std::to_string(e.size()) +
                                " vertices, expected " + std::to_string(k),
                            i);
    }
    for (Vertex v : e) {
      if (v >= n) {
        throw HypergraphError("edge " + std::to_string(i) + " has out-of-range vertex " +
                                  std::to_string(v),
                              i);
      }
    }
    std::sort(e.begin(), e.end());
    if (std::adjacent_find(e.begin(), e.end()) != e.end()) {
      throw HypergraphError("edge " + std::to_string(i) + " repeats a vertex", i);
    }
    canon.push_back(std::move(e));
  }

  std::vector<std::size_t> order(canon.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return canon[a] < canon[b]; });
  for (std::size_t i = 1; i < order.size(); ++i) {
    if (canon[order[i]] == canon[order[i - 1]]) {
      auto later = std::max(order[i], order[i - 1]);
      throw HypergraphError("edge " + std::to_string(later) + " duplicates edge " +
                                std::to_string(std::min(order[i], order[i - 1])),
                            later);
    }
  }

  Hypergraph h;
  h.n_ = n;
  h.k_ = k;
  h.data_.reserve(canon.size() * k);
  for (std::size_t i : order) h.data_.insert(h.data_.end(), canon[i].begin(), canon[i].end());
  h.index_incidence();
  return h;
}

void Hypergraph::index_incidence() {
  offsets_.assign(n_ + 1, 0);
  for (Vertex v : data_) ++offsets_[v + 1];
  std::partial_sum(offsets_.begin(), offsets_.end(), offsets_.begin());
  incidence_.assign(data_.size(), 0);
  std::vector<std::size_t> fill(offsets_.begin(), offsets_.end() - 1);
  for (std::size_t e = 0; e < num_edges(); ++e) {
    for (Vertex v : edge(static_cast<EdgeIndex>(e))) incidence_[fill[v]++] = static_cast<EdgeIndex>(e);
  }
}

std::optional<EdgeIndex> Hypergraph::find_edge(std::span<const Vertex> vertices) const {
  if (vertices.size() != k_) return std::nullopt;
  std::vector<Vertex> key(vertices.begin(), vertices.end());
  std::sort(key.begin(), key.end());
  std::size_t lo = 0, hi = num_edges();
  while (lo < hi) {
    std::size_t mid = (lo + hi) / 2;
    auto e = edge(static_cast<EdgeIndex>(mid));
    if (std::lexicographical_compare(e.begin(), e.end(), key.begin(), key.end())) {
      lo = mid + 1;
    } else {
      hi = mid;
    }
  }
  if (lo < num_edges()) {
    auto e = edge(static_cast<EdgeIndex>(lo));
    if (std::equal(e.begin(), e.end(), key.begin())) return static_cast<EdgeIndex>(lo);
  }
  return std::nullopt;
}

bool Hypergraph::has_edge(std::initializer_list<Vertex> vertices) const {
  return find_edge(std::span<const Vertex>(vertices.begin(), vertices.size())).has_value();
}

std::vector<std::vector<Vertex>> Hypergraph::edge_list() const {
  std::vector<std::vector<Vertex>> out;
  out.reserve(num_edges());
  for (std::size_t e = 0; e < num_edges(); ++e) {
    auto s = edge(static_cast<EdgeIndex>(e));
    out.emplace_back(s.begin(), s.end());
  }
  return out;
}

Pattern::Pattern(std::size_t k_, std::size_t b_) : k(k_), b(b_) {
  if (b == 0 || b >= k) throw std::invalid_argument("pattern requires 0 < b < k");
}

void Partition::validate(std::size_t n) const {
  std::vector<char> seen(n, 0);
  auto mark = [&](Vertex v) {
    if (v >= n) throw std::invalid_argument("partition vertex out of range");
    if (seen[v]) throw std::invalid_argument("partition parts overlap at vertex " + std::to_string(v));
    seen[v] = 1;
  };
  for (Vertex v : exceptional) mark(v);
  for (const auto& c : clusters) {
    if (c.size() != cluster_size()) throw std::invalid_argument("clusters differ in size");
    for (Vertex v : c) mark(v);
  }
  if (std::find(seen.begin(), seen.end(), 0) != seen.end()) {
    throw std::invalid_argument("partition does not cover every vertex");
  }
}

mpz_class binomial(std::size_t n, std::size_t k) {
  mpz_class r;
  if (k > n) return 0;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

InducedSubgraph induced(const Hypergraph& h, std::span<const Vertex> subset) {
  const std::size_t n = h.num_vertices();
  std::vector<Vertex> relabel(n, static_cast<Vertex>(-1));
  std::vector<Vertex> original(subset.begin(), subset.end());
  std::sort(original.begin(), original.end());
  original.erase(std::unique(original.begin(), original.end()), original.end());
  for (std::size_t i = 0; i < original.size(); ++i) {
    if (original[i] >= n) throw std::invalid_argument("induced: vertex out of range");
    relabel[original[i]] = static_cast<Vertex>(i);
  }
  std::vector<std::vector<Vertex>> edges;
  for (std::size_t e = 0; e < h.num_edges(); ++e) {
    auto ed = h.edge(static_cast<EdgeIndex>(e));
    if (std::all_of(ed.begin(), ed.end(), [&](Vertex v) { return relabel[v] != static_cast<Vertex>(-1); })) {
      std::vector<Vertex> mapped;
      for (Vertex v : ed) mapped.push_back(relabel[v]);
      edges.push_back(std::move(mapped));
    }
  }
  return {Hypergraph::build(original.size(), h.uniformity(), edges), std::move(original)};
}

std::size_t degree_into_set(const Hypergraph& h, Vertex v, const std::vector<char>& mask) {
  if (h.uniformity() != 3) throw std::invalid_argument("degree_into_set supports 3-graphs only");
  if (v >= h.num_vertices()) throw std::invalid_argument("degree_into_set: vertex out of range");
  std::size_t count = 0;
  for (EdgeIndex e : h.incident(v)) {
    bool inside = true;
    for (Vertex u : h.edge(e)) {
      if (u != v && !mask[u]) inside = false;
    }
    if (inside) ++count;
  }
  return count;
}

std::size_t degree_into_set(const Hypergraph& h, Vertex v, std::span<const Vertex> subset) {
  std::vector<char> mask(h.num_vertices(), 0);
  for (Vertex u : subset) {
    if (u >= h.num_vertices()) throw std::invalid_argument("degree_into_set: vertex out of range");
    if (u != v) mask[u] = 1;
  }
  return degree_into_set(h, v, mask);
}

std::size_t crossing_edges(const Hypergraph& h, std::span<const Vertex> a1,
                           std::span<const Vertex> a2, std::span<const Vertex> a3) {
  if (h.uniformity() != 3) throw std::invalid_argument("crossing density needs a 3-graph");
  std::vector<std::uint8_t> part(h.num_vertices(), 0);
  std::uint8_t label = 1;
  for (auto a : {a1, a2, a3}) {
    for (Vertex v : a) {
      if (v >= h.num_vertices()) throw std::invalid_argument("density: vertex out of range");
      if (part[v] != 0) throw std::invalid_argument("density: parts must be disjoint");
      part[v] = label;
    }
    ++label;
  }
  std::size_t count = 0;
  for (std::size_t e = 0; e < h.num_edges(); ++e) {
    unsigned seen = 0;
    for (Vertex v : h.edge(static_cast<EdgeIndex>(e))) seen |= 1u << part[v];
    if (seen == 0b1110u) ++count;
  }
  return count;
}

mpq_class density_triple(const Hypergraph& h, std::span<const Vertex> a1,
                         std::span<const Vertex> a2, std::span<const Vertex> a3) {
  if (a1.empty() || a2.empty() || a3.empty()) throw std::invalid_argument("density: empty part");
  mpq_class d(mpz_class(crossing_edges(h, a1, a2, a3)),
              mpz_class(a1.size()) * a2.size() * a3.size());
  d.canonicalize();
  return d;
}

BlowUp blow_up(const Hypergraph& f, std::size_t factor) {
  if (factor == 0) throw std::invalid_argument("blow-up factor must be positive");
  const std::size_t k = f.uniformity();
  BlowUp out;
  out.factor = factor;
  out.origin.resize(f.num_vertices() * factor);
  for (std::size_t i = 0; i < out.origin.size(); ++i) out.origin[i] = static_cast<Vertex>(i / factor);

  std::vector<std::vector<Vertex>> edges;
  std::vector<std::size_t> digit(k);
  for (std::size_t e = 0; e < f.num_edges(); ++e) {
    auto ed = f.edge(static_cast<EdgeIndex>(e));
    std::fill(digit.begin(), digit.end(), 0);
    while (true) {
      std::vector<Vertex> clone(k);
      for (std::size_t i = 0; i < k; ++i) clone[i] = static_cast<Vertex>(ed[i] * factor + digit[i]);
      edges.push_back(std::move(clone));
      std::size_t i = k;
      while (i > 0 && ++digit[i - 1] == factor) digit[--i] = 0;
      if (i == 0) break;
    }
  }
  out.graph = Hypergraph::build(out.origin.size(), k, edges);
  return out;
}

Hypergraph complete(std::size_t n, std::size_t k) {
  std::vector<std::vector<Vertex>> edges;
  for_each_subset(n, k, [&](std::span<const Vertex> s) { edges.emplace_back(s.begin(), s.end()); });
  return Hypergraph::build(n, k, edges);
}

Hypergraph clique_plus_isolated(std::size_t n, std::size_t s, std::size_t k, std::size_t b) {
  Pattern pattern(k, b);
  const std::size_t core = pattern.footprint_size() * (s + 1) - 1;
  if (n < core) throw std::invalid_argument("clique construction needs n >= (2k-b)(s+1)-1");
  std::vector<std::vector<Vertex>> edges;
  for_each_subset(core, k, [&](std::span<const Vertex> e) { edges.emplace_back(e.begin(), e.end()); });
  return Hypergraph::build(n, k, edges);
}

Hypergraph cover_construction(std::size_t n, std::size_t s, std::size_t k) {
  if (s > n) throw std::invalid_argument("cover construction needs s <= n");
  std::vector<std::vector<Vertex>> edges;
  for_each_subset(n, k, [&](std::span<const Vertex> e) {
    if (e.front() < s) edges.emplace_back(e.begin(), e.end());
  });
  return Hypergraph::build(n, k, edges);
}

Hypergraph kpartite_extremal(std::size_t k, std::size_t n, std::size_t t, bool minus) {
  if (k < 2) throw std::invalid_argument("k-partite construction needs k >= 2");
  if (t < 1 || t + 1 > n) throw std::invalid_argument("k-partite construction needs 1 <= t <= n-1");
  std::vector<std::vector<Vertex>> edges;
  std::vector<std::size_t> digit(k, 0);
  auto advance = [&] {
    for (std::size_t i = k; i-- > 0;) {
      if (++digit[i] < (i == 0 ? t : n)) return true;
      digit[i] = 0;
    }
    return false;
  };
  do {
    std::vector<Vertex> e(k);
    for (std::size_t c = 0; c < k; ++c) e[c] = static_cast<Vertex>(c * n + digit[c]);
    edges.push_back(std::move(e));
  } while (advance());
  if (minus) edges.erase(edges.begin());  // generated in lexicographic order
  return Hypergraph::build(k * n, k, edges);
}

Hypergraph random_hypergraph(std::size_t n, std::size_t k, double p, std::uint64_t seed) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("edge probability must lie in [0,1]");
  std::mt19937_64 rng(seed);
  std::vector<std::vector<Vertex>> edges;
  for_each_subset(n, k, [&](std::span<const Vertex> e) {
    if (unit_draw(rng) < p) edges.emplace_back(e.begin(), e.end());
  });
  return Hypergraph::build(n, k, edges);
}

Hypergraph random_tripartite(std::size_t a, std::size_t b, std::size_t c, double p,
                             std::uint64_t seed) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("edge probability must lie in [0,1]");
  std::mt19937_64 rng(seed);
  std::vector<std::vector<Vertex>> edges;
  for (std::size_t x = 0; x < a; ++x)
    for (std::size_t y = 0; y < b; ++y)
      for (std::size_t z = 0; z < c; ++z)
        if (unit_draw(rng) < p)
          edges.push_back({static_cast<Vertex>(x), static_cast<Vertex>(a + y),
                           static_cast<Vertex>(a + b + z)});
  return Hypergraph::build(a + b + c, 3, edges);
}

mpz_class conjecture_bound(std::size_t n, std::size_t s, std::size_t k, std::size_t b) {
  Pattern pattern(k, b);
  const std::size_t core = pattern.footprint_size() * (s + 1) - 1;
  if (n < core) throw std::invalid_argument("conjecture bound needs n >= (2k-b)(s+1)-1");
  mpz_class clique = binomial(core, k);
  mpz_class cover = binomial(n, k) - binomial(n - s, k);
  return clique > cover ? clique : cover;
}

}  // namespace ytile
