#include "ytile/procedures.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <stdexcept>

namespace ytile {
namespace {

std::vector<char> mask_of(std::size_t n, std::span<const Vertex> s) {
  std::vector<char> m(n, 0);
  for (Vertex v : s) {
    if (v >= n) throw std::out_of_range("vertex " + std::to_string(v) + " out of range");
    m[v] = 1;
  }
  return m;
}

std::vector<Vertex> sorted_copy(std::span<const Vertex> s) {
  std::vector<Vertex> out(s.begin(), s.end());
  std::sort(out.begin(), out.end());
  return out;
}

// Remaining copies are ordered_tiling[t1..]. Moves copies to the front in selection order.
void run_selection(const Hypergraph& h, RConstruction& r) {
  std::vector<char> w_mask = mask_of(h.num_vertices(), r.W);
  std::vector<PatternCopy> remaining(r.ordered_tiling.begin() + static_cast<std::ptrdiff_t>(r.t1),
                                     r.ordered_tiling.end());
  r.ordered_tiling.resize(r.t1);
  while (true) {
    bool moved = false;
    for (std::size_t i = 0; i < remaining.size() && !moved; ++i) {
      for (Vertex v : remaining[i].footprint) {
        if (degree_into_set(h, v, w_mask) < r.threshold) continue;
        r.R.push_back(v);
        for (Vertex u : remaining[i].footprint) {
          if (u != v) {
            w_mask[u] = 1;
            r.W.push_back(u);
          }
        }
        r.ordered_tiling.push_back(std::move(remaining[i]));
        remaining.erase(remaining.begin() + static_cast<std::ptrdiff_t>(i));
        ++r.t1;
        moved = true;
        break;
      }
    }
    if (!moved) break;
  }
  std::sort(r.W.begin(), r.W.end());
  r.t2 = remaining.size();
  for (auto& c : remaining) r.ordered_tiling.push_back(std::move(c));
}

}  // namespace

RConstruction construct_R(const Hypergraph& h, const Tiling& tiling, std::span<const Vertex> U,
                          std::size_t threshold) {
  if (h.uniformity() != 3) throw std::invalid_argument("construct_R needs a 3-graph");
  if (threshold == 0) throw std::invalid_argument("threshold must be positive");
  if (auto bad = verify_tiling(h, Pattern::y32(), tiling)) {
    throw std::invalid_argument("invalid tiling: " + bad->what);
  }
  std::vector<char> covered(h.num_vertices(), 0);
  for (const auto& c : tiling.copies)
    for (Vertex v : c.footprint) covered[v] = 1;
  const auto u_mask = mask_of(h.num_vertices(), U);
  for (std::size_t v = 0; v < h.num_vertices(); ++v) {
    if (covered[v] == u_mask[v]) {
      throw std::invalid_argument("U must be exactly the uncovered vertices (vertex " + std::to_string(v) + ")");
    }
  }
  RConstruction r;
  r.W = sorted_copy(U);
  r.ordered_tiling = tiling.copies;
  r.threshold = threshold;
  run_selection(h, r);
  return r;
}

RConstruction extend_R(const Hypergraph& h, const RConstruction& state) {
  RConstruction r = state;
  run_selection(h, r);
  return r;
}

std::optional<std::string> check_r_construction(const Hypergraph& h, const Tiling& tiling,
                                                std::span<const Vertex> U, const RConstruction& r) {
  if (r.t1 + r.t2 != tiling.size() || r.ordered_tiling.size() != tiling.size()) {
    return "t1 + t2 differs from the tiling size";
  }
  if (r.R.size() != r.t1) return "|R| differs from t1";
  {
    auto a = tiling.copies;
    auto b = r.ordered_tiling;
    auto less = [](const PatternCopy& x, const PatternCopy& y) { return x.footprint < y.footprint; };
    std::sort(a.begin(), a.end(), less);
    std::sort(b.begin(), b.end(), less);
    if (a != b) return "ordered tiling is not a relabelling of the input tiling";
  }
  std::vector<Vertex> expect(U.begin(), U.end());
  for (std::size_t i = 0; i < r.t1; ++i) {
    const auto& fp = r.ordered_tiling[i].footprint;
    if (!std::binary_search(fp.begin(), fp.end(), r.R[i])) return "v_i is not in Y_i";
    for (Vertex u : fp)
      if (u != r.R[i]) expect.push_back(u);
  }
  std::sort(expect.begin(), expect.end());
  if (expect != r.W) return "W differs from U plus the moved copies minus R";
  const auto w_mask = mask_of(h.num_vertices(), r.W);
  for (std::size_t i = r.t1; i < r.ordered_tiling.size(); ++i) {
    for (Vertex v : r.ordered_tiling[i].footprint) {
      if (degree_into_set(h, v, w_mask) >= r.threshold) {
        return "vertex " + std::to_string(v) + " of a remaining copy meets the threshold";
      }
    }
  }
  return std::nullopt;
}

std::optional<PatternCopy> y_free_check(const Hypergraph& h, std::span<const Vertex> S) {
  if (h.uniformity() != 3) throw std::invalid_argument("y_free_check needs a 3-graph");
  const auto in_s = mask_of(h.num_vertices(), S);
  auto inside = [&](EdgeIndex e) {
    for (Vertex v : h.edge(e))
      if (!in_s[v]) return false;
    return true;
  };
  for (EdgeIndex e = 0; e < h.num_edges(); ++e) {
    if (!inside(e)) continue;
    auto ed = h.edge(e);
    for (std::size_t drop = 0; drop < 3; ++drop) {
      Vertex x = ed[drop == 0 ? 1 : 0], y = ed[drop == 2 ? 1 : 2];
      for (EdgeIndex f : h.incident(x)) {
        if (f <= e || !inside(f)) continue;
        auto fd = h.edge(f);
        if (std::find(fd.begin(), fd.end(), y) != fd.end()) return make_copy(h, Pattern::y32(), e, f);
      }
    }
  }
  return std::nullopt;
}

std::size_t codegree_into(const Hypergraph& h, Vertex u, Vertex v, const std::vector<char>& w_mask) {
  std::size_t c = 0;
  for (EdgeIndex e : h.incident(u)) {
    auto ed = h.edge(e);
    if (std::find(ed.begin(), ed.end(), v) == ed.end()) continue;
    for (Vertex w : ed)
      if (w != u && w != v && w_mask[w]) ++c;
  }
  return c;
}

namespace {

void require_disjoint(std::size_t n, std::initializer_list<std::span<const Vertex>> sets) {
  std::vector<char> seen(n, 0);
  for (auto s : sets)
    for (Vertex v : s) {
      if (v >= n) throw std::out_of_range("vertex out of range");
      if (seen[v]) throw std::invalid_argument("copies and W must be pairwise disjoint");
      seen[v] = 1;
    }
}

LinkGraph link_graph_masked(const Hypergraph& h, const std::vector<char>& w_mask, const PatternCopy& p,
                            const PatternCopy& q, std::size_t tau) {
  LinkGraph g;
  g.left = p.footprint;
  g.right = q.footprint;
  g.tau = tau;
  for (std::size_t i = 0; i < g.left.size(); ++i)
    for (std::size_t j = 0; j < g.right.size(); ++j)
      if (codegree_into(h, g.left[i], g.right[j], w_mask) >= tau) g.edges.emplace_back(i, j);
  return g;
}

}  // namespace

LinkGraph link_graph(const Hypergraph& h, std::span<const Vertex> W, const PatternCopy& copy_p,
                     const PatternCopy& copy_q, std::size_t tau) {
  if (h.uniformity() != 3) throw std::invalid_argument("link graphs need a 3-graph");
  require_disjoint(h.num_vertices(), {W, copy_p.footprint, copy_q.footprint});
  return link_graph_masked(h, mask_of(h.num_vertices(), W), copy_p, copy_q, tau);
}

MatchingCover bipartite_matching_cover(const BipartiteGraph& g) {
  std::vector<std::vector<std::size_t>> adj(g.left);
  for (auto [l, r] : g.edges) {
    if (l >= g.left || r >= g.right) throw std::out_of_range("bipartite edge out of range");
    adj[l].push_back(r);
  }
  for (auto& a : adj) {
    std::sort(a.begin(), a.end());
    a.erase(std::unique(a.begin(), a.end()), a.end());
  }
  constexpr auto none = static_cast<std::size_t>(-1);
  std::vector<std::size_t> match_l(g.left, none), match_r(g.right, none);
  std::vector<char> visited;
  auto augment = [&](auto&& self, std::size_t l) -> bool {
    for (std::size_t r : adj[l]) {
      if (visited[r]) continue;
      visited[r] = 1;
      if (match_r[r] == none || self(self, match_r[r])) {
        match_l[l] = r;
        match_r[r] = l;
        return true;
      }
    }
    return false;
  };
  for (std::size_t l = 0; l < g.left; ++l) {
    visited.assign(g.right, 0);
    augment(augment, l);
  }

  // Alternating reachability from unmatched left vertices.
  std::vector<char> reach_l(g.left, 0), reach_r(g.right, 0);
  std::vector<std::size_t> stack;
  for (std::size_t l = 0; l < g.left; ++l)
    if (match_l[l] == none) {
      reach_l[l] = 1;
      stack.push_back(l);
    }
  while (!stack.empty()) {
    const std::size_t l = stack.back();
    stack.pop_back();
    for (std::size_t r : adj[l]) {
      if (reach_r[r]) continue;
      reach_r[r] = 1;
      const std::size_t next = match_r[r];
      if (next != none && !reach_l[next]) {
        reach_l[next] = 1;
        stack.push_back(next);
      }
    }
  }

  MatchingCover out;
  for (std::size_t l = 0; l < g.left; ++l) {
    if (match_l[l] != none) out.matching.emplace_back(l, match_l[l]);
    if (!reach_l[l]) out.cover_left.push_back(l);
  }
  for (std::size_t r = 0; r < g.right; ++r)
    if (reach_r[r]) out.cover_right.push_back(r);
  return out;
}

MatchingCover bipartite_matching_cover(const LinkGraph& g) {
  return bipartite_matching_cover(BipartiteGraph{g.left.size(), g.right.size(), g.edges});
}

MatchingCover bipartite_matching_cover(std::size_t n,
                                       const std::vector<std::pair<std::size_t, std::size_t>>& edges) {
  std::vector<std::vector<std::size_t>> adj(n);
  for (auto [u, v] : edges) {
    if (u >= n || v >= n) throw std::out_of_range("edge out of range");
    if (u == v) throw std::invalid_argument("loops are not bipartite");
    adj[u].push_back(v);
    adj[v].push_back(u);
  }
  std::vector<int> colour(n, -1);
  for (std::size_t s = 0; s < n; ++s) {
    if (colour[s] != -1) continue;
    colour[s] = 0;
    std::vector<std::size_t> stack{s};
    while (!stack.empty()) {
      const std::size_t u = stack.back();
      stack.pop_back();
      for (std::size_t v : adj[u]) {
        if (colour[v] == -1) {
          colour[v] = 1 - colour[u];
          stack.push_back(v);
        } else if (colour[v] == colour[u]) {
          throw std::invalid_argument("graph is not bipartite");
        }
      }
    }
  }
  std::vector<std::size_t> side_index(n), left_ids, right_ids;
  for (std::size_t v = 0; v < n; ++v) {
    auto& ids = colour[v] == 0 ? left_ids : right_ids;
    side_index[v] = ids.size();
    ids.push_back(v);
  }
  BipartiteGraph g{left_ids.size(), right_ids.size(), {}};
  for (auto [u, v] : edges) {
    if (colour[u] == 1) std::swap(u, v);
    g.edges.emplace_back(side_index[u], side_index[v]);
  }
  MatchingCover local = bipartite_matching_cover(g);
  MatchingCover out;
  for (auto [l, r] : local.matching) out.matching.emplace_back(left_ids[l], right_ids[r]);
  for (std::size_t l : local.cover_left) out.cover_left.push_back(left_ids[l]);
  for (std::size_t r : local.cover_right) out.cover_right.push_back(right_ids[r]);
  return out;
}

std::size_t profile_table_bound(std::size_t x_t) {
  if (x_t == 0) return 64;
  if (x_t <= 10) return 52;
  if (x_t <= 14) return 48;
  if (x_t <= 16) return 46;
  return 37;
}

namespace {

bool same_side_two_cover(const LinkGraph& g) {
  for (int side = 0; side < 2; ++side)
    for (std::size_t a = 0; a < 4; ++a)
      for (std::size_t b = a + 1; b < 4; ++b) {
        bool covers = true;
        for (auto [l, r] : g.edges) {
          const std::size_t x = side == 0 ? l : r;
          if (x != a && x != b) {
            covers = false;
            break;
          }
        }
        if (covers) return true;
      }
  return false;
}

}  // namespace

TripleProfile triple_profile(const Hypergraph& h, std::span<const Vertex> W, const PatternCopy& a,
                             const PatternCopy& b, const PatternCopy& c, std::size_t tau) {
  if (h.uniformity() != 3) throw std::invalid_argument("triple profiles need a 3-graph");
  require_disjoint(h.num_vertices(), {W, a.footprint, b.footprint, c.footprint});
  const auto w_mask = mask_of(h.num_vertices(), W);
  TripleProfile p;
  p.blocks = {a.footprint, b.footprint, c.footprint};
  const std::array<std::pair<int, int>, 3> pair_ids{{{0, 1}, {0, 2}, {1, 2}}};
  const std::array<const PatternCopy*, 3> copies{&a, &b, &c};
  for (std::size_t k = 0; k < 3; ++k) {
    const auto [i, j] = pair_ids[k];
    LinkGraph g = link_graph_masked(h, w_mask, *copies[i], *copies[j], tau);
    auto& diag = p.pairs[k];
    diag.link_edges = g.edges.size();
    diag.matching = bipartite_matching_cover(g).matching.size();
    if (diag.matching >= 3) p.would_be_improvable = true;
    diag.emptied = g.edges.size() >= 6 && same_side_two_cover(g);
    if (diag.emptied) continue;
    for (auto [l, r] : g.edges) p.g_t.emplace_back(g.left[l], g.right[r]);
  }
  p.x_t = p.g_t.size();

  std::vector<int> block_of(h.num_vertices(), -1);
  for (int i = 0; i < 3; ++i)
    for (Vertex v : p.blocks[i]) block_of[v] = i;
  for (Vertex v : p.blocks[0]) {
    for (EdgeIndex e : h.incident(v)) {
      unsigned seen = 0;
      for (Vertex u : h.edge(e))
        if (block_of[u] >= 0) seen |= 1u << block_of[u];
      if (seen == 0b111u) ++p.f;
    }
  }

  for (Vertex x : p.blocks[0])
    for (Vertex y : p.blocks[1])
      for (Vertex z : p.blocks[2]) {
        const bool covers = std::all_of(p.g_t.begin(), p.g_t.end(), [&](const auto& e) {
          return e.first == x || e.first == y || e.first == z || e.second == x || e.second == y || e.second == z;
        });
        if (covers && !p.crossing_cover) p.crossing_cover = std::array<Vertex, 3>{x, y, z};
      }
  p.table_bound = profile_table_bound(p.x_t);
  return p;
}

ImprovementResult improvement_search(const Hypergraph& h, std::span<const Vertex> W,
                                     const std::array<PatternCopy, 3>& triple, std::uint64_t budget,
                                     std::size_t w_cap) {
  if (h.uniformity() != 3) throw std::invalid_argument("improvement search needs a 3-graph");
  require_disjoint(h.num_vertices(), {W, triple[0].footprint, triple[1].footprint, triple[2].footprint});
  std::vector<char> in_t(h.num_vertices(), 0);
  std::vector<Vertex> vertices;
  for (const auto& c : triple)
    for (Vertex v : c.footprint) {
      in_t[v] = 1;
      vertices.push_back(v);
    }

  std::vector<std::pair<std::size_t, Vertex>> ranked;
  for (Vertex w : W) {
    std::size_t d = 0;
    for (EdgeIndex e : h.incident(w)) {
      for (Vertex u : h.edge(e))
        if (in_t[u]) {
          ++d;
          break;
        }
    }
    ranked.emplace_back(d, w);
  }
  std::sort(ranked.begin(), ranked.end(), [](const auto& x, const auto& y) {
    return x.first != y.first ? x.first > y.first : x.second < y.second;
  });
  ImprovementResult out;
  for (std::size_t i = 0; i < ranked.size() && i < w_cap; ++i) out.used_w.push_back(ranked[i].second);
  std::sort(out.used_w.begin(), out.used_w.end());
  vertices.insert(vertices.end(), out.used_w.begin(), out.used_w.end());
  std::sort(vertices.begin(), vertices.end());

  const InducedSubgraph sub = induced(h, vertices);
  const Pattern y = Pattern::y32();
  const MixedResult res = max_mixed_tiling_exact(sub.graph, y, budget, std::size_t{13});
  out.nodes = res.nodes;
  out.exhausted = !res.optimal && !res.target_reached;
  if (res.coverage < 13) return out;

  auto host_edge = [&](EdgeIndex e) {
    std::array<Vertex, 3> ed{};
    auto local = sub.graph.edge(e);
    for (std::size_t i = 0; i < 3; ++i) ed[i] = sub.original[local[i]];
    return *h.find_edge(ed);
  };
  MixedTiling mt;
  for (const auto& c : res.tiling.copies) {
    EdgeIndex ea = host_edge(c.edge_a), eb = host_edge(c.edge_b);
    if (ea > eb) std::swap(ea, eb);
    mt.copies.push_back(make_copy(h, y, ea, eb));
  }
  for (EdgeIndex e : res.tiling.singles) mt.singles.push_back(host_edge(e));
  out.tiling = std::move(mt);
  return out;
}

Digraph::Digraph(std::size_t n) : out_(n, 0) {
  if (n > 64) throw std::invalid_argument("Digraph supports at most 64 vertices");
}

void Digraph::add_arc(std::size_t from, std::size_t to) {
  if (from >= size() || to >= size()) throw std::out_of_range("arc out of range");
  if (from == to) throw std::invalid_argument("loops are not allowed");
  out_[from] |= std::uint64_t{1} << to;
}

std::optional<K23Plus> find_k23_plus(const Digraph& d) {
  const std::size_t n = d.size();
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b) {
      std::uint64_t common = d.out_mask(a) & d.out_mask(b);
      common &= ~((std::uint64_t{1} << a) | (std::uint64_t{1} << b));
      if (std::popcount(common) < 3) continue;
      K23Plus k{{a, b}, {}};
      for (std::size_t i = 0; i < 3; ++i) {
        k.sinks[i] = static_cast<std::size_t>(std::countr_zero(common));
        common &= common - 1;
      }
      return k;
    }
  return std::nullopt;
}

VTilingResult ordered_v_tiling(std::size_t n, std::span<const OrderedEdge> edges, std::size_t target,
                               std::size_t prune_threshold) {
  for (const auto& e : edges) {
    for (Vertex v : e)
      if (v >= n) throw std::out_of_range("ordered edge vertex out of range");
    if (e[0] == e[1] || e[0] == e[2] || e[1] == e[2]) {
      throw std::invalid_argument("ordered edges need three distinct vertices");
    }
  }
  VTilingResult out;
  // Deleting edges by third vertex never changes another vertex's third-position count,
  // so one pass reaches the fixed point.
  std::vector<std::size_t> third_count(n, 0);
  for (const auto& e : edges) ++third_count[e[2]];
  std::vector<char> kept(edges.size(), 1);
  for (std::size_t i = 0; i < edges.size(); ++i) {
    if (third_count[edges[i][2]] <= prune_threshold) {
      kept[i] = 0;
      ++out.pruned_edges;
    }
  }

  std::vector<char> used(n, 0);
  auto free_edge = [&](std::size_t i) { return kept[i] && !used[edges[i][0]] && !used[edges[i][1]] && !used[edges[i][2]]; };
  for (std::size_t i = 0; i < edges.size() && out.copies.size() < target; ++i) {
    if (!free_edge(i)) continue;
    const auto& e1 = edges[i];
    for (std::size_t j = 0; j < edges.size(); ++j) {
      if (j == i || !free_edge(j)) continue;
      const auto& e2 = edges[j];
      if (e2[2] != e1[2]) continue;
      if (e2[0] == e1[0] || e2[0] == e1[1] || e2[1] == e1[0] || e2[1] == e1[1]) continue;
      out.copies.emplace_back(i, j);
      for (Vertex v : e1) used[v] = 1;
      used[e2[0]] = used[e2[1]] = 1;
      break;
    }
  }
  out.reached_target = out.copies.size() >= target;
  return out;
}

nlohmann::json to_json(const RConstruction& r) {
  nlohmann::json j;
  j["R"] = r.R;
  j["W"] = r.W;
  j["t1"] = r.t1;
  j["t2"] = r.t2;
  j["threshold"] = r.threshold;
  j["ordered_tiling"] = copies_json(r.ordered_tiling);
  return j;
}

nlohmann::json to_json(const TripleProfile& p) {
  nlohmann::json j;
  j["blocks"] = p.blocks;
  j["x_t"] = p.x_t;
  j["f"] = p.f;
  j["table_bound"] = p.table_bound;
  j["g_t"] = nlohmann::json::array();
  for (auto [u, v] : p.g_t) j["g_t"].push_back({u, v});
  j["crossing_cover"] = p.crossing_cover ? nlohmann::json(*p.crossing_cover) : nlohmann::json(nullptr);
  j["would_be_improvable"] = p.would_be_improvable;
  j["pairs"] = nlohmann::json::array();
  for (const auto& d : p.pairs) {
    j["pairs"].push_back({{"link_edges", d.link_edges}, {"matching", d.matching}, {"emptied", d.emptied}});
  }
  return j;
}

}  // namespace ytile
