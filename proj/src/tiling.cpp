#include "ytile/tiling.hpp"

#include <algorithm>
#include <numeric>

#include "packing.hpp"

namespace ytile {
namespace {

std::size_t intersection_size(std::span<const Vertex> a, std::span<const Vertex> b) {
  std::size_t i = 0, j = 0, c = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] == b[j]) {
      ++c;
      ++i;
      ++j;
    } else if (a[i] < b[j]) {
      ++i;
    } else {
      ++j;
    }
  }
  return c;
}

std::vector<Vertex> sorted_union(std::span<const Vertex> a, std::span<const Vertex> b) {
  std::vector<Vertex> out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

void require_uniformity(const Hypergraph& h, const Pattern& pattern) {
  if (h.uniformity() != pattern.k) {
    throw std::invalid_argument("pattern uniformity does not match the hypergraph");
  }
}

bool copy_less(const PatternCopy& x, const PatternCopy& y) {
  if (x.footprint != y.footprint) return x.footprint < y.footprint;
  if (x.edge_a != y.edge_a) return x.edge_a < y.edge_a;
  return x.edge_b < y.edge_b;
}

}  // namespace

PatternCopy make_copy(const Hypergraph& h, const Pattern& pattern, EdgeIndex a, EdgeIndex b) {
  require_uniformity(h, pattern);
  if (a >= h.num_edges() || b >= h.num_edges()) throw std::invalid_argument("copy edge out of range");
  if (a > b) std::swap(a, b);
  if (a == b || intersection_size(h.edge(a), h.edge(b)) != pattern.b) {
    throw std::invalid_argument("edges " + std::to_string(a) + " and " + std::to_string(b) +
                                " do not meet in exactly " + std::to_string(pattern.b) + " vertices");
  }
  return {a, b, sorted_union(h.edge(a), h.edge(b))};
}

std::vector<Vertex> Tiling::covered() const {
  std::vector<Vertex> out;
  for (const auto& c : copies) out.insert(out.end(), c.footprint.begin(), c.footprint.end());
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<PatternCopy> enumerate_copies(const Hypergraph& h, const Pattern& pattern) {
  require_uniformity(h, pattern);
  std::vector<PatternCopy> out;
  std::vector<EdgeIndex> candidates;
  for (EdgeIndex a = 0; a < h.num_edges(); ++a) {
    candidates.clear();
    for (Vertex v : h.edge(a))
      for (EdgeIndex b : h.incident(v))
        if (b > a) candidates.push_back(b);
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
    for (EdgeIndex b : candidates) {
      if (intersection_size(h.edge(a), h.edge(b)) == pattern.b) {
        out.push_back({a, b, sorted_union(h.edge(a), h.edge(b))});
      }
    }
  }
  std::sort(out.begin(), out.end(), copy_less);
  return out;
}

TilingResult max_tiling_exact(const Hypergraph& h, const Pattern& pattern, std::uint64_t budget) {
  auto copies = enumerate_copies(h, pattern);
  std::vector<detail::PackingSearch::Item> items;
  items.reserve(copies.size());
  for (const auto& c : copies) items.push_back({c.footprint, 1});
  detail::PackingSearch search(h.num_vertices(), std::move(items), 1, 0);
  auto outcome = search.run(budget);

  TilingResult result;
  for (std::size_t i : outcome.chosen) result.tiling.copies.push_back(copies[i]);
  result.optimal = !outcome.exhausted;
  result.nodes = outcome.nodes;
  return result;
}

MixedResult max_mixed_tiling_exact(const Hypergraph& h, const Pattern& pattern, std::uint64_t budget,
                                   std::optional<std::size_t> target_coverage) {
  auto copies = enumerate_copies(h, pattern);
  std::vector<detail::PackingSearch::Item> items;
  items.reserve(copies.size() + h.num_edges());
  for (const auto& c : copies) {
    items.push_back({c.footprint, static_cast<std::int64_t>(pattern.footprint_size())});
  }
  for (EdgeIndex e = 0; e < h.num_edges(); ++e) {
    auto ed = h.edge(e);
    items.push_back({{ed.begin(), ed.end()}, static_cast<std::int64_t>(pattern.k)});
  }
  // Coverage dominates; among equal coverage, fewer components wins.
  const auto scale = static_cast<std::int64_t>(h.num_vertices()) + 1;
  detail::PackingSearch search(h.num_vertices(), std::move(items), scale, 1);
  std::optional<std::int64_t> target;
  if (target_coverage) {
    // Smallest score any tiling with the target coverage can have.
    const auto cov = static_cast<std::int64_t>(*target_coverage);
    target = cov * scale - cov;
  }
  auto outcome = search.run(budget, target);

  MixedResult result;
  for (std::size_t i : outcome.chosen) {
    if (i < copies.size()) {
      result.tiling.copies.push_back(copies[i]);
    } else {
      result.tiling.singles.push_back(static_cast<EdgeIndex>(i - copies.size()));
    }
  }
  result.coverage = result.tiling.coverage(pattern);
  result.target_reached = target_coverage && result.coverage >= *target_coverage;
  result.optimal = !outcome.exhausted && !outcome.target_reached;
  result.nodes = outcome.nodes;
  return result;
}

Tiling greedy_tiling(const Hypergraph& h, const Pattern& pattern) {
  std::vector<char> used(h.num_vertices(), 0);
  Tiling t;
  for (auto& c : enumerate_copies(h, pattern)) {
    if (std::none_of(c.footprint.begin(), c.footprint.end(), [&](Vertex v) { return used[v]; })) {
      for (Vertex v : c.footprint) used[v] = 1;
      t.copies.push_back(std::move(c));
    }
  }
  return t;
}

Tiling local_search_improve(const Hypergraph& h, const Pattern& pattern, Tiling tiling,
                            std::size_t radius) {
  if (auto bad = verify_tiling(h, pattern, tiling)) {
    throw std::invalid_argument("local search needs a valid tiling: " + bad->what);
  }
  const auto all = enumerate_copies(h, pattern);

  // Tries every r-subset of the current tiling (lexicographic) and looks for r+1 disjoint
  // copies on the freed vertices plus the uncovered ones.
  auto try_swap = [&](std::size_t r) -> bool {
    const std::size_t size = tiling.copies.size();
    if (r > size) return false;
    std::vector<std::size_t> pick(r);
    std::iota(pick.begin(), pick.end(), std::size_t{0});
    while (true) {
      std::vector<char> blocked(h.num_vertices(), 0);
      for (std::size_t i = 0, j = 0; i < size; ++i) {
        if (j < r && pick[j] == i) {
          ++j;
          continue;
        }
        for (Vertex v : tiling.copies[i].footprint) blocked[v] = 1;
      }
      std::vector<std::size_t> pool;
      std::vector<detail::PackingSearch::Item> items;
      for (std::size_t c = 0; c < all.size(); ++c) {
        const auto& fp = all[c].footprint;
        if (std::none_of(fp.begin(), fp.end(), [&](Vertex v) { return blocked[v]; })) {
          pool.push_back(c);
          items.push_back({fp, 1});
        }
      }
      if (pool.size() > r) {
        detail::PackingSearch search(h.num_vertices(), std::move(items), 1, 0);
        auto found = search.run(kDefaultNodeBudget, static_cast<std::int64_t>(r + 1));
        if (found.score >= static_cast<std::int64_t>(r + 1)) {
          Tiling next;
          for (std::size_t i = 0, j = 0; i < size; ++i) {
            if (j < r && pick[j] == i) {
              ++j;
              continue;
            }
            next.copies.push_back(tiling.copies[i]);
          }
          for (std::size_t i : found.chosen) next.copies.push_back(all[pool[i]]);
          std::sort(next.copies.begin(), next.copies.end(), copy_less);
          tiling = std::move(next);
          return true;
        }
      }
      // Next r-combination.
      std::size_t i = r;
      while (i > 0 && pick[i - 1] == size - r + i - 1) --i;
      if (i == 0) return false;
      ++pick[i - 1];
      for (std::size_t j = i; j < r; ++j) pick[j] = pick[j - 1] + 1;
    }
  };

  bool improved = true;
  while (improved) {
    improved = false;
    for (std::size_t r = 0; r <= radius && !improved; ++r) improved = try_swap(r);
  }
  return tiling;
}

namespace {

VerifyResult check_copy(const Hypergraph& h, const Pattern& pattern, const PatternCopy& c,
                        std::size_t index) {
  if (c.edge_a >= h.num_edges() || c.edge_b >= h.num_edges()) {
    return Violation{"copy " + std::to_string(index) + " names an edge not in the host", index, index};
  }
  if (c.edge_a == c.edge_b) {
    return Violation{"copy " + std::to_string(index) + " uses the same edge twice", index, index};
  }
  const auto shared = intersection_size(h.edge(c.edge_a), h.edge(c.edge_b));
  if (shared != pattern.b) {
    return Violation{"copy " + std::to_string(index) + " has edges sharing " + std::to_string(shared) +
                         " vertices, expected " + std::to_string(pattern.b),
                     index, index};
  }
  if (c.footprint != sorted_union(h.edge(c.edge_a), h.edge(c.edge_b))) {
    return Violation{"copy " + std::to_string(index) + " has an inconsistent footprint", index, index};
  }
  return std::nullopt;
}

// Components are given as vertex lists; reports the first pair sharing a vertex.
VerifyResult check_disjoint(std::size_t n, const std::vector<std::vector<Vertex>>& parts) {
  std::vector<std::size_t> owner(n, static_cast<std::size_t>(-1));
  for (std::size_t i = 0; i < parts.size(); ++i) {
    for (Vertex v : parts[i]) {
      if (owner[v] != static_cast<std::size_t>(-1) && owner[v] != i) {
        return Violation{"components " + std::to_string(owner[v]) + " and " + std::to_string(i) +
                             " share vertex " + std::to_string(v),
                         owner[v], i};
      }
      owner[v] = i;
    }
  }
  return std::nullopt;
}

}  // namespace

VerifyResult verify_tiling(const Hypergraph& h, const Pattern& pattern, const Tiling& tiling) {
  require_uniformity(h, pattern);
  std::vector<std::vector<Vertex>> parts;
  for (std::size_t i = 0; i < tiling.copies.size(); ++i) {
    if (auto bad = check_copy(h, pattern, tiling.copies[i], i)) return bad;
    parts.push_back(tiling.copies[i].footprint);
  }
  return check_disjoint(h.num_vertices(), parts);
}

VerifyResult verify_tiling(const Hypergraph& h, const Pattern& pattern, const MixedTiling& tiling) {
  require_uniformity(h, pattern);
  std::vector<std::vector<Vertex>> parts;
  for (std::size_t i = 0; i < tiling.copies.size(); ++i) {
    if (auto bad = check_copy(h, pattern, tiling.copies[i], i)) return bad;
    parts.push_back(tiling.copies[i].footprint);
  }
  for (std::size_t i = 0; i < tiling.singles.size(); ++i) {
    const auto idx = tiling.copies.size() + i;
    if (tiling.singles[i] >= h.num_edges()) {
      return Violation{"single edge " + std::to_string(i) + " is not in the host", idx, idx};
    }
    auto e = h.edge(tiling.singles[i]);
    parts.emplace_back(e.begin(), e.end());
  }
  return check_disjoint(h.num_vertices(), parts);
}

namespace {

// Branch-and-bound over candidate k-sets for the largest family with no two members meeting
// in exactly b vertices.
class PatternFreeSearch {
public:
  PatternFreeSearch(std::size_t n, const Pattern& pattern, std::uint64_t budget)
      : n_(n), pattern_(pattern), budget_(budget) {
    for_each_subset(n, pattern.k, [&](std::span<const Vertex> s) { cands_.emplace_back(s.begin(), s.end()); });
    const std::size_t m = cands_.size();
    conflict_.assign(m, std::vector<std::uint64_t>((m + 63) / 64, 0));
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = i + 1; j < m; ++j)
        if (intersection_size(cands_[i], cands_[j]) == pattern.b) {
          conflict_[i][j / 64] |= std::uint64_t{1} << (j % 64);
          conflict_[j][i / 64] |= std::uint64_t{1} << (i % 64);
        }
    pair_bound_ = pattern.k == 3 && pattern.b == 2;
  }

  PatternFreeResult run() {
    std::vector<std::uint32_t> avail(cands_.size());
    std::iota(avail.begin(), avail.end(), 0u);
    std::vector<std::uint32_t> chosen;
    if (!avail.empty()) {
      // Any nonempty family can be relabelled to contain {0, ..., k-1}, the first candidate.
      chosen.push_back(0);
      best_ = chosen;
      search(filter(avail, 0, 1), chosen);
    }
    PatternFreeResult r;
    r.edges = best_.size();
    std::vector<std::vector<Vertex>> edges;
    for (auto i : best_) edges.push_back(cands_[i]);
    r.witness = Hypergraph::build(n_, pattern_.k, edges);
    r.optimal = !exhausted_;
    r.nodes = nodes_;
    return r;
  }

private:
  std::vector<std::uint32_t> filter(const std::vector<std::uint32_t>& avail, std::uint32_t item,
                                    std::size_t from) const {
    std::vector<std::uint32_t> out;
    for (std::size_t j = from; j < avail.size(); ++j) {
      const auto c = avail[j];
      if (c != item && !(conflict_[item][c / 64] >> (c % 64) & 1)) out.push_back(c);
    }
    return out;
  }

  // Each vertex v can gain at most floor(free pairs at v / 2) more triples, and each triple is
  // counted at three vertices.
  std::size_t pair_bound(const std::vector<std::uint32_t>& avail) const {
    std::vector<std::vector<char>> pair_seen(n_, std::vector<char>(n_, 0));
    std::vector<std::size_t> free_pairs(n_, 0);
    for (auto c : avail) {
      const auto& e = cands_[c];
      for (std::size_t a = 0; a < 3; ++a)
        for (std::size_t b = a + 1; b < 3; ++b) {
          if (!pair_seen[e[a]][e[b]]) {
            pair_seen[e[a]][e[b]] = 1;
            ++free_pairs[e[a]];
            ++free_pairs[e[b]];
          }
        }
    }
    std::size_t total = 0;
    for (auto f : free_pairs) total += f / 2;
    return total / 3;
  }

  void search(const std::vector<std::uint32_t>& avail, std::vector<std::uint32_t>& chosen) {
    if (exhausted_) return;
    if (++nodes_ > budget_) {
      exhausted_ = true;
      return;
    }
    if (chosen.size() > best_.size()) best_ = chosen;
    if (avail.empty()) return;
    std::size_t bound = avail.size();
    if (chosen.size() + bound <= best_.size()) return;
    if (pair_bound_) bound = std::min(bound, pair_bound(avail));
    if (chosen.size() + bound <= best_.size()) return;

    const auto item = avail.front();
    chosen.push_back(item);
    search(filter(avail, item, 1), chosen);
    chosen.pop_back();
    std::vector<std::uint32_t> rest(avail.begin() + 1, avail.end());
    search(rest, chosen);
  }

  std::size_t n_;
  Pattern pattern_;
  std::uint64_t budget_;
  bool pair_bound_ = false;
  std::vector<std::vector<Vertex>> cands_;
  std::vector<std::vector<std::uint64_t>> conflict_;
  std::vector<std::uint32_t> best_;
  std::uint64_t nodes_ = 0;
  bool exhausted_ = false;
};

}  // namespace

PatternFreeResult max_pattern_free_edges(std::size_t n, const Pattern& pattern, std::uint64_t budget) {
  return PatternFreeSearch(n, pattern, budget).run();
}

nlohmann::json copies_json(const std::vector<PatternCopy>& copies) {
  auto arr = nlohmann::json::array();
  for (const auto& c : copies) arr.push_back({c.edge_a, c.edge_b});
  return arr;
}

nlohmann::json to_json(const TilingResult& r, const Pattern& pattern) {
  return {{"size", r.tiling.size()},
          {"coverage", r.tiling.size() * pattern.footprint_size()},
          {"copies", copies_json(r.tiling.copies)},
          {"singles", nlohmann::json::array()},
          {"optimal", r.optimal},
          {"nodes", r.nodes}};
}

nlohmann::json to_json(const MixedResult& r, const Pattern& /*pattern*/) {
  return {{"size", r.tiling.copies.size()},
          {"coverage", r.coverage},
          {"copies", copies_json(r.tiling.copies)},
          {"singles", r.tiling.singles},
          {"optimal", r.optimal},
          {"nodes", r.nodes}};
}

}  // namespace ytile
