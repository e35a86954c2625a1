#include "ytile/facts.hpp"

#include <bit>
#include <optional>
#include <stdexcept>
#include <vector>

namespace ytile {
namespace {

// Cells of a product of classes with the given sizes, in mixed-radix order (last class fastest).
struct ProductSpace {
  std::vector<std::size_t> sizes;
  std::vector<std::vector<std::size_t>> cells;

  explicit ProductSpace(std::vector<std::size_t> s) : sizes(std::move(s)) {
    std::vector<std::size_t> c(sizes.size(), 0);
    while (true) {
      cells.push_back(c);
      std::size_t i = sizes.size();
      while (i > 0 && ++c[i - 1] == sizes[i - 1]) c[--i] = 0;
      if (i == 0) break;
    }
  }

  bool disjoint(std::size_t a, std::size_t b) const {
    for (std::size_t i = 0; i < sizes.size(); ++i)
      if (cells[a][i] == cells[b][i]) return false;
    return true;
  }

  /// Bitmasks of all matchings with exactly `size` cells.
  std::vector<std::uint64_t> matchings(std::size_t size) const {
    std::vector<std::uint64_t> out;
    std::vector<std::size_t> chosen;
    auto rec = [&](auto&& self, std::size_t from) -> void {
      if (chosen.size() == size) {
        std::uint64_t m = 0;
        for (std::size_t c : chosen) m |= std::uint64_t{1} << c;
        out.push_back(m);
        return;
      }
      for (std::size_t c = from; c < cells.size(); ++c) {
        bool ok = true;
        for (std::size_t d : chosen)
          if (!disjoint(c, d)) {
            ok = false;
            break;
          }
        if (!ok) continue;
        chosen.push_back(c);
        self(self, c + 1);
        chosen.pop_back();
      }
    };
    rec(rec, 0);
    return out;
  }

  /// Edges as host vertex ids: class i, index j -> offset_i + j.
  nlohmann::json edges_json(std::uint64_t mask) const {
    nlohmann::json edges = nlohmann::json::array();
    for (std::size_t c = 0; c < cells.size(); ++c) {
      if (!(mask >> c & 1)) continue;
      nlohmann::json e = nlohmann::json::array();
      std::size_t offset = 0;
      for (std::size_t i = 0; i < sizes.size(); ++i) {
        e.push_back(offset + cells[c][i]);
        offset += sizes[i];
      }
      edges.push_back(e);
    }
    return edges;
  }
};

bool matching_free(std::uint64_t graph, const std::vector<std::uint64_t>& matchings) {
  for (std::uint64_t m : matchings)
    if ((graph & m) == m) return false;
  return true;
}

std::uint64_t full_mask(std::size_t cells) {
  return cells == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << cells) - 1;
}

// Smallest set of cells meeting every matching.
class HittingSet {
public:
  explicit HittingSet(const std::vector<std::uint64_t>& sets) : sets_(sets) {}

  std::uint64_t solve(std::size_t cells) {
    best_ = full_mask(cells);
    best_size_ = cells;
    rec(0, 0);
    return best_;
  }

private:
  void rec(std::uint64_t removed, std::size_t size) {
    std::size_t packing = 0;
    std::uint64_t used = 0;
    const std::uint64_t* first = nullptr;
    for (const auto& s : sets_) {
      if (s & removed) continue;
      if (!first) first = &s;
      if (!(s & used)) {
        used |= s;
        ++packing;
      }
    }
    if (!first) {
      if (size < best_size_) {
        best_size_ = size;
        best_ = removed;
      }
      return;
    }
    if (size + packing >= best_size_) return;
    for (std::uint64_t bits = *first; bits; bits &= bits - 1) {
      rec(removed | (bits & -bits), size + 1);
    }
  }

  const std::vector<std::uint64_t>& sets_;
  std::uint64_t best_ = 0;
  std::size_t best_size_ = 0;
};

}  // namespace

FactReport check_fact_f0(std::size_t a, std::size_t b) {
  if (a < 2 || b < a) throw std::invalid_argument("check_fact_f0 needs b >= a >= 2");
  if (a * a * b > 64) throw std::invalid_argument("check_fact_f0: a*a*b must be at most 64");
  const ProductSpace space({a, a, b});
  const std::size_t cells = space.cells.size();
  const auto matchings = space.matchings(a);

  FactReport r;
  r.fact = "f0";
  r.params = {{"a", a}, {"b", b}};
  r.expected = static_cast<std::int64_t>((a - 1) * a * b);

  const std::uint64_t hit = HittingSet(matchings).solve(cells);
  const std::uint64_t via_hitting = full_mask(cells) & ~hit;
  const auto hitting_max = static_cast<std::int64_t>(std::popcount(via_hitting));
  r.details["hitting_set_max"] = hitting_max;
  r.computed = hitting_max;
  r.witnesses.push_back(space.edges_json(via_hitting));

  if (cells <= 16) {
    std::int64_t best = -1;
    std::size_t count = 0;
    for (std::uint64_t g = 0; g <= full_mask(cells); ++g) {
      if (!matching_free(g, matchings)) continue;
      const auto e = static_cast<std::int64_t>(std::popcount(g));
      if (e > best) {
        best = e;
        count = 0;
      }
      if (e == best) ++count;
    }
    r.details["exhaustive_max"] = best;
    r.details["extremal_graphs"] = count;
    r.details["methods_agree"] = best == hitting_max;
    if (best != hitting_max) r.computed = best;
  }
  r.match = r.computed == r.expected && r.details.value("methods_agree", true);
  return r;
}

FactReport check_fact_f11_f1(std::size_t k, std::size_t n, std::size_t t) {
  if (k < 2 || n < 2 || t < 1 || t >= n) throw std::invalid_argument("check_fact_f11_f1 needs k >= 2, 1 <= t < n");
  std::size_t cells = 1;
  for (std::size_t i = 0; i < k; ++i) cells *= n;
  if (cells > 20) throw std::invalid_argument("check_fact_f11_f1: n^k must be at most 20");
  const ProductSpace space(std::vector<std::size_t>(k, n));
  const auto matchings = space.matchings(t + 1);

  FactReport r;
  r.fact = "f11_f1";
  r.params = {{"k", k}, {"n", n}, {"t", t}};
  std::int64_t expected = static_cast<std::int64_t>(t);
  for (std::size_t i = 1; i < k; ++i) expected *= static_cast<std::int64_t>(n);
  r.expected = expected;

  // True when the edges use exactly t values in some class; with the right edge count this
  // identifies K_{t,n} (or K_{t,n} minus an edge) up to relabelling.
  auto confined = [&](std::uint64_t g) {
    for (std::size_t c = 0; c < k; ++c) {
      std::uint64_t active = 0;
      for (std::size_t i = 0; i < cells; ++i)
        if (g >> i & 1) active |= std::uint64_t{1} << space.cells[i][c];
      if (static_cast<std::size_t>(std::popcount(active)) == t) return true;
    }
    return false;
  };

  std::int64_t best = -1;
  std::size_t at_max = 0, at_max_kt = 0, below = 0, below_kt = 0;
  std::optional<std::uint64_t> first_extremal, counterexample, minus_counterexample;
  for (std::uint64_t g = 0; g <= full_mask(cells); ++g) {
    const auto e = static_cast<std::int64_t>(std::popcount(g));
    if (e < expected - 1 && e <= best) continue;
    if (!matching_free(g, matchings)) continue;
    if (e > best) {
      best = e;
      at_max = at_max_kt = 0;
      first_extremal.reset();
      counterexample.reset();
    }
    if (e == best) {
      ++at_max;
      if (!first_extremal) first_extremal = g;
      if (confined(g)) {
        ++at_max_kt;
      } else if (!counterexample) {
        counterexample = g;
      }
    }
    if (e == expected - 1) {
      ++below;
      if (confined(g)) {
        ++below_kt;
      } else if (!minus_counterexample) {
        minus_counterexample = g;
      }
    }
  }
  r.computed = best;
  const bool unique = at_max > 0 && at_max == at_max_kt;
  r.details["extremal_graphs"] = at_max;
  r.details["extremal_isomorphic_to_K"] = at_max_kt;
  r.details["unique"] = unique;
  if (first_extremal) r.witnesses.push_back(space.edges_json(*first_extremal));
  if (counterexample) r.details["non_isomorphic_extremal"] = space.edges_json(*counterexample);
  bool minus_ok = true;
  if (t >= 3) {
    minus_ok = below > 0 && below == below_kt;
    r.details["one_fewer_graphs"] = below;
    r.details["one_fewer_isomorphic_to_K_minus"] = below_kt;
    r.details["minus_unique"] = minus_ok;
    if (minus_counterexample) r.details["non_isomorphic_one_fewer"] = space.edges_json(*minus_counterexample);
  }
  r.match = r.computed == r.expected && unique && minus_ok;
  return r;
}

nlohmann::json to_json(const FactReport& r) {
  return {{"fact", r.fact},         {"params", r.params},   {"computed", r.computed},
          {"expected", r.expected}, {"witnesses", r.witnesses}, {"details", r.details},
          {"match", r.match}};
}

}  // namespace ytile
