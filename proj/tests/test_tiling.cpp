#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <numeric>

#include "oracles.hpp"
#include "ytile/procedures.hpp"
#include "ytile/tiling.hpp"

using namespace ytile;

namespace {

const Pattern kY = Pattern::y32();

Hypergraph single_y() { return Hypergraph::build(4, 3, {{0, 1, 2}, {0, 1, 3}}); }

}  // namespace

TEST_CASE("copy enumeration") {
  const auto k5 = complete(5, 3);
  const auto copies = enumerate_copies(k5, kY);
  CHECK(copies.size() == 30);
  CHECK(copies.size() == oracle::copy_footprints(k5, 2).size());
  for (std::size_t i = 1; i < copies.size(); ++i) {
    CHECK(copies[i - 1].footprint <= copies[i].footprint);
  }
  for (const auto& c : copies) {
    CHECK(c.edge_a < c.edge_b);
    CHECK(c.footprint.size() == 4);
  }
  CHECK(enumerate_copies(Hypergraph::build(3, 3, {{0, 1, 2}}), kY).empty());
  CHECK(enumerate_copies(single_y(), kY).size() == 1);

  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto h = random_hypergraph(8, 3, 0.4, seed);
    CHECK(enumerate_copies(h, kY).size() == oracle::copy_footprints(h, 2).size());
    CHECK(enumerate_copies(h, Pattern(3, 1)).size() == oracle::copy_footprints(h, 1).size());
  }
  CHECK_THROWS(enumerate_copies(complete(5, 4), kY));
}

TEST_CASE("exact maximum tiling") {
  auto exact = [](const Hypergraph& h) {
    const auto r = max_tiling_exact(h, kY);
    CHECK(r.optimal);
    CHECK_FALSE(verify_tiling(h, kY, r.tiling));
    return r.tiling.size();
  };
  CHECK(exact(complete(7, 3)) == 1);
  CHECK(exact(clique_plus_isolated(15, 2, 3, 2)) == 2);
  CHECK(exact(cover_construction(12, 2, 3)) == 2);
  CHECK(exact(Hypergraph::build(6, 3, {})) == 0);

  SUBCASE("agrees with the exhaustive oracle") {
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
      const double p = seed % 2 ? 0.3 : 0.6;
      const auto h = random_hypergraph(8 + seed % 3, 3, p, seed);
      CHECK(exact(h) == oracle::max_tiling(h, 2));
    }
  }

  SUBCASE("other patterns") {
    const Pattern y31(3, 1);
    for (std::uint64_t seed = 0; seed < 8; ++seed) {
      const auto h = random_hypergraph(9, 3, 0.3, seed);
      const auto r = max_tiling_exact(h, y31);
      CHECK(r.optimal);
      CHECK(r.tiling.size() == oracle::max_tiling(h, 1));
    }
    const auto h4 = random_hypergraph(9, 4, 0.2, 4);
    CHECK(max_tiling_exact(h4, Pattern(4, 2)).tiling.size() == oracle::max_tiling(h4, 2));
  }

  SUBCASE("budget exhaustion is flagged") {
    // Needs an instance the root bounds cannot close on their own.
    std::optional<Hypergraph> hard;
    for (std::uint64_t seed = 0; seed < 200 && !hard; ++seed) {
      auto h = random_hypergraph(13, 3, 0.15, seed);
      if (max_tiling_exact(h, kY).nodes > 2) hard = std::move(h);
    }
    REQUIRE(hard);
    const auto r = max_tiling_exact(*hard, kY, 2);
    CHECK_FALSE(r.optimal);
    CHECK_FALSE(verify_tiling(*hard, kY, r.tiling));
  }

  SUBCASE("adding an edge never lowers the optimum") {
    auto h = random_hypergraph(9, 3, 0.25, 11);
    std::size_t prev = exact(h);
    auto edges = h.edge_list();
    for (const auto& e : complete(9, 3).edge_list()) {
      if (h.has_edge(e)) continue;
      edges.push_back(e);
      const auto next = Hypergraph::build(9, 3, edges);
      const std::size_t now = exact(next);
      CHECK(now >= prev);
      prev = now;
      h = next;
      if (edges.size() > 40) break;
    }
  }
}

TEST_CASE("extremal constructions") {
  for (std::size_t s = 1; s <= 3; ++s) {
    for (std::size_t pad : {0u, 5u}) {
      const auto r = max_tiling_exact(clique_plus_isolated(4 * s + 3 + pad, s, 3, 2), kY);
      CHECK(r.optimal);
      CHECK(r.tiling.size() == s);
    }
    const std::size_t n = 4 * s + 4;
    const auto r = max_tiling_exact(cover_construction(n, s, 3), kY);
    CHECK(r.optimal);
    CHECK(r.tiling.size() == s);
  }
}

TEST_CASE("maximum {Y,E}-tiling") {
  auto mixed = [](const Hypergraph& h) {
    const auto r = max_mixed_tiling_exact(h, kY);
    CHECK(r.optimal);
    CHECK_FALSE(verify_tiling(h, kY, r.tiling));
    CHECK(r.coverage == r.tiling.coverage(kY));
    return r;
  };
  const auto k6 = mixed(complete(6, 3));
  CHECK(k6.coverage == 6);
  CHECK(k6.tiling.singles.size() == 2);
  const auto k7 = mixed(complete(7, 3));
  CHECK(k7.coverage == 7);
  CHECK(k7.tiling.copies.size() == 1);
  CHECK(k7.tiling.singles.size() == 1);
  CHECK(mixed(Hypergraph::build(5, 3, {})).coverage == 0);

  SUBCASE("ties prefer fewer components") {
    // Eight vertices: two Ys (8 covered, 2 parts) beat nothing better.
    const auto r = mixed(complete(8, 3));
    CHECK(r.coverage == 8);
    CHECK(r.tiling.components() == 2);
  }

  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto h = random_hypergraph(9, 3, seed % 2 ? 0.2 : 0.5, seed);
    const auto r = mixed(h);
    CHECK(r.coverage == oracle::max_mixed_coverage(h));
    CHECK(r.coverage >= 4 * max_tiling_exact(h, kY).tiling.size());
  }

  SUBCASE("target stops early") {
    const auto r = max_mixed_tiling_exact(complete(12, 3), kY, kDefaultNodeBudget, 8);
    CHECK(r.target_reached);
    CHECK(r.coverage >= 8);
    CHECK_FALSE(r.optimal);
  }
}

TEST_CASE("greedy and local search") {
  CHECK(greedy_tiling(complete(8, 3), kY).size() == 2);
  CHECK(greedy_tiling(Hypergraph::build(6, 3, {}), kY).size() == 0);

  const auto k8 = complete(8, 3);
  CHECK(local_search_improve(k8, kY, Tiling{}, 1).size() == 2);

  const auto opt = max_tiling_exact(k8, kY).tiling;
  CHECK(local_search_improve(k8, kY, opt, 2).size() == opt.size());

  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto h = random_hypergraph(12, 3, 0.3, seed);
    const auto g = greedy_tiling(h, kY);
    const auto l = local_search_improve(h, kY, g, 1);
    const auto e = max_tiling_exact(h, kY);
    CHECK_FALSE(verify_tiling(h, kY, g));
    CHECK_FALSE(verify_tiling(h, kY, l));
    CHECK(g.size() <= l.size());
    if (e.optimal) CHECK(l.size() <= e.tiling.size());
    CHECK(e.tiling.size() <= 12 / 4);
  }

  SUBCASE("a two-for-one swap") {
    // Copy {0,1,2,3} blocks both {0,1,4,5}-side and {2,3,6,7}-side copies.
    const auto h = Hypergraph::build(8, 3, {{0, 1, 2}, {0, 1, 3}, {0, 4, 5}, {1, 4, 5}, {2, 6, 7}, {3, 6, 7}});
    const auto blocked = Tiling{{make_copy(h, kY, 0, 1)}};
    CHECK(local_search_improve(h, kY, blocked, 0).size() == 1);
    CHECK(local_search_improve(h, kY, blocked, 1).size() == 2);
  }
}

TEST_CASE("tiling verification") {
  const auto k8 = complete(8, 3);
  const auto copies = enumerate_copies(k8, kY);
  SUBCASE("overlapping copies") {
    Tiling t{{copies[0], copies[1]}};
    const auto bad = verify_tiling(k8, kY, t);
    REQUIRE(bad);
    CHECK(bad->first == 0);
    CHECK(bad->second == 1);
  }
  SUBCASE("edges sharing too much or too little") {
    const auto h = Hypergraph::build(6, 3, {{0, 1, 2}, {0, 3, 4}, {0, 1, 3}});
    CHECK_THROWS(make_copy(h, kY, 0, 2));
    PatternCopy forged{0, 2, {0, 1, 2, 3, 4}};
    CHECK(verify_tiling(h, kY, Tiling{{forged}}));
  }
  SUBCASE("footprint mismatch") {
    PatternCopy c = copies[0];
    c.footprint.back() = 7;
    if (c.footprint != copies[0].footprint) CHECK(verify_tiling(k8, kY, Tiling{{c}}));
  }
  SUBCASE("mixed tilings") {
    MixedTiling ok{{make_copy(k8, kY, 0, 1)}, {*k8.find_edge(std::vector<Vertex>{5, 6, 7})}};
    CHECK_FALSE(verify_tiling(k8, kY, ok));
    MixedTiling clash{{make_copy(k8, kY, 0, 1)}, {*k8.find_edge(std::vector<Vertex>{0, 6, 7})}};
    CHECK(verify_tiling(k8, kY, clash));
  }
}

TEST_CASE("maximum Y-free edge counts") {
  const std::array<std::size_t, 3> expect{2, 4, 7};
  for (std::size_t n = 5; n <= 7; ++n) {
    const auto r = max_pattern_free_edges(n, kY);
    CHECK(r.optimal);
    CHECK(r.edges == expect[n - 5]);
    CHECK(r.witness.num_edges() == r.edges);
    const auto edges = r.witness.edge_list();
    for (std::size_t i = 0; i < edges.size(); ++i)
      for (std::size_t j = i + 1; j < edges.size(); ++j)
        CHECK(oracle::overlap(edges[i], edges[j]) <= 1);
    std::vector<Vertex> all(n);
    std::iota(all.begin(), all.end(), Vertex{0});
    CHECK_FALSE(y_free_check(r.witness, all));
  }
  CHECK(oracle::y_free_exhaustive(5) == 2);
  CHECK(oracle::y_free_exhaustive(6) == 4);
  CHECK(oracle::y_free_clique(7) == 7);
  CHECK(max_pattern_free_edges(8, kY).edges == oracle::y_free_clique(8));
  CHECK(max_pattern_free_edges(4, kY).edges == 1);
}

TEST_CASE("solver JSON") {
  const auto r = max_tiling_exact(complete(8, 3), kY);
  const auto j = to_json(r, kY);
  CHECK(j["size"] == 2);
  CHECK(j["coverage"] == 8);
  CHECK(j["optimal"] == true);
  CHECK(j["copies"].size() == 2);
  CHECK(j["copies"][0].size() == 2);
  CHECK(j.contains("nodes"));
  const auto m = to_json(max_mixed_tiling_exact(complete(7, 3), kY), kY);
  CHECK(m["coverage"] == 7);
  CHECK(m["singles"].size() == 1);
}
