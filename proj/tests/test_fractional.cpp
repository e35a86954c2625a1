#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "oracles.hpp"
#include "ytile/audit.hpp"
#include "ytile/fractional.hpp"
#include "ytile/io.hpp"
#include "ytile/random.hpp"

using namespace ytile;

namespace {

const Pattern kY = Pattern::y32();

// Sorted-chain membership computed by sorting, as a reference for both library forms.
bool sorted_chain(mpq_class a, mpq_class b, mpq_class c) {
  std::array<mpq_class, 3> v{a, b, c};
  std::sort(v.begin(), v.end());
  return v[2] <= 3 * v[0] - v[1];
}

}  // namespace

TEST_CASE("verification of the three properties") {
  const auto y = Hypergraph::build(4, 3, {{0, 1, 2}, {0, 1, 3}});
  const auto h = from_integral(y, Tiling{{make_copy(y, kY, 0, 1)}});
  const auto rep = verify_fractional(y, h);
  CHECK(rep.ok);
  CHECK(rep.weight == 4);
  CHECK(rep.h_min == mpq_class(1, 2));

  const auto edge = Hypergraph::build(3, 3, {{0, 1, 2}});
  SUBCASE("sorted chain violated") {
    FractionalTiling t;
    t.set(0, 0, mpq_class(1, 10));
    t.set(1, 0, mpq_class(2, 10));
    t.set(2, 0, mpq_class(5, 10));
    const auto r = verify_fractional(edge, t);
    CHECK_FALSE(r.ok);
    REQUIRE(r.violations.size() == 1);
    CHECK(r.violations[0].property == 3);
    CHECK(r.violations[0].edge == 0);
  }
  SUBCASE("weight on a non-incident pair") {
    const auto two = Hypergraph::build(4, 3, {{0, 1, 2}});
    FractionalTiling t;
    t.set(3, 0, mpq_class(1, 2));
    const auto r = verify_fractional(two, t);
    CHECK_FALSE(r.ok);
    CHECK(r.violations[0].property == 1);
    CHECK(r.violations[0].vertex == 3);
  }
  SUBCASE("vertex load above one") {
    const auto h2 = Hypergraph::build(5, 3, {{0, 1, 2}, {0, 3, 4}});
    FractionalTiling t;
    for (EdgeIndex e = 0; e < 2; ++e)
      for (Vertex v : h2.edge(e)) t.set(v, e, mpq_class(3, 4));
    const auto r = verify_fractional(h2, t);
    CHECK_FALSE(r.ok);
    CHECK(std::any_of(r.violations.begin(), r.violations.end(),
                      [](const auto& x) { return x.property == 2 && x.vertex == 0; }));
  }
  SUBCASE("value outside [0,1]") {
    FractionalTiling t;
    for (Vertex v = 0; v < 3; ++v) t.set(v, 0, mpq_class(3, 2));
    const auto r = verify_fractional(edge, t);
    CHECK_FALSE(r.ok);
    CHECK(r.violations[0].property == 0);
  }
  SUBCASE("zero tiling") {
    const auto r = verify_fractional(edge, FractionalTiling{});
    CHECK(r.ok);
    CHECK(r.weight == 0);
    CHECK(r.h_min == 0);
  }
}

TEST_CASE("linearized edge constraint matches the sorted chain") {
  std::mt19937_64 rng(2024);
  std::size_t agree_chain = 0, agree_linear = 0;
  const std::size_t samples = 20000;
  for (std::size_t i = 0; i < samples; ++i) {
    std::array<mpq_class, 3> v;
    for (auto& x : v) {
      const auto q = 1 + uniform_below(rng, 10);
      x = mpq_class(static_cast<long>(uniform_below(rng, q + 1)), static_cast<long>(q));
      x.canonicalize();
    }
    const bool truth = sorted_chain(v[0], v[1], v[2]);
    agree_chain += chain_form_holds(v[0], v[1], v[2]) == truth;
    agree_linear += linear_form_holds(v[0], v[1], v[2]) == truth;
  }
  CHECK(agree_chain == samples);
  CHECK(agree_linear == samples);

  const auto tally = linearization_tally(7, 5000);
  CHECK(tally.agreements == tally.samples);
  CHECK(tally.chain_true > 0);
  CHECK(tally.chain_true < tally.samples);
  CHECK(linearization_tally(7, 5000).chain_true == tally.chain_true);

  CHECK(chain_form_holds(1, 1, 1));
  CHECK(chain_form_holds(mpq_class(1, 2), mpq_class(1, 2), 1));
  CHECK_FALSE(chain_form_holds(0, 0, mpq_class(1, 3)));
  CHECK(linear_form_holds(0, 0, 0));
}

TEST_CASE("LP optimum") {
  const auto edge = Hypergraph::build(3, 3, {{0, 1, 2}});
  const auto r1 = lp_max_weight(edge);
  CHECK(r1.optimum == 3);
  CHECK(r1.tiling.get(0, 0) == 1);
  CHECK(verify_fractional(edge, r1.tiling).ok);

  const auto y = Hypergraph::build(4, 3, {{0, 1, 2}, {0, 1, 3}});
  CHECK(lp_max_weight(y).optimum == 4);
  CHECK(lp_max_weight(Hypergraph::build(5, 3, {})).optimum == 0);

  const auto lp = fractional_lp(y);
  CHECK(lp.num_vars == 6);
  CHECK(lp.rows.size() == 4 + 6);

  for (std::uint64_t seed = 0; seed < 25; ++seed) {
    const std::size_t n = 6 + seed % 5;
    const auto h = random_hypergraph(n, 3, seed % 2 ? 0.3 : 0.6, 100 + seed);
    const auto res = lp_max_weight(h);
    CHECK(oracle::certifies_optimum(fractional_lp(h), res.solution));
    const auto check = verify_fractional(h, res.tiling);
    CHECK(check.ok);
    CHECK(check.weight == res.optimum);
    CHECK(res.optimum <= mpq_class(n));
    CHECK(res.optimum >= mpq_class(4 * oracle::max_tiling(h, 2)));
  }
  CHECK_THROWS(lp_max_weight(complete(5, 4)));
  CHECK_THROWS_AS(lp_max_weight(complete(8, 3), 2), LpBudgetExceeded);
}

TEST_CASE("embedding integral tilings") {
  const auto k8 = complete(8, 3);
  const auto t = max_tiling_exact(k8, kY).tiling;
  REQUIRE(t.size() == 2);
  const auto h = from_integral(k8, t);
  const auto rep = verify_fractional(k8, h);
  CHECK(rep.ok);
  CHECK(rep.weight == 8);
  CHECK(rep.h_min == mpq_class(1, 2));
  CHECK(h.load(t.copies[0].footprint[0]) == 1);

  const auto empty = from_integral(k8, Tiling{});
  CHECK(empty.empty());
  CHECK(empty.weight() == 0);

  const auto copies = enumerate_copies(k8, kY);
  CHECK_THROWS(from_integral(k8, Tiling{{copies[0], copies[1]}}));

  for (std::uint64_t seed = 0; seed < 15; ++seed) {
    const auto g = random_hypergraph(10, 3, 0.4, seed);
    const auto tiling = greedy_tiling(g, kY);
    const auto emb = verify_fractional(g, from_integral(g, tiling));
    CHECK(emb.ok);
    CHECK(emb.weight == 4 * static_cast<long>(tiling.size()));
    if (tiling.size() > 0) CHECK(emb.h_min == mpq_class(1, 2));
  }
}

TEST_CASE("embedding tilings of a blow-up") {
  const auto edge = Hypergraph::build(3, 3, {{0, 1, 2}});
  SUBCASE("factor one reduces to the integral embedding") {
    const auto y = Hypergraph::build(4, 3, {{0, 1, 2}, {0, 1, 3}});
    const Tiling t{{make_copy(y, kY, 0, 1)}};
    const auto h = from_blowup_tiling(y, 0, t);
    CHECK(h.weight() == 4);
    CHECK(h.entries() == from_integral(y, t).entries());
  }
  SUBCASE("one copy over a single edge") {
    const auto b = blow_up(edge, 4);
    // Clones of 0, 1, 2 are 0..3, 4..7, 8..11.
    const auto e1 = *b.graph.find_edge(std::vector<Vertex>{0, 4, 8});
    const auto e2 = *b.graph.find_edge(std::vector<Vertex>{0, 4, 9});
    const auto h = from_blowup_tiling(edge, 1, Tiling{{make_copy(b.graph, kY, e1, e2)}});
    CHECK(h.weight() == 1);
    CHECK(h.get(0, 0) == mpq_class(1, 4));
    CHECK(h.get(1, 0) == mpq_class(1, 4));
    CHECK(h.get(2, 0) == mpq_class(1, 2));
    CHECK(verify_fractional(edge, h).ok);
  }
  SUBCASE("maximum tilings of random blow-ups") {
    for (std::uint64_t seed = 0; seed < 6; ++seed) {
      const auto r = random_hypergraph(5, 3, 0.5, seed);
      const auto b = blow_up(r, 4);
      const auto t = greedy_tiling(b.graph, kY);
      const auto h = from_blowup_tiling(r, 1, t);
      const auto rep = verify_fractional(r, h);
      CHECK(rep.ok);
      CHECK(rep.weight == mpq_class(static_cast<long>(t.size())));
      if (t.size() > 0) CHECK(rep.h_min >= mpq_class(1, 4));
    }
  }
  const auto b = blow_up(edge, 4);
  const auto copies = enumerate_copies(b.graph, kY);
  CHECK_THROWS(from_blowup_tiling(edge, 1, Tiling{{copies[0], copies[1]}}));
}

TEST_CASE("fractional tiling JSON") {
  const auto y = Hypergraph::build(4, 3, {{0, 1, 2}, {0, 1, 3}});
  const auto h = from_integral(y, Tiling{{make_copy(y, kY, 0, 1)}});
  const auto j = to_json(h);
  CHECK(j["w"] == "4");
  CHECK(j["h_min"] == "1/2");
  CHECK(j["entries"].size() == 6);
  CHECK(fractional_from_json(j).entries() == h.entries());
  CHECK_THROWS(fractional_from_json(nlohmann::json{{"entries", {{0, 0, "x"}}}}));
}
