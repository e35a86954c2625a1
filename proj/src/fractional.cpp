#include "ytile/fractional.hpp"

#include <algorithm>
#include <array>

#include "ytile/io.hpp"

namespace ytile {

void FractionalTiling::set(Vertex v, EdgeIndex e, const mpq_class& value) {
  if (sgn(value) == 0) {
    entries_.erase({v, e});
  } else {
    entries_[{v, e}] = value;
  }
}

void FractionalTiling::add(Vertex v, EdgeIndex e, const mpq_class& value) {
  set(v, e, get(v, e) + value);
}

mpq_class FractionalTiling::get(Vertex v, EdgeIndex e) const {
  auto it = entries_.find({v, e});
  return it == entries_.end() ? mpq_class(0) : it->second;
}

mpq_class FractionalTiling::weight() const {
  mpq_class w = 0;
  for (const auto& [key, value] : entries_) w += value;
  return w;
}

mpq_class FractionalTiling::h_min() const {
  mpq_class best = 0;
  for (const auto& [key, value] : entries_) {
    if (sgn(value) > 0 && (sgn(best) == 0 || value < best)) best = value;
  }
  return best;
}

mpq_class FractionalTiling::load(Vertex v) const {
  mpq_class total = 0;
  for (auto it = entries_.lower_bound({v, 0}); it != entries_.end() && it->first.first == v; ++it) {
    total += it->second;
  }
  return total;
}

bool chain_form_holds(const mpq_class& a, const mpq_class& b, const mpq_class& c) {
  std::array<const mpq_class*, 3> p{&a, &b, &c};
  std::array<int, 3> idx{0, 1, 2};
  do {
    const auto& u = *p[idx[0]];
    const auto& v = *p[idx[1]];
    const auto& w = *p[idx[2]];
    if (u <= v && v <= w && w <= 3 * u - v) return true;
  } while (std::next_permutation(idx.begin(), idx.end()));
  return false;
}

bool linear_form_holds(const mpq_class& a, const mpq_class& b, const mpq_class& c) {
  mpq_class lo = a;
  if (b < lo) lo = b;
  if (c < lo) lo = c;
  return a + b + c <= 4 * lo;
}

FractionalReport verify_fractional(const Hypergraph& h, const FractionalTiling& tiling) {
  if (h.uniformity() != 3) throw std::invalid_argument("fractional tilings are defined for 3-graphs");
  FractionalReport report;
  auto flag = [&](int property, Vertex v, EdgeIndex e, std::string what) {
    report.ok = false;
    report.violations.push_back({property, v, e, std::move(what)});
  };
  auto pair_name = [](Vertex v, EdgeIndex e) {
    return "(" + std::to_string(v) + ", " + std::to_string(e) + ")";
  };

  for (const auto& [key, value] : tiling.entries()) {
    const auto [v, e] = key;
    if (sgn(value) < 0 || value > 1) {
      flag(0, v, e, "value " + rational_string(value) + " at " + pair_name(v, e) + " is outside [0,1]");
    }
    if (e >= h.num_edges() || v >= h.num_vertices()) {
      flag(1, v, e, "pair " + pair_name(v, e) + " is not in the host");
      continue;
    }
    auto ed = h.edge(e);
    if (std::find(ed.begin(), ed.end(), v) == ed.end()) {
      flag(1, v, e, "vertex " + std::to_string(v) + " is not in edge " + std::to_string(e));
    }
  }

  std::vector<mpq_class> load(h.num_vertices());
  for (const auto& [key, value] : tiling.entries()) {
    if (key.first < h.num_vertices()) load[key.first] += value;
  }
  for (Vertex v = 0; v < h.num_vertices(); ++v) {
    if (load[v] > 1) {
      flag(2, v, 0, "vertex " + std::to_string(v) + " has load " + rational_string(load[v]));
    }
  }

  for (EdgeIndex e = 0; e < h.num_edges(); ++e) {
    auto ed = h.edge(e);
    const mpq_class a = tiling.get(ed[0], e), b = tiling.get(ed[1], e), c = tiling.get(ed[2], e);
    if (!chain_form_holds(a, b, c)) {
      flag(3, ed[0], e, "edge " + std::to_string(e) + " values (" + rational_string(a) + ", " +
                            rational_string(b) + ", " + rational_string(c) + ") admit no valid chain");
    }
  }

  report.weight = tiling.weight();
  report.h_min = tiling.h_min();
  return report;
}

PackingLp fractional_lp(const Hypergraph& h) {
  if (h.uniformity() != 3) throw std::invalid_argument("fractional LP is defined for 3-graphs");
  PackingLp lp;
  const std::size_t m = h.num_edges();
  lp.num_vars = 3 * m;
  lp.objective.assign(lp.num_vars, 1);
  lp.rows.resize(h.num_vertices());
  for (EdgeIndex e = 0; e < m; ++e) {
    auto ed = h.edge(e);
    for (std::size_t i = 0; i < 3; ++i) lp.rows[ed[i]].push_back({3 * e + i, mpq_class(1)});
  }
  lp.rhs.assign(h.num_vertices(), 1);
  for (EdgeIndex e = 0; e < m; ++e) {
    for (std::size_t u = 0; u < 3; ++u) {
      std::vector<std::pair<std::size_t, mpq_class>> row;
      for (std::size_t i = 0; i < 3; ++i) row.push_back({3 * e + i, mpq_class(i == u ? -3 : 1)});
      lp.rows.push_back(std::move(row));
      lp.rhs.push_back(0);
    }
  }
  return lp;
}

FractionalLpResult lp_max_weight(const Hypergraph& h, std::uint64_t max_pivots) {
  const auto lp = fractional_lp(h);
  FractionalLpResult result;
  result.solution = solve_packing_lp(lp, max_pivots);
  result.optimum = result.solution.optimum;
  for (EdgeIndex e = 0; e < h.num_edges(); ++e) {
    auto ed = h.edge(e);
    for (std::size_t i = 0; i < 3; ++i) result.tiling.set(ed[i], e, result.solution.primal[3 * e + i]);
  }
  return result;
}

FractionalTiling from_integral(const Hypergraph& h, const Tiling& tiling) {
  const Pattern y = Pattern::y32();
  if (auto bad = verify_tiling(h, y, tiling)) {
    throw std::invalid_argument("from_integral needs a valid Y-tiling: " + bad->what);
  }
  const mpq_class half(1, 2);
  FractionalTiling out;
  for (const auto& c : tiling.copies) {
    auto a = h.edge(c.edge_a);
    auto b = h.edge(c.edge_b);
    for (auto [edge, other] : {std::pair{c.edge_a, b}, std::pair{c.edge_b, a}}) {
      for (Vertex v : h.edge(edge)) {
        const bool shared = std::find(other.begin(), other.end(), v) != other.end();
        out.set(v, edge, shared ? half : mpq_class(1));
      }
    }
  }
  return out;
}

FractionalTiling from_blowup_tiling(const Hypergraph& r, std::size_t j, const Tiling& blowup_tiling) {
  if (r.uniformity() != 3) throw std::invalid_argument("blow-up embedding is defined for 3-graphs");
  std::size_t factor = 1;
  for (std::size_t i = 0; i < j; ++i) factor *= 4;
  const BlowUp blown = blow_up(r, factor);
  const Pattern y = Pattern::y32();
  if (auto bad = verify_tiling(blown.graph, y, blowup_tiling)) {
    throw std::invalid_argument("tiling is not valid in the blow-up: " + bad->what);
  }
  const mpq_class unit(1, factor);
  const mpq_class half_unit(1, 2 * factor);

  FractionalTiling out;
  for (const auto& c : blowup_tiling.copies) {
    auto a = blown.graph.edge(c.edge_a);
    auto b = blown.graph.edge(c.edge_b);
    for (auto [edge, other] : {std::pair{c.edge_a, b}, std::pair{c.edge_b, a}}) {
      auto clone = blown.graph.edge(edge);
      std::array<Vertex, 3> original{blown.origin[clone[0]], blown.origin[clone[1]], blown.origin[clone[2]]};
      const auto target = r.find_edge(original);
      if (!target) throw std::logic_error("blow-up edge without an original");
      for (Vertex v : clone) {
        const bool degree_two = std::find(other.begin(), other.end(), v) != other.end();
        out.add(blown.origin[v], *target, degree_two ? half_unit : unit);
      }
    }
  }
  return out;
}

nlohmann::json to_json(const FractionalTiling& tiling) {
  auto entries = nlohmann::json::array();
  for (const auto& [key, value] : tiling.entries()) {
    entries.push_back({key.first, key.second, rational_string(value)});
  }
  return {{"entries", entries},
          {"w", rational_string(tiling.weight())},
          {"h_min", rational_string(tiling.h_min())}};
}

FractionalTiling fractional_from_json(const nlohmann::json& j) {
  FractionalTiling out;
  try {
    for (const auto& entry : j.at("entries")) {
      out.set(entry.at(0).get<Vertex>(), entry.at(1).get<EdgeIndex>(),
              parse_rational(entry.at(2).get<std::string>()));
    }
  } catch (const nlohmann::json::exception& err) {
    throw ParseError(std::string("bad fractional tiling JSON: ") + err.what());
  }
  return out;
}

}  // namespace ytile
