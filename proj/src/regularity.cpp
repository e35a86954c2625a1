#include "ytile/regularity.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <random>

#include "ytile/random.hpp"

namespace ytile {
namespace {

std::size_t sub_part_size(double delta, std::size_t size) {
  // Tolerance keeps e.g. 0.1 * 60 from rounding up to 7.
  auto s = static_cast<std::size_t>(std::ceil(delta * static_cast<double>(size) - 1e-9));
  return std::max<std::size_t>(s, 1);
}

void check_delta(double delta) {
  if (!(delta > 0.0 && delta <= 1.0)) throw std::invalid_argument("delta must lie in (0, 1]");
}

// Crossing-edge counts restricted to vertex labels 1, 2, 3.
class TripleCounter {
public:
  explicit TripleCounter(const Hypergraph& h) : h_(h), label_(h.num_vertices(), 0) {}

  std::size_t count(std::span<const Vertex> a1, std::span<const Vertex> a2, std::span<const Vertex> a3) {
    for (Vertex v : a2) label_[v] = 2;
    for (Vertex v : a3) label_[v] = 3;
    std::size_t c = 0;
    for (Vertex v : a1) {
      for (EdgeIndex e : h_.incident(v)) {
        unsigned seen = 0;
        for (Vertex u : h_.edge(e))
          if (u != v) seen |= 1u << label_[u];
        if (seen == 0b1100u) ++c;
      }
    }
    for (Vertex v : a2) label_[v] = 0;
    for (Vertex v : a3) label_[v] = 0;
    return c;
  }

private:
  const Hypergraph& h_;
  std::vector<std::uint8_t> label_;
};

mpq_class ratio(std::size_t edges, std::size_t a, std::size_t b, std::size_t c) {
  mpq_class q(mpz_class(edges), mpz_class(a) * b * c);
  q.canonicalize();
  return q;
}

}  // namespace

RegularityEstimate regularity_estimate(const Hypergraph& h, std::span<const Vertex> a1,
                                       std::span<const Vertex> a2, std::span<const Vertex> a3,
                                       double delta, std::size_t trials, std::uint64_t seed) {
  check_delta(delta);
  if (trials == 0) throw std::invalid_argument("regularity estimate needs at least one trial");
  const auto min_size = static_cast<std::size_t>(std::ceil(1.0 / delta - 1e-9));
  for (auto a : {a1, a2, a3}) {
    if (a.size() < min_size) {
      throw std::invalid_argument("part of size " + std::to_string(a.size()) +
                                  " is smaller than ceil(1/delta) = " + std::to_string(min_size));
    }
  }

  RegularityEstimate est;
  est.density = density_triple(h, a1, a2, a3);
  est.worst_deviation = 0;
  const mpq_class threshold(delta);
  TripleCounter counter(h);

  std::array<std::span<const Vertex>, 3> parts{a1, a2, a3};
  std::array<std::size_t, 3> sub{};
  for (std::size_t i = 0; i < 3; ++i) sub[i] = sub_part_size(delta, parts[i].size());

  auto test = [&](const SubTriple& s) {
    mpq_class dev = ratio(counter.count(s.a1, s.a2, s.a3), s.a1.size(), s.a2.size(), s.a3.size()) - est.density;
    dev = abs(dev);
    if (dev > est.worst_deviation) {
      est.worst_deviation = dev;
      if (dev > threshold) est.witness = s;
    }
  };

  // Degree-sorted extremes of each part.
  std::array<std::vector<Vertex>, 3> low, high;
  {
    std::vector<std::uint8_t> label(h.num_vertices(), 0);
    for (std::size_t i = 0; i < 3; ++i)
      for (Vertex v : parts[i]) label[v] = static_cast<std::uint8_t>(i + 1);
    for (std::size_t i = 0; i < 3; ++i) {
      std::vector<std::pair<std::size_t, Vertex>> deg;
      for (Vertex v : parts[i]) {
        std::size_t d = 0;
        for (EdgeIndex e : h.incident(v)) {
          unsigned seen = 0;
          for (Vertex u : h.edge(e)) seen |= 1u << label[u];
          if (seen == 0b1110u) ++d;
        }
        deg.push_back({d, v});
      }
      std::sort(deg.begin(), deg.end());
      for (std::size_t j = 0; j < sub[i]; ++j) {
        low[i].push_back(deg[j].second);
        high[i].push_back(deg[deg.size() - 1 - j].second);
      }
    }
  }
  for (unsigned mask = 0; mask < 8; ++mask) {
    auto pick = [&](std::size_t i) { return (mask >> i & 1) ? high[i] : low[i]; };
    test({pick(0), pick(1), pick(2)});
  }

  std::mt19937_64 rng(seed);
  std::array<std::vector<Vertex>, 3> pool;
  for (std::size_t i = 0; i < 3; ++i) pool[i].assign(parts[i].begin(), parts[i].end());
  for (std::size_t t = 0; t < trials; ++t) {
    SubTriple s;
    std::array<std::vector<Vertex>*, 3> out{&s.a1, &s.a2, &s.a3};
    for (std::size_t i = 0; i < 3; ++i) {
      portable_shuffle(pool[i].begin(), pool[i].end(), rng);
      out[i]->assign(pool[i].begin(), pool[i].begin() + static_cast<std::ptrdiff_t>(sub[i]));
      std::sort(out[i]->begin(), out[i]->end());
    }
    test(s);
  }
  est.accept = est.worst_deviation <= threshold;
  return est;
}

ReducedGraph reduced_graph(const Hypergraph& h, const Partition& partition, double delta,
                           const mpq_class& d, std::size_t trials, std::uint64_t seed) {
  if (h.uniformity() != 3) throw std::invalid_argument("reduced graphs are built for 3-graphs");
  partition.validate(h.num_vertices());
  const std::size_t t = partition.clusters.size();
  std::vector<std::vector<Vertex>> edges;
  for (std::size_t i = 0; i < t; ++i)
    for (std::size_t j = i + 1; j < t; ++j)
      for (std::size_t l = j + 1; l < t; ++l) {
        const auto& c = partition.clusters;
        if (density_triple(h, c[i], c[j], c[l]) < d) continue;
        const std::uint64_t sub_seed = mix_seed(seed ^ mix_seed((i * t + j) * t + l));
        if (regularity_estimate(h, c[i], c[j], c[l], delta, trials, sub_seed).accept) {
          edges.push_back({static_cast<Vertex>(i), static_cast<Vertex>(j), static_cast<Vertex>(l)});
        }
      }
  return {Hypergraph::build(t, 3, edges), partition, delta, d};
}

TripleSplit triple_split(std::size_t s1, std::size_t s2, std::size_t s3) {
  const mpz_class a(s1), b(s2), c(s3);
  TripleSplit split{mpq_class(3 * a - b - c, 4), mpq_class(3 * b - a - c, 4), mpq_class(3 * c - a - b, 4)};
  split.x1.canonicalize();
  split.x2.canonicalize();
  split.x3.canonicalize();
  return split;
}

namespace {

// For a designated double part D and the two other parts X, Z: bitsets over D of the common
// neighbours of each cross pair (x, z).
struct CrossTable {
  std::size_t words = 0;
  std::size_t zsize = 0;
  std::vector<std::uint64_t> bits;

  std::uint64_t* row(std::size_t x, std::size_t z) { return bits.data() + (x * zsize + z) * words; }
};

}  // namespace

TripleTilingResult greedy_triple_tiling(const Hypergraph& h, std::span<const Vertex> v1,
                                        std::span<const Vertex> v2, std::span<const Vertex> v3,
                                        double delta) {
  if (h.uniformity() != 3) throw std::invalid_argument("triple tiling needs a 3-graph");
  check_delta(delta);
  TripleTilingResult result;
  std::array<std::span<const Vertex>, 3> in{v1, v2, v3};
  std::array<std::size_t, 3> order{0, 1, 2};
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return in[a].size() < in[b].size(); });
  for (std::size_t i = 0; i < 3; ++i) result.parts[i].assign(in[order[i]].begin(), in[order[i]].end());
  const auto& parts = result.parts;
  const auto s1 = static_cast<long long>(parts[0].size());
  const auto s2 = static_cast<long long>(parts[1].size());
  const auto s3 = static_cast<long long>(parts[2].size());
  if (s3 > 3 * s1 - s2) {
    throw std::invalid_argument("triple sizes violate |V3| <= 3|V1| - |V2|");
  }
  result.split = triple_split(parts[0].size(), parts[1].size(), parts[2].size());

  std::vector<int> part_of(h.num_vertices(), -1);
  std::vector<std::size_t> local(h.num_vertices(), 0);
  for (int p = 0; p < 3; ++p)
    for (std::size_t i = 0; i < parts[p].size(); ++i) {
      if (part_of[parts[p][i]] != -1) throw std::invalid_argument("triple parts must be disjoint");
      part_of[parts[p][i]] = p;
      local[parts[p][i]] = i;
    }

  std::array<CrossTable, 3> tables;
  for (int d = 0; d < 3; ++d) {
    const int x = d == 0 ? 1 : 0;
    const int z = d == 2 ? 1 : 2;
    auto& tab = tables[d];
    tab.words = (parts[d].size() + 63) / 64;
    tab.zsize = parts[z].size();
    tab.bits.assign(parts[x].size() * parts[z].size() * tab.words, 0);
  }
  for (EdgeIndex e = 0; e < h.num_edges(); ++e) {
    auto ed = h.edge(e);
    std::array<int, 3> where{};
    std::array<std::size_t, 3> at{};
    unsigned seen = 0;
    for (Vertex u : ed) {
      if (part_of[u] < 0) {
        seen = 0;
        break;
      }
      seen |= 1u << part_of[u];
      where[part_of[u]] = 1;
      at[part_of[u]] = local[u];
    }
    if (seen != 0b111u) continue;
    for (int d = 0; d < 3; ++d) {
      const int x = d == 0 ? 1 : 0;
      const int z = d == 2 ? 1 : 2;
      tables[d].row(at[x], at[z])[at[d] / 64] |= std::uint64_t{1} << (at[d] % 64);
    }
  }

  std::array<std::vector<std::uint64_t>, 3> alive;
  std::array<std::size_t, 3> remaining{};
  for (int p = 0; p < 3; ++p) {
    alive[p].assign((parts[p].size() + 63) / 64, 0);
    for (std::size_t i = 0; i < parts[p].size(); ++i) alive[p][i / 64] |= std::uint64_t{1} << (i % 64);
    remaining[p] = parts[p].size();
  }
  auto is_alive = [&](int p, std::size_t i) { return (alive[p][i / 64] >> (i % 64)) & 1; };
  auto kill = [&](int p, std::size_t i) {
    alive[p][i / 64] &= ~(std::uint64_t{1} << (i % 64));
    --remaining[p];
  };

  auto floor_of = [](const mpq_class& q) -> std::size_t {
    if (sgn(q) <= 0) return 0;
    mpz_class f;
    mpz_fdiv_q(f.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return f.get_ui();
  };
  const std::array<std::size_t, 3> quota{floor_of(result.split.x1), floor_of(result.split.x2),
                                         floor_of(result.split.x3)};
  const Pattern y = Pattern::y32();

  for (int d = 0; d < 3; ++d) {
    const int x = d == 0 ? 1 : 0;
    const int z = d == 2 ? 1 : 2;
    auto& tab = tables[d];
    std::size_t made = 0;
    while (made < quota[d]) {
      bool found = false;
      for (std::size_t xi = 0; xi < parts[x].size() && !found; ++xi) {
        if (!is_alive(x, xi)) continue;
        for (std::size_t zi = 0; zi < parts[z].size() && !found; ++zi) {
          if (!is_alive(z, zi)) continue;
          const std::uint64_t* row = tab.row(xi, zi);
          std::size_t common = 0;
          for (std::size_t w = 0; w < tab.words; ++w) common += static_cast<std::size_t>(std::popcount(row[w] & alive[d][w]));
          if (common < 2) continue;
          std::array<std::size_t, 2> pick{};
          std::size_t got = 0;
          for (std::size_t w = 0; w < tab.words && got < 2; ++w) {
            std::uint64_t bits = row[w] & alive[d][w];
            while (bits && got < 2) {
              pick[got++] = w * 64 + static_cast<std::size_t>(std::countr_zero(bits));
              bits &= bits - 1;
            }
          }
          const Vertex vx = parts[x][xi], vz = parts[z][zi];
          const Vertex d1 = parts[d][pick[0]], d2 = parts[d][pick[1]];
          const std::array<Vertex, 3> e1{vx, vz, d1}, e2{vx, vz, d2};
          result.tiling.copies.push_back(make_copy(h, y, *h.find_edge(e1), *h.find_edge(e2)));
          kill(x, xi);
          kill(z, zi);
          kill(d, pick[0]);
          kill(d, pick[1]);
          found = true;
        }
      }
      if (!found) break;
      ++made;
    }
    result.phase_counts[d] = made;
  }

  const bool v3_left_large = static_cast<double>(remaining[2]) >= 2.0 * delta * static_cast<double>(parts[2].size());
  result.short_of_target = result.phase_counts[0] < quota[0] || result.phase_counts[1] < quota[1] ||
                           (result.phase_counts[2] < quota[2] && v3_left_large);
  return result;
}

FractionalToIntegralResult fractional_to_integral(const Hypergraph& h, const ReducedGraph& reduced,
                                                  const FractionalTiling& fractional) {
  const auto& r = reduced.graph;
  const auto check = verify_fractional(r, fractional);
  if (!check.ok) {
    throw std::invalid_argument("not a fractional hom(Y)-tiling: " + check.violations.front().what);
  }
  const std::size_t m = reduced.partition.cluster_size();
  FractionalToIntegralResult out;

  auto floor_times = [&](const mpq_class& q) -> std::size_t {
    mpz_class num = q.get_num() * m;
    mpz_class f;
    mpz_fdiv_q(f.get_mpz_t(), num.get_mpz_t(), q.get_den_mpz_t());
    return f.get_ui();
  };

  for (std::size_t i = 0; i < r.num_vertices(); ++i) {
    const auto& cluster = reduced.partition.clusters[i];
    std::size_t next = 0;
    for (EdgeIndex e : r.incident(static_cast<Vertex>(i))) {
      const std::size_t size = floor_times(fractional.get(static_cast<Vertex>(i), e));
      if (next + size > cluster.size()) throw std::logic_error("cluster subdivision overflows");
      if (size > 0) {
        out.subdivision[{i, e}] = std::vector<Vertex>(cluster.begin() + static_cast<std::ptrdiff_t>(next),
                                                      cluster.begin() + static_cast<std::ptrdiff_t>(next + size));
      }
      next += size;
    }
  }

  for (EdgeIndex e = 0; e < r.num_edges(); ++e) {
    auto ed = r.edge(e);
    std::array<std::vector<Vertex>, 3> pieces;
    bool empty = false;
    for (std::size_t i = 0; i < 3; ++i) {
      auto it = out.subdivision.find({ed[i], e});
      if (it == out.subdivision.end()) {
        empty = true;
        break;
      }
      pieces[i] = it->second;
    }
    if (empty) continue;
    // Rounding can break |V3| <= 3|V1| - |V2|; trim the largest piece until it holds.
    while (true) {
      std::array<std::size_t, 3> idx{0, 1, 2};
      std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return pieces[a].size() < pieces[b].size(); });
      const auto a = pieces[idx[0]].size(), b = pieces[idx[1]].size(), c = pieces[idx[2]].size();
      if (b + c <= 3 * a) break;
      pieces[idx[2]].pop_back();
    }
    auto part = greedy_triple_tiling(h, pieces[0], pieces[1], pieces[2], reduced.delta);
    for (auto& c : part.tiling.copies) out.tiling.copies.push_back(std::move(c));
  }
  out.covered = out.tiling.size() * 4;
  out.target = (1 - 4 * mpq_class(reduced.delta)) * fractional.weight() * mpq_class(m);
  return out;
}

Partition random_partition(std::size_t n, std::size_t t, std::uint64_t seed) {
  if (t == 0 || t > n) throw std::invalid_argument("random partition needs 1 <= t <= n");
  std::vector<Vertex> perm(n);
  std::iota(perm.begin(), perm.end(), Vertex{0});
  std::mt19937_64 rng(seed);
  portable_shuffle(perm.begin(), perm.end(), rng);
  const std::size_t m = n / t;
  Partition p;
  for (std::size_t i = 0; i < t; ++i) {
    std::vector<Vertex> c(perm.begin() + static_cast<std::ptrdiff_t>(i * m),
                          perm.begin() + static_cast<std::ptrdiff_t>((i + 1) * m));
    std::sort(c.begin(), c.end());
    p.clusters.push_back(std::move(c));
  }
  p.exceptional.assign(perm.begin() + static_cast<std::ptrdiff_t>(t * m), perm.end());
  std::sort(p.exceptional.begin(), p.exceptional.end());
  return p;
}

}  // namespace ytile
