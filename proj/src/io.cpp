#include "ytile/io.hpp"

#include <fstream>
#include <sstream>

namespace ytile {
namespace {

std::string strip_comment(const std::string& line) {
  auto pos = line.find('#');
  return pos == std::string::npos ? line : line.substr(0, pos);
}

bool blank(const std::string& s) {
  return s.find_first_not_of(" \t\r") == std::string::npos;
}

}  // namespace

Hypergraph parse_hg(std::istream& in) {
  std::string line;
  std::size_t lineno = 0;
  bool have_header = false;
  std::size_t n = 0, k = 0, m = 0;
  std::vector<std::vector<Vertex>> edges;
  while (std::getline(in, line)) {
    ++lineno;
    line = strip_comment(line);
    if (blank(line)) continue;
    std::istringstream fields(line);
    if (!have_header) {
      if (!(fields >> n >> k >> m)) throw ParseError("expected header `n k m`", lineno);
      std::string extra;
      if (fields >> extra) throw ParseError("trailing data after header", lineno);
      if (k < 2) throw ParseError("uniformity must be at least 2", lineno);
      have_header = true;
      continue;
    }
    std::vector<Vertex> e;
    long long v;
    while (fields >> v) {
      if (v < 0) throw ParseError("negative vertex id", lineno);
      e.push_back(static_cast<Vertex>(v));
    }
    if (!fields.eof()) throw ParseError("non-numeric token in edge", lineno);
    if (e.size() != k) throw ParseError("edge has wrong arity", lineno);
    for (std::size_t i = 1; i < e.size(); ++i) {
      if (e[i - 1] >= e[i]) throw ParseError("edge vertices must be strictly increasing", lineno);
    }
    edges.push_back(std::move(e));
  }
  if (!have_header) throw ParseError("missing header");
  if (edges.size() != m) {
    throw ParseError("header announces " + std::to_string(m) + " edges, found " +
                     std::to_string(edges.size()));
  }
  try {
    return Hypergraph::build(n, k, edges);
  } catch (const HypergraphError& err) {
    throw ParseError(err.what());
  }
}

Hypergraph parse_hg_string(const std::string& text) {
  std::istringstream in(text);
  return parse_hg(in);
}

std::string to_hg(const Hypergraph& h) {
  std::ostringstream out;
  out << h.num_vertices() << ' ' << h.uniformity() << ' ' << h.num_edges() << '\n';
  for (std::size_t e = 0; e < h.num_edges(); ++e) {
    auto ed = h.edge(static_cast<EdgeIndex>(e));
    for (std::size_t i = 0; i < ed.size(); ++i) out << (i ? " " : "") << ed[i];
    out << '\n';
  }
  return out.str();
}

nlohmann::json to_json(const Hypergraph& h) {
  return {{"n", h.num_vertices()}, {"k", h.uniformity()}, {"edges", h.edge_list()}};
}

Hypergraph hypergraph_from_json(const nlohmann::json& j) {
  try {
    return Hypergraph::build(j.at("n").get<std::size_t>(), j.at("k").get<std::size_t>(),
                             j.at("edges").get<std::vector<std::vector<Vertex>>>());
  } catch (const nlohmann::json::exception& err) {
    throw ParseError(std::string("bad hypergraph JSON: ") + err.what());
  } catch (const HypergraphError& err) {
    throw ParseError(err.what());
  }
}

Partition partition_from_json(const nlohmann::json& j) {
  try {
    Partition p;
    p.exceptional = j.at("exceptional").get<std::vector<Vertex>>();
    p.clusters = j.at("clusters").get<std::vector<std::vector<Vertex>>>();
    return p;
  } catch (const nlohmann::json::exception& err) {
    throw ParseError(std::string("bad partition JSON: ") + err.what());
  }
}

nlohmann::json to_json(const Partition& p) {
  return {{"exceptional", p.exceptional}, {"clusters", p.clusters}};
}

GraphFormat format_for_path(const std::string& path) {
  return path.size() >= 5 && path.compare(path.size() - 5, 5, ".json") == 0 ? GraphFormat::json
                                                                            : GraphFormat::hg;
}

Hypergraph read_hypergraph(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  if (format_for_path(path) == GraphFormat::json) {
    nlohmann::json j;
    try {
      in >> j;
    } catch (const nlohmann::json::exception& err) {
      throw ParseError(std::string("bad JSON: ") + err.what());
    }
    return hypergraph_from_json(j);
  }
  return parse_hg(in);
}

void write_hypergraph(const Hypergraph& h, const std::string& path, GraphFormat format) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  if (format == GraphFormat::json) {
    out << to_json(h).dump() << '\n';
  } else {
    out << to_hg(h);
  }
}

std::uint64_t canonical_hash(const Hypergraph& h) {
  std::uint64_t hash = 0xcbf29ce484222325ULL;
  for (unsigned char c : to_hg(h)) {
    hash ^= c;
    hash *= 0x100000001b3ULL;
  }
  return hash;
}

std::string rational_string(const mpq_class& q) {
  mpq_class c(q);
  c.canonicalize();
  return c.get_str();
}

mpq_class parse_rational(const std::string& s) {
  mpq_class q;
  if (q.set_str(s, 10) != 0 || q.get_den() == 0) throw ParseError("bad rational '" + s + "'");
  q.canonicalize();
  return q;
}

}  // namespace ytile
