#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

#include "json.hpp"

#include "ytile/hypergraph.hpp"

namespace ytile {

class ParseError : public std::runtime_error {
public:
  ParseError(const std::string& what, std::size_t line = 0)
      : std::runtime_error(line ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

private:
  std::size_t line_;
};

enum class GraphFormat { hg, json };

/// Text format: header `n k m`, then m lines of k increasing ids; `#` starts a comment.
Hypergraph parse_hg(std::istream& in);
Hypergraph parse_hg_string(const std::string& text);
std::string to_hg(const Hypergraph& h);

nlohmann::json to_json(const Hypergraph& h);
Hypergraph hypergraph_from_json(const nlohmann::json& j);

Partition partition_from_json(const nlohmann::json& j);
nlohmann::json to_json(const Partition& p);

/// Picks the format from the extension (.json vs anything else).
GraphFormat format_for_path(const std::string& path);
Hypergraph read_hypergraph(const std::string& path);
void write_hypergraph(const Hypergraph& h, const std::string& path, GraphFormat format);

/// FNV-1a over the canonical .hg text.
std::uint64_t canonical_hash(const Hypergraph& h);

/// "p/q", or "p" for integers.
std::string rational_string(const mpq_class& q);
mpq_class parse_rational(const std::string& s);

}  // namespace ytile
