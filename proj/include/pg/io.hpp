#pragma once

// JSON formats:
//   triangulation  {"n_vertices": 6, "simplices": [[1,2,3,4,5], ...],
//                   "orientations": [1, -1, ...], "zeta": {"1": "3/7", ...}, "field": "gf:1000003"}
//   matrix         {"rows": ["V3:(1234,1)", ...], "cols": [...], "entries": [[r, c, "p/q"], ...]}
//   x-chain        {"chain": [[[1,2,3,4,5], 5, "2/3"], ...]}
// Scalars are always strings in canonical form.

#include <map>
#include <optional>
#include <string>

#include <json.hpp>

#include "pg/chain_complex.hpp"
#include "pg/error.hpp"
#include "pg/field.hpp"
#include "pg/grassmann.hpp"
#include "pg/triangulation.hpp"
#include "pg/weights.hpp"

namespace pg {

using Json = nlohmann::ordered_json;

struct TriangulationInput {
  Triangulation tri;
  std::optional<FieldTag> field;
  std::map<int, std::string> zeta;  // vertex -> scalar text, parsed once the field is known
};

TriangulationInput parse_triangulation_json(const std::string& text);
TriangulationInput load_triangulation_file(const std::string& path);
/// A built-in name or a path to a JSON file.
TriangulationInput resolve_triangulation(const std::string& spec);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

template <FieldScalar S>
VertexCoordinates<S> parse_coordinates(const TriangulationInput& in, const FieldTag& tag) {
  std::vector<S> v;
  for (int i = 1; i <= in.tri.n_vertices; ++i) {
    auto it = in.zeta.find(i);
    if (it == in.zeta.end()) throw Error(ErrorCode::ParseError, "zeta has no value for vertex " + std::to_string(i));
    v.push_back(parse_scalar<S>(it->second, tag));
  }
  return VertexCoordinates<S>(std::move(v));
}

template <FieldScalar S>
Json matrix_to_json(const ExactMatrix<S>& m) {
  Json rows = Json::array(), cols = Json::array(), entries = Json::array();
  for (const auto& l : m.rows) rows.push_back(l.str());
  for (const auto& l : m.cols) cols.push_back(l.str());
  for (Eigen::Index i = 0; i < m.n_rows(); ++i)
    for (Eigen::Index j = 0; j < m.n_cols(); ++j)
      if (!is_zero(m.entries(i, j))) entries.push_back(Json::array({i, j, to_string(m.entries(i, j))}));
  return Json{{"rows", rows}, {"cols", cols}, {"entries", entries}};
}

inline Json simplex_to_json(const Simplex& s) {
  Json a = Json::array();
  for (int v : s) a.push_back(v);
  return a;
}

Simplex simplex_from_json(const Json& j);

template <FieldScalar S>
Json xchain_to_json(const XChain<S>& x) {
  Json chain = Json::array();
  for (const auto& [key, c] : x.values())
    if (!is_zero(c)) chain.push_back(Json::array({simplex_to_json(key.first), key.second, to_string(c)}));
  return Json{{"chain", chain}};
}

template <FieldScalar S>
XChain<S> xchain_from_json(const Json& j, const FieldTag& tag) {
  XChain<S> x;
  try {
    for (const auto& e : j.at("chain")) {
      if (!e.is_array() || e.size() != 3) throw Error(ErrorCode::ParseError, "chain entries are [simplex, vertex, value]");
      x.add(simplex_from_json(e[0]), e[1].get<int>(), parse_scalar<S>(e[2].get<std::string>(), tag));
    }
  } catch (const nlohmann::json::exception& ex) {
    throw Error(ErrorCode::ParseError, std::string("x-chain: ") + ex.what());
  }
  return x;
}

template <FieldScalar S>
Json grassmann_to_json(const GrassmannElement<S>& x) {
  Json terms = Json::array();
  for (const auto& [m, c] : x.terms()) {
    Json mono = Json::array();
    for (const auto& g : m) mono.push_back(g.str());
    terms.push_back(Json::array({mono, to_string(c)}));
  }
  return terms;
}

/// One report line.
struct ReportLine {
  std::string theorem;
  std::uint64_t seed = 0;
  std::string field;
  bool equal = false;
  std::size_t residual_terms = 0;
  long long elapsed_ms = 0;
  Json extra = Json::object();  // appended after the fixed keys

  std::string dump() const;
};

}  // namespace pg
