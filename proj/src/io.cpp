#include "pg/io.hpp"

#include <fstream>
#include <sstream>

namespace pg {

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::ParseError, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::ParseError, "cannot write " + path);
  out << text;
  if (!out) throw Error(ErrorCode::ParseError, "write failed for " + path);
}

Simplex simplex_from_json(const Json& j) {
  if (!j.is_array()) throw Error(ErrorCode::ParseError, "simplex must be an array of vertex ids");
  std::vector<int> v;
  for (const auto& e : j) {
    if (!e.is_number_integer()) throw Error(ErrorCode::ParseError, "vertex ids must be integers");
    v.push_back(e.get<int>());
  }
  for (std::size_t k = 1; k < v.size(); ++k)
    if (v[k - 1] >= v[k]) throw Error(ErrorCode::InvalidTriangulation, "simplex vertices must be strictly increasing");
  return Simplex(std::span<const int>(v));
}

TriangulationInput parse_triangulation_json(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::ParseError, e.what());
  }
  TriangulationInput in;
  try {
    const int n = j.at("n_vertices").get<int>();
    std::vector<Simplex> simplices;
    for (const auto& s : j.at("simplices")) {
      if (s.size() != 5) throw Error(ErrorCode::InvalidTriangulation, "4-simplices have five vertices");
      simplices.push_back(simplex_from_json(s));
    }
    if (simplices.empty()) throw Error(ErrorCode::InvalidTriangulation, "no simplices");
    if (j.contains("orientations")) {
      in.tri = make_triangulation(n, std::move(simplices), j["orientations"].get<std::vector<int>>());
    } else {
      const Simplex first = simplices.front();
      in.tri = orient_from_reference(make_triangulation(n, std::move(simplices)), first, 1);
    }
    if (j.contains("field")) in.field = FieldTag::parse(j["field"].get<std::string>());
    if (j.contains("zeta")) {
      for (const auto& [k, v] : j["zeta"].items()) {
        std::size_t used = 0;
        int vertex = 0;
        try {
          vertex = std::stoi(k, &used);
        } catch (const std::exception&) {
          used = 0;
        }
        if (used != k.size() || vertex < 1 || vertex > n)
          throw Error(ErrorCode::ParseError, "zeta key '" + k + "' is not a vertex id");
        in.zeta[vertex] = v.get<std::string>();
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ParseError, std::string("triangulation: ") + e.what());
  }
  return in;
}

TriangulationInput load_triangulation_file(const std::string& path) {
  return parse_triangulation_json(read_text_file(path));
}

TriangulationInput resolve_triangulation(const std::string& spec) {
  for (const auto& name : builtin_names())
    if (spec == name) return TriangulationInput{builtin(name), std::nullopt, {}};
  return load_triangulation_file(spec);
}

std::string ReportLine::dump() const {
  Json j{{"theorem", theorem}, {"seed", seed},          {"field", field}, {"equal", equal},
         {"residual_terms", residual_terms}, {"elapsed_ms", elapsed_ms}};
  for (const auto& [k, v] : extra.items()) j[k] = v;
  return j.dump();
}

}  // namespace pg
