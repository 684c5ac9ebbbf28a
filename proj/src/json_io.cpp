#include "dca/json_io.hpp"

#include <json.hpp>

#include <sstream>

namespace dca::io {

using nlohmann::json;

std::string surface_to_json(const TriangulatedSurface& s, const Coloring* col) {
  json j;
  j["dimension"] = s.dim;
  j["vertices"] = s.vertex_ids;
  j["simplices"] = s.simplices;
  if (col) {
    std::vector<std::string> colors;
    for (Color c : col->color) colors.push_back(c == Color::black ? "b" : "w");
    j["colors"] = colors;
  }
  if (s.orientable) j["orientation"] = s.orientation;
  return j.dump(2);
}

ParsedSurface surface_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const std::exception& e) {
    throw Error(ErrorCode::parse, std::string("bad surface JSON: ") + e.what());
  }
  if (!j.contains("simplices"))
    throw Error(ErrorCode::parse, "surface JSON lacks \"simplices\"");
  ParsedSurface out;
  std::vector<std::vector<VertexId>> simplices = j["simplices"];
  out.surface = build_surface(std::move(simplices));
  if (j.contains("dimension") && j["dimension"].get<int>() != out.surface.dim)
    throw Error(ErrorCode::parse, "dimension field disagrees with the simplices");
  if (j.contains("colors")) {
    std::vector<std::string> colors = j["colors"];
    if (colors.size() != static_cast<size_t>(out.surface.num_simplices()))
      throw Error(ErrorCode::parse, "colors array has the wrong length");
    out.has_coloring = true;
    out.coloring.color.resize(colors.size());
    for (size_t i = 0; i < colors.size(); ++i) {
      if (colors[i] != "b" && colors[i] != "w")
        throw Error(ErrorCode::parse, "colors must be \"b\" or \"w\"");
      out.coloring.color[i] = colors[i] == "b" ? Color::black : Color::white;
    }
  }
  return out;
}

std::string ball_to_json(const hyper::Ball& b) {
  json j = json::parse(surface_to_json(b.surface, &b.coloring));
  j["radius"] = b.radius;
  j["layers"] = b.layers;
  std::vector<std::vector<VertexId>> cycles;
  for (int k = 1; k <= b.radius; ++k) cycles.push_back(b.cycles[k]);
  j["boundary_cycles"] = cycles;
  return j.dump(2);
}

namespace {

template <class S, class Fmt>
std::string lattice_csv_impl(const std::unordered_map<euclid::Point, S, euclid::PointHash>& v,
                             Fmt fmt) {
  std::vector<euclid::Point> pts;
  pts.reserve(v.size());
  for (const auto& [p, val] : v) pts.push_back(p);
  std::sort(pts.begin(), pts.end());
  std::ostringstream os;
  os << "m,n,value\n";
  for (const auto& p : pts)
    os << p.first << "," << p.second << "," << fmt(v.at(p)) << "\n";
  return os.str();
}

}  // namespace

std::string lattice_csv(const euclid::LatticeFn<Rat>& f) {
  return lattice_csv_impl(f.v, [](const Rat& q) { return rat_to_string(q); });
}

std::string lattice_csv(const euclid::LatticeFn<double>& f) {
  return lattice_csv_impl(f.v, [](double x) {
    char buf[40];
    snprintf(buf, sizeof(buf), "%.17g", x);
    return std::string(buf);
  });
}

euclid::LatticeFn<Rat> lattice_from_csv(const std::string& text) {
  euclid::LatticeFn<Rat> f;
  std::istringstream is(text);
  std::string line;
  bool first = true;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    if (first && line.rfind("m,", 0) == 0) {
      first = false;
      continue;
    }
    first = false;
    std::istringstream ls(line);
    std::string a, b, c;
    if (!std::getline(ls, a, ',') || !std::getline(ls, b, ',') || !std::getline(ls, c))
      throw Error(ErrorCode::parse, "bad CSV line: " + line);
    f.v[{std::stoi(a), std::stoi(b)}] = rat_from_string(c);
  }
  if (f.v.empty()) throw Error(ErrorCode::parse, "empty lattice CSV");
  return f;
}

std::string triplets_csv(const SparseMatrix<Rat>& m) {
  std::ostringstream os;
  os << "row,col,value\n";
  for (int r = 0; r < m.nrows; ++r)
    for (const auto& [c, v] : m.rows[r])
      os << r << "," << c << "," << rat_to_string(v) << "\n";
  return os.str();
}

}  // namespace dca::io

namespace dca {

std::string Report::to_json() const {
  nlohmann::json j;
  j["command"] = command;
  j["pass"] = pass();
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& c : claims) {
    nlohmann::json cj;
    cj["id"] = c.id;
    cj["expected"] = c.expected;
    cj["computed"] = c.computed;
    cj["pass"] = c.pass;
    arr.push_back(cj);
  }
  j["claims"] = arr;
  return j.dump(2);
}

}  // namespace dca
