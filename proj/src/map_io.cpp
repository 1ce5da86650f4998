#include "steinhaus/map_io.hpp"

#include <charconv>
#include <numeric>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace steinhaus {

namespace {

[[noreturn]] void parse_fail(const std::string& what) { throw Error(ErrorCode::ParseError, what); }

std::int64_t parse_int(std::string_view s, const std::string& field) {
  std::int64_t v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) {
    parse_fail(field + ": not an integer: '" + std::string(s) + "'");
  }
  return v;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) parse_fail("cannot open " + path.string());
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::InvalidArgument, "cannot write " + path.string());
  out << text;
}

}  // namespace

PartialMap parse_map(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    parse_fail(std::string("map: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("m") || !doc["m"].is_number_integer()) {
    parse_fail("m: missing or not an integer");
  }
  const std::int64_t m = doc["m"].get<std::int64_t>();
  if (m < 1 || m > 64) parse_fail("m: out of range: " + std::to_string(m));
  if (!doc.contains("entries") || !doc["entries"].is_array()) {
    parse_fail("entries: missing or not an array");
  }
  const auto& entries = doc["entries"];
  PartialMap L(m);
  if (static_cast<std::int64_t>(entries.size()) != L.size()) {
    parse_fail("entries: expected " + std::to_string(L.size()) + " triples, got " +
               std::to_string(entries.size()));
  }
  for (std::int64_t i = 0; i < L.size(); ++i) {
    const auto& e = entries[static_cast<std::size_t>(i)];
    if (e.is_null()) continue;
    const std::string field = "entries[" + std::to_string(i) + "]";
    if (!e.is_array() || e.size() != 3) parse_fail(field + ": expected a triple");
    IntVec3 v;
    for (int k = 0; k < 3; ++k) {
      if (!e[static_cast<std::size_t>(k)].is_number_integer()) parse_fail(field + ": not integral");
      v[k] = e[static_cast<std::size_t>(k)].get<std::int64_t>();
      if (v[k] < 0 || v[k] >= m) parse_fail(field + ": coordinate outside [0,m)");
    }
    L.set(i, v);
  }
  return L;
}

std::string format_map(const PartialMap& L) {
  nlohmann::ordered_json doc;
  doc["m"] = L.modulus();
  auto entries = nlohmann::ordered_json::array();
  for (const auto& e : L.entries()) {
    if (e) {
      entries.push_back({e->x, e->y, e->z});
    } else {
      entries.push_back(nullptr);
    }
  }
  doc["entries"] = std::move(entries);
  return doc.dump() + "\n";
}

std::vector<RationalPoint> parse_point_set(std::string_view text) {
  std::vector<RationalPoint> points;
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    const std::string where = "line " + std::to_string(lineno);
    std::istringstream fields(line);
    std::string tok;
    std::vector<std::pair<std::int64_t, std::int64_t>> coords;
    while (fields >> tok) {
      const auto slash = tok.find('/');
      if (slash == std::string::npos) {
        coords.emplace_back(parse_int(tok, where), 1);
      } else {
        const std::int64_t den = parse_int(std::string_view(tok).substr(slash + 1), where);
        if (den <= 0) parse_fail(where + ": denominator must be positive");
        coords.emplace_back(parse_int(std::string_view(tok).substr(0, slash), where), den);
      }
    }
    if (coords.size() != 3) parse_fail(where + ": expected three coordinates");
    // Bring the three coordinates over a common denominator.
    const std::int64_t den = std::lcm(std::lcm(coords[0].second, coords[1].second), coords[2].second);
    RationalPoint pt{{}, den};
    for (int k = 0; k < 3; ++k) {
      pt.num[k] = coords[static_cast<std::size_t>(k)].first * (den / coords[static_cast<std::size_t>(k)].second);
    }
    points.push_back(pt);
  }
  return points;
}

std::string format_point_set(const std::vector<RationalPoint>& points) {
  std::ostringstream os;
  for (const auto& p : points) os << p << '\n';
  return os.str();
}

PartialMap load_map(const std::filesystem::path& path) { return parse_map(read_file(path)); }

void save_map(const std::filesystem::path& path, const PartialMap& L) {
  write_file(path, format_map(L));
}

std::vector<RationalPoint> load_point_set(const std::filesystem::path& path) {
  return parse_point_set(read_file(path));
}

void save_point_set(const std::filesystem::path& path, const std::vector<RationalPoint>& points) {
  write_file(path, format_point_set(points));
}

}  // namespace steinhaus
