#include "tourdiv/instance.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include <fmt/format.h>

namespace tourdiv {

std::int64_t edge_count(int n) {
  return static_cast<std::int64_t>(n) * (n - 1) / 2;
}

namespace {

// First index of the block of edges {u, v} with v > u.
std::int64_t row_start(int n, std::int64_t u) { return u * (2 * n - u - 1) / 2; }

void check_vertex(int n, Vertex v) {
  if (v < 0 || v >= n) {
    throw std::invalid_argument(fmt::format("vertex {} outside [0, {})", v, n));
  }
}

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

std::string upper(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
  return s;
}

// Splits "KEY : VALUE" / "KEY: VALUE" / "KEY" lines.
std::pair<std::string, std::string> split_keyword(const std::string& line) {
  const auto colon = line.find(':');
  if (colon == std::string::npos) {
    std::istringstream ss(line);
    std::string key;
    ss >> key;
    std::string rest;
    std::getline(ss, rest);
    return {upper(key), trim(rest)};
  }
  return {upper(trim(line.substr(0, colon))), trim(line.substr(colon + 1))};
}

}  // namespace

EdgeId edge_id(int n, Vertex u, Vertex v) {
  check_vertex(n, u);
  check_vertex(n, v);
  if (u == v) throw std::invalid_argument(fmt::format("self-loop at vertex {}", u));
  if (u > v) std::swap(u, v);
  return EdgeId{row_start(n, u) + (v - u - 1)};
}

std::pair<Vertex, Vertex> edge_endpoints(int n, EdgeId e) {
  if (e.index < 0 || e.index >= edge_count(n)) {
    throw std::invalid_argument(fmt::format("edge index {} outside [0, {})", e.index, edge_count(n)));
  }
  // Closed-form guess from the quadratic, then fix rounding.
  const double nn = 2.0 * n - 1.0;
  auto u = static_cast<std::int64_t>(std::floor((nn - std::sqrt(nn * nn - 8.0 * static_cast<double>(e.index))) / 2.0));
  u = std::clamp<std::int64_t>(u, 0, n - 2);
  while (u > 0 && row_start(n, u) > e.index) --u;
  while (u + 1 <= n - 2 && row_start(n, u + 1) <= e.index) ++u;
  const auto v = e.index - row_start(n, u) + u + 1;
  return {static_cast<Vertex>(u), static_cast<Vertex>(v)};
}

Tour::Tour(std::vector<Vertex> perm) : perm_(std::move(perm)) {
  const int n = size();
  if (n < 3) throw std::invalid_argument(fmt::format("tour needs at least 3 vertices, got {}", n));
  std::vector<char> seen(n, 0);
  for (Vertex v : perm_) {
    if (v < 0 || v >= n) throw std::invalid_argument(fmt::format("tour vertex {} outside [0, {})", v, n));
    if (seen[v]) throw std::invalid_argument(fmt::format("tour visits vertex {} twice", v));
    seen[v] = 1;
  }
}

Tour Tour::identity(int n) {
  std::vector<Vertex> perm(n);
  for (int i = 0; i < n; ++i) perm[i] = i;
  return Tour(std::move(perm));
}

std::vector<EdgeId> Tour::edges() const {
  const int n = size();
  std::vector<EdgeId> out;
  out.reserve(n);
  for (int i = 0; i < n; ++i) out.push_back(edge_id(n, perm_[i], perm_[(i + 1) % n]));
  return out;
}

std::vector<EdgeId> Tour::edge_set() const {
  auto out = edges();
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::array<Vertex, 2>> Tour::adjacency() const {
  const int n = size();
  std::vector<std::array<Vertex, 2>> adj(n);
  for (int i = 0; i < n; ++i) {
    adj[perm_[i]] = {perm_[(i + n - 1) % n], perm_[(i + 1) % n]};
  }
  return adj;
}

bool same_cycle(const Tour& a, const Tour& b) {
  return a.size() == b.size() && a.edge_set() == b.edge_set();
}

int shared_edges(const Tour& a, const Tour& b) {
  if (a.size() != b.size()) throw std::invalid_argument("tours over different vertex counts");
  const auto adj = a.adjacency();
  const int n = b.size();
  int shared = 0;
  for (int i = 0; i < n; ++i) {
    const Vertex u = b[i];
    const Vertex v = b[(i + 1) % n];
    if (adj[u][0] == v || adj[u][1] == v) ++shared;
  }
  return shared;
}

Instance Instance::euclidean(std::string name, std::vector<Point> coords) {
  if (coords.size() < 3) {
    throw std::invalid_argument(fmt::format("instance needs at least 3 vertices, got {}", coords.size()));
  }
  Instance inst;
  inst.n_ = static_cast<int>(coords.size());
  inst.name_ = std::move(name);
  inst.kind_ = WeightKind::EuclideanRounded;
  inst.coords_ = std::move(coords);
  return inst;
}

Instance Instance::unit(int n, std::string name) {
  if (n < 3) throw std::invalid_argument(fmt::format("instance needs at least 3 vertices, got {}", n));
  Instance inst;
  inst.n_ = n;
  inst.name_ = name.empty() ? fmt::format("unit{}", n) : std::move(name);
  inst.kind_ = WeightKind::Unit;
  return inst;
}

std::span<const Point> Instance::coords() const {
  if (!coords_) throw std::logic_error(fmt::format("instance {} has no coordinates", name_));
  return *coords_;
}

Cost Instance::distance(Vertex u, Vertex v) const {
  check_vertex(n_, u);
  check_vertex(n_, v);
  if (u == v) throw std::invalid_argument(fmt::format("distance from vertex {} to itself", u));
  if (kind_ == WeightKind::Unit) return 1;
  const Point& a = (*coords_)[u];
  const Point& b = (*coords_)[v];
  // TSPLIB nint(): half rounds up.
  return static_cast<Cost>(std::floor(std::hypot(a.x - b.x, a.y - b.y) + 0.5));
}

Cost tour_cost(const Instance& instance, const Tour& t) {
  const int n = t.size();
  if (n != instance.n()) {
    throw std::invalid_argument(fmt::format("tour over {} vertices on instance with {}", n, instance.n()));
  }
  if (instance.weight_kind() == WeightKind::Unit) return n;
  Cost total = 0;
  for (int i = 0; i < n; ++i) total += instance.distance(t[i], t[(i + 1) % n]);
  return total;
}

Instance parse_tsplib(std::istream& in) {
  std::string name;
  std::optional<int> dimension;
  std::optional<std::string> weight_type;
  bool in_coords = false;
  std::vector<std::optional<Point>> coords;
  int coord_lines = 0;

  std::string line;
  while (std::getline(in, line)) {
    const std::string t = trim(line);
    if (t.empty()) continue;
    if (in_coords) {
      if (upper(t) == "EOF") break;
      std::istringstream ss(t);
      long label = 0;
      double x = 0;
      double y = 0;
      if (!(ss >> label >> x >> y)) {
        // A keyword after the section ends it.
        if (std::isalpha(static_cast<unsigned char>(t[0]))) {
          in_coords = false;
        } else {
          throw ParseError(ParseErrorKind::MalformedHeader, fmt::format("bad coordinate line '{}'", t));
        }
      } else {
        ++coord_lines;
        if (label < 1 || label > *dimension) {
          throw ParseError(ParseErrorKind::DimensionMismatch,
                           fmt::format("node {} outside DIMENSION {}", label, *dimension));
        }
        if (coords[label - 1]) {
          throw ParseError(ParseErrorKind::DimensionMismatch, fmt::format("node {} listed twice", label));
        }
        coords[label - 1] = Point{x, y};
        continue;
      }
    }
    const auto [key, value] = split_keyword(t);
    if (key == "NAME") {
      name = value;
    } else if (key == "DIMENSION") {
      try {
        std::size_t used = 0;
        const int d = std::stoi(value, &used);
        if (used != value.size() || d < 3) throw std::invalid_argument("dimension");
        dimension = d;
      } catch (const std::exception&) {
        throw ParseError(ParseErrorKind::MalformedHeader, fmt::format("bad DIMENSION '{}'", value));
      }
    } else if (key == "EDGE_WEIGHT_TYPE") {
      weight_type = upper(value);
      if (*weight_type != "EUC_2D") {
        throw ParseError(ParseErrorKind::UnsupportedWeightType,
                         fmt::format("EDGE_WEIGHT_TYPE {} not supported (EUC_2D only)", value));
      }
    } else if (key == "TYPE") {
      if (upper(value) != "TSP") {
        throw ParseError(ParseErrorKind::MalformedHeader, fmt::format("TYPE {} is not TSP", value));
      }
    } else if (key == "NODE_COORD_SECTION") {
      if (!dimension) {
        throw ParseError(ParseErrorKind::MalformedHeader, "NODE_COORD_SECTION before DIMENSION");
      }
      coords.assign(*dimension, std::nullopt);
      in_coords = true;
    } else if (key == "EOF") {
      break;
    } else if (key == "COMMENT" || key == "NODE_COORD_TYPE" || key == "DISPLAY_DATA_TYPE") {
      // ignored
    } else {
      throw ParseError(ParseErrorKind::MalformedHeader, fmt::format("unexpected line '{}'", t));
    }
  }

  if (!dimension) throw ParseError(ParseErrorKind::MalformedHeader, "missing DIMENSION");
  if (!weight_type) throw ParseError(ParseErrorKind::MalformedHeader, "missing EDGE_WEIGHT_TYPE");
  if (coords.empty()) throw ParseError(ParseErrorKind::MalformedHeader, "missing NODE_COORD_SECTION");
  if (coord_lines != *dimension) {
    throw ParseError(ParseErrorKind::DimensionMismatch,
                     fmt::format("DIMENSION {} but {} coordinate lines", *dimension, coord_lines));
  }
  std::vector<Point> points;
  points.reserve(coords.size());
  for (const auto& p : coords) points.push_back(*p);
  return Instance::euclidean(name, std::move(points));
}

Tour parse_opt_tour(std::istream& in, const Instance& instance) {
  const int n = instance.n();
  std::string line;
  bool found = false;
  while (std::getline(in, line)) {
    if (split_keyword(trim(line)).first == "TOUR_SECTION") {
      found = true;
      break;
    }
  }
  if (!found) throw ParseError(ParseErrorKind::MalformedHeader, "missing TOUR_SECTION");

  std::vector<Vertex> perm;
  std::vector<char> seen(n, 0);
  std::string token;
  bool terminated = false;
  while (in >> token) {
    if (upper(token) == "EOF") break;
    long label = 0;
    try {
      std::size_t used = 0;
      label = std::stol(token, &used);
      if (used != token.size()) throw std::invalid_argument(token);
    } catch (const std::exception&) {
      throw ParseError(ParseErrorKind::MalformedHeader, fmt::format("bad tour entry '{}'", token));
    }
    if (label == -1) {
      terminated = true;
      break;
    }
    if (label < 1 || label > n) {
      throw ParseError(ParseErrorKind::LabelOutOfRange, fmt::format("tour label {} outside 1..{}", label, n));
    }
    if (seen[label - 1]) {
      throw ParseError(ParseErrorKind::DuplicateVertex, fmt::format("tour visits {} twice", label));
    }
    seen[label - 1] = 1;
    perm.push_back(static_cast<Vertex>(label - 1));
  }
  if (!terminated) throw ParseError(ParseErrorKind::MalformedHeader, "TOUR_SECTION not terminated by -1");
  if (static_cast<int>(perm.size()) != n) {
    const auto missing = std::find(seen.begin(), seen.end(), 0) - seen.begin();
    throw ParseError(ParseErrorKind::MissingVertex,
                     fmt::format("tour has {} of {} cities; {} missing", perm.size(), n, missing + 1));
  }
  return Tour(std::move(perm));
}

std::string write_tsplib(const Instance& instance) {
  const auto pts = instance.coords();
  std::string out = fmt::format("NAME : {}\nTYPE : TSP\nDIMENSION : {}\nEDGE_WEIGHT_TYPE : EUC_2D\nNODE_COORD_SECTION\n",
                                instance.name(), instance.n());
  for (std::size_t i = 0; i < pts.size(); ++i) out += fmt::format("{} {} {}\n", i + 1, pts[i].x, pts[i].y);
  out += "EOF\n";
  return out;
}

std::string write_tour(const Tour& t, const std::string& name) {
  std::string out = fmt::format("NAME : {}\nTYPE : TOUR\nDIMENSION : {}\nTOUR_SECTION\n", name, t.size());
  for (Vertex v : t.perm()) out += fmt::format("{}\n", v + 1);
  out += "-1\nEOF\n";
  return out;
}

Instance load_tsplib(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error(fmt::format("cannot open instance file {}", path));
  try {
    return parse_tsplib(in);
  } catch (const ParseError& e) {
    throw ParseError(e.kind(), fmt::format("{}: {}", path, e.what()));
  }
}

Tour load_opt_tour(const std::string& path, const Instance& instance) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error(fmt::format("cannot open tour file {}", path));
  try {
    return parse_opt_tour(in, instance);
  } catch (const ParseError& e) {
    throw ParseError(e.kind(), fmt::format("{}: {}", path, e.what()));
  }
}

}  // namespace tourdiv
