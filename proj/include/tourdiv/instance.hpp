#pragma once

#include <array>
#include <cstdint>
#include <istream>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace tourdiv {

using Vertex = int;
using Cost = std::int64_t;

struct Point {
  double x = 0.0;
  double y = 0.0;
  bool operator==(const Point&) const = default;
};

enum class WeightKind { EuclideanRounded, Unit };

/// Canonical index of an undirected edge of K_n, in [0, n(n-1)/2).
struct EdgeId {
  std::int64_t index = 0;
  auto operator<=>(const EdgeId&) const = default;
};

std::int64_t edge_count(int n);

/// Maps {u, v} to its canonical index; symmetric in (u, v).
/// Throws std::invalid_argument on u == v or labels outside [0, n).
EdgeId edge_id(int n, Vertex u, Vertex v);

/// Inverse of edge_id; returns the pair with first < second.
std::pair<Vertex, Vertex> edge_endpoints(int n, EdgeId e);

/// A Hamiltonian cycle over vertices 0..n-1, stored as a permutation.
/// Two tours are the same cycle iff their edge sets match (see same_cycle).
class Tour {
 public:
  Tour() = default;
  /// Throws std::invalid_argument unless perm is a permutation of 0..n-1, n >= 3.
  explicit Tour(std::vector<Vertex> perm);

  static Tour identity(int n);

  int size() const { return static_cast<int>(perm_.size()); }
  Vertex operator[](int pos) const { return perm_[pos]; }
  std::span<const Vertex> perm() const { return perm_; }

  /// Edge ids of the n cycle edges, in tour order (closing edge last).
  std::vector<EdgeId> edges() const;
  /// Sorted edge ids; equal for rotations and reversals.
  std::vector<EdgeId> edge_set() const;
  /// adjacency()[v] holds the two tour neighbours of v.
  std::vector<std::array<Vertex, 2>> adjacency() const;

  /// Permutation equality, not cycle identity.
  bool operator==(const Tour&) const = default;

 private:
  std::vector<Vertex> perm_;
};

bool same_cycle(const Tour& a, const Tour& b);

/// Number of edges shared by two tours over the same vertex set.
int shared_edges(const Tour& a, const Tour& b);

class Instance {
 public:
  /// Coordinate instance with TSPLIB EUC_2D distances.
  static Instance euclidean(std::string name, std::vector<Point> coords);
  /// Complete graph where every edge has length 1.
  static Instance unit(int n, std::string name = {});

  int n() const { return n_; }
  const std::string& name() const { return name_; }
  WeightKind weight_kind() const { return kind_; }
  bool has_coords() const { return coords_.has_value(); }
  /// Throws std::logic_error if the instance has no coordinates.
  std::span<const Point> coords() const;

  /// Throws std::invalid_argument on u == v or out-of-range labels.
  Cost distance(Vertex u, Vertex v) const;

 private:
  Instance() = default;

  int n_ = 0;
  std::string name_;
  WeightKind kind_ = WeightKind::Unit;
  std::optional<std::vector<Point>> coords_;
};

Cost tour_cost(const Instance& instance, const Tour& t);

enum class ParseErrorKind {
  MalformedHeader,
  UnsupportedWeightType,
  DimensionMismatch,
  DuplicateVertex,
  MissingVertex,
  LabelOutOfRange,
};

class ParseError : public std::runtime_error {
 public:
  ParseError(ParseErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  ParseErrorKind kind() const { return kind_; }

 private:
  ParseErrorKind kind_;
};

/// Reads a TSPLIB TSP file with EDGE_WEIGHT_TYPE EUC_2D. Labels become 0-based.
Instance parse_tsplib(std::istream& in);
/// Reads the TOUR_SECTION of a TSPLIB tour file and checks it against the instance.
Tour parse_opt_tour(std::istream& in, const Instance& instance);

/// Canonical TSPLIB writer; parse_tsplib(write_tsplib(x)) reproduces x.
std::string write_tsplib(const Instance& instance);
std::string write_tour(const Tour& t, const std::string& name);

Instance load_tsplib(const std::string& path);
Tour load_opt_tour(const std::string& path, const Instance& instance);

}  // namespace tourdiv
