#pragma once

#include <compare>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "tourdiv/instance.hpp"

namespace tourdiv {

/// Non-negative integers kept in descending order; compared lexicographically.
/// Comparing vectors of different lengths throws std::invalid_argument.
class DiversityVector {
 public:
  DiversityVector() = default;
  /// Sorts the given values into descending order.
  explicit DiversityVector(std::vector<int> values);

  std::span<const int> values() const { return values_; }
  std::size_t size() const { return values_.size(); }
  int operator[](std::size_t i) const { return values_[i]; }

  friend bool operator==(const DiversityVector&, const DiversityVector&) = default;
  friend std::strong_ordering operator<=>(const DiversityVector& a, const DiversityVector& b);

 private:
  std::vector<int> values_;
};

enum class Measure { ED, PD };

std::string_view to_string(Measure m);
Measure parse_measure(std::string_view text);

/// A multiset of tours over K_n with cached edge counts n(e,P) and the
/// pairwise overlap matrix o_XY = |E(X) ∩ E(Y)|. Members keep insertion order.
class Population {
 public:
  explicit Population(int n);
  Population(int n, std::vector<Tour> tours);

  int n() const { return n_; }
  int size() const { return static_cast<int>(tours_.size()); }
  const Tour& tour(int i) const { return tours_.at(i); }
  std::span<const Tour> tours() const { return tours_; }

  std::span<const int> edge_counts() const { return counts_; }
  int edge_count(EdgeId e) const { return counts_.at(e.index); }
  /// Shared edges between members i != j.
  int overlap(int i, int j) const;
  std::int64_t sum_squared_counts() const { return sum_sq_; }

  void add(Tour t);
  /// Removes member i; later members shift down one place.
  void remove(int i);
  /// Replaces member i, updating the caches incrementally.
  void replace(int i, Tour t);

  /// True iff the caches equal a from-scratch recomputation.
  bool caches_consistent() const;

 private:
  void check_index(int i) const;
  void check_tour(const Tour& t) const;
  void bump_counts(const Tour& t, int delta);
  int overlap_with(int i, const Tour& t) const;

  int n_;
  std::vector<Tour> tours_;
  std::vector<std::vector<std::array<Vertex, 2>>> adjacency_;
  std::vector<int> counts_;
  std::vector<std::vector<int>> overlaps_;
  std::int64_t sum_sq_ = 0;
};

/// n(e,P) for every edge id, recomputed from scratch.
std::vector<int> edge_counts(std::span<const Tour> tours, int n);

/// Σ over ordered pairs of |E(T1) \ E(T2)|, via the edge-count identity.
std::int64_t gtype(const Population& pop);
/// The same quantity by the direct double sum over tour pairs (set operations).
std::int64_t gtype_double_sum(std::span<const Tour> tours);
/// μ(μ−1)n + Σn_i − Σn_i² for the given counts.
std::int64_t gtype_from_counts(std::span<const int> counts, int mu, int n);

/// Largest gtype reachable by μ tours on K_n (balanced edge counts).
std::int64_t optimal_gtype(int n, int mu);

DiversityVector nd_vector(const Population& pop);
/// Throws std::invalid_argument when μ < 2.
DiversityVector overlap_vector(const Population& pop);
DiversityVector fitness_ed(const Population& pop, int i);
DiversityVector fitness_pd(const Population& pop, int i);

/// Member whose removal leaves the lexicographically smallest diversity
/// vector; ties go to the largest index.
int select_removal(const Population& pop, Measure measure);
/// All members whose removal is optimal, ascending.
std::vector<int> removal_candidates(const Population& pop, Measure measure);

/// max o_XY − min o_XY over distinct pairs. Requires μ >= 2.
int overlap_spread(const Population& pop);
double div_score(const Population& pop);
/// (max o_XY − min o_XY) / n over distinct pairs.
double sigma_score(const Population& pop);
/// max o_XY / n over distinct pairs.
double max_overlap_score(const Population& pop);

/// Copy of pop with member i replaced.
Population apply_swap(const Population& pop, int i, Tour t);

}  // namespace tourdiv
