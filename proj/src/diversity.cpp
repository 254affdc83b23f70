#include "tourdiv/diversity.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <stdexcept>

#include <fmt/format.h>

namespace tourdiv {

DiversityVector::DiversityVector(std::vector<int> values) : values_(std::move(values)) {
  std::sort(values_.begin(), values_.end(), std::greater<>());
}

std::strong_ordering operator<=>(const DiversityVector& a, const DiversityVector& b) {
  if (a.values_.size() != b.values_.size()) {
    throw std::invalid_argument(
        fmt::format("comparing diversity vectors of length {} and {}", a.values_.size(), b.values_.size()));
  }
  return a.values_ <=> b.values_;
}

std::string_view to_string(Measure m) { return m == Measure::ED ? "ed" : "pd"; }

Measure parse_measure(std::string_view text) {
  if (text == "ed" || text == "ED") return Measure::ED;
  if (text == "pd" || text == "PD") return Measure::PD;
  throw std::invalid_argument(fmt::format("unknown measure '{}' (expected ed or pd)", text));
}

Population::Population(int n) : n_(n), counts_(tourdiv::edge_count(n), 0) {
  if (n < 3) throw std::invalid_argument(fmt::format("population over {} vertices; need n >= 3", n));
}

Population::Population(int n, std::vector<Tour> tours) : Population(n) {
  for (auto& t : tours) add(std::move(t));
}

void Population::check_index(int i) const {
  if (i < 0 || i >= size()) {
    throw std::out_of_range(fmt::format("member index {} outside [0, {})", i, size()));
  }
}

void Population::check_tour(const Tour& t) const {
  if (t.size() != n_) {
    throw std::invalid_argument(fmt::format("tour over {} vertices in population over {}", t.size(), n_));
  }
}

int Population::overlap(int i, int j) const {
  check_index(i);
  check_index(j);
  if (i == j) throw std::invalid_argument("overlap of a member with itself is undefined");
  return overlaps_[i][j];
}

int Population::overlap_with(int i, const Tour& t) const {
  const auto& adj = adjacency_[i];
  int shared = 0;
  for (int k = 0; k < n_; ++k) {
    const Vertex u = t[k];
    const Vertex v = t[k + 1 == n_ ? 0 : k + 1];
    if (adj[u][0] == v || adj[u][1] == v) ++shared;
  }
  return shared;
}

void Population::bump_counts(const Tour& t, int delta) {
  for (const EdgeId e : t.edges()) {
    int& c = counts_[e.index];
    // (c + d)^2 - c^2 = 2cd + d^2
    sum_sq_ += 2LL * c * delta + 1LL * delta * delta;
    c += delta;
  }
}

void Population::add(Tour t) {
  check_tour(t);
  const int mu = size();
  std::vector<int> row(mu + 1, 0);
  for (int j = 0; j < mu; ++j) {
    row[j] = overlap_with(j, t);
    overlaps_[j].push_back(row[j]);
  }
  row[mu] = n_;
  overlaps_.push_back(std::move(row));
  bump_counts(t, +1);
  adjacency_.push_back(t.adjacency());
  tours_.push_back(std::move(t));
}

void Population::remove(int i) {
  check_index(i);
  bump_counts(tours_[i], -1);
  tours_.erase(tours_.begin() + i);
  adjacency_.erase(adjacency_.begin() + i);
  overlaps_.erase(overlaps_.begin() + i);
  for (auto& row : overlaps_) row.erase(row.begin() + i);
}

void Population::replace(int i, Tour t) {
  check_index(i);
  check_tour(t);
  bump_counts(tours_[i], -1);
  bump_counts(t, +1);
  adjacency_[i] = t.adjacency();
  tours_[i] = std::move(t);
  for (int j = 0; j < size(); ++j) {
    if (j == i) continue;
    const int o = overlap_with(j, tours_[i]);
    overlaps_[i][j] = o;
    overlaps_[j][i] = o;
  }
}

bool Population::caches_consistent() const {
  const auto fresh = tourdiv::edge_counts(tours_, n_);
  if (fresh != counts_) return false;
  std::int64_t sq = 0;
  for (int c : fresh) sq += 1LL * c * c;
  if (sq != sum_sq_) return false;
  for (int i = 0; i < size(); ++i) {
    for (int j = 0; j < size(); ++j) {
      if (i != j && overlaps_[i][j] != shared_edges(tours_[i], tours_[j])) return false;
    }
  }
  return true;
}

std::vector<int> edge_counts(std::span<const Tour> tours, int n) {
  std::vector<int> counts(edge_count(n), 0);
  for (const Tour& t : tours) {
    for (const EdgeId e : t.edges()) ++counts[e.index];
  }
  return counts;
}

std::int64_t gtype_from_counts(std::span<const int> counts, int mu, int n) {
  std::int64_t sum = 0;
  std::int64_t sum_sq = 0;
  for (int c : counts) {
    sum += c;
    sum_sq += 1LL * c * c;
  }
  return 1LL * mu * (mu - 1) * n + sum - sum_sq;
}

std::int64_t gtype(const Population& pop) {
  const std::int64_t mu = pop.size();
  const std::int64_t n = pop.n();
  return mu * (mu - 1) * n + mu * n - pop.sum_squared_counts();
}

std::int64_t gtype_double_sum(std::span<const Tour> tours) {
  std::vector<std::vector<EdgeId>> sets;
  sets.reserve(tours.size());
  for (const Tour& t : tours) sets.push_back(t.edge_set());
  std::int64_t total = 0;
  for (const auto& a : sets) {
    for (const auto& b : sets) {
      std::vector<EdgeId> diff;
      std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(diff));
      total += static_cast<std::int64_t>(diff.size());
    }
  }
  return total;
}

std::int64_t optimal_gtype(int n, int mu) {
  if (n < 3) throw std::invalid_argument(fmt::format("optimal_gtype needs n >= 3, got {}", n));
  if (mu < 1) throw std::invalid_argument(fmt::format("optimal_gtype needs mu >= 1, got {}", mu));
  const std::int64_t m = edge_count(n);
  const std::int64_t uses = 1LL * mu * n;
  const std::int64_t q = uses / m;
  const std::int64_t r = uses % m;
  return 1LL * mu * (mu - 1) * n + uses - ((m - r) * q * q + r * (q + 1) * (q + 1));
}

DiversityVector nd_vector(const Population& pop) {
  const auto counts = pop.edge_counts();
  return DiversityVector(std::vector<int>(counts.begin(), counts.end()));
}

DiversityVector overlap_vector(const Population& pop) {
  const int mu = pop.size();
  if (mu < 2) throw std::invalid_argument("overlap vector needs at least 2 tours");
  std::vector<int> values;
  values.reserve(static_cast<std::size_t>(mu) * (mu - 1) / 2);
  for (int i = 0; i < mu; ++i) {
    for (int j = i + 1; j < mu; ++j) values.push_back(pop.overlap(i, j));
  }
  return DiversityVector(std::move(values));
}

DiversityVector fitness_ed(const Population& pop, int i) {
  const Tour& t = pop.tour(i);
  std::vector<int> values;
  values.reserve(pop.n());
  for (const EdgeId e : t.edges()) values.push_back(pop.edge_count(e));
  return DiversityVector(std::move(values));
}

DiversityVector fitness_pd(const Population& pop, int i) {
  const int mu = pop.size();
  if (mu < 2) throw std::invalid_argument("pairwise fitness needs at least 2 tours");
  if (i < 0 || i >= mu) throw std::out_of_range(fmt::format("member index {} outside [0, {})", i, mu));
  std::vector<int> values;
  values.reserve(mu - 1);
  for (int j = 0; j < mu; ++j) {
    if (j != i) values.push_back(pop.overlap(i, j));
  }
  return DiversityVector(std::move(values));
}

int select_removal(const Population& pop, Measure measure) {
  const int mu = pop.size();
  if (mu < 2) throw std::invalid_argument("selection needs at least 2 tours");
  const auto fitness = [&](int i) { return measure == Measure::ED ? fitness_ed(pop, i) : fitness_pd(pop, i); };
  int best = 0;
  DiversityVector best_value = fitness(0);
  for (int i = 1; i < mu; ++i) {
    DiversityVector value = fitness(i);
    if (value >= best_value) {
      best = i;
      best_value = std::move(value);
    }
  }
  return best;
}

std::vector<int> removal_candidates(const Population& pop, Measure measure) {
  const int mu = pop.size();
  if (mu < 2) throw std::invalid_argument("selection needs at least 2 tours");
  const auto fitness = [&](int i) { return measure == Measure::ED ? fitness_ed(pop, i) : fitness_pd(pop, i); };
  std::vector<int> out{0};
  DiversityVector best_value = fitness(0);
  for (int i = 1; i < mu; ++i) {
    DiversityVector value = fitness(i);
    if (value > best_value) {
      out.assign(1, i);
      best_value = std::move(value);
    } else if (value == best_value) {
      out.push_back(i);
    }
  }
  return out;
}

int overlap_spread(const Population& pop) {
  const int mu = pop.size();
  if (mu < 2) throw std::invalid_argument("overlap spread needs at least 2 tours");
  int lo = std::numeric_limits<int>::max();
  int hi = std::numeric_limits<int>::min();
  for (int i = 0; i < mu; ++i) {
    for (int j = i + 1; j < mu; ++j) {
      lo = std::min(lo, pop.overlap(i, j));
      hi = std::max(hi, pop.overlap(i, j));
    }
  }
  return hi - lo;
}

double div_score(const Population& pop) {
  const int mu = pop.size();
  if (mu < 2) throw std::invalid_argument("div needs at least 2 tours");
  std::int64_t total = 0;
  for (int i = 0; i < mu; ++i) {
    int closest = 0;
    for (int j = 0; j < mu; ++j) {
      if (j != i) closest = std::max(closest, pop.overlap(i, j));
    }
    total += pop.n() - closest;
  }
  return static_cast<double>(total) / (static_cast<double>(mu) * pop.n());
}

double sigma_score(const Population& pop) {
  return static_cast<double>(overlap_spread(pop)) / pop.n();
}

double max_overlap_score(const Population& pop) {
  const int mu = pop.size();
  if (mu < 2) throw std::invalid_argument("max overlap needs at least 2 tours");
  int hi = 0;
  for (int i = 0; i < mu; ++i) {
    for (int j = i + 1; j < mu; ++j) hi = std::max(hi, pop.overlap(i, j));
  }
  return static_cast<double>(hi) / pop.n();
}

Population apply_swap(const Population& pop, int i, Tour t) {
  Population out = pop;
  out.replace(i, std::move(t));
  return out;
}

}  // namespace tourdiv
