#include "tourdiv/decomposition.hpp"

#include <algorithm>
#include <stdexcept>

#include <fmt/format.h>

#include "tourdiv/diversity.hpp"

namespace tourdiv {

namespace {

// Zig-zag Hamiltonian path on the cycle Z_m starting at s:
// s, s+1, s-1, s+2, s-2, ... ; m even, ends at s + m/2.
std::vector<Vertex> zigzag(int m, int s) {
  std::vector<Vertex> path;
  path.reserve(m);
  path.push_back(s);
  for (int t = 1; static_cast<int>(path.size()) < m; ++t) {
    path.push_back(((s + t) % m + m) % m);
    if (static_cast<int>(path.size()) < m) path.push_back(((s - t) % m + m) % m);
  }
  return path;
}

void check_n(int n) {
  if (n < 3) throw std::invalid_argument(fmt::format("decomposition needs n >= 3, got {}", n));
}

}  // namespace

HamiltonianDecomposition decompose(int n) {
  check_n(n);
  HamiltonianDecomposition out;
  if (n % 2 == 1) {
    // Circle Z_{n-1} plus apex n-1; each zig-zag closes through the apex.
    const int m = n - 1;
    for (int s = 0; s < m / 2; ++s) {
      auto perm = zigzag(m, s);
      perm.push_back(m);
      out.cycles.emplace_back(std::move(perm));
    }
    return out;
  }
  // Even n: circle Z_{n-2} with two extra vertices a, b. Each zig-zag path is
  // split at its middle edge (a diameter of the circle); a joins the path
  // ends, b joins the split. The diameters plus {a, b} are left over.
  const int m = n - 2;
  const Vertex a = n - 2;
  const Vertex b = n - 1;
  std::vector<std::pair<Vertex, Vertex>> matching{{a, b}};
  for (int s = 0; s < m / 2; ++s) {
    const auto path = zigzag(m, s);
    const int mid = m / 2 - 1;
    std::vector<Vertex> perm{a};
    perm.insert(perm.end(), path.begin(), path.begin() + mid + 1);
    perm.push_back(b);
    perm.insert(perm.end(), path.begin() + mid + 1, path.end());
    out.cycles.emplace_back(std::move(perm));
  }
  for (Vertex u = 0; u < m / 2; ++u) matching.emplace_back(u, u + m / 2);
  out.leftover_matching = std::move(matching);
  return out;
}

EvenAuxiliaries even_auxiliaries(int n) {
  if (n < 4 || n % 2 != 0) throw std::invalid_argument(fmt::format("even auxiliaries need even n >= 4, got {}", n));
  auto h = decompose(n);
  // T threads the matching edges in order: (a, b), (0, h), (1, h+1), ...
  const int half = (n - 2) / 2;
  std::vector<Vertex> perm{n - 2, n - 1};
  for (Vertex u = 0; u < half; ++u) {
    perm.push_back(u);
    perm.push_back(u + half);
  }
  Tour t(perm);
  std::vector<std::pair<Vertex, Vertex>> m_prime;
  for (int i = 1; i < n; i += 2) m_prime.emplace_back(perm[i], perm[(i + 1) % n]);
  // Shifting every vertex one step along T maps M onto M', so the image of H
  // decomposes K_n minus M'.
  std::vector<Vertex> shift(n);
  for (int i = 0; i < n; ++i) shift[perm[i]] = perm[(i + 1) % n];
  std::vector<Tour> h_prime;
  for (const Tour& c : h.cycles) {
    std::vector<Vertex> moved;
    moved.reserve(n);
    for (Vertex v : c.perm()) moved.push_back(shift[v]);
    h_prime.emplace_back(std::move(moved));
  }
  return EvenAuxiliaries{std::move(h), std::move(t), std::move(m_prime), std::move(h_prime)};
}

std::vector<Tour> optimal_population(int n, int mu) {
  check_n(n);
  if (mu < 1) throw std::invalid_argument(fmt::format("population size must be >= 1, got {}", mu));
  // The population is the first μ tours of a repeating block. Odd n: the
  // block is H, covering each edge once. Even n: H, T, H' covers each edge
  // twice, and every prefix of it keeps the counts within one of each other.
  std::vector<Tour> block;
  if (n % 2 == 1) {
    block = decompose(n).cycles;
  } else {
    auto aux = even_auxiliaries(n);
    block = std::move(aux.h.cycles);
    block.push_back(std::move(aux.t));
    for (auto& c : aux.h_prime) block.push_back(std::move(c));
  }
  std::vector<Tour> out;
  out.reserve(mu);
  for (int i = 0; i < mu; ++i) out.push_back(block[i % block.size()]);
  return out;
}

Theorem1Witness verify_theorem1(int n, int mu) {
  const auto tours = optimal_population(n, mu);
  const auto counts = edge_counts(tours, n);
  const auto [lo, hi] = std::minmax_element(counts.begin(), counts.end());
  return Theorem1Witness{*hi - *lo <= 1 && static_cast<int>(tours.size()) == mu, *lo, *hi};
}

}  // namespace tourdiv
