#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "tourdiv/instance.hpp"

namespace tourdiv {

/// ⌊(n−1)/2⌋ pairwise edge-disjoint Hamiltonian cycles of K_n. For odd n they
/// cover every edge; for even n the uncovered edges form a perfect matching.
struct HamiltonianDecomposition {
  std::vector<Tour> cycles;
  std::optional<std::vector<std::pair<Vertex, Vertex>>> leftover_matching;
};

/// Walecki construction. Throws std::invalid_argument for n < 3.
HamiltonianDecomposition decompose(int n);

/// Objects used to build balanced populations on even n: the decomposition
/// H with leftover matching M, a tour T containing M, the matching
/// M' = E(T) \ M, and a decomposition H' of K_n minus M'.
struct EvenAuxiliaries {
  HamiltonianDecomposition h;
  Tour t;
  std::vector<std::pair<Vertex, Vertex>> m_prime;
  std::vector<Tour> h_prime;
};

/// Throws std::invalid_argument for odd or too small n.
EvenAuxiliaries even_auxiliaries(int n);

/// μ tours whose edge counts differ by at most one across all edges of K_n.
std::vector<Tour> optimal_population(int n, int mu);

struct Theorem1Witness {
  bool holds = false;
  int min_count = 0;
  int max_count = 0;
};

/// Builds optimal_population(n, μ) and checks max − min edge count <= 1.
Theorem1Witness verify_theorem1(int n, int mu);

}  // namespace tourdiv
