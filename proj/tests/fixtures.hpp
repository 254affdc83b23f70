#pragma once

#include <algorithm>
#include <random>
#include <string>
#include <vector>

#include "tourdiv/instance.hpp"

namespace tourdiv::testing {

// Tours of the n = 5 worked example, converted to 0-based labels.
inline Tour from_one_based(std::vector<int> labels) {
  for (int& v : labels) --v;
  return Tour(std::move(labels));
}
inline Tour t1() { return from_one_based({1, 3, 5, 4, 2}); }
inline Tour t2() { return from_one_based({1, 5, 4, 3, 2}); }
inline Tour t3() { return from_one_based({1, 2, 5, 3, 4}); }
inline Tour t4() { return from_one_based({1, 5, 2, 3, 4}); }

inline Tour random_tour(int n, std::mt19937_64& rng) {
  std::vector<Vertex> perm(n);
  for (int i = 0; i < n; ++i) perm[i] = i;
  std::shuffle(perm.begin(), perm.end(), rng);
  return Tour(std::move(perm));
}

inline std::string data_path(const std::string& file) { return std::string(TOURDIV_DATA_DIR) + "/" + file; }

}  // namespace tourdiv::testing
