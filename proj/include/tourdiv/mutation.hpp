#pragma once

#include <cstdint>
#include <random>
#include <string_view>

#include "tourdiv/instance.hpp"

namespace tourdiv {

using Rng = std::mt19937_64;

enum class KOptStyle {
  /// k−1 independent random segment inversions (the default).
  Inversions,
  /// Remove k edges and reconnect the k segments into a random single cycle,
  /// re-adding none of the removed edges.
  Reconnection,
};

/// k-OPT operator label; k in {2, 3, 4}.
class MutationKind {
 public:
  explicit MutationKind(int k, KOptStyle style = KOptStyle::Inversions);

  int k() const { return k_; }
  int inversions() const { return k_ - 1; }
  KOptStyle style() const { return style_; }

  bool operator==(const MutationKind&) const = default;

 private:
  int k_;
  KOptStyle style_;
};

std::string_view to_string(const MutationKind& kind);  // "2opt", "3opt", "4opt"
MutationKind parse_mutation(std::string_view text);

/// True when reversing positions i..j leaves the edge set unchanged.
bool degenerate_inversion(int n, int i, int j);

/// Reverses positions i..j (0 <= i < j < n). Throws std::invalid_argument
/// for degenerate segments (the whole cycle or all but one vertex).
Tour invert_segment(const Tour& t, int i, int j);

/// Uniform non-degenerate position pair (i, j), i < j. Requires n >= 4.
std::pair<int, int> sample_inversion(int n, Rng& rng);

/// One offspring of t. On n = 3 the single Hamiltonian cycle is returned unchanged.
Tour mutate(const Tour& t, const MutationKind& kind, Rng& rng);

}  // namespace tourdiv
