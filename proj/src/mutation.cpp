#include "tourdiv/mutation.hpp"

#include <algorithm>
#include <array>
#include <numeric>
#include <stdexcept>

#include <fmt/format.h>

namespace tourdiv {

MutationKind::MutationKind(int k, KOptStyle style) : k_(k), style_(style) {
  if (k < 2 || k > 4) throw std::invalid_argument(fmt::format("k-opt needs k in {{2,3,4}}, got {}", k));
}

std::string_view to_string(const MutationKind& kind) {
  static constexpr std::array<std::string_view, 3> names{"2opt", "3opt", "4opt"};
  return names[kind.k() - 2];
}

MutationKind parse_mutation(std::string_view text) {
  if (text == "2opt") return MutationKind(2);
  if (text == "3opt") return MutationKind(3);
  if (text == "4opt") return MutationKind(4);
  throw std::invalid_argument(fmt::format("unknown mutation '{}' (expected 2opt, 3opt or 4opt)", text));
}

bool degenerate_inversion(int n, int i, int j) { return j - i + 1 >= n - 1; }

Tour invert_segment(const Tour& t, int i, int j) {
  const int n = t.size();
  if (i < 0 || j >= n || i >= j) {
    throw std::invalid_argument(fmt::format("inversion positions ({}, {}) invalid for n = {}", i, j, n));
  }
  if (degenerate_inversion(n, i, j)) {
    throw std::invalid_argument(fmt::format("inversion ({}, {}) on n = {} leaves the cycle unchanged", i, j, n));
  }
  std::vector<Vertex> perm(t.perm().begin(), t.perm().end());
  std::reverse(perm.begin() + i, perm.begin() + j + 1);
  return Tour(std::move(perm));
}

std::pair<int, int> sample_inversion(int n, Rng& rng) {
  if (n < 4) throw std::invalid_argument(fmt::format("no non-degenerate inversion exists for n = {}", n));
  std::uniform_int_distribution<int> pos(0, n - 1);
  while (true) {
    int i = pos(rng);
    int j = pos(rng);
    if (i == j) continue;
    if (i > j) std::swap(i, j);
    if (!degenerate_inversion(n, i, j)) return {i, j};
  }
}

namespace {

Tour invert_in_place(std::vector<Vertex> perm, int times, Rng& rng) {
  const int n = static_cast<int>(perm.size());
  for (int r = 0; r < times; ++r) {
    const auto [i, j] = sample_inversion(n, rng);
    std::reverse(perm.begin() + i, perm.begin() + j + 1);
  }
  return Tour(std::move(perm));
}

struct Segment {
  int first;
  int last;
};

Tour reconnect(const Tour& t, int k, Rng& rng) {
  const int n = t.size();
  if (n < 2 * k) {
    throw std::invalid_argument(fmt::format("reconnection {}-opt needs n >= {}, got {}", k, 2 * k, n));
  }
  const auto removed_edge = [&](Vertex a, Vertex b, const std::vector<int>& cuts) {
    // Cut c removes the edge between positions c and c+1 (cyclically).
    for (int c : cuts) {
      const Vertex u = t[c];
      const Vertex v = t[(c + 1) % n];
      if ((a == u && b == v) || (a == v && b == u)) return true;
    }
    return false;
  };

  std::vector<int> positions(n);
  std::iota(positions.begin(), positions.end(), 0);
  while (true) {
    std::vector<int> cuts;
    std::sample(positions.begin(), positions.end(), std::back_inserter(cuts), k, rng);
    std::sort(cuts.begin(), cuts.end());
    // Segments between consecutive cuts; the first one wraps around position 0.
    std::vector<Segment> segs;
    for (int s = 0; s < k; ++s) {
      const int from = (cuts[s] + 1) % n;
      const int to = cuts[(s + 1) % k];
      segs.push_back({from, to});
    }
    const auto seg_end = [&](const Segment& s, bool reversed, bool tail) {
      return t[(tail != reversed) ? s.last : s.first];
    };

    // Enumerate orders and orientations of segments 1..k-1 behind segment 0.
    struct Arrangement {
      std::vector<int> order;
      unsigned flips;
    };
    std::vector<Arrangement> valid;
    std::vector<int> order(k - 1);
    std::iota(order.begin(), order.end(), 1);
    do {
      for (unsigned flips = 0; flips < (1u << (k - 1)); ++flips) {
        bool ok = true;
        Vertex prev = seg_end(segs[0], false, true);
        for (int p = 0; p < k - 1 && ok; ++p) {
          const bool rev = (flips >> p) & 1u;
          const Segment& s = segs[order[p]];
          if (removed_edge(prev, seg_end(s, rev, false), cuts)) ok = false;
          prev = seg_end(s, rev, true);
        }
        if (ok && removed_edge(prev, seg_end(segs[0], false, false), cuts)) ok = false;
        if (ok) valid.push_back({order, flips});
      }
    } while (std::next_permutation(order.begin(), order.end()));
    if (valid.empty()) continue;

    const auto& pick = valid[std::uniform_int_distribution<std::size_t>(0, valid.size() - 1)(rng)];
    std::vector<Vertex> perm;
    perm.reserve(n);
    const auto append = [&](const Segment& s, bool rev) {
      const int len = (s.last - s.first + n) % n + 1;
      for (int q = 0; q < len; ++q) {
        const int off = rev ? len - 1 - q : q;
        perm.push_back(t[(s.first + off) % n]);
      }
    };
    append(segs[0], false);
    for (int p = 0; p < k - 1; ++p) append(segs[pick.order[p]], (pick.flips >> p) & 1u);
    return Tour(std::move(perm));
  }
}

}  // namespace

Tour mutate(const Tour& t, const MutationKind& kind, Rng& rng) {
  if (t.size() < 4) return t;
  if (kind.style() == KOptStyle::Reconnection) return reconnect(t, kind.k(), rng);
  return invert_in_place(std::vector<Vertex>(t.perm().begin(), t.perm().end()), kind.inversions(), rng);
}

}  // namespace tourdiv
