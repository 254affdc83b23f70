#include "tourdiv/render.hpp"

#include <algorithm>
#include <numeric>

#include <fmt/format.h>

namespace tourdiv {

namespace {

constexpr double kPanel = 400.0;
constexpr double kMargin = 12.0;

// Maps instance coordinates into a kPanel square, y axis pointing up.
class Frame {
 public:
  explicit Frame(const Instance& instance) : pts_(instance.coords()) {
    const auto [xlo, xhi] = std::minmax_element(pts_.begin(), pts_.end(), [](auto& a, auto& b) { return a.x < b.x; });
    const auto [ylo, yhi] = std::minmax_element(pts_.begin(), pts_.end(), [](auto& a, auto& b) { return a.y < b.y; });
    x0_ = xlo->x;
    y0_ = ylo->y;
    const double span = std::max({xhi->x - x0_, yhi->y - y0_, 1e-9});
    scale_ = (kPanel - 2 * kMargin) / span;
  }
  double x(Vertex v) const { return kMargin + (pts_[v].x - x0_) * scale_; }
  double y(Vertex v) const { return kPanel - kMargin - (pts_[v].y - y0_) * scale_; }

 private:
  std::span<const Point> pts_;
  double x0_ = 0;
  double y0_ = 0;
  double scale_ = 1;
};

std::string line(const Frame& f, Vertex u, Vertex v, std::string_view cls, std::string_view stroke, double opacity,
                 double width) {
  return fmt::format(
      "<line class=\"{}\" x1=\"{:.2f}\" y1=\"{:.2f}\" x2=\"{:.2f}\" y2=\"{:.2f}\" stroke=\"{}\" stroke-opacity=\"{:.4f}\" "
      "stroke-width=\"{}\"/>\n",
      cls, f.x(u), f.y(u), f.x(v), f.y(v), stroke, opacity, width);
}

std::string vertices(const Frame& f, int n) {
  std::string out;
  for (Vertex v = 0; v < n; ++v) {
    out += fmt::format("<circle class=\"vertex\" cx=\"{:.2f}\" cy=\"{:.2f}\" r=\"2.5\" fill=\"#222\"/>\n", f.x(v), f.y(v));
  }
  return out;
}

}  // namespace

std::string render_edge_counts(const Population& pop, const Instance& instance, const std::optional<Tour>& opt_tour) {
  const Frame frame(instance);
  const int n = instance.n();
  const double mu = std::max(1, pop.size());
  std::string out = fmt::format(
      "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{0}\" height=\"{0}\" viewBox=\"0 0 {0} {0}\">\n"
      "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n",
      kPanel);
  const auto counts = pop.edge_counts();
  for (std::int64_t e = 0; e < edge_count(n); ++e) {
    if (counts[e] == 0) continue;
    const auto [u, v] = edge_endpoints(n, EdgeId{e});
    out += line(frame, u, v, "edge", "black", counts[e] / mu, 1.5);
  }
  if (opt_tour) {
    for (int i = 0; i < n; ++i) out += line(frame, (*opt_tour)[i], (*opt_tour)[(i + 1) % n], "optimal", "red", 1.0, 1.0);
  }
  out += vertices(frame, n);
  out += "</svg>\n";
  return out;
}

std::string render_population(const Population& pop, const Instance& instance) {
  const Frame frame(instance);
  const int n = instance.n();
  const int mu = pop.size();
  std::vector<int> order(mu);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return tour_cost(instance, pop.tour(a)) < tour_cost(instance, pop.tour(b));
  });
  std::string out = fmt::format(
      "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{0}\" height=\"{1}\" viewBox=\"0 0 {0} {1}\">\n"
      "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n",
      kPanel * std::max(1, mu), kPanel + 20);
  for (int p = 0; p < mu; ++p) {
    const Tour& t = pop.tour(order[p]);
    out += fmt::format("<g class=\"panel\" data-member=\"{}\" data-cost=\"{}\" transform=\"translate({},0)\">\n", order[p],
                       tour_cost(instance, t), p * kPanel);
    for (const EdgeId e : t.edges()) {
      const auto [u, v] = edge_endpoints(n, e);
      const bool shared = pop.edge_count(e) >= 2;
      out += line(frame, u, v, shared ? "shared" : "unique", shared ? "red" : "blue", 1.0, 1.5);
    }
    out += vertices(frame, n);
    out += fmt::format("<text x=\"{:.1f}\" y=\"{:.1f}\" font-size=\"12\" text-anchor=\"middle\">{}</text>\n",
                       kPanel / 2, kPanel + 14, tour_cost(instance, t));
    out += "</g>\n";
  }
  out += "</svg>\n";
  return out;
}

}  // namespace tourdiv
