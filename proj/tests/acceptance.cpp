// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fail.

#include <algorithm>
#include <chrono>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "tourdiv/decomposition.hpp"
#include "tourdiv/diversity.hpp"
#include "tourdiv/ea.hpp"
#include "tourdiv/harness.hpp"
#include "tourdiv/mutation.hpp"

using namespace tourdiv;

namespace {

// Tolerances and bounds.
constexpr double kExampleSeconds = 1e-3;
constexpr double kIdentitySeconds = 5.0;
constexpr double kSelectionSeconds = 30.0;
constexpr double kTheoremSeconds = 10.0;
constexpr double kMutationSeconds = 10.0;
constexpr double kEasyItersLo = 40.0;
constexpr double kEasyItersHi = 250.0;
constexpr double kHardGtypeMin = 99.7;
constexpr double kTsplibAMin = 99.0;
constexpr double kTsplibGtypeSlack = 2.0;
constexpr double kCorrelationMax = -0.9;
constexpr std::uint64_t kSeedBase = 20240601;

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string data(const std::string& file) { return std::string(TOURDIV_DATA_DIR) + "/" + file; }

InstanceSpec eil(int n) { return InstanceSpec::tsplib(data(fmt::format("eil{}.tsp", n)), data(fmt::format("eil{}.opt.tour", n))); }

Tour one_based(std::vector<int> labels) {
  for (int& v : labels) --v;
  return Tour(std::move(labels));
}

Tour random_tour(int n, std::mt19937_64& rng) {
  std::vector<Vertex> perm(n);
  for (int i = 0; i < n; ++i) perm[i] = i;
  std::shuffle(perm.begin(), perm.end(), rng);
  return Tour(std::move(perm));
}

// Random population with planted duplicates and near-copies.
std::vector<Tour> random_population(int n, int mu, std::mt19937_64& rng) {
  std::vector<Tour> out;
  for (int i = 0; i < mu; ++i) {
    const int mode = out.empty() ? 0 : std::uniform_int_distribution<int>(0, 3)(rng);
    const auto pick = [&] { return out[std::uniform_int_distribution<std::size_t>(0, out.size() - 1)(rng)]; };
    if (mode == 1) {
      out.push_back(pick());
    } else if (mode == 2 && n >= 4) {
      const Tour base = pick();
      std::vector<Vertex> p(base.perm().begin(), base.perm().end());
      int a = std::uniform_int_distribution<int>(0, n - 1)(rng);
      int b = std::uniform_int_distribution<int>(0, n - 1)(rng);
      if (a > b) std::swap(a, b);
      std::reverse(p.begin() + a, p.begin() + b + 1);
      out.emplace_back(std::move(p));
    } else {
      out.push_back(random_tour(n, rng));
    }
  }
  return out;
}

using EdgeSet = std::set<std::pair<int, int>>;

EdgeSet edges_of(const Tour& t) {
  EdgeSet out;
  for (int i = 0; i < t.size(); ++i) {
    const int u = t[i];
    const int v = t[(i + 1) % t.size()];
    out.insert({std::min(u, v), std::max(u, v)});
  }
  return out;
}

std::int64_t double_sum(const std::vector<Tour>& tours) {
  std::int64_t total = 0;
  for (const auto& x : tours) {
    const auto ex = edges_of(x);
    for (const auto& y : tours) {
      const auto ey = edges_of(y);
      for (const auto& e : ex) total += ey.count(e) == 0 ? 1 : 0;
    }
  }
  return total;
}

std::vector<int> desc(std::vector<int> v) {
  std::sort(v.begin(), v.end(), std::greater<>());
  return v;
}

// Leave-one-out diversity vector computed from raw edge sets.
std::vector<int> loo_vector(const std::vector<Tour>& tours, std::size_t skip, int n, Measure m) {
  std::vector<EdgeSet> sets;
  for (std::size_t i = 0; i < tours.size(); ++i) {
    if (i != skip) sets.push_back(edges_of(tours[i]));
  }
  std::vector<int> v;
  if (m == Measure::ED) {
    for (int a = 0; a < n; ++a) {
      for (int b = a + 1; b < n; ++b) {
        int c = 0;
        for (const auto& s : sets) c += static_cast<int>(s.count({a, b}));
        v.push_back(c);
      }
    }
  } else {
    for (std::size_t i = 0; i < sets.size(); ++i) {
      for (std::size_t j = i + 1; j < sets.size(); ++j) {
        int c = 0;
        for (const auto& e : sets[i]) c += static_cast<int>(sets[j].count(e));
        v.push_back(c);
      }
    }
  }
  return desc(v);
}

const SummaryRow& row(const std::vector<SummaryRow>& rows, const std::string& inst, int mu, double alpha, Measure m,
                      int k = 2) {
  for (const auto& r : rows) {
    if (r.instance == inst && r.mu == mu && r.alpha == alpha && r.measure == m && r.mutation.k() == k) return r;
  }
  throw std::logic_error(fmt::format("no summary row for {} mu={} alpha={}", inst, mu, alpha));
}

Outcome worked_example() {
  const auto t1 = one_based({1, 3, 5, 4, 2});
  const auto t2 = one_based({1, 5, 4, 3, 2});
  const auto t3 = one_based({1, 2, 5, 3, 4});
  const auto t4 = one_based({1, 5, 2, 3, 4});
  const auto start = std::chrono::steady_clock::now();
  const Population p1(5, {t1, t2, t3});
  const Population p2(5, {t1, t2, t4});
  const auto g1 = gtype(p1);
  const auto g2 = gtype(p2);
  const auto d1 = overlap_vector(p1);
  const auto d2 = overlap_vector(p2);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const bool ok = g1 == 18 && g2 == 20 && d1 == DiversityVector({2, 2, 2}) && d2 == DiversityVector({3, 2, 0});
  return {ok && secs < kExampleSeconds,
          fmt::format("gtype(P1)={} gtype(P2)={} D(P1)=({}) D(P2)=({}) in {:.3f} ms", g1, g2, fmt::join(d1.values(), ","),
                      fmt::join(d2.values(), ","), secs * 1e3)};
}

Outcome gtype_identity() {
  std::mt19937_64 rng(kSeedBase + 2);
  int agree = 0;
  for (int trial = 0; trial < 500; ++trial) {
    const int n = std::uniform_int_distribution<int>(3, 12)(rng);
    const int mu = std::uniform_int_distribution<int>(1, 8)(rng);
    const auto tours = random_population(n, mu, rng);
    const auto counts = edge_counts(tours, n);
    if (double_sum(tours) == gtype_from_counts(counts, mu, n) && gtype(Population(n, tours)) == double_sum(tours)) {
      ++agree;
    }
  }
  return {agree == 500, fmt::format("{}/500 populations agree", agree)};
}

Outcome selection_equivalence() {
  std::mt19937_64 rng(kSeedBase + 3);
  int agree = 0;
  int tied = 0;
  for (const auto m : {Measure::ED, Measure::PD}) {
    for (int trial = 0; trial < 200; ++trial) {
      const int n = std::uniform_int_distribution<int>(5, 10)(rng);
      const int mu = std::uniform_int_distribution<int>(3, 8)(rng);
      const auto tours = random_population(n, mu, rng);
      std::vector<std::vector<int>> loo;
      for (int j = 0; j < mu; ++j) loo.push_back(loo_vector(tours, j, n, m));
      const auto best = *std::min_element(loo.begin(), loo.end());
      std::vector<int> brute;
      for (int j = 0; j < mu; ++j) {
        if (loo[j] == best) brute.push_back(j);
      }
      const Population pop(n, tours);
      const bool same = removal_candidates(pop, m) == brute && select_removal(pop, m) == brute.back();
      agree += same ? 1 : 0;
      tied += brute.size() > 1 ? 1 : 0;
    }
  }
  return {agree == 400, fmt::format("{}/400 index sets equal ({} with ties)", agree, tied)};
}

Outcome theorem_oracle() {
  int ok = 0;
  int cases = 0;
  for (int n = 3; n <= 15; ++n) {
    for (int mu = 1; mu <= 12; ++mu) {
      ++cases;
      const auto w = verify_theorem1(n, mu);
      if (w.holds && gtype(Population(n, optimal_population(n, mu))) == optimal_gtype(n, mu)) ++ok;
    }
  }
  return {ok == cases && cases == 156, fmt::format("{}/{} cases balanced and gtype-optimal", ok, cases)};
}

ExperimentPlan easy_plan() {
  ExperimentPlan plan;
  plan.instances = {InstanceSpec::unit(20), InstanceSpec::unit(50)};
  plan.mus = {3, 5};
  plan.replicates = 10;
  plan.seed_base = kSeedBase + 5;
  return plan;
}

Outcome easy_cases(std::string& csv) {
  const auto res = run_plan(easy_plan());
  csv = format_records_csv(res.records);
  int reached = 0;
  for (const auto& r : res.records) {
    if (r.gtype_percent == 100.0 && r.iterations <= r.config.max_iters) ++reached;
  }
  const auto& cell = row(res.summary, "unit50", 3, 0.0, Measure::ED);
  const bool iters_ok = cell.iterations_mean >= kEasyItersLo && cell.iterations_mean <= kEasyItersHi;
  return {reached == static_cast<int>(res.records.size()) && iters_ok,
          fmt::format("{}/{} runs at 100%; n=50 mu=3 ED 2opt mean iters {:.2f} +- {:.2f} (paper 104.50 +- 59.19)",
                      reached, res.records.size(), cell.iterations_mean, cell.iterations_std)};
}

Outcome hard_case() {
  ExperimentPlan plan;
  plan.instances = {InstanceSpec::unit(50)};
  plan.mus = {50};
  plan.mutations = {MutationKind(2)};
  plan.replicates = 5;
  plan.seed_base = kSeedBase + 6;
  const auto res = run_plan(plan);
  bool ok = true;
  for (const auto& r : res.records) ok = ok && r.iterations == 125000 && r.gtype_percent >= kHardGtypeMin;
  double lo = 100.0;
  for (const auto& r : res.records) lo = std::min(lo, r.gtype_percent);
  const auto& ed = row(res.summary, "unit50", 50, 0.0, Measure::ED);
  const auto& pd = row(res.summary, "unit50", 50, 0.0, Measure::PD);
  return {ok, fmt::format("all runs at 125000 iters: {}; mean gtype% ED {:.3f} PD {:.3f} (paper 99.99, 99.89); min {:.3f}",
                          ok ? "yes" : "no", ed.gtype_percent_mean, pd.gtype_percent_mean, lo)};
}

Outcome tsplib_constrained() {
  ExperimentPlan plan;
  plan.instances = {eil(51)};
  plan.mus = {3, 10};
  plan.alphas = {0.05, 0.2, 0.5, 1.0};
  plan.mutations = {MutationKind(2)};
  plan.replicates = 10;
  plan.seed_base = kSeedBase + 7;
  const auto res = run_plan(plan);
  const auto& s = res.summary;

  const double a = row(s, "eil51", 3, 1.0, Measure::ED).gtype_percent_mean;
  const bool ok_a = a >= kTsplibAMin && a <= 100.0;

  const auto& ed = row(s, "eil51", 10, 0.2, Measure::ED);
  const auto& pd = row(s, "eil51", 10, 0.2, Measure::PD);
  const bool ok_b = pd.sigma_mean < ed.sigma_mean && ed.gtype_percent_mean >= pd.gtype_percent_mean - kTsplibGtypeSlack;

  std::vector<double> curve;
  for (double alpha : plan.alphas) curve.push_back(row(s, "eil51", 10, alpha, Measure::ED).gtype_percent_mean);
  bool ok_c = true;
  for (std::size_t i = 1; i < curve.size(); ++i) ok_c = ok_c && curve[i] > curve[i - 1];

  return {ok_a && ok_b && ok_c,
          fmt::format("(a) {} mean {:.2f} (paper 99.89); (b) {} sigma ED {:.2f}% PD {:.2f}% (paper 70.39, 44.90), gtype "
                      "ED {:.2f} PD {:.2f} (paper 63.04, 60.99); (c) {} {:.2f}",
                      ok_a ? "ok" : "FAIL", a, ok_b ? "ok" : "FAIL", 100 * ed.sigma_mean, 100 * pd.sigma_mean,
                      ed.gtype_percent_mean, pd.gtype_percent_mean, ok_c ? "ok" : "FAIL", fmt::join(curve, " < "))};
}

Outcome correlation() {
  ExperimentPlan plan;
  plan.instances = {eil(51), eil(76)};
  plan.mus = {3, 10, 20};
  plan.alphas = {0.05, 0.2, 0.5, 1.0};
  plan.replicates = 5;
  plan.seed_base = kSeedBase + 8;
  const auto res = run_plan(plan);
  const auto rep = correlation_report(res.records);
  const auto alt = correlation_report(res.records, SpreadMetric::MaxOverlap);
  const auto show = [](const CorrelationReport& r) { return r.r ? fmt::format("{:.4f}", *r.r) : std::string("undefined"); };
  const bool ok = rep.r && *rep.r <= kCorrelationMax;
  return {ok, fmt::format("r(sigma, div) = {} over {} runs (paper -0.9815); with the largest overlap in place of the "
                          "range r = {}",
                          show(rep), rep.points.size(), show(alt))};
}

Outcome determinism(const std::string& first) {
  const auto again = format_records_csv(run_plan(easy_plan()).records);
  return {!first.empty() && again == first,
          fmt::format("rerun of the {}-byte easy-case CSV is {}", first.size(), again == first ? "identical" : "different")};
}

Outcome mutation_contract() {
  Rng rng(kSeedBase + 10);
  std::mt19937_64 trng(kSeedBase + 11);
  int exact2 = 0;
  int bounded4 = 0;
  std::map<int, int> dist;
  for (int s = 0; s < 10000; ++s) {
    const auto t = random_tour(50, trng);
    exact2 += 50 - shared_edges(t, mutate(t, MutationKind(2), rng)) == 2 ? 1 : 0;
    const int d4 = 50 - shared_edges(t, mutate(t, MutationKind(4), rng));
    bounded4 += d4 <= 6 ? 1 : 0;
    ++dist[d4];
  }
  std::vector<std::string> parts;
  for (const auto& [d, c] : dist) parts.push_back(fmt::format("{}:{}", d, c));
  return {exact2 == 10000 && bounded4 == 10000,
          fmt::format("2-OPT exactly 2: {}/10000; 4-OPT <= 6: {}/10000; 4-OPT removed-edge counts {}", exact2, bounded4,
                      fmt::join(parts, " "))};
}

}  // namespace

int main(int argc, char** argv) {
  // --known-fail N: criterion N may fail without failing the suite; its line still reads FAIL.
  std::set<int> known;
  for (int i = 1; i + 1 < argc; i += 2) {
    if (std::string(argv[i]) == "--known-fail") known.insert(std::stoi(argv[i + 1]));
  }
  std::string easy_csv;
  const std::vector<std::tuple<int, std::string, double, std::function<Outcome()>>> criteria{
      {1, "worked-example exactness", 0, worked_example},
      {2, "gtype identity", kIdentitySeconds, gtype_identity},
      {3, "selection equivalence", kSelectionSeconds, selection_equivalence},
      {4, "balanced-population oracle", kTheoremSeconds, theorem_oracle},
      {5, "unconstrained easy cases", 0, [&] { return easy_cases(easy_csv); }},
      {6, "unconstrained hard case", 0, hard_case},
      {7, "TSPLIB constrained eil51", 0, tsplib_constrained},
      {8, "sigma/div correlation", 0, correlation},
      {9, "determinism", 0, [&] { return determinism(easy_csv); }},
      {10, "mutation contract", kMutationSeconds, mutation_contract},
  };
  int passed = 0;
  int blocking = 0;
  for (const auto& [id, name, limit, fn] : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = fn();
    } catch (const std::exception& e) {
      out = {false, fmt::format("threw: {}", e.what())};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (limit > 0 && secs >= limit) {
      out.pass = false;
      out.detail += fmt::format("; over the {:.0f} s limit", limit);
    }
    passed += out.pass ? 1 : 0;
    blocking += !out.pass && !known.count(id) ? 1 : 0;
    fmt::print("{} criterion {:>2} {}: {} [{:.2f} s]{}\n", out.pass ? "PASS" : "FAIL", id, name, out.detail, secs,
               !out.pass && known.count(id) ? " (known failure, see README)" : "");
    std::fflush(stdout);
  }
  fmt::print("{}/{} criteria passed\n", passed, criteria.size());
  return blocking == 0 ? 0 : 1;
}
