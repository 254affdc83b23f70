#include "doctest.h"
#include "fixtures.hpp"
#include "tourdiv/ea.hpp"

using namespace tourdiv;
using namespace tourdiv::testing;

namespace {

struct Eil51 {
  Instance inst = load_tsplib(data_path("eil51.tsp"));
  Tour opt = load_opt_tour(data_path("eil51.opt.tour"), inst);
  Cost opt_cost = tour_cost(inst, opt);
};

const Eil51& eil51() {
  static const Eil51 e;
  return e;
}

EaConfig weighted(int mu, double alpha, Measure m) {
  EaConfig c;
  c.mu = mu;
  c.alpha = alpha;
  c.measure = m;
  c.opt = eil51().opt_cost;
  c.init = InitMode::CopiesOfOptimal;
  return c;
}

}  // namespace

TEST_CASE("cost threshold") {
  const auto& e = eil51();
  CHECK(e.opt_cost == 426);
  CHECK(cost_threshold(weighted(3, 0.2, Measure::ED), e.inst) == 511);
  CHECK(cost_threshold(weighted(3, 1.0, Measure::ED), e.inst) == 852);
  CHECK(cost_threshold(weighted(3, 0.05, Measure::ED), e.inst) == 447);
  CHECK(cost_threshold(weighted(3, 0.0, Measure::ED), e.inst) == 426);
  EaConfig unit;
  CHECK(cost_threshold(unit, Instance::unit(17)) == 17);
}

TEST_CASE("initialisation modes") {
  const auto& e = eil51();
  Rng rng(1);
  const auto pop = initialize(weighted(4, 0.5, Measure::ED), e.inst, e.opt, rng);
  CHECK(pop.size() == 4);
  for (const auto& t : pop.tours()) CHECK(t == e.opt);
  CHECK(gtype(pop) == 0);

  EaConfig c;
  c.mu = 6;
  const auto rnd = initialize(c, Instance::unit(30), std::nullopt, rng);
  CHECK(rnd.size() == 6);
  CHECK(rnd.caches_consistent());

  auto bad = weighted(3, 0.2, Measure::ED);
  bad.init = InitMode::RandomTours;
  CHECK_THROWS_AS(initialize(bad, e.inst, e.opt, rng), std::invalid_argument);
  CHECK_THROWS_AS(initialize(weighted(3, 0.2, Measure::ED), e.inst, std::nullopt, rng), std::invalid_argument);
  CHECK_THROWS_AS(initialize(weighted(3, -0.1, Measure::ED), e.inst, e.opt, rng), std::invalid_argument);
  CHECK_THROWS_AS(initialize(weighted(1, 0.2, Measure::PD), e.inst, e.opt, rng), std::invalid_argument);
  CHECK_THROWS_AS(initialize(weighted(0, 0.2, Measure::ED), e.inst, e.opt, rng), std::invalid_argument);
  auto wrong_opt = weighted(3, 0.0, Measure::ED);
  wrong_opt.opt = 400;
  CHECK_THROWS_AS(initialize(wrong_opt, e.inst, e.opt, rng), std::invalid_argument);
}

TEST_CASE("every member stays feasible and the diversity vector never worsens") {
  const auto& e = eil51();
  for (const auto measure : {Measure::ED, Measure::PD}) {
    for (const int k : {2, 4}) {
      auto c = weighted(5, 0.1, measure);
      c.mutation = MutationKind(k);
      Rng rng(42);
      auto pop = initialize(c, e.inst, e.opt, rng);
      const Cost limit = cost_threshold(c, e.inst);
      auto vec = measure == Measure::ED ? nd_vector(pop) : overlap_vector(pop);
      int accepted = 0;
      for (int it = 0; it < 1000; ++it) {
        accepted += step(pop, c, e.inst, rng) ? 1 : 0;
        const auto next = measure == Measure::ED ? nd_vector(pop) : overlap_vector(pop);
        CHECK(next <= vec);
        vec = next;
        REQUIRE(pop.size() == 5);
      }
      CHECK(accepted > 0);
      for (const auto& t : pop.tours()) CHECK(tour_cost(e.inst, t) <= limit);
      CHECK(pop.caches_consistent());
    }
  }
}

TEST_CASE("over-threshold offspring leave the population untouched") {
  const auto& e = eil51();
  auto c = weighted(3, 0.0, Measure::ED);
  Rng rng(3);
  auto pop = initialize(c, e.inst, e.opt, rng);
  int rejected = 0;
  for (int it = 0; it < 300; ++it) {
    const std::vector<Tour> before(pop.tours().begin(), pop.tours().end());
    if (!step(pop, c, e.inst, rng)) {
      ++rejected;
      CHECK(std::equal(before.begin(), before.end(), pop.tours().begin(), pop.tours().end()));
    }
    for (const auto& t : pop.tours()) CHECK(tour_cost(e.inst, t) == 426);
  }
  // Most mutants of an optimal tour are longer.
  CHECK(rejected > 250);
}

TEST_CASE("duplicate offspring is accepted and one copy removed") {
  // On n = 4 there are only three distinct cycles, so duplicates are forced.
  EaConfig c;
  c.mu = 5;
  const auto inst = Instance::unit(4);
  Rng rng(9);
  auto pop = initialize(c, inst, std::nullopt, rng);
  for (int it = 0; it < 300; ++it) {
    CHECK(step(pop, c, inst, rng));
    CHECK(pop.size() == 5);
  }
  // Five cycles over three classes: counts differ by at most one.
  CHECK(gtype(pop) == optimal_gtype(4, 5));
}

TEST_CASE("random tie-breaking") {
  CHECK(parse_tie_break("random") == TieBreak::Random);
  CHECK(to_string(TieBreak::LargestIndex) == "largest-index");
  CHECK_THROWS_AS(parse_tie_break("first"), std::invalid_argument);

  EaConfig c;
  c.mu = 6;
  c.seed = 12;
  c.tie_break = TieBreak::Random;
  for (const auto measure : {Measure::ED, Measure::PD}) {
    c.measure = measure;
    const auto a = run(c, Instance::unit(24), std::nullopt);
    const auto b = run(c, Instance::unit(24), std::nullopt);
    CHECK(a.terminated == Termination::OptimumReached);
    CHECK(a.final_population == b.final_population);
  }
  // Tied candidates are exactly the brute-force argmin set.
  const Population four(5, {t1(), t2(), t3(), t4()});
  CHECK(removal_candidates(four, Measure::ED) == std::vector<int>{1, 2});
  CHECK(removal_candidates(four, Measure::PD) == std::vector<int>{3});
}

TEST_CASE("runs are deterministic") {
  EaConfig c;
  c.mu = 4;
  c.seed = 77;
  c.measure = Measure::PD;
  c.mutation = MutationKind(3);
  const auto inst = Instance::unit(25);
  const auto a = run(c, inst, std::nullopt);
  const auto b = run(c, inst, std::nullopt);
  CHECK(a.iterations == b.iterations);
  CHECK(a.final_population == b.final_population);
  c.seed = 78;
  const auto d = run(c, inst, std::nullopt);
  CHECK(d.final_population != a.final_population);
}

TEST_CASE("small unconstrained runs reach the optimum") {
  // Close to (n-1)/2 tours the last few swaps need far more than mu*n^2 steps.
  for (int n = 10; n <= 30; n += 5) {
    for (int mu = 2; mu <= n / 3; ++mu) {
      for (const auto measure : {Measure::ED, Measure::PD}) {
        EaConfig c;
        c.mu = mu;
        c.measure = measure;
        c.seed = static_cast<std::uint64_t>(n * 100 + mu);
        const auto rec = run(c, Instance::unit(n), std::nullopt);
        CAPTURE(n);
        CAPTURE(mu);
        CHECK(rec.terminated == Termination::OptimumReached);
        CHECK(rec.gtype_percent == 100.0);
        CHECK(rec.gtype == 1LL * mu * (mu - 1) * n);
        CHECK(rec.sigma == 0.0);
        CHECK(rec.div == 1.0);
      }
    }
  }
}

TEST_CASE("budget exhaustion and record fields") {
  const auto& e = eil51();
  auto c = weighted(10, 0.2, Measure::ED);
  c.max_iters = 500;
  c.seed = 1;
  const auto rec = run(c, e.inst, e.opt);
  CHECK(rec.iterations == 500);
  CHECK(rec.terminated == Termination::BudgetExhausted);
  CHECK(rec.n == 51);
  CHECK(rec.instance == "eil51");
  CHECK(rec.final_population.size() == 10);
  CHECK(rec.gtype_percent > 0.0);
  CHECK(rec.gtype_percent < 100.0);
  CHECK(rec.config.max_iters == 500);
  CHECK(to_string(rec.terminated) == "budget-exhausted");

  EaConfig one;
  one.mu = 1;
  const auto single = run(one, Instance::unit(8), std::nullopt);
  CHECK(single.iterations == 0);
  CHECK(single.gtype_percent == 100.0);
  CHECK(single.terminated == Termination::OptimumReached);

  EaConfig d;
  d.mu = 3;
  CHECK(run(d, Instance::unit(9), std::nullopt).config.max_iters == 243);
  CHECK_THROWS_AS(run_from(Population(9), d, Instance::unit(9)), std::invalid_argument);
}

TEST_CASE("PD optimum needs a flat overlap spread") {
  const Population pop(5, {t1(), t2(), t3()});
  CHECK(gtype(pop) == 18);
  CHECK(optimal_gtype(5, 3) == 20);
  CHECK_FALSE(optimum_reached(pop, Measure::ED));
  // Distinct cycles of K_5 share 0, 2 or 3 edges, so overlaps summing to 5
  // with spread <= 1 are impossible: PD cannot terminate early here.
  EaConfig c;
  c.mu = 3;
  c.measure = Measure::PD;
  c.seed = 4;
  c.max_iters = 5000;
  const auto rec = run(c, Instance::unit(5), std::nullopt);
  CHECK(rec.terminated == Termination::BudgetExhausted);
  CHECK(rec.iterations == 5000);
  // (2,2,2) is the lexicographically smallest overlap vector on K_5, one short of the gtype optimum.
  CHECK(rec.gtype == 18);
  CHECK(overlap_vector(Population(5, rec.final_population)) == DiversityVector({2, 2, 2}));
  c.measure = Measure::ED;
  CHECK(run(c, Instance::unit(5), std::nullopt).terminated == Termination::OptimumReached);
}
