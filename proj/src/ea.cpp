#include "tourdiv/ea.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include <fmt/format.h>

namespace tourdiv {

std::string_view to_string(Termination t) {
  return t == Termination::OptimumReached ? "optimum-reached" : "budget-exhausted";
}

std::string_view to_string(TieBreak t) { return t == TieBreak::Random ? "random" : "largest-index"; }

TieBreak parse_tie_break(std::string_view text) {
  if (text == "largest-index") return TieBreak::LargestIndex;
  if (text == "random") return TieBreak::Random;
  throw std::invalid_argument(fmt::format("unknown tie-break '{}' (expected largest-index or random)", text));
}

Rng make_rng(std::uint64_t seed, std::uint64_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream)};
  return Rng(seq);
}

Cost cost_threshold(const EaConfig& config, const Instance& instance) {
  if (instance.weight_kind() == WeightKind::Unit) return instance.n();
  // Guard against 1.2 * 426 landing a hair below an exact integer.
  return static_cast<Cost>(std::floor((1.0 + config.alpha) * static_cast<double>(config.opt) + 1e-9));
}

void validate(const EaConfig& config, const Instance& instance, const std::optional<Tour>& opt_tour) {
  if (config.mu < 1) throw std::invalid_argument(fmt::format("mu must be >= 1, got {}", config.mu));
  if (config.measure == Measure::PD && config.mu < 2) {
    throw std::invalid_argument("the pairwise measure needs mu >= 2");
  }
  if (!(config.alpha >= 0.0)) throw std::invalid_argument(fmt::format("alpha must be >= 0, got {}", config.alpha));
  if (config.max_iters < 0) throw std::invalid_argument("max_iters must be >= 0");
  if (config.init == InitMode::CopiesOfOptimal) {
    if (!opt_tour) throw std::invalid_argument("copies-of-optimal initialisation needs an optimal tour");
    if (opt_tour->size() != instance.n()) throw std::invalid_argument("optimal tour does not match the instance");
  }
  if (instance.weight_kind() != WeightKind::Unit) {
    if (config.init == InitMode::RandomTours) {
      throw std::invalid_argument("random-tours initialisation is only supported on unit instances");
    }
    if (config.opt <= 0) throw std::invalid_argument("weighted instances need OPT > 0");
    if (opt_tour && tour_cost(instance, *opt_tour) > cost_threshold(config, instance)) {
      throw std::invalid_argument("optimal tour violates the quality threshold; OPT inconsistent with the tour");
    }
  }
}

Population initialize(const EaConfig& config, const Instance& instance, const std::optional<Tour>& opt_tour,
                      Rng& rng) {
  validate(config, instance, opt_tour);
  const int n = instance.n();
  Population pop(n);
  if (config.init == InitMode::CopiesOfOptimal) {
    for (int i = 0; i < config.mu; ++i) pop.add(*opt_tour);
    return pop;
  }
  std::vector<Vertex> perm(n);
  for (int i = 0; i < config.mu; ++i) {
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    pop.add(Tour(perm));
  }
  return pop;
}

bool step(Population& pop, const EaConfig& config, const Instance& instance, Rng& rng) {
  const int parent = std::uniform_int_distribution<int>(0, pop.size() - 1)(rng);
  Tour child = mutate(pop.tour(parent), config.mutation, rng);
  if (tour_cost(instance, child) > cost_threshold(config, instance)) return false;
  pop.add(std::move(child));
  if (config.tie_break == TieBreak::LargestIndex) {
    pop.remove(select_removal(pop, config.measure));
  } else {
    const auto tied = removal_candidates(pop, config.measure);
    pop.remove(tied[std::uniform_int_distribution<std::size_t>(0, tied.size() - 1)(rng)]);
  }
  return true;
}

bool optimum_reached(const Population& pop, Measure measure) {
  if (gtype(pop) != optimal_gtype(pop.n(), pop.size())) return false;
  if (measure == Measure::PD && pop.size() >= 2) return overlap_spread(pop) <= 1;
  return true;
}

double gtype_percent(const Population& pop) {
  const auto best = optimal_gtype(pop.n(), pop.size());
  if (best == 0) return 100.0;
  return 100.0 * static_cast<double>(gtype(pop)) / static_cast<double>(best);
}

RunRecord run_from(Population pop, const EaConfig& config, const Instance& instance) {
  if (pop.size() != config.mu) {
    throw std::invalid_argument(fmt::format("initial population has {} tours, config says mu = {}", pop.size(), config.mu));
  }
  const int n = instance.n();
  const std::int64_t budget = config.max_iters > 0 ? config.max_iters : 1LL * config.mu * n * n;
  Rng rng = make_rng(config.seed, 1);

  RunRecord rec;
  rec.config = config;
  rec.config.max_iters = budget;
  rec.instance = instance.name();
  rec.n = n;
  std::int64_t it = 0;
  while (it < budget && !optimum_reached(pop, config.measure)) {
    step(pop, config, instance, rng);
    ++it;
  }
  rec.iterations = it;
  rec.terminated = optimum_reached(pop, config.measure) ? Termination::OptimumReached : Termination::BudgetExhausted;
  rec.gtype = gtype(pop);
  rec.gtype_percent = gtype_percent(pop);
  if (pop.size() >= 2) {
    rec.div = div_score(pop);
    rec.sigma = sigma_score(pop);
    rec.max_overlap = max_overlap_score(pop);
  }
  rec.final_population.assign(pop.tours().begin(), pop.tours().end());
  return rec;
}

RunRecord run(const EaConfig& config, const Instance& instance, const std::optional<Tour>& opt_tour) {
  Rng init_rng = make_rng(config.seed, 0);
  return run_from(initialize(config, instance, opt_tour, init_rng), config, instance);
}

}  // namespace tourdiv
