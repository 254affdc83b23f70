#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "tourdiv/diversity.hpp"
#include "tourdiv/instance.hpp"
#include "tourdiv/mutation.hpp"

namespace tourdiv {

enum class InitMode { RandomTours, CopiesOfOptimal };

/// Which member goes when several removals are equally good.
enum class TieBreak {
  LargestIndex,
  /// Uniform among the tied members, drawn from the evolution stream.
  Random,
};

std::string_view to_string(TieBreak t);
TieBreak parse_tie_break(std::string_view text);

struct EaConfig {
  int mu = 3;
  Measure measure = Measure::ED;
  MutationKind mutation{2};
  double alpha = 0.0;
  /// OPT in cost units. Ignored (taken as n) on unit instances.
  Cost opt = 0;
  /// Offspring attempts; 0 means μ·n².
  std::int64_t max_iters = 0;
  InitMode init = InitMode::RandomTours;
  TieBreak tie_break = TieBreak::Random;
  std::uint64_t seed = 0;
};

enum class Termination { OptimumReached, BudgetExhausted };

std::string_view to_string(Termination t);

struct RunRecord {
  EaConfig config;
  std::string instance;
  int n = 0;
  std::int64_t iterations = 0;
  Termination terminated = Termination::BudgetExhausted;
  std::int64_t gtype = 0;
  double gtype_percent = 0.0;
  double div = 0.0;
  double sigma = 0.0;
  /// Largest pairwise overlap over n. Not part of the CSV columns.
  std::optional<double> max_overlap;
  std::vector<Tour> final_population;
};

/// Tour cost limit ⌊(1 + α)·OPT⌋ for the configured instance.
Cost cost_threshold(const EaConfig& config, const Instance& instance);

/// Checks mu/alpha/opt/measure consistency; throws std::invalid_argument.
void validate(const EaConfig& config, const Instance& instance, const std::optional<Tour>& opt_tour);

/// Random-tours init is only accepted on unit instances; copies-of-optimal
/// needs opt_tour.
Population initialize(const EaConfig& config, const Instance& instance, const std::optional<Tour>& opt_tour,
                      Rng& rng);

/// One (μ+1) iteration. Returns true when the offspring passed the quality
/// filter and was inserted before selection.
bool step(Population& pop, const EaConfig& config, const Instance& instance, Rng& rng);

/// Optimum test used for termination: gtype at its maximum, and for PD also
/// a pairwise overlap spread of at most one.
bool optimum_reached(const Population& pop, Measure measure);

/// 100·gtype/optimal_gtype; 100 when the optimum is 0 (μ = 1).
double gtype_percent(const Population& pop);

RunRecord run(const EaConfig& config, const Instance& instance, const std::optional<Tour>& opt_tour);

/// Runs from a given initial population (shared across variants by the harness).
RunRecord run_from(Population initial, const EaConfig& config, const Instance& instance);

/// Rng streams derived from a run seed: 0 for initialisation, 1 for evolution.
Rng make_rng(std::uint64_t seed, std::uint64_t stream);

}  // namespace tourdiv
