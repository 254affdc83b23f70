#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "tourdiv/ea.hpp"

namespace tourdiv {

/// Either a unit-weight K_n or a TSPLIB file with its optimal tour.
struct InstanceSpec {
  std::optional<int> unit_n;
  std::string tsp_path;
  std::string tour_path;

  static InstanceSpec unit(int n) { return InstanceSpec{n, {}, {}}; }
  static InstanceSpec tsplib(std::string tsp, std::string tour) {
    return InstanceSpec{std::nullopt, std::move(tsp), std::move(tour)};
  }
};

struct ExperimentPlan {
  std::vector<InstanceSpec> instances;
  std::vector<int> mus;
  std::vector<double> alphas{0.0};
  std::vector<Measure> measures{Measure::ED, Measure::PD};
  std::vector<MutationKind> mutations{MutationKind(2), MutationKind(3), MutationKind(4)};
  int replicates = 30;
  std::uint64_t seed_base = 0;
  /// 0 means μ·n² per run.
  std::int64_t max_iters = 0;
  TieBreak tie_break = TieBreak::Random;
  int jobs = 1;
};

/// One run of a plan. Seeds depend only on the replicate, so every variant of
/// a replicate shares its initial population.
struct PlanCell {
  std::size_t instance = 0;
  int mu = 0;
  double alpha = 0.0;
  Measure measure = Measure::ED;
  MutationKind mutation{2};
  int replicate = 0;
  std::uint64_t seed = 0;
};

/// Cells ordered by instance, μ, α, measure, mutation, replicate.
/// Throws std::invalid_argument for empty grids or invalid values.
std::vector<PlanCell> expand_plan(const ExperimentPlan& plan);

struct LoadedInstance {
  Instance instance;
  std::optional<Tour> opt_tour;
  Cost opt = 0;
  std::string path;
};

LoadedInstance load_instance(const InstanceSpec& spec);

EaConfig cell_config(const PlanCell& cell, const LoadedInstance& inst, const ExperimentPlan& plan);
Population cell_initial_population(const PlanCell& cell, const LoadedInstance& inst, const ExperimentPlan& plan);

struct SummaryRow {
  std::string instance;
  int n = 0;
  int mu = 0;
  double alpha = 0.0;
  Measure measure = Measure::ED;
  MutationKind mutation{2};
  int runs = 0;
  double gtype_percent_mean = 0.0;
  double gtype_percent_std = 0.0;
  double iterations_mean = 0.0;
  double iterations_std = 0.0;
  double sigma_mean = 0.0;
  double sigma_std = 0.0;
  double div_mean = 0.0;
  double div_std = 0.0;
  double max_overlap_mean = 0.0;
  double max_overlap_std = 0.0;
};

struct PlanResult {
  std::vector<RunRecord> records;
  std::vector<SummaryRow> summary;
};

PlanResult run_plan(const ExperimentPlan& plan);

/// Groups consecutive records by grid point; standard deviations use n − 1.
std::vector<SummaryRow> summarize(const std::vector<RunRecord>& records);

enum class RecordFormat { Csv, JsonLines };
RecordFormat parse_format(std::string_view text);

inline constexpr std::string_view kCsvHeader =
    "instance,n,mu,alpha,measure,mutation,seed,iterations,terminated,gtype,gtype_percent,div,sigma";

std::string format_records_csv(const std::vector<RunRecord>& records);
/// One JSON object per line; carries the CSV columns plus the final population.
std::string format_records_jsonl(const std::vector<RunRecord>& records, const std::string& instance_path = {});
std::string format_summary_csv(const std::vector<SummaryRow>& rows);

std::vector<RunRecord> parse_records_csv(std::string_view text);
std::vector<RunRecord> parse_records_jsonl(std::string_view text);
/// Dispatches on the .csv / .jsonl extension.
std::vector<RunRecord> read_records(const std::string& path);
/// Instance path stored alongside a JSON-lines record, if any.
std::optional<std::string> record_instance_path(const std::string& jsonl_path, std::size_t index);

/// Writes records in the given format to path; errors carry the path.
void emit_records(const std::vector<RunRecord>& records, RecordFormat format, const std::string& path);
void write_text(const std::string& path, std::string_view text);

/// x axis of the correlation: sigma (overlap range) or the largest overlap.
enum class SpreadMetric { Range, MaxOverlap };
SpreadMetric parse_spread_metric(std::string_view text);

struct CorrelationReport {
  /// Pearson r of (x, div); empty when either variance is zero.
  std::optional<double> r;
  std::vector<std::pair<double, double>> points;
};

/// Throws std::invalid_argument for fewer than 3 usable records (μ >= 2).
/// MaxOverlap needs records that carry populations-derived max_overlap (JSON lines).
CorrelationReport correlation_report(const std::vector<RunRecord>& records, SpreadMetric metric = SpreadMetric::Range);

enum class Preset { UnconstrainedDesk, UnconstrainedFull, TsplibDesk, TsplibFull };
Preset parse_preset(std::string_view text);
ExperimentPlan preset_plan(Preset preset, const std::string& data_dir);

}  // namespace tourdiv
