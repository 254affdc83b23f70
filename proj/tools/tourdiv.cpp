// Command-line front end: single runs, experiment presets, rendering,
// the diversity-optimum oracle and the sigma/div correlation report.

#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include <fmt/format.h>

#include "CLI11.hpp"
#include "tourdiv/decomposition.hpp"
#include "tourdiv/harness.hpp"
#include "tourdiv/render.hpp"

namespace {

using namespace tourdiv;

constexpr int kUsageError = 1;
constexpr int kInputError = 2;

struct RunArgs {
  std::string instance;
  int unit = 0;
  std::string opt_tour;
  int mu = 3;
  double alpha = 0.0;
  std::string measure = "ed";
  std::string mutation = "2opt";
  std::int64_t max_iters = 0;
  std::uint64_t seed = 1;
  std::string out = "out";
  std::string format = "csv";
  std::string tie_break = "random";
};

struct PlanArgs {
  std::string preset;
  int replicates = 0;
  std::uint64_t seed_base = 1;
  int jobs = 1;
  std::string out = "out";
  std::string format = "csv";
  std::string data_dir = TOURDIV_DATA_DIR;
  std::int64_t max_iters = 0;
  std::string tie_break = "random";
};

struct RenderArgs {
  std::string record;
  std::string style = "edge-counts";
  std::size_t index = 0;
  std::string instance;
  std::string opt_tour;
  std::string out;
};

struct OracleArgs {
  int n = 0;
  int mu = 0;
};

struct CorrArgs {
  std::string records;
  std::string scatter;
  std::string metric = "range";
};

std::string extension(const std::string& format) { return format == "csv" ? "csv" : "jsonl"; }

void write_outputs(const std::vector<RunRecord>& records, const std::vector<SummaryRow>& summary,
                   const std::string& dir, const std::string& format, const std::string& instance_path) {
  const auto fmt_kind = parse_format(format);
  const std::string records_path = fmt::format("{}/records.{}", dir, extension(format));
  if (fmt_kind == RecordFormat::Csv) {
    emit_records(records, fmt_kind, records_path);
    write_text(fmt::format("{}/populations.jsonl", dir), format_records_jsonl(records, instance_path));
  } else {
    write_text(records_path, format_records_jsonl(records, instance_path));
  }
  write_text(fmt::format("{}/summary.csv", dir), format_summary_csv(summary));
}

void print_summary(const std::vector<SummaryRow>& rows) {
  fmt::print("{:<8} {:>4} {:>4} {:>5} {:>3} {:>5} {:>5} {:>10} {:>12} {:>8}\n", "instance", "n", "mu", "alpha", "msr",
             "mut", "runs", "gtype%", "iters", "sigma");
  for (const auto& r : rows) {
    fmt::print("{:<8} {:>4} {:>4} {:>5} {:>3} {:>5} {:>5} {:>9.2f}% {:>12.2f} {:>7.2f}%\n", r.instance, r.n, r.mu,
               r.alpha, to_string(r.measure), to_string(r.mutation), r.runs, r.gtype_percent_mean, r.iterations_mean,
               100.0 * r.sigma_mean);
  }
}

int do_run(const RunArgs& a) {
  if (a.instance.empty() == (a.unit == 0)) throw CLI::ValidationError("run", "give exactly one of --instance or --unit");
  ExperimentPlan plan;
  plan.instances = {a.unit ? InstanceSpec::unit(a.unit) : InstanceSpec::tsplib(a.instance, a.opt_tour)};
  plan.mus = {a.mu};
  plan.alphas = {a.alpha};
  plan.measures = {parse_measure(a.measure)};
  plan.mutations = {parse_mutation(a.mutation)};
  plan.replicates = 1;
  plan.seed_base = a.seed;
  plan.max_iters = a.max_iters;
  plan.tie_break = parse_tie_break(a.tie_break);
  const auto result = run_plan(plan);
  write_outputs(result.records, result.summary, a.out, a.format, a.instance);
  print_summary(result.summary);
  return 0;
}

int do_plan(const PlanArgs& a) {
  auto plan = preset_plan(parse_preset(a.preset), a.data_dir);
  if (a.replicates > 0) plan.replicates = a.replicates;
  plan.seed_base = a.seed_base;
  plan.jobs = a.jobs;
  plan.max_iters = a.max_iters;
  plan.tie_break = parse_tie_break(a.tie_break);
  const auto result = run_plan(plan);
  // Populations are tagged with the instance path so they can be rendered later.
  const auto format = parse_format(a.format);
  const std::string records_path = fmt::format("{}/records.{}", a.out, extension(a.format));
  std::string pops;
  for (const auto& rec : result.records) {
    std::string path;
    for (const auto& spec : plan.instances) {
      if (!spec.unit_n && std::filesystem::path(spec.tsp_path).stem() == rec.instance) path = spec.tsp_path;
    }
    pops += format_records_jsonl({rec}, path);
  }
  if (format == RecordFormat::Csv) {
    emit_records(result.records, format, records_path);
    write_text(fmt::format("{}/populations.jsonl", a.out), pops);
  } else {
    write_text(records_path, pops);
  }
  write_text(fmt::format("{}/summary.csv", a.out), format_summary_csv(result.summary));
  print_summary(result.summary);
  return 0;
}

int do_render(const RenderArgs& a) {
  const auto records = read_records(a.record);
  if (a.index >= records.size()) throw std::out_of_range(fmt::format("{} has {} records", a.record, records.size()));
  const auto& rec = records[a.index];
  if (rec.final_population.empty()) {
    throw std::invalid_argument(fmt::format("{} record {} has no population (use a .jsonl record file)", a.record, a.index));
  }
  std::string inst_path = a.instance;
  if (inst_path.empty()) {
    if (const auto stored = record_instance_path(a.record, a.index)) inst_path = *stored;
  }
  if (inst_path.empty()) throw std::invalid_argument("record has no instance path; pass --instance");
  const auto instance = load_tsplib(inst_path);
  const Population pop(instance.n(), rec.final_population);
  std::string svg;
  if (a.style == "edge-counts") {
    std::optional<Tour> opt;
    if (!a.opt_tour.empty()) opt = load_opt_tour(a.opt_tour, instance);
    svg = render_edge_counts(pop, instance, opt);
  } else {
    svg = render_population(pop, instance);
  }
  if (a.out.empty()) {
    std::cout << svg;
  } else {
    write_text(a.out, svg);
  }
  return 0;
}

int do_oracle(const OracleArgs& a) {
  const auto tours = optimal_population(a.n, a.mu);
  const auto witness = verify_theorem1(a.n, a.mu);
  const Population pop(a.n, tours);
  fmt::print("n {} mu {}\noptimal_gtype {}\npopulation_gtype {}\nedge_counts {}..{}\n", a.n, a.mu,
             optimal_gtype(a.n, a.mu), gtype(pop), witness.min_count, witness.max_count);
  for (std::size_t i = 0; i < tours.size(); ++i) {
    fmt::print("TOUR {}\n", i + 1);
    for (Vertex v : tours[i].perm()) fmt::print("{}\n", v + 1);
    fmt::print("-1\n");
  }
  return 0;
}

int do_corr(const CorrArgs& a) {
  const auto report = correlation_report(read_records(a.records), parse_spread_metric(a.metric));
  if (report.r) {
    fmt::print("pearson_r {:.6f} over {} runs\n", *report.r, report.points.size());
  } else {
    fmt::print("pearson_r undefined (zero variance) over {} runs\n", report.points.size());
  }
  if (!a.scatter.empty()) {
    std::string csv = a.metric == "range" ? "sigma,div\n" : "max_overlap,div\n";
    for (const auto& [s, d] : report.points) csv += fmt::format("{},{}\n", s, d);
    write_text(a.scatter, csv);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Evolve diverse sets of TSP tours under a quality threshold"};
  app.require_subcommand(1);

  RunArgs run_args;
  auto* run = app.add_subcommand("run", "Run one EA configuration");
  run->add_option("--instance", run_args.instance, "TSPLIB .tsp file");
  run->add_option("--unit", run_args.unit, "Unit-weight complete graph on N vertices")->check(CLI::Range(3, 100000));
  run->add_option("--opt-tour", run_args.opt_tour, "Optimal .opt.tour file");
  run->add_option("--mu", run_args.mu, "Population size")->check(CLI::PositiveNumber);
  run->add_option("--alpha", run_args.alpha, "Quality slack: c(I) <= (1+alpha) OPT")->check(CLI::NonNegativeNumber);
  run->add_option("--measure", run_args.measure)->check(CLI::IsMember({"ed", "pd"}));
  run->add_option("--mutation", run_args.mutation)->check(CLI::IsMember({"2opt", "3opt", "4opt"}));
  run->add_option("--max-iters", run_args.max_iters, "Iteration budget (default mu*n^2)");
  run->add_option("--seed", run_args.seed);
  run->add_option("--out", run_args.out, "Output directory");
  run->add_option("--format", run_args.format)->check(CLI::IsMember({"csv", "jsonl"}));
  run->add_option("--tie-break", run_args.tie_break, "Removal among equally good members")
      ->check(CLI::IsMember({"largest-index", "random"}));

  PlanArgs plan_args;
  auto* plan = app.add_subcommand("plan", "Run an experiment preset");
  plan->add_option("--preset", plan_args.preset)
      ->required()
      ->check(CLI::IsMember({"unconstrained-desk", "tsplib-desk", "unconstrained-full", "tsplib-full"}));
  plan->add_option("--replicates", plan_args.replicates, "Override the preset's replicate count");
  plan->add_option("--seed-base", plan_args.seed_base);
  plan->add_option("--jobs", plan_args.jobs)->check(CLI::PositiveNumber);
  plan->add_option("--out", plan_args.out, "Output directory");
  plan->add_option("--format", plan_args.format)->check(CLI::IsMember({"csv", "jsonl"}));
  plan->add_option("--data-dir", plan_args.data_dir, "Directory with eil*.tsp and eil*.opt.tour");
  plan->add_option("--max-iters", plan_args.max_iters, "Iteration budget per run (default mu*n^2)");
  plan->add_option("--tie-break", plan_args.tie_break, "Removal among equally good members")
      ->check(CLI::IsMember({"largest-index", "random"}));

  RenderArgs render_args;
  auto* render = app.add_subcommand("render", "Render a recorded population as SVG");
  render->add_option("--record", render_args.record, "JSON-lines record file")->required();
  render->add_option("--style", render_args.style)->check(CLI::IsMember({"edge-counts", "population"}));
  render->add_option("--index", render_args.index, "Record index in the file");
  render->add_option("--instance", render_args.instance, "Override the instance path");
  render->add_option("--opt-tour", render_args.opt_tour, "Mark this tour in red");
  render->add_option("--out", render_args.out, "SVG output file (default stdout)");

  OracleArgs oracle_args;
  auto* oracle = app.add_subcommand("oracle", "Optimal gtype and a diversity-optimal population");
  oracle->add_option("--n", oracle_args.n)->required()->check(CLI::Range(3, 100000));
  oracle->add_option("--mu", oracle_args.mu)->required()->check(CLI::PositiveNumber);

  CorrArgs corr_args;
  auto* corr = app.add_subcommand("corr", "Pearson correlation of sigma and div over records");
  corr->add_option("--records", corr_args.records)->required();
  corr->add_option("--scatter", corr_args.scatter, "Write (x, div) pairs as CSV");
  corr->add_option("--metric", corr_args.metric, "x axis: overlap range (sigma) or largest overlap")
      ->check(CLI::IsMember({"range", "max-overlap"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kUsageError;
  }

  try {
    if (*run) return do_run(run_args);
    if (*plan) return do_plan(plan_args);
    if (*render) return do_render(render_args);
    if (*oracle) return do_oracle(oracle_args);
    if (*corr) return do_corr(corr_args);
  } catch (const CLI::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsageError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  }
  return kUsageError;
}
