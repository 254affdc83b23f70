#include "tourdiv/harness.hpp"

#include <atomic>
#include <cmath>
#include <exception>
#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <fmt/format.h>

#include "json.hpp"

namespace tourdiv {

using json = nlohmann::json;

std::vector<PlanCell> expand_plan(const ExperimentPlan& plan) {
  if (plan.instances.empty() || plan.mus.empty() || plan.alphas.empty() || plan.measures.empty() ||
      plan.mutations.empty()) {
    throw std::invalid_argument("experiment grid is empty");
  }
  if (plan.replicates < 1) throw std::invalid_argument(fmt::format("replicates must be >= 1, got {}", plan.replicates));
  for (int mu : plan.mus) {
    if (mu < 1) throw std::invalid_argument(fmt::format("invalid mu {}", mu));
  }
  for (double a : plan.alphas) {
    if (!(a >= 0.0)) throw std::invalid_argument(fmt::format("invalid alpha {}", a));
  }
  std::vector<PlanCell> cells;
  for (std::size_t inst = 0; inst < plan.instances.size(); ++inst) {
    for (int mu : plan.mus) {
      for (double alpha : plan.alphas) {
        for (Measure measure : plan.measures) {
          if (measure == Measure::PD && mu < 2) throw std::invalid_argument("the pairwise measure needs mu >= 2");
          for (const MutationKind& mutation : plan.mutations) {
            for (int rep = 0; rep < plan.replicates; ++rep) {
              cells.push_back(PlanCell{inst, mu, alpha, measure, mutation, rep, plan.seed_base + rep});
            }
          }
        }
      }
    }
  }
  return cells;
}

LoadedInstance load_instance(const InstanceSpec& spec) {
  if (spec.unit_n) {
    auto inst = Instance::unit(*spec.unit_n);
    const Cost opt = inst.n();
    return LoadedInstance{std::move(inst), std::nullopt, opt, {}};
  }
  auto inst = load_tsplib(spec.tsp_path);
  if (spec.tour_path.empty()) {
    throw std::invalid_argument(fmt::format("instance {} needs an optimal tour file", spec.tsp_path));
  }
  auto tour = load_opt_tour(spec.tour_path, inst);
  const Cost opt = tour_cost(inst, tour);
  return LoadedInstance{std::move(inst), std::move(tour), opt, spec.tsp_path};
}

EaConfig cell_config(const PlanCell& cell, const LoadedInstance& inst, const ExperimentPlan& plan) {
  EaConfig cfg;
  cfg.mu = cell.mu;
  cfg.measure = cell.measure;
  cfg.mutation = cell.mutation;
  cfg.alpha = cell.alpha;
  cfg.opt = inst.opt;
  cfg.max_iters = plan.max_iters;
  cfg.tie_break = plan.tie_break;
  cfg.init = inst.opt_tour ? InitMode::CopiesOfOptimal : InitMode::RandomTours;
  cfg.seed = cell.seed;
  return cfg;
}

Population cell_initial_population(const PlanCell& cell, const LoadedInstance& inst, const ExperimentPlan& plan) {
  Rng rng = make_rng(cell.seed, 0);
  return initialize(cell_config(cell, inst, plan), inst.instance, inst.opt_tour, rng);
}

PlanResult run_plan(const ExperimentPlan& plan) {
  const auto cells = expand_plan(plan);
  std::vector<LoadedInstance> loaded;
  loaded.reserve(plan.instances.size());
  for (const auto& spec : plan.instances) loaded.push_back(load_instance(spec));

  std::vector<RunRecord> records(cells.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  const auto worker = [&] {
    while (true) {
      const std::size_t i = next.fetch_add(1);
      if (i >= cells.size()) return;
      try {
        const auto& inst = loaded[cells[i].instance];
        const auto cfg = cell_config(cells[i], inst, plan);
        records[i] = run_from(cell_initial_population(cells[i], inst, plan), cfg, inst.instance);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next = cells.size();
      }
    }
  };
  const int jobs = std::max(1, plan.jobs);
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (int j = 0; j < jobs; ++j) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);

  PlanResult result;
  result.summary = summarize(records);
  result.records = std::move(records);
  return result;
}

namespace {

struct MeanStd {
  double mean = 0.0;
  double std = 0.0;
};

MeanStd mean_std(const std::vector<double>& xs) {
  MeanStd out;
  if (xs.empty()) return out;
  double sum = 0.0;
  for (double x : xs) sum += x;
  out.mean = sum / static_cast<double>(xs.size());
  if (xs.size() > 1) {
    double ss = 0.0;
    for (double x : xs) ss += (x - out.mean) * (x - out.mean);
    out.std = std::sqrt(ss / static_cast<double>(xs.size() - 1));
  }
  return out;
}

bool same_cell(const RunRecord& a, const RunRecord& b) {
  return a.instance == b.instance && a.n == b.n && a.config.mu == b.config.mu && a.config.alpha == b.config.alpha &&
         a.config.measure == b.config.measure && a.config.mutation == b.config.mutation;
}

std::string format_double(double x) { return fmt::format("{}", x); }

}  // namespace

std::vector<SummaryRow> summarize(const std::vector<RunRecord>& records) {
  std::vector<SummaryRow> rows;
  std::size_t begin = 0;
  while (begin < records.size()) {
    std::size_t end = begin + 1;
    while (end < records.size() && same_cell(records[begin], records[end])) ++end;
    std::vector<double> gp;
    std::vector<double> its;
    std::vector<double> sig;
    std::vector<double> dv;
    std::vector<double> mo;
    for (std::size_t i = begin; i < end; ++i) {
      gp.push_back(records[i].gtype_percent);
      its.push_back(static_cast<double>(records[i].iterations));
      sig.push_back(records[i].sigma);
      dv.push_back(records[i].div);
      mo.push_back(records[i].max_overlap.value_or(0.0));
    }
    const auto& r = records[begin];
    SummaryRow row{r.instance, r.n, r.config.mu, r.config.alpha, r.config.measure, r.config.mutation,
                   static_cast<int>(end - begin)};
    const auto g = mean_std(gp);
    const auto it = mean_std(its);
    const auto sg = mean_std(sig);
    const auto d = mean_std(dv);
    const auto o = mean_std(mo);
    row.gtype_percent_mean = g.mean;
    row.gtype_percent_std = g.std;
    row.iterations_mean = it.mean;
    row.iterations_std = it.std;
    row.sigma_mean = sg.mean;
    row.sigma_std = sg.std;
    row.div_mean = d.mean;
    row.div_std = d.std;
    row.max_overlap_mean = o.mean;
    row.max_overlap_std = o.std;
    rows.push_back(std::move(row));
    begin = end;
  }
  return rows;
}

RecordFormat parse_format(std::string_view text) {
  if (text == "csv") return RecordFormat::Csv;
  if (text == "jsonl") return RecordFormat::JsonLines;
  throw std::invalid_argument(fmt::format("unknown format '{}' (expected csv or jsonl)", text));
}

std::string format_records_csv(const std::vector<RunRecord>& records) {
  std::string out(kCsvHeader);
  out += '\n';
  for (const auto& r : records) {
    if (r.instance.find_first_of(",\n\"") != std::string::npos) {
      throw std::invalid_argument(fmt::format("instance name '{}' cannot be written to CSV", r.instance));
    }
    out += fmt::format("{},{},{},{},{},{},{},{},{},{},{},{},{}\n", r.instance, r.n, r.config.mu,
                       format_double(r.config.alpha), to_string(r.config.measure), to_string(r.config.mutation),
                       r.config.seed, r.iterations, to_string(r.terminated), r.gtype, format_double(r.gtype_percent),
                       format_double(r.div), format_double(r.sigma));
  }
  return out;
}

std::string format_records_jsonl(const std::vector<RunRecord>& records, const std::string& instance_path) {
  std::string out;
  for (const auto& r : records) {
    json j;
    j["instance"] = r.instance;
    j["n"] = r.n;
    j["mu"] = r.config.mu;
    j["alpha"] = r.config.alpha;
    j["measure"] = to_string(r.config.measure);
    j["mutation"] = to_string(r.config.mutation);
    j["seed"] = r.config.seed;
    j["iterations"] = r.iterations;
    j["terminated"] = to_string(r.terminated);
    j["gtype"] = r.gtype;
    j["gtype_percent"] = r.gtype_percent;
    j["div"] = r.div;
    j["sigma"] = r.sigma;
    if (r.max_overlap) j["max_overlap"] = *r.max_overlap;
    if (!instance_path.empty()) j["instance_path"] = instance_path;
    json pop = json::array();
    for (const Tour& t : r.final_population) pop.push_back(std::vector<Vertex>(t.perm().begin(), t.perm().end()));
    j["population"] = std::move(pop);
    out += j.dump();
    out += '\n';
  }
  return out;
}

std::string format_summary_csv(const std::vector<SummaryRow>& rows) {
  std::string out =
      "instance,n,mu,alpha,measure,mutation,runs,gtype_percent_mean,gtype_percent_std,iterations_mean,"
      "iterations_std,sigma_mean,sigma_std,div_mean,div_std,max_overlap_mean,max_overlap_std\n";
  for (const auto& r : rows) {
    out += fmt::format("{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{}\n", r.instance, r.n, r.mu, format_double(r.alpha),
                       to_string(r.measure), to_string(r.mutation), r.runs, format_double(r.gtype_percent_mean),
                       format_double(r.gtype_percent_std), format_double(r.iterations_mean),
                       format_double(r.iterations_std), format_double(r.sigma_mean), format_double(r.sigma_std),
                       format_double(r.div_mean), format_double(r.div_std), format_double(r.max_overlap_mean),
                       format_double(r.max_overlap_std));
  }
  return out;
}

namespace {

Termination parse_termination(std::string_view text) {
  if (text == "optimum-reached") return Termination::OptimumReached;
  if (text == "budget-exhausted") return Termination::BudgetExhausted;
  throw std::invalid_argument(fmt::format("unknown termination '{}'", text));
}

template <typename T>
T parse_number(const std::string& text, std::string_view column) {
  std::istringstream ss(text);
  T value{};
  if (!(ss >> value) || !ss.eof()) throw std::invalid_argument(fmt::format("bad {} value '{}'", column, text));
  return value;
}

}  // namespace

std::vector<RunRecord> parse_records_csv(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  if (!std::getline(in, line) || line != kCsvHeader) {
    throw std::invalid_argument("CSV header does not match the record format");
  }
  std::vector<RunRecord> out;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> cols;
    std::stringstream ss(line);
    std::string col;
    while (std::getline(ss, col, ',')) cols.push_back(col);
    if (cols.size() != 13) throw std::invalid_argument(fmt::format("CSV row has {} columns: '{}'", cols.size(), line));
    RunRecord r;
    r.instance = cols[0];
    r.n = parse_number<int>(cols[1], "n");
    r.config.mu = parse_number<int>(cols[2], "mu");
    r.config.alpha = parse_number<double>(cols[3], "alpha");
    r.config.measure = parse_measure(cols[4]);
    r.config.mutation = parse_mutation(cols[5]);
    r.config.seed = parse_number<std::uint64_t>(cols[6], "seed");
    r.iterations = parse_number<std::int64_t>(cols[7], "iterations");
    r.terminated = parse_termination(cols[8]);
    r.gtype = parse_number<std::int64_t>(cols[9], "gtype");
    r.gtype_percent = parse_number<double>(cols[10], "gtype_percent");
    r.div = parse_number<double>(cols[11], "div");
    r.sigma = parse_number<double>(cols[12], "sigma");
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<RunRecord> parse_records_jsonl(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::vector<RunRecord> out;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const json j = json::parse(line);
    RunRecord r;
    r.instance = j.at("instance").get<std::string>();
    r.n = j.at("n").get<int>();
    r.config.mu = j.at("mu").get<int>();
    r.config.alpha = j.at("alpha").get<double>();
    r.config.measure = parse_measure(j.at("measure").get<std::string>());
    r.config.mutation = parse_mutation(j.at("mutation").get<std::string>());
    r.config.seed = j.at("seed").get<std::uint64_t>();
    r.iterations = j.at("iterations").get<std::int64_t>();
    r.terminated = parse_termination(j.at("terminated").get<std::string>());
    r.gtype = j.at("gtype").get<std::int64_t>();
    r.gtype_percent = j.at("gtype_percent").get<double>();
    r.div = j.at("div").get<double>();
    r.sigma = j.at("sigma").get<double>();
    if (j.contains("max_overlap")) r.max_overlap = j.at("max_overlap").get<double>();
    if (j.contains("population")) {
      for (const auto& perm : j.at("population")) r.final_population.emplace_back(perm.get<std::vector<Vertex>>());
    }
    out.push_back(std::move(r));
  }
  return out;
}

namespace {

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error(fmt::format("cannot open {}", path));
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

std::vector<RunRecord> read_records(const std::string& path) {
  const auto ext = std::filesystem::path(path).extension().string();
  const auto text = read_text(path);
  try {
    if (ext == ".csv") return parse_records_csv(text);
    if (ext == ".jsonl") return parse_records_jsonl(text);
  } catch (const std::exception& e) {
    throw std::runtime_error(fmt::format("{}: {}", path, e.what()));
  }
  throw std::invalid_argument(fmt::format("{}: expected a .csv or .jsonl record file", path));
}

std::optional<std::string> record_instance_path(const std::string& jsonl_path, std::size_t index) {
  std::istringstream in(read_text(jsonl_path));
  std::string line;
  std::size_t i = 0;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (i++ == index) {
      const json j = json::parse(line);
      if (j.contains("instance_path")) return j.at("instance_path").get<std::string>();
      return std::nullopt;
    }
  }
  throw std::out_of_range(fmt::format("{}: no record at index {}", jsonl_path, index));
}

void write_text(const std::string& path, std::string_view text) {
  const auto parent = std::filesystem::path(path).parent_path();
  std::error_code ec;
  if (!parent.empty()) std::filesystem::create_directories(parent, ec);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error(fmt::format("cannot write {}", path));
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) throw std::runtime_error(fmt::format("write to {} failed", path));
}

void emit_records(const std::vector<RunRecord>& records, RecordFormat format, const std::string& path) {
  if (records.empty()) throw std::invalid_argument("no records to emit");
  write_text(path, format == RecordFormat::Csv ? format_records_csv(records) : format_records_jsonl(records));
}

SpreadMetric parse_spread_metric(std::string_view text) {
  if (text == "range" || text == "sigma") return SpreadMetric::Range;
  if (text == "max-overlap") return SpreadMetric::MaxOverlap;
  throw std::invalid_argument(fmt::format("unknown metric '{}' (expected range or max-overlap)", text));
}

CorrelationReport correlation_report(const std::vector<RunRecord>& records, SpreadMetric metric) {
  CorrelationReport rep;
  for (const auto& r : records) {
    if (r.config.mu < 2) continue;
    if (metric == SpreadMetric::Range) {
      rep.points.emplace_back(r.sigma, r.div);
    } else if (r.max_overlap) {
      rep.points.emplace_back(*r.max_overlap, r.div);
    } else {
      throw std::invalid_argument(fmt::format("record for {} seed {} has no max_overlap (CSV records omit it)",
                                              r.instance, r.config.seed));
    }
  }
  if (rep.points.size() < 3) {
    throw std::invalid_argument(fmt::format("correlation needs at least 3 records with mu >= 2, got {}", rep.points.size()));
  }
  const double k = static_cast<double>(rep.points.size());
  double mx = 0.0;
  double my = 0.0;
  for (const auto& [x, y] : rep.points) {
    mx += x;
    my += y;
  }
  mx /= k;
  my /= k;
  double sxx = 0.0;
  double syy = 0.0;
  double sxy = 0.0;
  for (const auto& [x, y] : rep.points) {
    sxx += (x - mx) * (x - mx);
    syy += (y - my) * (y - my);
    sxy += (x - mx) * (y - my);
  }
  if (sxx > 0.0 && syy > 0.0) rep.r = sxy / std::sqrt(sxx * syy);
  return rep;
}

Preset parse_preset(std::string_view text) {
  if (text == "unconstrained-desk") return Preset::UnconstrainedDesk;
  if (text == "unconstrained-full") return Preset::UnconstrainedFull;
  if (text == "tsplib-desk") return Preset::TsplibDesk;
  if (text == "tsplib-full") return Preset::TsplibFull;
  throw std::invalid_argument(fmt::format("unknown preset '{}'", text));
}

ExperimentPlan preset_plan(Preset preset, const std::string& data_dir) {
  const auto eil = [&](const char* name) {
    return InstanceSpec::tsplib(fmt::format("{}/{}.tsp", data_dir, name), fmt::format("{}/{}.opt.tour", data_dir, name));
  };
  ExperimentPlan plan;
  switch (preset) {
    case Preset::UnconstrainedDesk:
      plan.instances = {InstanceSpec::unit(20), InstanceSpec::unit(50)};
      plan.mus = {3, 5};
      plan.alphas = {0.0};
      plan.replicates = 10;
      break;
    case Preset::UnconstrainedFull:
      plan.instances = {InstanceSpec::unit(50), InstanceSpec::unit(100), InstanceSpec::unit(200),
                        InstanceSpec::unit(500)};
      plan.mus = {3, 10, 20, 50};
      plan.alphas = {0.0};
      plan.replicates = 30;
      break;
    case Preset::TsplibDesk:
      plan.instances = {eil("eil51"), eil("eil76")};
      plan.mus = {3, 10, 20};
      plan.alphas = {0.05, 0.2, 0.5, 1.0};
      plan.replicates = 5;
      break;
    case Preset::TsplibFull:
      plan.instances = {eil("eil51"), eil("eil76"), eil("eil101")};
      plan.mus = {3, 10, 20, 50};
      plan.alphas = {0.05, 0.2, 0.5, 1.0};
      plan.replicates = 30;
      break;
  }
  return plan;
}

}  // namespace tourdiv
