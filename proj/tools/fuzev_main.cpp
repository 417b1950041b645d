// fuzev: marginal-likelihood model comparison for fuzzy rule bases and GLMs.
//
// Subcommands: generate (seeded datasets), evidence (one nested-sampling run),
// compare (roster comparison from a plan file), report (re-emit report tables
// from stored run documents). Machine output goes to stdout / the output
// directory; progress goes to stderr. Exit codes: 0 success, 1 validation
// error, 2 completed with non-converged runs.

#include <CLI11.hpp>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <json.hpp>
#include <thread>

#include "fuzev/builtin.hpp"
#include "fuzev/errors.hpp"
#include "fuzev/experiment.hpp"
#include "fuzev/report.hpp"
#include "fuzev/spec_io.hpp"

namespace fs = std::filesystem;
using namespace fuzev;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitNotConverged = 2;

fs::path default_out_dir() {
  if (const char* env = std::getenv("FUZEV_OUT_DIR")) return env;
  return ".";
}

SigmaMode parse_sigma_flag(const std::string& flag) {
  if (flag == "est") return SigmaMode::estimated();
  try {
    return SigmaMode::fixed(std::stod(flag));
  } catch (const Error&) {
    throw;
  } catch (const std::exception&) {
    throw SpecError("--sigma expects 'est' or a positive value, got '" + flag + "'");
  }
}

std::optional<std::pair<double, double>> parse_prior_range_flag(const std::string& flag) {
  if (flag.empty()) return std::nullopt;
  const auto colon = flag.find(':');
  if (colon == std::string::npos)
    throw SpecError("--prior-range expects <lo>:<hi>, got '" + flag + "'");
  try {
    return std::make_pair(std::stod(flag.substr(0, colon)), std::stod(flag.substr(colon + 1)));
  } catch (const std::exception&) {
    throw SpecError("--prior-range expects <lo>:<hi>, got '" + flag + "'");
  }
}

void echo_config(const RunMeta& meta) {
  nlohmann::ordered_json j;
  j["model"] = meta.model;
  j["prior"] = meta.prior_tag;
  j["sigma"] = meta.sigma_tag;
  j["dataset"] = meta.dataset_id;
  j["method"] = method_name(meta.config.method);
  j["n_live"] = meta.config.n_live;
  j["tol"] = meta.config.tol;
  j["enlargement"] = meta.config.enlargement;
  j["seed"] = meta.config.rng_seed;
  j["max_iterations"] = meta.config.max_iterations;
  std::cout << j.dump() << std::endl;
}

ProgressFn stderr_progress() {
  return [](const Progress& p) {
    std::fprintf(stderr, "iter %ld  logZ %.4f  remaining %.4f\n", p.iteration, p.log_z,
                 p.remaining);
  };
}

// Keeps result file names shell-friendly.
std::string sanitize_component(const std::string& tag) {
  std::string s = tag;
  for (char& c : s)
    if (c == '=' || c == '/' || c == ' ' || c == ',') c = '-';
  return s;
}

int cmd_generate(std::uint64_t seed, int n, const std::string& source,
                 const std::string& out) {
  const Dataset data = (source == "standin") ? generate_standin(seed, n)
                                             : generate_synthetic(seed, n);
  write_dataset_csv(data, fs::path(out));
  std::fprintf(stderr, "wrote %d rows to %s\n", data.n(), out.c_str());
  return kExitOk;
}

int cmd_evidence(const std::string& spec_arg, const std::string& data_path,
                 const std::string& method, std::uint64_t seed, int n_live, double tol,
                 const std::string& sigma_flag, const std::string& prior_range_flag,
                 double enlargement, long max_iterations, const std::string& out_dir) {
  RosterEntry entry;
  entry.name = spec_arg;
  entry.prior_range = parse_prior_range_flag(prior_range_flag);
  const ModelSpec spec = resolve_spec(entry, parse_sigma_flag(sigma_flag));
  const Dataset data = read_dataset_csv(fs::path(data_path));

  SamplerConfig config;
  config.n_live = n_live;
  config.tol = tol;
  config.method = method_from_name(method);
  config.enlargement = enlargement;
  config.rng_seed = seed;
  config.max_iterations = max_iterations;
  config.progress_every = 100;

  RunRecord record;
  record.meta = {spec.name, spec.prior_tag(), spec.sigma.tag(),
                 fs::path(data_path).filename().string(), config};
  echo_config(record.meta);
  record.result = run_nested(spec, data, config, stderr_progress());

  fs::create_directories(out_dir);
  const fs::path out =
      fs::path(out_dir) / (spec.name + "." + method_name(config.method) + ".result.json");
  write_result(record, out);
  std::fprintf(stderr, "logZ = %.4f +/- %.4f  (calls %ld, iterations %ld)%s\n",
               record.result.log_z, record.result.log_z_err, record.result.n_calls,
               record.result.n_iter, record.result.converged ? "" : "  NOT CONVERGED");
  std::cout << out.string() << std::endl;
  return record.result.converged ? kExitOk : kExitNotConverged;
}

int cmd_compare(const std::string& plan_path, const std::string& out_dir, int workers,
                std::uint64_t seed_override, bool seed_given) {
  ExperimentPlan plan = read_plan(fs::path(plan_path));
  if (seed_given) plan.master_seed = seed_override;
  const Dataset data = load_plan_dataset(plan);

  nlohmann::ordered_json echo;
  echo["plan"] = plan_path;
  echo["master_seed"] = plan.master_seed;
  echo["n_live"] = plan.n_live;
  echo["tol"] = plan.tol;
  echo["workers"] = workers;
  std::cout << echo.dump() << std::endl;

  const auto outcomes = run_comparison(plan, data, workers);

  fs::create_directories(fs::path(out_dir) / "results");
  for (const auto& o : outcomes) {
    const std::string name = o.row.model + "." + sanitize_component(o.row.prior) + "." +
                             o.row.method + "." + sanitize_component(o.row.sigma) +
                             ".result.json";
    write_result(o.record, fs::path(out_dir) / "results" / name);
  }
  emit_report(outcomes, fs::path(out_dir));

  bool all_converged = true;
  for (const auto& o : outcomes) {
    std::fprintf(stderr, "%-8s %-10s %-7s %-10s logZ %10.3f +/- %.3f  Fcalls %ld%s\n",
                 o.row.model.c_str(), o.row.prior.c_str(), o.row.method.c_str(),
                 o.row.sigma.c_str(), o.row.log_z, o.row.log_z_err, o.row.n_calls,
                 o.row.converged ? "" : "  NOT CONVERGED");
    all_converged = all_converged && o.row.converged;
  }
  return all_converged ? kExitOk : kExitNotConverged;
}

int cmd_report(const std::string& results_dir, const std::string& out_dir) {
  std::vector<CellOutcome> outcomes;
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(results_dir))
    if (entry.is_regular_file() && entry.path().extension() == ".json")
      files.push_back(entry.path());
  std::sort(files.begin(), files.end());
  for (const auto& path : files) {
    CellOutcome o;
    o.record = read_result(path);
    o.row = {o.record.meta.model,
             o.record.meta.prior_tag,
             method_name(o.record.meta.config.method),
             o.record.meta.sigma_tag,
             o.record.result.log_z,
             o.record.result.log_z_err,
             o.record.result.n_calls,
             o.record.result.n_iter,
             o.record.result.converged};
    o.summary = posterior_summary(o.record.result);
    outcomes.push_back(std::move(o));
  }
  if (outcomes.empty()) throw IoError("no result documents in '" + results_dir + "'");
  std::stable_sort(outcomes.begin(), outcomes.end(),
                   [](const CellOutcome& a, const CellOutcome& b) {
                     if (a.row.sigma != b.row.sigma) return a.row.sigma < b.row.sigma;
                     return a.row.log_z > b.row.log_z;
                   });
  emit_report(outcomes, fs::path(out_dir));
  std::cout << (fs::path(out_dir)).string() << std::endl;
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bayesian evidence comparison for fuzzy rule-base models and GLMs"};
  app.require_subcommand(1);

  // generate
  auto* gen = app.add_subcommand("generate", "Write a seeded dataset as CSV");
  std::uint64_t gen_seed = 0;
  int gen_n = 50;
  std::string gen_source = "synthetic";
  std::string gen_out;
  gen->add_option("--seed", gen_seed, "RNG seed")->capture_default_str();
  gen->add_option("--n", gen_n, "Number of rows")->capture_default_str();
  gen->add_option("--source", gen_source, "Generator: synthetic or standin")
      ->check(CLI::IsMember({"synthetic", "standin"}))
      ->capture_default_str();
  gen->add_option("--out", gen_out, "Output CSV path")->required();

  // evidence
  auto* ev = app.add_subcommand("evidence", "Run nested sampling for one model");
  std::string ev_spec, ev_data, ev_method = "multi", ev_sigma = "est", ev_prior_range;
  std::uint64_t ev_seed = 0;
  int ev_nlive = 50;
  double ev_tol = 0.5, ev_enlargement = 1.25;
  long ev_max_iterations = 200000;
  std::string ev_out = default_out_dir().string();
  ev->add_option("--spec", ev_spec, "Bundled model name or model-spec file path")->required();
  ev->add_option("--data", ev_data, "Dataset CSV path")->required();
  ev->add_option("--method", ev_method, "Sampler: basic, single or multi")
      ->check(CLI::IsMember({"basic", "single", "multi"}))
      ->capture_default_str();
  ev->add_option("--seed", ev_seed, "RNG seed")->capture_default_str();
  ev->add_option("--n-live", ev_nlive, "Number of live points")->capture_default_str();
  ev->add_option("--tol", ev_tol, "Termination tolerance on the log-evidence increment")
      ->capture_default_str();
  ev->add_option("--sigma", ev_sigma, "Noise mode: est or a fixed value, e.g. 0.25")
      ->capture_default_str();
  ev->add_option("--prior-range", ev_prior_range, "GLM coefficient prior as <lo>:<hi>");
  ev->add_option("--enlargement", ev_enlargement, "Ellipsoid enlargement factor")
      ->capture_default_str();
  ev->add_option("--max-iterations", ev_max_iterations, "Iteration guard")
      ->capture_default_str();
  ev->add_option("--out", ev_out, "Output directory (default: FUZEV_OUT_DIR or .)");

  // compare
  auto* cmp = app.add_subcommand("compare", "Run a roster comparison from a plan file");
  std::string cmp_plan;
  std::string cmp_out = default_out_dir().string();
  int cmp_workers = static_cast<int>(std::thread::hardware_concurrency());
  std::uint64_t cmp_seed = 0;
  bool cmp_seed_given = false;
  cmp->add_option("--plan", cmp_plan, "Plan file path")->required();
  cmp->add_option("--out", cmp_out, "Output directory (default: FUZEV_OUT_DIR or .)");
  cmp->add_option("--workers", cmp_workers, "Worker threads for comparison cells")
      ->capture_default_str();
  cmp->add_option("--seed", cmp_seed, "Override the plan's master seed")
      ->each([&](const std::string&) { cmp_seed_given = true; });

  // report
  auto* rep = app.add_subcommand("report", "Re-emit report tables from result documents");
  std::string rep_results, rep_out = default_out_dir().string();
  rep->add_option("--results", rep_results, "Directory of .result.json documents")->required();
  rep->add_option("--out", rep_out, "Output directory (default: FUZEV_OUT_DIR or .)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    std::cerr << "error: " << e.what() << std::endl;
    return kExitUsage;
  }

  try {
    if (gen->parsed()) return cmd_generate(gen_seed, gen_n, gen_source, gen_out);
    if (ev->parsed())
      return cmd_evidence(ev_spec, ev_data, ev_method, ev_seed, ev_nlive, ev_tol, ev_sigma,
                          ev_prior_range, ev_enlargement, ev_max_iterations, ev_out);
    if (cmp->parsed()) return cmd_compare(cmp_plan, cmp_out, cmp_workers, cmp_seed,
                                          cmp_seed_given);
    if (rep->parsed()) return cmd_report(rep_results, rep_out);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << std::endl;
    return kExitUsage;
  }
  return kExitUsage;
}
