#ifndef FUZEV_EXPERIMENT_HPP
#define FUZEV_EXPERIMENT_HPP

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "fuzev/dataset.hpp"
#include "fuzev/nested.hpp"
#include "fuzev/result_io.hpp"

namespace fuzev {

// Synthetic downtime data: loc_risk and maintenance uniform on [0,10],
// downtime inferred from h_true at the true parameters, plus a spurious
// dummy_covar column uniform on [0,10]. Fully determined by the seed.
Dataset generate_synthetic(std::uint64_t seed, int n = 50);

// Three-covariate uptime stand-in: o_and_m, loss_history, dntnf uniform on
// [0,10], uptime inferred from h_rw1 at phi (defaults to peaks 5 / 50).
Dataset generate_standin(std::uint64_t seed, int n = 50,
                         const Eigen::VectorXd& phi = Eigen::VectorXd());

struct RosterEntry {
  std::string name;
  std::optional<std::pair<double, double>> prior_range;  // GLM coefficient box override

  std::string display() const;
};

struct ExperimentPlan {
  enum class Source { kGenerate, kFile };
  Source source = Source::kGenerate;
  std::string generator = "synthetic";  // "synthetic" or "standin"
  std::uint64_t data_seed = 0;
  int n_points = 50;
  std::string data_path;

  std::vector<RosterEntry> roster;
  std::vector<Method> methods = {Method::kSingle, Method::kMulti};
  std::vector<SigmaMode> sigma_modes = {SigmaMode::estimated()};

  int n_live = 50;
  double tol = 0.5;
  std::uint64_t master_seed = 0;
  double enlargement = 1.25;
  long max_iterations = 200000;
};

// Plan documents:
//   dataset generate <synthetic|standin> seed=<n> n=<rows>
//   dataset file=<path>
//   roster <name[@[lo,hi]]>...
//   methods <basic|single|multi>...
//   sampler n_live=<n> tol=<x> seed=<n> enlargement=<x> max_iterations=<n>
//   sigma <est|fixed=<x>>...
ExperimentPlan parse_plan(std::istream& in);
ExperimentPlan read_plan(const std::filesystem::path& path);

Dataset load_plan_dataset(const ExperimentPlan& plan);

// One comparison cell: a (model, prior, method, sigma) evidence run.
struct ComparisonRow {
  std::string model;
  std::string prior;
  std::string method;
  std::string sigma;
  double log_z = 0.0;
  double log_z_err = 0.0;
  long n_calls = 0;
  long n_iter = 0;
  bool converged = false;

  bool operator==(const ComparisonRow&) const = default;
};

struct CellOutcome {
  ComparisonRow row;
  RunRecord record;
  PosteriorSummary summary;
};

// Runs every (sigma, model, method) cell with an independently derived seed;
// cells are independent and fan out over `workers` threads. Rows come back
// sorted by sigma group, then descending logZ.
std::vector<CellOutcome> run_comparison(const ExperimentPlan& plan, const Dataset& data,
                                        int workers = 1, const ProgressFn& progress = {});

// Convenience wrapper that stamps the plan with one SigmaMode per regime.
std::vector<CellOutcome> sigma_regime_sweep(const ExperimentPlan& plan, const Dataset& data,
                                            const std::vector<SigmaMode>& regimes,
                                            int workers = 1);

ModelSpec resolve_spec(const RosterEntry& entry, const SigmaMode& sigma);

}  // namespace fuzev

#endif
