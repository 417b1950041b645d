#include "fuzev/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>

#include "fuzev/builtin.hpp"
#include "fuzev/errors.hpp"
#include "fuzev/spec_io.hpp"

namespace fuzev {

namespace {

Dataset generate_from_rule_base(const ModelSpec& spec, const Eigen::VectorXd& phi,
                                std::vector<std::string> columns, bool append_dummy,
                                std::uint64_t seed, int n) {
  if (n < 1) throw SpecError("dataset generation: n must be at least 1");
  const RuleBase& rb = spec.rule_base();
  const FuzzyEvaluator eval(rb, phi);
  const int p = static_cast<int>(rb.input_sets().size());

  RandomStream rng(seed);
  Dataset data;
  data.columns = std::move(columns);
  data.X.resize(n, p + (append_dummy ? 1 : 0));
  data.y.resize(n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < static_cast<int>(data.X.cols()); ++j) {
      const Universe& u = (j < p) ? rb.input_sets()[static_cast<std::size_t>(j)].universe
                                  : Universe{0.0, 10.0};
      data.X(i, j) = u.lower + rng.uniform() * u.span();
    }
    data.y[i] = eval(data.X.row(i).head(p));
  }
  return data;
}

}  // namespace

Dataset generate_synthetic(std::uint64_t seed, int n) {
  return generate_from_rule_base(builtin_spec("h_true"), synthetic_true_parameters(),
                                 {"loc_risk", "maintenance", "dummy_covar", "downtime"},
                                 /*append_dummy=*/true, seed, n);
}

Dataset generate_standin(std::uint64_t seed, int n, const Eigen::VectorXd& phi) {
  Eigen::VectorXd p = phi;
  if (p.size() == 0) {
    p.resize(12);
    p << 5, 5, 5, 5, 5, 5, 5, 5, 5, 50, 50, 50;
  }
  return generate_from_rule_base(builtin_spec("h_rw1"), p,
                                 {"o_and_m", "loss_history", "dntnf", "uptime"},
                                 /*append_dummy=*/false, seed, n);
}

std::string RosterEntry::display() const {
  if (!prior_range) return name;
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%s@[%g,%g]", name.c_str(), prior_range->first,
                prior_range->second);
  return buf;
}

namespace {

std::uint64_t parse_u64(const std::string& tok, const std::string& what) {
  try {
    return std::stoull(tok);
  } catch (const std::exception&) {
    throw SpecError("plan: cannot parse " + what + " from '" + tok + "'");
  }
}

double parse_num(const std::string& tok, const std::string& what) {
  try {
    return std::stod(tok);
  } catch (const std::exception&) {
    throw SpecError("plan: cannot parse " + what + " from '" + tok + "'");
  }
}

// "key=value" -> value, or throws when the key does not match.
std::string expect_kv(const std::string& tok, const std::string& key) {
  const auto eq = tok.find('=');
  if (eq == std::string::npos || tok.substr(0, eq) != key)
    throw SpecError("plan: expected '" + key + "=<value>', got '" + tok + "'");
  return tok.substr(eq + 1);
}

RosterEntry parse_roster_entry(const std::string& tok) {
  RosterEntry entry;
  const auto at = tok.find('@');
  if (at == std::string::npos) {
    entry.name = tok;
    return entry;
  }
  entry.name = tok.substr(0, at);
  const std::string range = tok.substr(at + 1);
  if (range.size() < 5 || range.front() != '[' || range.back() != ']')
    throw SpecError("plan: roster prior override must look like name@[lo,hi]");
  const auto comma = range.find(',');
  if (comma == std::string::npos)
    throw SpecError("plan: roster prior override must look like name@[lo,hi]");
  entry.prior_range = {parse_num(range.substr(1, comma - 1), "prior bound"),
                       parse_num(range.substr(comma + 1, range.size() - comma - 2),
                                 "prior bound")};
  return entry;
}

}  // namespace

ExperimentPlan parse_plan(std::istream& in) {
  ExperimentPlan plan;
  bool roster_seen = false;
  std::string line;
  while (std::getline(in, line)) {
    std::istringstream ss(line);
    std::vector<std::string> tokens;
    std::string tok;
    while (ss >> tok) {
      if (tok[0] == '#') break;
      tokens.push_back(tok);
    }
    if (tokens.empty()) continue;
    const std::string& key = tokens[0];

    if (key == "dataset") {
      if (tokens.size() >= 2 && tokens[1].rfind("file=", 0) == 0) {
        plan.source = ExperimentPlan::Source::kFile;
        plan.data_path = tokens[1].substr(5);
        continue;
      }
      if (tokens.size() < 3 || tokens[1] != "generate")
        throw SpecError("plan: dataset line must be 'dataset generate <kind> ...' or "
                        "'dataset file=<path>'");
      plan.source = ExperimentPlan::Source::kGenerate;
      plan.generator = tokens[2];
      if (plan.generator != "synthetic" && plan.generator != "standin")
        throw SpecError("plan: unknown dataset generator '" + plan.generator + "'");
      for (std::size_t i = 3; i < tokens.size(); ++i) {
        const auto eq = tokens[i].find('=');
        if (eq == std::string::npos) throw SpecError("plan: dataset options are key=value");
        const std::string k = tokens[i].substr(0, eq);
        const std::string v = tokens[i].substr(eq + 1);
        if (k == "seed")
          plan.data_seed = parse_u64(v, "dataset seed");
        else if (k == "n")
          plan.n_points = static_cast<int>(parse_u64(v, "dataset size"));
        else
          throw SpecError("plan: unknown dataset option '" + k + "'");
      }
    } else if (key == "roster") {
      for (std::size_t i = 1; i < tokens.size(); ++i)
        plan.roster.push_back(parse_roster_entry(tokens[i]));
      roster_seen = true;
    } else if (key == "methods") {
      plan.methods.clear();
      for (std::size_t i = 1; i < tokens.size(); ++i)
        plan.methods.push_back(method_from_name(tokens[i]));
      if (plan.methods.empty()) throw SpecError("plan: methods line is empty");
    } else if (key == "sampler") {
      for (std::size_t i = 1; i < tokens.size(); ++i) {
        const auto eq = tokens[i].find('=');
        if (eq == std::string::npos) throw SpecError("plan: sampler options are key=value");
        const std::string k = tokens[i].substr(0, eq);
        const std::string v = tokens[i].substr(eq + 1);
        if (k == "n_live")
          plan.n_live = static_cast<int>(parse_u64(v, "n_live"));
        else if (k == "tol")
          plan.tol = parse_num(v, "tol");
        else if (k == "seed")
          plan.master_seed = parse_u64(v, "seed");
        else if (k == "enlargement")
          plan.enlargement = parse_num(v, "enlargement");
        else if (k == "max_iterations")
          plan.max_iterations = static_cast<long>(parse_u64(v, "max_iterations"));
        else
          throw SpecError("plan: unknown sampler option '" + k + "'");
      }
    } else if (key == "sigma") {
      plan.sigma_modes.clear();
      for (std::size_t i = 1; i < tokens.size(); ++i) {
        if (tokens[i] == "est")
          plan.sigma_modes.push_back(SigmaMode::estimated());
        else
          plan.sigma_modes.push_back(
              SigmaMode::fixed(parse_num(expect_kv(tokens[i], "fixed"), "sigma")));
      }
      if (plan.sigma_modes.empty()) throw SpecError("plan: sigma line is empty");
    } else {
      throw SpecError("plan: unknown directive '" + key + "'");
    }
  }
  if (!roster_seen || plan.roster.empty()) throw SpecError("plan: roster must be non-empty");
  return plan;
}

ExperimentPlan read_plan(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path.string() + "'");
  return parse_plan(in);
}

Dataset load_plan_dataset(const ExperimentPlan& plan) {
  if (plan.source == ExperimentPlan::Source::kFile)
    return read_dataset_csv(plan.data_path);
  if (plan.generator == "synthetic") return generate_synthetic(plan.data_seed, plan.n_points);
  return generate_standin(plan.data_seed, plan.n_points);
}

ModelSpec resolve_spec(const RosterEntry& entry, const SigmaMode& sigma) {
  ModelSpec spec = is_builtin_spec(entry.name) ? builtin_spec(entry.name)
                                               : read_model_spec(entry.name);
  // Rebuild the prior with the requested sigma regime.
  if (spec.is_fuzzy()) {
    spec = make_fuzzy_spec(spec.name, spec.rule_base(), sigma);
  } else {
    const double lo = entry.prior_range ? entry.prior_range->first : spec.prior.lower[0];
    const double hi = entry.prior_range ? entry.prior_range->second : spec.prior.upper[0];
    spec = make_glm_spec(spec.name, spec.glm(), lo, hi, sigma);
  }
  return spec;
}

std::vector<CellOutcome> run_comparison(const ExperimentPlan& plan, const Dataset& data,
                                        int workers, const ProgressFn& progress) {
  if (plan.roster.empty()) throw SpecError("comparison: empty roster");
  if (plan.sigma_modes.empty()) throw SpecError("comparison: no sigma mode");

  struct Cell {
    RosterEntry entry;
    SigmaMode sigma;
    Method method;
  };
  std::vector<Cell> cells;
  for (const auto& sigma : plan.sigma_modes)
    for (const auto& entry : plan.roster)
      for (const auto method : plan.methods) cells.push_back({entry, sigma, method});

  std::vector<CellOutcome> outcomes(cells.size());
  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::string first_error;
  std::mutex error_mutex;

  auto worker = [&]() {
    while (!failed.load()) {
      const std::size_t k = next.fetch_add(1);
      if (k >= cells.size()) return;
      const Cell& cell = cells[k];
      try {
        const ModelSpec spec = resolve_spec(cell.entry, cell.sigma);
        SamplerConfig config;
        config.n_live = plan.n_live;
        config.tol = plan.tol;
        config.method = cell.method;
        config.enlargement = plan.enlargement;
        config.max_iterations = plan.max_iterations;
        const std::string tag = spec.name + "|" + spec.prior_tag() + "|" +
                                method_name(cell.method) + "|" + cell.sigma.tag();
        config.rng_seed = derive_seed(plan.master_seed, tag);

        CellOutcome& out = outcomes[k];
        out.record.meta = {spec.name, spec.prior_tag(), cell.sigma.tag(), "", config};
        out.record.result = run_nested(spec, data, config, progress);
        out.summary = posterior_summary(out.record.result);
        out.row = {spec.name,
                   spec.prior_tag(),
                   method_name(cell.method),
                   cell.sigma.tag(),
                   out.record.result.log_z,
                   out.record.result.log_z_err,
                   out.record.result.n_calls,
                   out.record.result.n_iter,
                   out.record.result.converged};
      } catch (const std::exception& e) {
        std::lock_guard<std::mutex> guard(error_mutex);
        if (!failed.exchange(true)) first_error = e.what();
        return;
      }
    }
  };

  const int n_workers = std::max(1, std::min<int>(workers, static_cast<int>(cells.size())));
  if (n_workers == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(n_workers));
    for (int t = 0; t < n_workers; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  if (failed.load()) throw Error("comparison cell failed: " + first_error);

  // Deterministic order: sigma regimes keep plan order, cells sort by logZ.
  std::vector<std::string> sigma_order;
  for (const auto& sigma : plan.sigma_modes) sigma_order.push_back(sigma.tag());
  auto sigma_rank = [&](const std::string& tag) {
    return std::find(sigma_order.begin(), sigma_order.end(), tag) - sigma_order.begin();
  };
  std::stable_sort(outcomes.begin(), outcomes.end(),
                   [&](const CellOutcome& a, const CellOutcome& b) {
                     const auto ra = sigma_rank(a.row.sigma);
                     const auto rb = sigma_rank(b.row.sigma);
                     if (ra != rb) return ra < rb;
                     if (a.row.log_z != b.row.log_z) return a.row.log_z > b.row.log_z;
                     if (a.row.model != b.row.model) return a.row.model < b.row.model;
                     if (a.row.prior != b.row.prior) return a.row.prior < b.row.prior;
                     return a.row.method < b.row.method;
                   });
  return outcomes;
}

std::vector<CellOutcome> sigma_regime_sweep(const ExperimentPlan& plan, const Dataset& data,
                                            const std::vector<SigmaMode>& regimes,
                                            int workers) {
  ExperimentPlan swept = plan;
  swept.sigma_modes = regimes;
  return run_comparison(swept, data, workers);
}

}  // namespace fuzev
