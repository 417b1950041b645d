#include "fuzev/nested.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "fuzev/errors.hpp"
#include "fuzev/numerics.hpp"

namespace fuzev {

std::string method_name(Method m) {
  switch (m) {
    case Method::kBasic: return "basic";
    case Method::kSingle: return "single";
    case Method::kMulti: return "multi";
  }
  return "multi";
}

Method method_from_name(const std::string& name) {
  if (name == "basic") return Method::kBasic;
  if (name == "single") return Method::kSingle;
  if (name == "multi") return Method::kMulti;
  throw SpecError("unknown sampling method '" + name + "'");
}

void SamplerConfig::validate() const {
  if (n_live < 2) throw SpecError("sampler: n_live must be at least 2");
  if (!(tol > 0.0)) throw SpecError("sampler: tol must be positive");
  if (enlargement < 1.0) throw SpecError("sampler: enlargement must be >= 1");
  if (max_iterations < 1) throw SpecError("sampler: max_iterations must be positive");
  if (rejection_budget < 1) throw SpecError("sampler: rejection budget must be positive");
  if (!(split_threshold > 0.0 && split_threshold <= 1.0))
    throw SpecError("sampler: split threshold must lie in (0,1]");
}

double shrink_log_mass(long i, int n_live) {
  return -static_cast<double>(i) / static_cast<double>(n_live);
}

double stochastic_log_shrink_step(RandomStream& rng, int n_live) {
  // Beta(N,1) by inverse CDF: t = u^{1/N}, so log t = log(u) / N.
  double u;
  do {
    u = rng.uniform();
  } while (u <= 0.0);
  return std::log(u) / static_cast<double>(n_live);
}

double accumulate_log_evidence(double log_z, double log_l, double logx_prev, double logx) {
  return log_add_exp(log_z, log_l + log_sub_exp(logx_prev, logx));
}

bool should_terminate(double log_z, double log_l_max, double log_x, double tol) {
  return log_add_exp(log_z, log_l_max + log_x) - log_z < tol;
}

namespace {

Eigen::VectorXd uniform_unit_vector(RandomStream& rng, int d) {
  Eigen::VectorXd u(d);
  for (int j = 0; j < d; ++j) u[j] = rng.uniform();
  return u;
}

bool in_unit_cube(const Eigen::VectorXd& u) {
  return (u.array() >= 0.0).all() && (u.array() <= 1.0).all();
}

}  // namespace

namespace {

void note_plateau_tie(long& consecutive, long* total) {
  if (total) ++*total;
  if (++consecutive == 1000)
    std::fprintf(stderr, "fuzev: 1000 consecutive likelihood ties at the contour; "
                         "the likelihood appears to plateau\n");
}

}  // namespace

LivePoint constrained_sample_basic(double lambda, const LogDensityFn& log_like,
                                   const PriorBox& box, RandomStream& rng, long budget,
                                   long& n_calls, long* plateau_rejections) {
  long consecutive_ties = 0;
  for (long attempt = 0; attempt < budget; ++attempt) {
    LivePoint p;
    p.unit = uniform_unit_vector(rng, box.dim());
    p.theta = prior_transform(p.unit, box);
    p.log_l = log_like(p.theta);
    ++n_calls;
    if (p.log_l > lambda) return p;
    if (p.log_l == lambda)
      note_plateau_tie(consecutive_ties, plateau_rejections);
    else
      consecutive_ties = 0;
  }
  throw SamplingError("constrained sampling exhausted its rejection budget");
}

LivePoint sample_in_ellipsoids(const std::vector<Ellipsoid>& ellipsoids, double lambda,
                               const LogDensityFn& log_like, const PriorBox& box,
                               RandomStream& rng, long budget, long& n_calls,
                               long* plateau_rejections) {
  if (ellipsoids.empty()) throw SpecError("sample_in_ellipsoids: no ellipsoids");

  // Selection weights proportional to volume, computed stably in log space.
  const std::size_t m = ellipsoids.size();
  std::vector<double> log_vols(m);
  for (std::size_t k = 0; k < m; ++k) log_vols[k] = ellipsoids[k].log_volume();
  const double log_total = log_sum_exp(log_vols);
  std::vector<double> cumulative(m);
  double acc = 0.0;
  for (std::size_t k = 0; k < m; ++k) {
    acc += std::exp(log_vols[k] - log_total);
    cumulative[k] = acc;
  }
  cumulative[m - 1] = 1.0;

  long consecutive_ties = 0;
  for (long attempt = 0; attempt < budget; ++attempt) {
    const double pick = rng.uniform();
    std::size_t chosen = 0;
    while (chosen + 1 < m && cumulative[chosen] < pick) ++chosen;

    LivePoint p;
    p.unit = ellipsoids[chosen].sample(rng);
    if (!in_unit_cube(p.unit)) continue;

    if (m > 1) {
      int containing = 0;
      for (const auto& e : ellipsoids) containing += e.contains(p.unit);
      if (containing > 1 && rng.uniform() * containing >= 1.0) continue;
    }

    p.theta = prior_transform(p.unit, box);
    p.log_l = log_like(p.theta);
    ++n_calls;
    if (p.log_l > lambda) return p;
    if (p.log_l == lambda)
      note_plateau_tie(consecutive_ties, plateau_rejections);
    else
      consecutive_ties = 0;
  }
  throw SamplingError("ellipsoidal sampling exhausted its rejection budget");
}

namespace {

struct ShellRecord {
  Eigen::VectorXd theta;
  double log_l;
  double log_width;  // log(X_{i-1} - X_i)
};

Eigen::MatrixXd live_unit_matrix(const std::vector<LivePoint>& live) {
  Eigen::MatrixXd units(static_cast<Eigen::Index>(live.size()), live[0].unit.size());
  for (std::size_t i = 0; i < live.size(); ++i) units.row(static_cast<Eigen::Index>(i)) = live[i].unit;
  return units;
}

}  // namespace

EvidenceResult run_nested(const LogDensityFn& log_like, const PriorBox& box,
                          const SamplerConfig& config, const ProgressFn& progress) {
  config.validate();
  box.validate();

  RandomStream rng(config.rng_seed);
  const int n_live = config.n_live;
  std::vector<LivePoint> live(static_cast<std::size_t>(n_live));
  EvidenceResult result;

  for (auto& p : live) {
    p.unit = uniform_unit_vector(rng, box.dim());
    p.theta = prior_transform(p.unit, box);
    p.log_l = log_like(p.theta);
    ++result.n_calls;
  }
  if (std::all_of(live.begin(), live.end(),
                  [](const LivePoint& p) { return p.log_l == kNegInf; }))
    throw SamplingError("initialization failed: likelihood is zero at every live point");

  std::vector<ShellRecord> shells;
  double log_z = kNegInf;
  double logx_prev = 0.0;
  double logx = 0.0;

  while (result.n_iter < config.max_iterations) {
    const long it = result.n_iter + 1;
    std::size_t worst = 0;
    for (std::size_t i = 1; i < live.size(); ++i)
      if (live[i].log_l < live[worst].log_l) worst = i;
    const double lambda = live[worst].log_l;

    logx = (config.shrinkage == Shrinkage::kDeterministic)
               ? shrink_log_mass(it, n_live)
               : logx_prev + stochastic_log_shrink_step(rng, n_live);
    const double log_width = log_sub_exp(logx_prev, logx);
    log_z = log_add_exp(log_z, lambda + log_width);
    shells.push_back({live[worst].theta, lambda, log_width});

    try {
      switch (config.method) {
        case Method::kBasic:
          live[worst] = constrained_sample_basic(lambda, log_like, box, rng,
                                                 config.rejection_budget, result.n_calls,
                                                 &result.plateau_rejections);
          break;
        case Method::kSingle: {
          const Ellipsoid ell = bounding_ellipsoid(live_unit_matrix(live), config.enlargement);
          live[worst] = sample_in_ellipsoids({ell}, lambda, log_like, box, rng,
                                             config.rejection_budget, result.n_calls,
                                             &result.plateau_rejections);
          break;
        }
        case Method::kMulti: {
          const auto ells = multi_decompose(live_unit_matrix(live), config.enlargement,
                                            config.split_threshold, rng);
          live[worst] = sample_in_ellipsoids(ells, lambda, log_like, box, rng,
                                             config.rejection_budget, result.n_calls,
                                             &result.plateau_rejections);
          break;
        }
      }
    } catch (const SamplingError&) {
      // The worst point was never replaced; undo its shell and stop here.
      shells.pop_back();
      logx = logx_prev;
      result.converged = false;
      break;
    }

    result.n_iter = it;
    double log_l_max = kNegInf;
    for (const auto& p : live) log_l_max = std::max(log_l_max, p.log_l);
    const double remaining = log_add_exp(log_z, log_l_max + logx) - log_z;
    if (config.progress_every > 0 && progress && it % config.progress_every == 0)
      progress({it, log_z, remaining});
    logx_prev = logx;
    if (remaining < config.tol) {
      result.converged = true;
      break;
    }
  }

  // Remaining live points each carry X_final / n_live at their own likelihood.
  const double log_width_live = logx_prev - std::log(static_cast<double>(n_live));
  result.samples.reserve(shells.size() + live.size());
  for (auto& s : shells) result.samples.push_back({std::move(s.theta), s.log_l, s.log_width});
  for (auto& p : live) result.samples.push_back({std::move(p.theta), p.log_l, log_width_live});

  double log_z_final = kNegInf;
  for (const auto& s : result.samples)
    log_z_final = log_add_exp(log_z_final, s.log_l + s.log_weight);
  result.log_z = log_z_final;

  // Second pass: H = sum p_i log L_i - log Z with p_i the normalized weights.
  double information = 0.0;
  for (auto& s : result.samples) {
    const double log_p = s.log_l + s.log_weight - log_z_final;
    const double p = std::exp(log_p);
    if (p > 0.0) information += p * s.log_l;
    s.log_weight = log_p;
  }
  information -= log_z_final;
  result.information = std::max(0.0, information);
  result.log_z_err = std::sqrt(result.information / n_live);
  return result;
}

EvidenceResult run_nested(const ModelSpec& spec, const Dataset& data,
                          const SamplerConfig& config, const ProgressFn& progress) {
  LikelihoodModel like(spec, data);
  return run_nested([&like](const Eigen::VectorXd& theta) { return like(theta); },
                    spec.prior, config, progress);
}

PosteriorSummary posterior_summary(const EvidenceResult& result) {
  long finite = 0;
  for (const auto& s : result.samples)
    if (s.log_weight > kNegInf) ++finite;
  if (finite < 2)
    throw SpecError("posterior_summary: needs at least two samples with finite weights");

  const int d = static_cast<int>(result.samples.front().theta.size());
  Eigen::VectorXd mean = Eigen::VectorXd::Zero(d);
  double max_weight = 0.0;
  for (const auto& s : result.samples) {
    const double w = std::exp(s.log_weight);
    mean += w * s.theta;
    max_weight = std::max(max_weight, w);
  }
  Eigen::VectorXd var = Eigen::VectorXd::Zero(d);
  for (const auto& s : result.samples) {
    const double w = std::exp(s.log_weight);
    const Eigen::VectorXd diff = s.theta - mean;
    var += w * diff.cwiseProduct(diff);
  }

  PosteriorSummary summary;
  summary.mean = std::move(mean);
  summary.degenerate = max_weight >= 1.0 - 1e-12;
  summary.stddev = summary.degenerate ? Eigen::VectorXd::Zero(d).eval()
                                      : var.cwiseSqrt().eval();
  return summary;
}

LogBayesFactor bayes_factor(const EvidenceResult& a, const EvidenceResult& b) {
  LogBayesFactor bf;
  bf.valid = a.converged && b.converged;
  if (!bf.valid) return bf;
  bf.log_ratio = a.log_z - b.log_z;
  bf.err = std::sqrt(a.log_z_err * a.log_z_err + b.log_z_err * b.log_z_err);
  return bf;
}

}  // namespace fuzev
