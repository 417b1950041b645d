#ifndef FUZEV_NESTED_HPP
#define FUZEV_NESTED_HPP

#include <Eigen/Dense>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "fuzev/ellipsoid.hpp"
#include "fuzev/model.hpp"
#include "fuzev/random.hpp"

namespace fuzev {

enum class Method { kBasic, kSingle, kMulti };
enum class Shrinkage { kDeterministic, kStochastic };

std::string method_name(Method m);
Method method_from_name(const std::string& name);

struct SamplerConfig {
  int n_live = 50;
  double tol = 0.5;              // termination threshold on the log-evidence increment
  Method method = Method::kMulti;
  double enlargement = 1.25;     // applied to the ellipsoid scale
  std::uint64_t rng_seed = 0;
  long max_iterations = 200000;
  Shrinkage shrinkage = Shrinkage::kDeterministic;
  long rejection_budget = 1000000;   // candidate draws per replacement
  double split_threshold = 0.7;
  int progress_every = 0;            // 0 disables progress callbacks

  void validate() const;
};

struct LivePoint {
  Eigen::VectorXd unit;
  Eigen::VectorXd theta;
  double log_l = 0.0;
};

struct WeightedSample {
  Eigen::VectorXd theta;
  double log_l = 0.0;
  double log_weight = 0.0;  // normalized posterior log weight
};

struct EvidenceResult {
  double log_z = 0.0;
  double log_z_err = 0.0;
  double information = 0.0;  // relative entropy H in nats
  long n_calls = 0;          // every likelihood evaluation, initialization included
  long n_iter = 0;
  bool converged = false;
  long plateau_rejections = 0;  // candidates rejected on a likelihood tie
  std::vector<WeightedSample> samples;
};

using LogDensityFn = std::function<double(const Eigen::VectorXd&)>;

struct Progress {
  long iteration;
  double log_z;
  double remaining;  // current value of the termination increment
};
using ProgressFn = std::function<void(const Progress&)>;

// log X_i under deterministic shrinkage, -i / n_live.
double shrink_log_mass(long i, int n_live);
// One stochastic step log t with t ~ Beta(n_live, 1).
double stochastic_log_shrink_step(RandomStream& rng, int n_live);
// logZ' = logsumexp(logZ, logL + log(e^{logx_prev} - e^{logx})).
double accumulate_log_evidence(double log_z, double log_l, double logx_prev, double logx);
// True iff logsumexp(logZ, logL_max + logX) - logZ < tol.
bool should_terminate(double log_z, double log_l_max, double log_x, double tol);

// Rejection sampling from the unit cube with the constraint logL > lambda
// (strict; ties count as plateau rejections). Throws SamplingError when the
// budget runs out.
LivePoint constrained_sample_basic(double lambda, const LogDensityFn& log_like,
                                   const PriorBox& box, RandomStream& rng, long budget,
                                   long& n_calls, long* plateau_rejections = nullptr);

// Volume-weighted ellipsoid choice, uniform draw inside, overlap-corrected
// by 1/(number of containing ellipsoids), cube-clipped, then logL > lambda.
LivePoint sample_in_ellipsoids(const std::vector<Ellipsoid>& ellipsoids, double lambda,
                               const LogDensityFn& log_like, const PriorBox& box,
                               RandomStream& rng, long budget, long& n_calls,
                               long* plateau_rejections = nullptr);

// Nested sampling over the prior box; log_like maps theta to log likelihood.
EvidenceResult run_nested(const LogDensityFn& log_like, const PriorBox& box,
                          const SamplerConfig& config, const ProgressFn& progress = {});
EvidenceResult run_nested(const ModelSpec& spec, const Dataset& data,
                          const SamplerConfig& config, const ProgressFn& progress = {});

struct PosteriorSummary {
  Eigen::VectorXd mean;
  Eigen::VectorXd stddev;   // weighted population standard deviation
  bool degenerate = false;  // effectively a single sample; stddev reported as 0
};
PosteriorSummary posterior_summary(const EvidenceResult& result);

struct LogBayesFactor {
  double log_ratio = 0.0;
  double err = 0.0;
  bool valid = false;  // false when either input had not converged
};
LogBayesFactor bayes_factor(const EvidenceResult& a, const EvidenceResult& b);

}  // namespace fuzev

#endif
