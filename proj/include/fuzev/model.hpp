#ifndef FUZEV_MODEL_HPP
#define FUZEV_MODEL_HPP

#include <Eigen/Dense>
#include <string>
#include <variant>
#include <vector>

#include "fuzev/dataset.hpp"
#include "fuzev/fuzzy.hpp"
#include "fuzev/glm.hpp"

namespace fuzev {

struct PriorBox {
  Eigen::VectorXd lower;
  Eigen::VectorXd upper;

  int dim() const { return static_cast<int>(lower.size()); }
  void validate() const;
};

// Componentwise affine map from the unit hypercube into the box.
Eigen::VectorXd prior_transform(const Eigen::VectorXd& unit, const PriorBox& box);
Eigen::VectorXd prior_inverse(const Eigen::VectorXd& theta, const PriorBox& box);

struct SigmaMode {
  enum class Kind { kFixed, kEstimated };
  Kind kind = Kind::kEstimated;
  double value = 1.0;    // fixed sigma
  double lower = 0.01;   // estimated-sigma prior bounds
  double upper = 50.0;

  static SigmaMode fixed(double sigma);
  static SigmaMode estimated(double lower = 0.01, double upper = 50.0);
  bool is_estimated() const { return kind == Kind::kEstimated; }
  std::string tag() const;  // "est" or "fixed=<value>"
};

// A likelihood model for the sampler: a fuzzy rule base or a GLM, its prior
// box (estimated sigma appended last), and the noise regime.
struct ModelSpec {
  std::string name;
  std::variant<RuleBase, GlmModel> model;
  PriorBox prior;
  SigmaMode sigma;

  bool is_fuzzy() const { return std::holds_alternative<RuleBase>(model); }
  const RuleBase& rule_base() const { return std::get<RuleBase>(model); }
  const GlmModel& glm() const { return std::get<GlmModel>(model); }

  int dim() const { return prior.dim(); }
  int model_dim() const { return dim() - (sigma.is_estimated() ? 1 : 0); }
  std::vector<std::string> covariate_names() const;
  std::string prior_tag() const;  // "[lo,hi]" of the first model parameter
  void validate() const;
};

// Fuzzy prior = the universe bounds of each layout slot.
ModelSpec make_fuzzy_spec(std::string name, RuleBase rb, SigmaMode sigma);
ModelSpec make_glm_spec(std::string name, GlmModel glm, double coeff_lower,
                        double coeff_upper, SigmaMode sigma);
// Re-boxes the GLM coefficient prior, leaving any sigma dimension untouched.
void set_glm_prior_range(ModelSpec& spec, double lower, double upper);

// Dataset columns consumed by the model, matched by name.
std::vector<int> bind_columns(const ModelSpec& spec, const Dataset& data);

// Row-wise model means; X columns follow covariate_names() order.
Eigen::VectorXd predict(const ModelSpec& spec, const Eigen::VectorXd& theta,
                        const Eigen::MatrixXd& X);
Eigen::VectorXd predict(const ModelSpec& spec, const Eigen::VectorXd& theta,
                        const Dataset& data);

// Independent Gaussian log density sum_n [-0.5 log(2 pi s^2) - r_n^2/(2 s^2)],
// sigma from the mode (fixed) or the trailing theta component (estimated).
double log_likelihood(const ModelSpec& spec, const Eigen::VectorXd& theta,
                      const Dataset& data);

// Binds (spec, data) once; referentially transparent and safe to share
// across concurrent runs.
class LikelihoodModel {
 public:
  LikelihoodModel(const ModelSpec& spec, const Dataset& data);
  double operator()(const Eigen::VectorXd& theta) const;
  const ModelSpec& spec() const { return *spec_; }

 private:
  const ModelSpec* spec_;
  Eigen::MatrixXd x_bound_;  // columns reordered to the model's covariates
  Eigen::VectorXd y_;
};

}  // namespace fuzev

#endif
