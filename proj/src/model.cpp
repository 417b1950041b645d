#include "fuzev/model.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>

#include "fuzev/errors.hpp"

namespace fuzev {

void PriorBox::validate() const {
  if (lower.size() != upper.size()) throw SpecError("prior box: bound lengths differ");
  if (lower.size() == 0) throw SpecError("prior box: empty");
  for (int j = 0; j < dim(); ++j)
    if (!(lower[j] < upper[j]))
      throw SpecError("prior box: lower must be below upper in component " + std::to_string(j));
}

Eigen::VectorXd prior_transform(const Eigen::VectorXd& unit, const PriorBox& box) {
  if (unit.size() != box.dim())
    throw SpecError("prior_transform: unit vector length " + std::to_string(unit.size()) +
                    " does not match box dimension " + std::to_string(box.dim()));
  for (int j = 0; j < box.dim(); ++j)
    if (unit[j] < 0.0 || unit[j] > 1.0)
      throw DomainError("prior_transform: component " + std::to_string(j) +
                        " outside [0,1]");
  return box.lower.array() + unit.array() * (box.upper - box.lower).array();
}

Eigen::VectorXd prior_inverse(const Eigen::VectorXd& theta, const PriorBox& box) {
  if (theta.size() != box.dim())
    throw SpecError("prior_inverse: length mismatch");
  return (theta - box.lower).array() / (box.upper - box.lower).array();
}

SigmaMode SigmaMode::fixed(double sigma) {
  if (!(sigma > 0.0)) throw DomainError("fixed sigma must be positive");
  SigmaMode m;
  m.kind = Kind::kFixed;
  m.value = sigma;
  return m;
}

SigmaMode SigmaMode::estimated(double lower, double upper) {
  if (!(lower > 0.0 && lower < upper))
    throw DomainError("estimated sigma needs 0 < lower < upper");
  SigmaMode m;
  m.kind = Kind::kEstimated;
  m.lower = lower;
  m.upper = upper;
  return m;
}

std::string SigmaMode::tag() const {
  if (is_estimated()) return "est";
  char buf[32];
  std::snprintf(buf, sizeof(buf), "fixed=%g", value);
  return buf;
}

std::vector<std::string> ModelSpec::covariate_names() const {
  if (is_fuzzy()) {
    std::vector<std::string> names;
    for (const auto& s : rule_base().input_sets()) names.push_back(s.name);
    return names;
  }
  return glm().covariates;
}

std::string ModelSpec::prior_tag() const {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "[%g,%g]", prior.lower[0], prior.upper[0]);
  return buf;
}

void ModelSpec::validate() const {
  prior.validate();
  int base = 0;
  if (is_fuzzy()) {
    base = rule_base().parameter_count();
  } else {
    glm().validate();
    base = glm().coefficient_count();
  }
  const int expected = base + (sigma.is_estimated() ? 1 : 0);
  if (dim() != expected)
    throw SpecError("model '" + name + "': prior dimension " + std::to_string(dim()) +
                    ", expected " + std::to_string(expected));
}

ModelSpec make_fuzzy_spec(std::string name, RuleBase rb, SigmaMode sigma) {
  const int d = rb.parameter_count() + (sigma.is_estimated() ? 1 : 0);
  PriorBox box;
  box.lower.resize(d);
  box.upper.resize(d);
  for (int j = 0; j < rb.parameter_count(); ++j) {
    const auto& entry = rb.layout()[static_cast<std::size_t>(j)];
    const Universe& u = entry.is_output ? rb.output_set().universe
                                        : rb.input_sets()[static_cast<std::size_t>(entry.set)].universe;
    box.lower[j] = u.lower;
    box.upper[j] = u.upper;
  }
  if (sigma.is_estimated()) {
    box.lower[d - 1] = sigma.lower;
    box.upper[d - 1] = sigma.upper;
  }
  ModelSpec spec{std::move(name), std::move(rb), std::move(box), sigma};
  spec.validate();
  return spec;
}

ModelSpec make_glm_spec(std::string name, GlmModel glm, double coeff_lower,
                        double coeff_upper, SigmaMode sigma) {
  glm.validate();
  const int m = glm.coefficient_count();
  const int d = m + (sigma.is_estimated() ? 1 : 0);
  PriorBox box;
  box.lower = Eigen::VectorXd::Constant(d, coeff_lower);
  box.upper = Eigen::VectorXd::Constant(d, coeff_upper);
  if (sigma.is_estimated()) {
    box.lower[d - 1] = sigma.lower;
    box.upper[d - 1] = sigma.upper;
  }
  ModelSpec spec{std::move(name), std::move(glm), std::move(box), sigma};
  spec.validate();
  return spec;
}

void set_glm_prior_range(ModelSpec& spec, double lower, double upper) {
  if (spec.is_fuzzy()) throw SpecError("prior range override only applies to GLM models");
  if (!(lower < upper)) throw SpecError("prior range: lower must be below upper");
  for (int j = 0; j < spec.model_dim(); ++j) {
    spec.prior.lower[j] = lower;
    spec.prior.upper[j] = upper;
  }
}

std::vector<int> bind_columns(const ModelSpec& spec, const Dataset& data) {
  std::vector<int> indices;
  for (const auto& name : spec.covariate_names()) {
    const int j = data.column_index(name);
    if (j < 0)
      throw SpecError("model '" + spec.name + "' needs column '" + name +
                      "', dataset does not have it");
    indices.push_back(j);
  }
  return indices;
}

namespace {

Eigen::VectorXd predict_bound(const ModelSpec& spec, const Eigen::VectorXd& theta,
                              const Eigen::MatrixXd& x_bound) {
  const Eigen::VectorXd model_theta = theta.head(spec.model_dim());
  Eigen::VectorXd mu(x_bound.rows());
  if (spec.is_fuzzy()) {
    FuzzyEvaluator eval(spec.rule_base(), model_theta);
    for (Eigen::Index i = 0; i < x_bound.rows(); ++i) mu[i] = eval(x_bound.row(i));
  } else {
    for (Eigen::Index i = 0; i < x_bound.rows(); ++i)
      mu[i] = glm_mean(spec.glm(), model_theta, x_bound.row(i));
  }
  return mu;
}

double gaussian_log_likelihood(const Eigen::VectorXd& y, const Eigen::VectorXd& mu,
                               double sigma) {
  if (!(sigma > 0.0)) throw DomainError("log_likelihood: sigma must be positive");
  const double n = static_cast<double>(y.size());
  const double ssr = (y - mu).squaredNorm();
  return -0.5 * n * std::log(2.0 * std::numbers::pi * sigma * sigma) -
         ssr / (2.0 * sigma * sigma);
}

}  // namespace

Eigen::VectorXd predict(const ModelSpec& spec, const Eigen::VectorXd& theta,
                        const Eigen::MatrixXd& X) {
  if (theta.size() != spec.dim())
    throw SpecError("predict: theta length " + std::to_string(theta.size()) +
                    " does not match model dimension " + std::to_string(spec.dim()));
  return predict_bound(spec, theta, X);
}

Eigen::VectorXd predict(const ModelSpec& spec, const Eigen::VectorXd& theta,
                        const Dataset& data) {
  const auto cols = bind_columns(spec, data);
  Eigen::MatrixXd x_bound(data.n(), static_cast<Eigen::Index>(cols.size()));
  for (std::size_t j = 0; j < cols.size(); ++j) x_bound.col(static_cast<Eigen::Index>(j)) = data.X.col(cols[j]);
  return predict(spec, theta, x_bound);
}

double log_likelihood(const ModelSpec& spec, const Eigen::VectorXd& theta,
                      const Dataset& data) {
  const Eigen::VectorXd mu = predict(spec, theta, data);
  const double sigma = spec.sigma.is_estimated() ? theta[spec.dim() - 1] : spec.sigma.value;
  return gaussian_log_likelihood(data.y, mu, sigma);
}

LikelihoodModel::LikelihoodModel(const ModelSpec& spec, const Dataset& data)
    : spec_(&spec), y_(data.y) {
  spec.validate();
  data.validate();
  const auto cols = bind_columns(spec, data);
  x_bound_.resize(data.n(), static_cast<Eigen::Index>(cols.size()));
  for (std::size_t j = 0; j < cols.size(); ++j)
    x_bound_.col(static_cast<Eigen::Index>(j)) = data.X.col(cols[j]);
}

double LikelihoodModel::operator()(const Eigen::VectorXd& theta) const {
  if (theta.size() != spec_->dim())
    throw SpecError("likelihood: theta length mismatch for model '" + spec_->name + "'");
  const Eigen::VectorXd mu = predict_bound(*spec_, theta, x_bound_);
  const double sigma =
      spec_->sigma.is_estimated() ? theta[spec_->dim() - 1] : spec_->sigma.value;
  return gaussian_log_likelihood(y_, mu, sigma);
}

}  // namespace fuzev
