#include "fuzev/glm.hpp"

#include "fuzev/errors.hpp"

namespace fuzev {

void GlmModel::validate() const {
  if (covariates.empty()) throw SpecError("glm: no covariates declared");
  if (terms.empty()) throw SpecError("glm: no terms declared");
  for (const auto& t : terms) {
    if (t.exponents.size() != covariates.size())
      throw SpecError("glm: term exponent count does not match covariate count");
    for (int e : t.exponents)
      if (e < 0) throw SpecError("glm: exponents must be non-negative");
  }
}

double glm_mean(const GlmModel& glm, const Eigen::VectorXd& alpha,
                const Eigen::VectorXd& x) {
  if (alpha.size() != glm.coefficient_count())
    throw SpecError("glm_mean: " + std::to_string(alpha.size()) + " coefficients for " +
                    std::to_string(glm.coefficient_count()) + " terms");
  if (x.size() != static_cast<Eigen::Index>(glm.covariates.size()))
    throw SpecError("glm_mean: covariate vector length mismatch");
  double mu = 0.0;
  for (int t = 0; t < glm.coefficient_count(); ++t) {
    double monomial = 1.0;
    const auto& exps = glm.terms[t].exponents;
    for (std::size_t j = 0; j < exps.size(); ++j)
      for (int k = 0; k < exps[j]; ++k) monomial *= x[static_cast<Eigen::Index>(j)];
    mu += alpha[t] * monomial;
  }
  return mu;
}

}  // namespace fuzev
