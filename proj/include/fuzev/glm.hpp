#ifndef FUZEV_GLM_HPP
#define FUZEV_GLM_HPP

#include <Eigen/Dense>
#include <string>
#include <vector>

namespace fuzev {

// One monomial: per-covariate integer exponents. All-zero exponents = intercept.
struct GlmTerm {
  std::vector<int> exponents;

  bool is_intercept() const {
    for (int e : exponents)
      if (e != 0) return false;
    return true;
  }
};

// Identity-link linear predictor mu = sum_t alpha_t * prod_j x_j^{e_tj}.
struct GlmModel {
  std::vector<std::string> covariates;
  std::vector<GlmTerm> terms;

  int coefficient_count() const { return static_cast<int>(terms.size()); }
  void validate() const;
};

double glm_mean(const GlmModel& glm, const Eigen::VectorXd& alpha,
                const Eigen::VectorXd& x);

}  // namespace fuzev

#endif
