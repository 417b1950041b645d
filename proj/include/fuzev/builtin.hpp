#ifndef FUZEV_BUILTIN_HPP
#define FUZEV_BUILTIN_HPP

#include <map>
#include <string>

#include "fuzev/model.hpp"

namespace fuzev {

// The bundled roster: the synthetic rule bases and their GLM baselines on
// (loc_risk, maintenance), and the three-covariate uptime rule bases with
// GLM baselines on (o_and_m, loss_history, dntnf).
const std::map<std::string, std::string>& builtin_spec_documents();
std::map<std::string, ModelSpec> builtin_specs();
ModelSpec builtin_spec(const std::string& name);
bool is_builtin_spec(const std::string& name);

// True generating parameters of the synthetic downtime data: input peaks at 5,
// output peaks at 50.
Eigen::VectorXd synthetic_true_parameters();

}  // namespace fuzev

#endif
