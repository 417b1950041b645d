#include "fuzev/builtin.hpp"

#include "fuzev/errors.hpp"
#include "fuzev/spec_io.hpp"

namespace fuzev {

namespace {

constexpr const char* kHTrue = R"(# Generating rule base for the synthetic downtime data.
model fuzzy h_true
set loc_risk [0,10] LO MED HI
set maintenance [0,10] POOR AVG GOOD
output downtime [0,100] LO MED HI
rule IF loc_risk IS HI OR maintenance IS POOR THEN downtime IS HI
rule IF loc_risk IS MED OR maintenance IS AVG THEN downtime IS MED
rule IF loc_risk IS LO AND maintenance IS GOOD THEN downtime IS LO
sigma estimated 0.01 50
)";

constexpr const char* kH1 = R"(# h_true plus two antagonistic rules.
model fuzzy h1
set loc_risk [0,10] LO MED HI
set maintenance [0,10] POOR AVG GOOD
output downtime [0,100] LO MED HI
rule IF loc_risk IS HI OR maintenance IS POOR THEN downtime IS HI
rule IF loc_risk IS MED OR maintenance IS AVG THEN downtime IS MED
rule IF loc_risk IS LO AND maintenance IS GOOD THEN downtime IS LO
rule IF loc_risk IS LO THEN downtime IS HI
rule IF maintenance IS POOR THEN downtime IS LO
sigma estimated 0.01 50
)";

constexpr const char* kH2 = R"(# Drops the low-downtime rule in favour of one on the spurious covariate.
model fuzzy h2
set loc_risk [0,10] LO MED HI
set maintenance [0,10] POOR AVG GOOD
set dummy_covar [0,10] POOR AVG GOOD
output downtime [0,100] LO MED HI
rule IF loc_risk IS HI OR maintenance IS POOR THEN downtime IS HI
rule IF loc_risk IS MED OR maintenance IS AVG THEN downtime IS MED
rule IF dummy_covar IS POOR THEN downtime IS LO
sigma estimated 0.01 50
)";

constexpr const char* kH3 = R"(# h_true plus an inert rule on the spurious covariate.
model fuzzy h3
set loc_risk [0,10] LO MED HI
set maintenance [0,10] POOR AVG GOOD
set dummy_covar [0,10] POOR AVG GOOD
output downtime [0,100] LO MED HI
rule IF loc_risk IS HI OR maintenance IS POOR THEN downtime IS HI
rule IF loc_risk IS MED OR maintenance IS AVG THEN downtime IS MED
rule IF loc_risk IS LO AND maintenance IS GOOD THEN downtime IS LO
rule IF dummy_covar IS POOR THEN downtime IS LO
sigma estimated 0.01 50
)";

constexpr const char* kGlm1 = R"(model glm glm1
covariates loc_risk maintenance
term 0 0
term 1 1
prior -50 50
sigma estimated 0.01 50
)";

constexpr const char* kGlm2 = R"(model glm glm2
covariates loc_risk maintenance
term 0 0
term 1 0
term 0 1
prior -50 50
sigma estimated 0.01 50
)";

constexpr const char* kGlm3 = R"(model glm glm3
covariates loc_risk maintenance
term 0 0
term 2 0
term 0 2
term 1 1
prior -50 50
sigma estimated 0.01 50
)";

constexpr const char* kGlm4 = R"(model glm glm4
covariates loc_risk maintenance
term 0 0
term 1 0
term 0 1
term 2 0
term 0 2
term 1 1
prior -50 50
sigma estimated 0.01 50
)";

constexpr const char* kGlm5 = R"(model glm glm5
covariates loc_risk maintenance
term 0 0
term 1 0
term 0 1
term 2 0
term 0 2
term 1 1
term 3 0
term 0 3
term 2 1
prior -50 50
sigma estimated 0.01 50
)";

constexpr const char* kHRw1 = R"(# Uptime rule base weighting operation & maintenance highest.
model fuzzy h_rw1
set o_and_m [0,10] BAD AVG GOOD
set loss_history [0,10] BAD AVG GOOD
set dntnf [0,10] BAD AVG GOOD
output uptime [0,100] LOW MED HIGH
rule IF o_and_m IS GOOD THEN uptime IS HIGH
rule IF o_and_m IS GOOD AND dntnf IS AVG THEN uptime IS MED
rule IF o_and_m IS AVG THEN uptime IS HIGH
rule IF o_and_m IS BAD AND loss_history IS GOOD THEN uptime IS HIGH
rule IF o_and_m IS BAD AND loss_history IS BAD AND dntnf IS BAD THEN uptime IS LOW
sigma estimated 0.01 50
)";

constexpr const char* kHRw2 = R"(# Uptime rule base weighting loss history highest.
model fuzzy h_rw2
set o_and_m [0,10] BAD AVG GOOD
set loss_history [0,10] BAD AVG GOOD
set dntnf [0,10] BAD AVG GOOD
output uptime [0,100] LOW MED HIGH
rule IF loss_history IS GOOD THEN uptime IS HIGH
rule IF loss_history IS GOOD AND dntnf IS AVG THEN uptime IS MED
rule IF loss_history IS AVG THEN uptime IS HIGH
rule IF o_and_m IS GOOD AND loss_history IS BAD THEN uptime IS LOW
rule IF o_and_m IS BAD AND loss_history IS BAD AND dntnf IS BAD THEN uptime IS LOW
sigma estimated 0.01 50
)";

constexpr const char* kHRw3 = R"(# Uptime rule base weighting design, technology and fire risk highest.
model fuzzy h_rw3
set o_and_m [0,10] BAD AVG GOOD
set loss_history [0,10] BAD AVG GOOD
set dntnf [0,10] BAD AVG GOOD
output uptime [0,100] LOW MED HIGH
rule IF dntnf IS GOOD THEN uptime IS HIGH
rule IF o_and_m IS AVG AND dntnf IS GOOD THEN uptime IS MED
rule IF dntnf IS AVG THEN uptime IS MED
rule IF loss_history IS GOOD AND dntnf IS BAD THEN uptime IS HIGH
rule IF o_and_m IS BAD AND loss_history IS BAD AND dntnf IS BAD THEN uptime IS LOW
sigma estimated 0.01 50
)";

constexpr const char* kGlm6 = R"(model glm glm6
covariates o_and_m loss_history dntnf
term 0 0 0
term 1 0 0
term 0 1 0
term 0 0 1
prior -100 100
sigma estimated 0.01 50
)";

constexpr const char* kGlm7 = R"(# Linear terms, the three distinct pairwise products and the triple product.
model glm glm7
covariates o_and_m loss_history dntnf
term 0 0 0
term 1 0 0
term 0 1 0
term 0 0 1
term 1 1 0
term 1 0 1
term 0 1 1
term 1 1 1
prior -100 100
sigma estimated 0.01 50
)";

constexpr const char* kGlm8 = R"(# glm7 plus the squared terms from the unrestricted pairwise sum.
model glm glm8
covariates o_and_m loss_history dntnf
term 0 0 0
term 1 0 0
term 0 1 0
term 0 0 1
term 2 0 0
term 0 2 0
term 0 0 2
term 1 1 0
term 1 0 1
term 0 1 1
term 1 1 1
prior -100 100
sigma estimated 0.01 50
)";

}  // namespace

const std::map<std::string, std::string>& builtin_spec_documents() {
  static const std::map<std::string, std::string> docs = {
      {"h_true", kHTrue}, {"h1", kH1},         {"h2", kH2},     {"h3", kH3},
      {"glm1", kGlm1},    {"glm2", kGlm2},     {"glm3", kGlm3}, {"glm4", kGlm4},
      {"glm5", kGlm5},    {"h_rw1", kHRw1},    {"h_rw2", kHRw2}, {"h_rw3", kHRw3},
      {"glm6", kGlm6},    {"glm7", kGlm7},     {"glm8", kGlm8},
  };
  return docs;
}

std::map<std::string, ModelSpec> builtin_specs() {
  std::map<std::string, ModelSpec> specs;
  for (const auto& [name, doc] : builtin_spec_documents())
    specs.emplace(name, parse_model_spec_text(doc));
  return specs;
}

ModelSpec builtin_spec(const std::string& name) {
  const auto& docs = builtin_spec_documents();
  const auto it = docs.find(name);
  if (it == docs.end()) throw SpecError("no bundled model named '" + name + "'");
  return parse_model_spec_text(it->second);
}

bool is_builtin_spec(const std::string& name) {
  return builtin_spec_documents().count(name) > 0;
}

Eigen::VectorXd synthetic_true_parameters() {
  Eigen::VectorXd phi(9);
  phi << 5, 5, 5, 5, 5, 5, 50, 50, 50;
  return phi;
}

}  // namespace fuzev
