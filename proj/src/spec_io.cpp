#include "fuzev/spec_io.hpp"

#include <fstream>
#include <optional>
#include <sstream>

#include "fuzev/errors.hpp"

namespace fuzev {

namespace {

std::vector<std::string> tokenize(const std::string& line) {
  std::vector<std::string> tokens;
  std::istringstream ss(line);
  std::string tok;
  while (ss >> tok) {
    if (tok[0] == '#') break;
    tokens.push_back(tok);
  }
  return tokens;
}

double parse_number(const std::string& tok, const std::string& what) {
  std::size_t pos = 0;
  double v = 0.0;
  try {
    v = std::stod(tok, &pos);
  } catch (const std::exception&) {
    throw SpecError("model spec: cannot parse " + what + " from '" + tok + "'");
  }
  if (pos != tok.size())
    throw SpecError("model spec: trailing junk in " + what + " '" + tok + "'");
  return v;
}

// "[lo,hi]"
Universe parse_universe(const std::string& tok) {
  if (tok.size() < 5 || tok.front() != '[' || tok.back() != ']')
    throw SpecError("model spec: universe must look like [lo,hi], got '" + tok + "'");
  const auto comma = tok.find(',');
  if (comma == std::string::npos)
    throw SpecError("model spec: universe must look like [lo,hi], got '" + tok + "'");
  Universe u;
  u.lower = parse_number(tok.substr(1, comma - 1), "universe bound");
  u.upper = parse_number(tok.substr(comma + 1, tok.size() - comma - 2), "universe bound");
  return u;
}

ReferentialSet parse_set(const std::vector<std::string>& tokens) {
  if (tokens.size() < 4)
    throw SpecError("model spec: set line needs a name, a universe and labels");
  ReferentialSet set;
  set.name = tokens[1];
  set.universe = parse_universe(tokens[2]);
  set.labels.assign(tokens.begin() + 3, tokens.end());
  return set;
}

// IF set IS label (AND|OR set IS label)* THEN output IS label
Rule parse_rule(const std::vector<std::string>& tokens) {
  Rule rule;
  std::size_t i = 1;
  auto expect = [&](const std::string& kw) {
    if (i >= tokens.size() || tokens[i] != kw)
      throw SpecError("model spec: rule expects '" + kw + "' at token " + std::to_string(i));
    ++i;
  };
  auto take = [&](const std::string& what) {
    if (i >= tokens.size()) throw SpecError("model spec: rule is missing its " + what);
    return tokens[i++];
  };

  expect("IF");
  while (true) {
    RuleTerm term;
    term.set_name = take("antecedent set");
    expect("IS");
    term.label = take("antecedent label");
    rule.antecedents.push_back(std::move(term));
    const std::string next = take("connective or THEN");
    if (next == "THEN") break;
    if (next == "AND")
      rule.connectives.push_back(Connective::kAnd);
    else if (next == "OR")
      rule.connectives.push_back(Connective::kOr);
    else
      throw SpecError("model spec: expected AND, OR or THEN, got '" + next + "'");
  }
  rule.consequent.set_name = take("consequent set");
  expect("IS");
  rule.consequent.label = take("consequent label");
  if (i != tokens.size()) throw SpecError("model spec: trailing tokens after rule");
  return rule;
}

SigmaMode parse_sigma(const std::vector<std::string>& tokens) {
  if (tokens.size() >= 2 && tokens[1] == "fixed") {
    if (tokens.size() != 3) throw SpecError("model spec: sigma fixed needs one value");
    return SigmaMode::fixed(parse_number(tokens[2], "sigma"));
  }
  if (tokens.size() >= 2 && tokens[1] == "estimated") {
    if (tokens.size() == 2) return SigmaMode::estimated();
    if (tokens.size() != 4)
      throw SpecError("model spec: sigma estimated needs lower and upper bounds");
    return SigmaMode::estimated(parse_number(tokens[2], "sigma bound"),
                                parse_number(tokens[3], "sigma bound"));
  }
  throw SpecError("model spec: sigma mode must be 'fixed' or 'estimated'");
}

}  // namespace

ModelSpec parse_model_spec(std::istream& in) {
  std::string kind, name;
  std::vector<ReferentialSet> inputs;
  std::optional<ReferentialSet> output;
  std::vector<Rule> rules;
  GlmModel glm;
  double prior_lo = -50.0, prior_hi = 50.0;
  bool prior_seen = false;
  SigmaMode sigma = SigmaMode::estimated();

  std::string line;
  while (std::getline(in, line)) {
    const auto tokens = tokenize(line);
    if (tokens.empty()) continue;
    const std::string& key = tokens[0];
    if (key == "model") {
      if (tokens.size() != 3) throw SpecError("model spec: 'model <fuzzy|glm> <name>'");
      kind = tokens[1];
      name = tokens[2];
      if (kind != "fuzzy" && kind != "glm")
        throw SpecError("model spec: unknown model kind '" + kind + "'");
    } else if (key == "set") {
      inputs.push_back(parse_set(tokens));
    } else if (key == "output") {
      if (output) throw SpecError("model spec: more than one output set");
      output = parse_set(tokens);
    } else if (key == "rule") {
      rules.push_back(parse_rule(tokens));
    } else if (key == "covariates") {
      if (tokens.size() < 2) throw SpecError("model spec: covariates line is empty");
      glm.covariates.assign(tokens.begin() + 1, tokens.end());
    } else if (key == "term") {
      GlmTerm term;
      for (std::size_t i = 1; i < tokens.size(); ++i)
        term.exponents.push_back(static_cast<int>(parse_number(tokens[i], "exponent")));
      glm.terms.push_back(std::move(term));
    } else if (key == "prior") {
      if (tokens.size() != 3) throw SpecError("model spec: 'prior <lo> <hi>'");
      prior_lo = parse_number(tokens[1], "prior bound");
      prior_hi = parse_number(tokens[2], "prior bound");
      prior_seen = true;
    } else if (key == "sigma") {
      sigma = parse_sigma(tokens);
    } else {
      throw SpecError("model spec: unknown directive '" + key + "'");
    }
  }

  if (kind.empty()) throw SpecError("model spec: missing 'model' line");
  if (kind == "fuzzy") {
    if (!output) throw SpecError("model spec: fuzzy model needs an output set");
    if (rules.empty()) throw SpecError("model spec: fuzzy model needs at least one rule");
    return make_fuzzy_spec(name, RuleBase(std::move(inputs), std::move(*output), std::move(rules)),
                           sigma);
  }
  if (!prior_seen) throw SpecError("model spec: glm model needs a 'prior' line");
  return make_glm_spec(name, std::move(glm), prior_lo, prior_hi, sigma);
}

ModelSpec parse_model_spec_text(const std::string& text) {
  std::istringstream in(text);
  return parse_model_spec(in);
}

ModelSpec read_model_spec(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path.string() + "'");
  return parse_model_spec(in);
}

}  // namespace fuzev
