#include "fuzev/fuzzy.hpp"

#include <algorithm>
#include <set>

#include "fuzev/errors.hpp"

namespace fuzev {

int ReferentialSet::label_index(const std::string& label) const {
  for (std::size_t i = 0; i < labels.size(); ++i)
    if (labels[i] == label) return static_cast<int>(i);
  return -1;
}

double tri_membership(double u, const TriangularMf& mf) {
  if (u < mf.a || u > mf.c) return 0.0;
  if (u <= mf.b) {
    if (mf.a == mf.b) return 1.0;
    return (u - mf.a) / (mf.b - mf.a);
  }
  if (mf.b == mf.c) return 1.0;
  return (mf.c - u) / (mf.c - mf.b);
}

std::vector<TriangularMf> build_partition(const ReferentialSet& set,
                                          const Eigen::VectorXd& peaks) {
  const int n = static_cast<int>(set.labels.size());
  if (peaks.size() != n)
    throw SpecError("build_partition: need one peak per label of set '" + set.name +
                    "', got " + std::to_string(peaks.size()));
  const double lo = set.universe.lower;
  const double hi = set.universe.upper;
  for (int i = 0; i < n; ++i)
    if (peaks[i] < lo || peaks[i] > hi)
      throw DomainError("build_partition: peak " + std::to_string(peaks[i]) +
                        " outside universe of set '" + set.name + "'");

  std::vector<TriangularMf> mfs(n);
  for (int i = 0; i < n; ++i) {
    if (i == 0)
      mfs[i] = {lo, lo, peaks[i]};
    else if (i == n - 1)
      mfs[i] = {peaks[i], hi, hi};
    else
      mfs[i] = {lo, peaks[i], hi};
  }
  return mfs;
}

namespace {

void validate_set(const ReferentialSet& set) {
  if (!(set.universe.lower < set.universe.upper))
    throw SpecError("set '" + set.name + "': universe lower must be below upper");
  if (set.labels.size() < 2)
    throw SpecError("set '" + set.name + "': needs at least two labels");
  std::set<std::string> seen(set.labels.begin(), set.labels.end());
  if (seen.size() != set.labels.size())
    throw SpecError("set '" + set.name + "': duplicate labels");
}

}  // namespace

RuleBase::RuleBase(std::vector<ReferentialSet> input_sets, ReferentialSet output_set,
                   std::vector<Rule> rules)
    : input_sets_(std::move(input_sets)),
      output_set_(std::move(output_set)),
      rules_(std::move(rules)) {
  for (const auto& s : input_sets_) validate_set(s);
  validate_set(output_set_);

  std::set<std::string> names;
  for (const auto& s : input_sets_)
    if (!names.insert(s.name).second)
      throw SpecError("duplicate referential set name '" + s.name + "'");
  if (names.count(output_set_.name))
    throw SpecError("output set name '" + output_set_.name + "' collides with an input set");

  auto input_index = [&](const std::string& name) {
    for (std::size_t i = 0; i < input_sets_.size(); ++i)
      if (input_sets_[i].name == name) return static_cast<int>(i);
    return -1;
  };

  input_used_.assign(input_sets_.size(), false);
  bound_rules_.reserve(rules_.size());
  for (const auto& rule : rules_) {
    if (rule.antecedents.empty())
      throw SpecError("rule has no antecedents");
    if (rule.connectives.size() + 1 != rule.antecedents.size())
      throw SpecError("rule needs one connective between consecutive antecedents");
    BoundRule bound;
    for (const auto& term : rule.antecedents) {
      const int si = input_index(term.set_name);
      if (si < 0)
        throw SpecError("rule references unknown input set '" + term.set_name + "'");
      const int li = input_sets_[si].label_index(term.label);
      if (li < 0)
        throw SpecError("rule references unknown label '" + term.label + "' of set '" +
                        term.set_name + "'");
      bound.antecedent_sets.push_back(si);
      bound.antecedent_labels.push_back(li);
      input_used_[si] = true;
    }
    if (rule.consequent.set_name != output_set_.name)
      throw SpecError("rule consequent must use the output set '" + output_set_.name + "'");
    bound.consequent_label = output_set_.label_index(rule.consequent.label);
    if (bound.consequent_label < 0)
      throw SpecError("rule references unknown output label '" + rule.consequent.label + "'");
    bound_rules_.push_back(std::move(bound));
  }

  input_offset_.assign(input_sets_.size(), -1);
  int offset = 0;
  for (std::size_t i = 0; i < input_sets_.size(); ++i) {
    if (!input_used_[i]) continue;
    input_offset_[i] = offset;
    for (std::size_t l = 0; l < input_sets_[i].labels.size(); ++l)
      layout_.push_back({false, static_cast<int>(i), static_cast<int>(l)});
    offset += static_cast<int>(input_sets_[i].labels.size());
  }
  output_offset_ = offset;
  for (std::size_t l = 0; l < output_set_.labels.size(); ++l)
    layout_.push_back({true, 0, static_cast<int>(l)});
}

std::vector<Eigen::VectorXd> RuleBase::input_peaks(const Eigen::VectorXd& theta) const {
  if (theta.size() != parameter_count())
    throw SpecError("theta has " + std::to_string(theta.size()) + " entries, layout needs " +
                    std::to_string(parameter_count()));
  std::vector<Eigen::VectorXd> peaks(input_sets_.size());
  for (std::size_t i = 0; i < input_sets_.size(); ++i)
    if (input_offset_[i] >= 0)
      peaks[i] = theta.segment(input_offset_[i],
                               static_cast<int>(input_sets_[i].labels.size()));
  return peaks;
}

Eigen::VectorXd RuleBase::output_peaks(const Eigen::VectorXd& theta) const {
  if (theta.size() != parameter_count())
    throw SpecError("theta has " + std::to_string(theta.size()) + " entries, layout needs " +
                    std::to_string(parameter_count()));
  return theta.segment(output_offset_, static_cast<int>(output_set_.labels.size()));
}

std::vector<Eigen::VectorXd> membership_degrees(const RuleBase& rb,
                                                const Eigen::VectorXd& theta,
                                                const Eigen::VectorXd& x) {
  const auto& sets = rb.input_sets();
  if (x.size() != static_cast<Eigen::Index>(sets.size()))
    throw SpecError("covariate vector has " + std::to_string(x.size()) +
                    " entries, rule base declares " + std::to_string(sets.size()));
  const auto peaks = rb.input_peaks(theta);
  std::vector<Eigen::VectorXd> degrees(sets.size());
  for (std::size_t i = 0; i < sets.size(); ++i) {
    if (!rb.input_set_used(static_cast<int>(i))) continue;
    const auto mfs = build_partition(sets[i], peaks[i]);
    const double u = sets[i].universe.clamp(x[static_cast<Eigen::Index>(i)]);
    Eigen::VectorXd deg(static_cast<Eigen::Index>(mfs.size()));
    for (std::size_t l = 0; l < mfs.size(); ++l)
      deg[static_cast<Eigen::Index>(l)] = tri_membership(u, mfs[l]);
    degrees[i] = std::move(deg);
  }
  return degrees;
}

double firing_strength(const RuleBase& rb, int rule_index,
                       const std::vector<Eigen::VectorXd>& degrees) {
  const auto& rule = rb.rules()[rule_index];
  if (!rule.included) return 0.0;
  const auto& bound = rb.bound_rules()[rule_index];
  auto degree_of = [&](std::size_t k) {
    const int si = bound.antecedent_sets[k];
    const int li = bound.antecedent_labels[k];
    if (si >= static_cast<int>(degrees.size()) || degrees[si].size() <= li)
      throw SpecError("firing_strength: missing membership degree for set '" +
                      rule.antecedents[k].set_name + "'");
    return degrees[si][li];
  };
  double w = degree_of(0);
  for (std::size_t k = 1; k < bound.antecedent_sets.size(); ++k) {
    const double dk = degree_of(k);
    w = (rule.connectives[k - 1] == Connective::kAnd) ? std::min(w, dk) : std::max(w, dk);
  }
  return w;
}

Eigen::VectorXd firing_strengths(const RuleBase& rb, const Eigen::VectorXd& theta,
                                 const Eigen::VectorXd& x) {
  const auto degrees = membership_degrees(rb, theta, x);
  Eigen::VectorXd w(static_cast<Eigen::Index>(rb.rules().size()));
  for (std::size_t k = 0; k < rb.rules().size(); ++k)
    w[static_cast<Eigen::Index>(k)] = firing_strength(rb, static_cast<int>(k), degrees);
  return w;
}

FuzzyEvaluator::FuzzyEvaluator(const RuleBase& rb, const Eigen::VectorXd& theta)
    : rb_(&rb) {
  const auto peaks = rb.input_peaks(theta);
  input_mfs_.resize(rb.input_sets().size());
  for (std::size_t i = 0; i < rb.input_sets().size(); ++i)
    if (rb.input_set_used(static_cast<int>(i)))
      input_mfs_[i] = build_partition(rb.input_sets()[i], peaks[i]);

  const auto& out = rb.output_set();
  const auto out_mfs = build_partition(out, rb.output_peaks(theta));
  grid_ = Eigen::ArrayXd::LinSpaced(kDefuzzGridSize, out.universe.lower, out.universe.upper);
  consequent_rows_.resize(out_mfs.size());
  for (std::size_t l = 0; l < out_mfs.size(); ++l) {
    Eigen::ArrayXd row(kDefuzzGridSize);
    for (int g = 0; g < kDefuzzGridSize; ++g) row[g] = tri_membership(grid_[g], out_mfs[l]);
    consequent_rows_[l] = std::move(row);
  }
}

double FuzzyEvaluator::operator()(const Eigen::VectorXd& x) const {
  const auto& sets = rb_->input_sets();
  if (x.size() != static_cast<Eigen::Index>(sets.size()))
    throw SpecError("covariate vector has " + std::to_string(x.size()) +
                    " entries, rule base declares " + std::to_string(sets.size()));

  std::vector<Eigen::VectorXd> degrees(sets.size());
  for (std::size_t i = 0; i < sets.size(); ++i) {
    if (input_mfs_[i].empty()) continue;
    const double u = sets[i].universe.clamp(x[static_cast<Eigen::Index>(i)]);
    Eigen::VectorXd deg(static_cast<Eigen::Index>(input_mfs_[i].size()));
    for (std::size_t l = 0; l < input_mfs_[i].size(); ++l)
      deg[static_cast<Eigen::Index>(l)] = tri_membership(u, input_mfs_[i][l]);
    degrees[i] = std::move(deg);
  }

  Eigen::ArrayXd aggregate = Eigen::ArrayXd::Zero(kDefuzzGridSize);
  bool fired = false;
  for (std::size_t k = 0; k < rb_->rules().size(); ++k) {
    const double w = firing_strength(*rb_, static_cast<int>(k), degrees);
    if (w <= 0.0) continue;
    fired = true;
    const auto& row = consequent_rows_[rb_->bound_rules()[k].consequent_label];
    aggregate = aggregate.max(row.min(w));
  }

  const double mass = aggregate.sum();
  if (!fired || mass <= 0.0) {
    empty_count_.fetch_add(1, std::memory_order_relaxed);
    return rb_->output_set().universe.midpoint();
  }
  return (grid_ * aggregate).sum() / mass;
}

double infer(const RuleBase& rb, const Eigen::VectorXd& theta, const Eigen::VectorXd& x) {
  return FuzzyEvaluator(rb, theta)(x);
}

}  // namespace fuzev
