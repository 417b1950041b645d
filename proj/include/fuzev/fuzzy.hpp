#ifndef FUZEV_FUZZY_HPP
#define FUZEV_FUZZY_HPP

#include <Eigen/Dense>
#include <atomic>
#include <string>
#include <vector>

namespace fuzev {

struct Universe {
  double lower = 0.0;
  double upper = 1.0;

  double span() const { return upper - lower; }
  double midpoint() const { return 0.5 * (lower + upper); }
  double clamp(double u) const {
    if (u < lower) return lower;
    if (u > upper) return upper;
    return u;
  }
};

struct ReferentialSet {
  std::string name;
  std::vector<std::string> labels;
  Universe universe;

  // -1 when the label is unknown.
  int label_index(const std::string& label) const;
};

// Triangular membership with feet a, c and peak b, a <= b <= c.
struct TriangularMf {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
};

// Piecewise-linear ramp up on [a,b] and down on [b,c], zero outside.
// A degenerate side (a == b or b == c) is a step attaining 1 at b.
double tri_membership(double u, const TriangularMf& mf);

// One learnable vertex per label, shoulders anchored at the universe bounds:
// first label (L, L, p0), interior labels (L, pj, U), last label (pk, U, U).
std::vector<TriangularMf> build_partition(const ReferentialSet& set,
                                          const Eigen::VectorXd& peaks);

enum class Connective { kAnd, kOr };

struct RuleTerm {
  std::string set_name;
  std::string label;
};

struct Rule {
  std::vector<RuleTerm> antecedents;
  std::vector<Connective> connectives;  // length antecedents - 1, folded left to right
  RuleTerm consequent;
  bool included = true;
};

// Maps one parameter-vector slot to the peak of (set, label).
struct LayoutEntry {
  bool is_output = false;
  int set = 0;    // input-set index; ignored when is_output
  int label = 0;
};

class RuleBase {
 public:
  RuleBase(std::vector<ReferentialSet> input_sets, ReferentialSet output_set,
           std::vector<Rule> rules);

  const std::vector<ReferentialSet>& input_sets() const { return input_sets_; }
  const ReferentialSet& output_set() const { return output_set_; }
  const std::vector<Rule>& rules() const { return rules_; }

  // Parameter slots: one peak per label of every input set that appears in at
  // least one rule (declaration order), then the output-set labels.
  const std::vector<LayoutEntry>& layout() const { return layout_; }
  int parameter_count() const { return static_cast<int>(layout_.size()); }
  bool input_set_used(int set_index) const { return input_used_[set_index]; }

  // Resolved rule indices, same order as rules().
  struct BoundRule {
    std::vector<int> antecedent_sets;
    std::vector<int> antecedent_labels;
    int consequent_label = 0;
  };
  const std::vector<BoundRule>& bound_rules() const { return bound_rules_; }

  // Slices theta into per-set peak vectors; empty for unused input sets.
  std::vector<Eigen::VectorXd> input_peaks(const Eigen::VectorXd& theta) const;
  Eigen::VectorXd output_peaks(const Eigen::VectorXd& theta) const;

 private:
  std::vector<ReferentialSet> input_sets_;
  ReferentialSet output_set_;
  std::vector<Rule> rules_;
  std::vector<BoundRule> bound_rules_;
  std::vector<bool> input_used_;
  std::vector<LayoutEntry> layout_;
  std::vector<int> input_offset_;  // theta offset per input set, -1 when unused
  int output_offset_ = 0;
};

// Membership degrees of the clamped covariates; degrees[i] has one entry per
// label of input set i and is empty for sets unused by every rule.
std::vector<Eigen::VectorXd> membership_degrees(const RuleBase& rb,
                                                const Eigen::VectorXd& theta,
                                                const Eigen::VectorXd& x);

// Left-to-right fold of the rule's antecedent degrees, AND = min, OR = max.
// Rules with included == false fire at 0.
double firing_strength(const RuleBase& rb, int rule_index,
                       const std::vector<Eigen::VectorXd>& degrees);

Eigen::VectorXd firing_strengths(const RuleBase& rb, const Eigen::VectorXd& theta,
                                 const Eigen::VectorXd& x);

// Defuzzification grid resolution; keeps centroid error below 0.1% of the span.
inline constexpr int kDefuzzGridSize = 1001;

// Binds (rule base, theta) once so batches of inferences reuse the partitions
// and the consequent membership rows on the output grid.
class FuzzyEvaluator {
 public:
  FuzzyEvaluator(const RuleBase& rb, const Eigen::VectorXd& theta);

  // Mamdani inference: min-clipped consequents, max aggregation, centroid of
  // the aggregate on the grid; universe midpoint when nothing fires.
  double operator()(const Eigen::VectorXd& x) const;

  long empty_aggregate_count() const { return empty_count_.load(); }

 private:
  const RuleBase* rb_;
  std::vector<std::vector<TriangularMf>> input_mfs_;
  Eigen::ArrayXd grid_;
  std::vector<Eigen::ArrayXd> consequent_rows_;
  mutable std::atomic<long> empty_count_{0};
};

double infer(const RuleBase& rb, const Eigen::VectorXd& theta,
             const Eigen::VectorXd& x);

}  // namespace fuzev

#endif
