#ifndef FUZEV_DATASET_HPP
#define FUZEV_DATASET_HPP

#include <Eigen/Dense>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace fuzev {

// Covariate matrix plus one trailing output column. columns holds the
// covariate names followed by the output name.
struct Dataset {
  std::vector<std::string> columns;
  Eigen::MatrixXd X;    // n x p
  Eigen::VectorXd y;    // n

  int n() const { return static_cast<int>(y.size()); }
  int covariate_count() const { return static_cast<int>(X.cols()); }
  // -1 when absent; the output column is not searched.
  int column_index(const std::string& name) const;
  void validate() const;
};

// Delimited text with a header row; values round-trip at 17 significant digits.
void write_dataset_csv(const Dataset& data, std::ostream& out);
void write_dataset_csv(const Dataset& data, const std::filesystem::path& path);
Dataset read_dataset_csv(std::istream& in);
Dataset read_dataset_csv(const std::filesystem::path& path);

}  // namespace fuzev

#endif
