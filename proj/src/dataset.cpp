#include "fuzev/dataset.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "fuzev/errors.hpp"

namespace fuzev {

namespace {

std::string g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::stringstream ss(line);
  while (std::getline(ss, field, ',')) fields.push_back(field);
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

}  // namespace

int Dataset::column_index(const std::string& name) const {
  for (int j = 0; j < covariate_count(); ++j)
    if (columns[static_cast<std::size_t>(j)] == name) return j;
  return -1;
}

void Dataset::validate() const {
  if (n() < 1) throw SpecError("dataset: needs at least one row");
  if (X.rows() != y.size()) throw SpecError("dataset: X rows and y length differ");
  if (static_cast<int>(columns.size()) != covariate_count() + 1)
    throw SpecError("dataset: column names must cover covariates plus the output");
  if (!X.allFinite() || !y.allFinite())
    throw SpecError("dataset: missing or non-finite values");
}

void write_dataset_csv(const Dataset& data, std::ostream& out) {
  data.validate();
  for (std::size_t j = 0; j < data.columns.size(); ++j) {
    if (j) out << ',';
    out << data.columns[j];
  }
  out << '\n';
  for (int i = 0; i < data.n(); ++i) {
    for (int j = 0; j < data.covariate_count(); ++j) out << g17(data.X(i, j)) << ',';
    out << g17(data.y[i]) << '\n';
  }
}

void write_dataset_csv(const Dataset& data, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  write_dataset_csv(data, out);
  if (!out.good()) throw IoError("write failed for '" + path.string() + "'");
}

Dataset read_dataset_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw IoError("dataset: empty input");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  Dataset data;
  data.columns = split_csv_line(line);
  if (data.columns.size() < 2)
    throw IoError("dataset: header needs at least one covariate and the output");

  std::vector<std::vector<double>> rows;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto fields = split_csv_line(line);
    if (fields.size() != data.columns.size())
      throw IoError("dataset: row " + std::to_string(rows.size() + 1) + " has " +
                    std::to_string(fields.size()) + " fields, header has " +
                    std::to_string(data.columns.size()));
    std::vector<double> row(fields.size());
    for (std::size_t j = 0; j < fields.size(); ++j) {
      std::size_t pos = 0;
      try {
        row[j] = std::stod(fields[j], &pos);
      } catch (const std::exception&) {
        throw IoError("dataset: cannot parse value '" + fields[j] + "'");
      }
      if (pos != fields[j].size())
        throw IoError("dataset: trailing junk in value '" + fields[j] + "'");
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw IoError("dataset: no data rows");

  const int n = static_cast<int>(rows.size());
  const int p = static_cast<int>(data.columns.size()) - 1;
  data.X.resize(n, p);
  data.y.resize(n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < p; ++j) data.X(i, j) = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    data.y[i] = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(p)];
  }
  data.validate();
  return data;
}

Dataset read_dataset_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path.string() + "'");
  return read_dataset_csv(in);
}

}  // namespace fuzev
