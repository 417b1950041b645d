#include "fuzev/report.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include "fuzev/errors.hpp"

namespace fuzev {

namespace {

std::string g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string f3(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.3f", v);
  return buf;
}

std::vector<std::string> split_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::stringstream ss(line);
  while (std::getline(ss, field, ',')) fields.push_back(field);
  return fields;
}

// File names stay shell-friendly: "fixed=0.25" -> "fixed-0.25".
std::string sanitize(const std::string& tag) {
  std::string s = tag;
  for (char& c : s)
    if (c == '=' || c == '/' || c == ' ') c = '-';
  return s;
}

}  // namespace

void write_comparison_csv(const std::vector<ComparisonRow>& rows, std::ostream& out) {
  out << "model,prior,method,sigma,logz,logz_err,n_calls,n_iter,converged\n";
  for (const auto& r : rows) {
    out << r.model << ',' << r.prior << ',' << r.method << ',' << r.sigma << ','
        << g17(r.log_z) << ',' << g17(r.log_z_err) << ',' << r.n_calls << ','
        << r.n_iter << ',' << (r.converged ? 1 : 0) << '\n';
  }
}

std::vector<ComparisonRow> parse_comparison_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw IoError("comparison table: empty input");
  std::vector<ComparisonRow> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto f = split_line(line);
    if (f.size() != 9) throw IoError("comparison table: malformed row '" + line + "'");
    ComparisonRow r;
    r.model = f[0];
    r.prior = f[1];
    r.method = f[2];
    r.sigma = f[3];
    r.log_z = std::stod(f[4]);
    r.log_z_err = std::stod(f[5]);
    r.n_calls = std::stol(f[6]);
    r.n_iter = std::stol(f[7]);
    r.converged = std::stoi(f[8]) != 0;
    rows.push_back(std::move(r));
  }
  return rows;
}

void write_comparison_markdown(const std::vector<ComparisonRow>& rows, std::ostream& out) {
  // Column pairs per method, in first-appearance order.
  std::vector<std::string> methods;
  for (const auto& r : rows)
    if (std::find(methods.begin(), methods.end(), r.method) == methods.end())
      methods.push_back(r.method);

  struct Key {
    std::string model, prior;
  };
  std::vector<Key> keys;
  auto key_index = [&](const ComparisonRow& r) {
    for (std::size_t i = 0; i < keys.size(); ++i)
      if (keys[i].model == r.model && keys[i].prior == r.prior) return i;
    keys.push_back({r.model, r.prior});
    return keys.size() - 1;
  };
  std::map<std::size_t, std::map<std::string, const ComparisonRow*>> grid;
  for (const auto& r : rows) grid[key_index(r)][r.method] = &r;

  out << "| Model | Prior |";
  for (const auto& m : methods) out << " logZ (" << m << ") | Fcalls (" << m << ") |";
  out << "\n|---|---|";
  for (std::size_t i = 0; i < methods.size(); ++i) out << "---|---|";
  out << "\n";
  for (std::size_t i = 0; i < keys.size(); ++i) {
    out << "| " << keys[i].model << " | " << keys[i].prior << " |";
    for (const auto& m : methods) {
      const auto it = grid[i].find(m);
      if (it == grid[i].end()) {
        out << " - | - |";
        continue;
      }
      const ComparisonRow& r = *it->second;
      out << ' ' << f3(r.log_z) << " ± " << f3(r.log_z_err)
          << (r.converged ? "" : " (not converged)") << " | " << r.n_calls << " |";
    }
    out << "\n";
  }
}

namespace {

Eigen::Index max_theta_dim(const std::vector<CellOutcome>& outcomes) {
  Eigen::Index d = 0;
  for (const auto& o : outcomes) d = std::max(d, o.summary.mean.size());
  return d;
}

}  // namespace

void write_posterior_csv(const std::vector<CellOutcome>& outcomes, std::ostream& out) {
  const Eigen::Index d = max_theta_dim(outcomes);
  out << "model,method";
  for (Eigen::Index j = 0; j < d; ++j) out << ",theta" << j << "_mean,theta" << j << "_std";
  out << "\n";
  for (const auto& o : outcomes) {
    out << o.row.model << ',' << o.row.method;
    for (Eigen::Index j = 0; j < d; ++j) {
      if (j < o.summary.mean.size())
        out << ',' << g17(o.summary.mean[j]) << ',' << g17(o.summary.stddev[j]);
      else
        out << ",,";
    }
    out << "\n";
  }
}

void write_posterior_markdown(const std::vector<CellOutcome>& outcomes, std::ostream& out) {
  const Eigen::Index d = max_theta_dim(outcomes);
  out << "| Model | Method |";
  for (Eigen::Index j = 0; j < d; ++j) out << " theta" << j << " |";
  out << "\n|---|---|";
  for (Eigen::Index j = 0; j < d; ++j) out << "---|";
  out << "\n";
  for (const auto& o : outcomes) {
    out << "| " << o.row.model << " | " << o.row.method << " |";
    for (Eigen::Index j = 0; j < d; ++j) {
      if (j < o.summary.mean.size())
        out << ' ' << f3(o.summary.mean[j]) << " (" << f3(o.summary.stddev[j]) << ") |";
      else
        out << " - |";
    }
    out << "\n";
  }
}

void emit_report(const std::vector<CellOutcome>& outcomes,
                 const std::filesystem::path& destination) {
  std::error_code ec;
  std::filesystem::create_directories(destination, ec);
  if (ec) throw IoError("cannot create report directory '" + destination.string() + "'");

  std::vector<std::string> sigma_tags;
  for (const auto& o : outcomes)
    if (std::find(sigma_tags.begin(), sigma_tags.end(), o.row.sigma) == sigma_tags.end())
      sigma_tags.push_back(o.row.sigma);
  if (sigma_tags.empty()) sigma_tags.push_back("est");  // header-only files

  for (const auto& tag : sigma_tags) {
    std::vector<ComparisonRow> rows;
    std::vector<CellOutcome> group;
    for (const auto& o : outcomes)
      if (o.row.sigma == tag) {
        rows.push_back(o.row);
        group.push_back(o);
      }
    const std::string stem = sanitize(tag);
    auto open = [&](const std::string& name) {
      std::ofstream out(destination / name, std::ios::binary);
      if (!out) throw IoError("cannot open report file '" + name + "'");
      return out;
    };
    {
      auto out = open("comparison_" + stem + ".csv");
      write_comparison_csv(rows, out);
    }
    {
      auto out = open("comparison_" + stem + ".md");
      write_comparison_markdown(rows, out);
    }
    {
      auto out = open("posterior_" + stem + ".csv");
      write_posterior_csv(group, out);
    }
    {
      auto out = open("posterior_" + stem + ".md");
      write_posterior_markdown(group, out);
    }
  }
}

}  // namespace fuzev
