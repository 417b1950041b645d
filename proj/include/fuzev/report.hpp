#ifndef FUZEV_REPORT_HPP
#define FUZEV_REPORT_HPP

#include <filesystem>
#include <iosfwd>
#include <vector>

#include "fuzev/experiment.hpp"

namespace fuzev {

// Flat machine-readable comparison table; numeric fields round-trip exactly.
void write_comparison_csv(const std::vector<ComparisonRow>& rows, std::ostream& out);
std::vector<ComparisonRow> parse_comparison_csv(std::istream& in);

// Pretty pivot: one row per (model, prior), logZ +/- err and Fcalls per method.
void write_comparison_markdown(const std::vector<ComparisonRow>& rows, std::ostream& out);

// Posterior tables: one row per (model, method), theta columns with mean (std).
void write_posterior_csv(const std::vector<CellOutcome>& outcomes, std::ostream& out);
void write_posterior_markdown(const std::vector<CellOutcome>& outcomes, std::ostream& out);

// Writes comparison_<sigma>.{csv,md} and posterior_<sigma>.{csv,md} per sigma
// regime into the destination directory.
void emit_report(const std::vector<CellOutcome>& outcomes,
                 const std::filesystem::path& destination);

}  // namespace fuzev

#endif
