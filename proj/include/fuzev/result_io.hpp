#ifndef FUZEV_RESULT_IO_HPP
#define FUZEV_RESULT_IO_HPP

#include <filesystem>
#include <string>

#include "fuzev/nested.hpp"

namespace fuzev {

// Identifies one sampler run for reports and reproducibility.
struct RunMeta {
  std::string model;
  std::string prior_tag;
  std::string sigma_tag;
  std::string dataset_id;
  SamplerConfig config;
};

struct RunRecord {
  RunMeta meta;
  EvidenceResult result;
};

// One JSON document per run: config echo, evidence numbers, convergence flag
// and the weighted sample list. Finite doubles round-trip exactly; -inf is
// stored as null.
std::string serialize_result(const RunRecord& record);
RunRecord parse_result(const std::string& text);

void write_result(const RunRecord& record, const std::filesystem::path& path);
RunRecord read_result(const std::filesystem::path& path);

}  // namespace fuzev

#endif
