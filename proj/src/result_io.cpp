#include "fuzev/result_io.hpp"

#include <fstream>
#include <json.hpp>
#include <sstream>

#include "fuzev/errors.hpp"
#include "fuzev/numerics.hpp"

namespace fuzev {

namespace {

using Json = nlohmann::ordered_json;

Json encode_double(double v) {
  if (v == kNegInf) return nullptr;  // JSON has no -inf
  return v;
}

double decode_double(const Json& j) {
  if (j.is_null()) return kNegInf;
  return j.get<double>();
}

std::string shrinkage_name(Shrinkage s) {
  return s == Shrinkage::kDeterministic ? "deterministic" : "stochastic";
}

Shrinkage shrinkage_from_name(const std::string& name) {
  if (name == "deterministic") return Shrinkage::kDeterministic;
  if (name == "stochastic") return Shrinkage::kStochastic;
  throw SpecError("unknown shrinkage mode '" + name + "'");
}

}  // namespace

std::string serialize_result(const RunRecord& record) {
  const auto& r = record.result;
  Json j;
  j["model"] = record.meta.model;
  j["prior"] = record.meta.prior_tag;
  j["sigma"] = record.meta.sigma_tag;
  j["dataset"] = record.meta.dataset_id;
  Json cfg;
  cfg["method"] = method_name(record.meta.config.method);
  cfg["n_live"] = record.meta.config.n_live;
  cfg["tol"] = record.meta.config.tol;
  cfg["enlargement"] = record.meta.config.enlargement;
  cfg["seed"] = record.meta.config.rng_seed;
  cfg["max_iterations"] = record.meta.config.max_iterations;
  cfg["shrinkage"] = shrinkage_name(record.meta.config.shrinkage);
  cfg["rejection_budget"] = record.meta.config.rejection_budget;
  cfg["split_threshold"] = record.meta.config.split_threshold;
  j["config"] = std::move(cfg);
  j["logz"] = encode_double(r.log_z);
  j["logz_err"] = r.log_z_err;
  j["information"] = r.information;
  j["n_calls"] = r.n_calls;
  j["n_iter"] = r.n_iter;
  j["converged"] = r.converged;
  j["plateau_rejections"] = r.plateau_rejections;
  Json samples = Json::array();
  for (const auto& s : r.samples) {
    Json row = Json::array();
    for (Eigen::Index k = 0; k < s.theta.size(); ++k) row.push_back(encode_double(s.theta[k]));
    row.push_back(encode_double(s.log_l));
    row.push_back(encode_double(s.log_weight));
    samples.push_back(std::move(row));
  }
  j["samples"] = std::move(samples);
  return j.dump(2) + "\n";
}

RunRecord parse_result(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const std::exception& e) {
    throw IoError(std::string("result document: ") + e.what());
  }
  RunRecord record;
  record.meta.model = j.at("model").get<std::string>();
  record.meta.prior_tag = j.at("prior").get<std::string>();
  record.meta.sigma_tag = j.at("sigma").get<std::string>();
  record.meta.dataset_id = j.at("dataset").get<std::string>();
  const auto& cfg = j.at("config");
  record.meta.config.method = method_from_name(cfg.at("method").get<std::string>());
  record.meta.config.n_live = cfg.at("n_live").get<int>();
  record.meta.config.tol = cfg.at("tol").get<double>();
  record.meta.config.enlargement = cfg.at("enlargement").get<double>();
  record.meta.config.rng_seed = cfg.at("seed").get<std::uint64_t>();
  record.meta.config.max_iterations = cfg.at("max_iterations").get<long>();
  record.meta.config.shrinkage = shrinkage_from_name(cfg.at("shrinkage").get<std::string>());
  record.meta.config.rejection_budget = cfg.at("rejection_budget").get<long>();
  record.meta.config.split_threshold = cfg.at("split_threshold").get<double>();

  auto& r = record.result;
  r.log_z = decode_double(j.at("logz"));
  r.log_z_err = j.at("logz_err").get<double>();
  r.information = j.at("information").get<double>();
  r.n_calls = j.at("n_calls").get<long>();
  r.n_iter = j.at("n_iter").get<long>();
  r.converged = j.at("converged").get<bool>();
  r.plateau_rejections = j.at("plateau_rejections").get<long>();
  for (const auto& row : j.at("samples")) {
    if (row.size() < 3) throw IoError("result document: malformed sample row");
    WeightedSample s;
    const auto d = static_cast<Eigen::Index>(row.size()) - 2;
    s.theta.resize(d);
    for (Eigen::Index k = 0; k < d; ++k) s.theta[k] = decode_double(row[static_cast<std::size_t>(k)]);
    s.log_l = decode_double(row[row.size() - 2]);
    s.log_weight = decode_double(row[row.size() - 1]);
    r.samples.push_back(std::move(s));
  }
  return record;
}

void write_result(const RunRecord& record, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  out << serialize_result(record);
  if (!out.good()) throw IoError("write failed for '" + path.string() + "'");
}

RunRecord read_result(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_result(ss.str());
}

}  // namespace fuzev
