#pragma once

#include <Eigen/Dense>
#include <json.hpp>
#include <string>
#include <vector>

#include "jetlag/dtensor/array.hpp"
#include "jetlag/dtensor/value.hpp"

namespace jetlag {

/// {"signature": [...], "shape": [...], "components": [...]} with components
/// flattened row-major.
inline void to_json(nlohmann::json& j, const DTensorValue& v) {
  std::vector<std::string> sig;
  for (auto k : v.signature()) sig.emplace_back(slot_name(k));
  j = nlohmann::json{{"signature", sig}, {"shape", v.shape()}, {"components", v.components()}};
}

inline void from_json(const nlohmann::json& j, DTensorValue& v) {
  std::vector<SlotKind> sig;
  for (const auto& s : j.at("signature")) sig.push_back(parse_slot(s.get<std::string>()));
  const auto shape = j.at("shape").get<std::vector<int>>();
  int n = 1;
  for (std::size_t s = 0; s < sig.size(); ++s)
    if (family(sig[s]) != SlotFamily::Time) n = shape.at(s);
  v = DTensorValue(std::move(sig), n, j.at("components").get<std::vector<double>>());
  if (v.shape() != shape) throw SignatureError("shape does not match signature");
}

inline nlohmann::json to_json_value(const Eigen::VectorXd& v) {
  return std::vector<double>(v.data(), v.data() + v.size());
}

inline nlohmann::json to_json_value(const Eigen::MatrixXd& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (int i = 0; i < m.rows(); ++i) {
    std::vector<double> r;
    for (int k = 0; k < m.cols(); ++k) r.push_back(m(i, k));
    rows.push_back(r);
  }
  return rows;
}

}  // namespace jetlag
