#include "cwn/serialize.hpp"

#include <stdexcept>

namespace cwn::chaos {

nlohmann::json to_json(const MultiIndex& alpha) {
  nlohmann::json j = nlohmann::json::array();
  for (const auto& [k, exp] : alpha.entries()) j.push_back({k, exp});
  return j;
}

nlohmann::json to_json(const ChaosVector& f) {
  nlohmann::json j = nlohmann::json::array();
  for (const auto& [alpha, c] : f.sorted_entries())
    j.push_back({{"alpha", to_json(alpha)}, {"re", c.real()}, {"im", c.imag()}});
  return j;
}

MultiIndex multi_index_from_json(const nlohmann::json& j) {
  if (!j.is_array()) throw std::invalid_argument("multi_index_from_json: expected array");
  std::vector<MultiIndex::Entry> entries;
  entries.reserve(j.size());
  for (const auto& e : j)
    entries.emplace_back(e.at(0).get<std::uint32_t>(), e.at(1).get<std::uint32_t>());
  return MultiIndex(std::move(entries));
}

ChaosVector chaos_vector_from_json(const nlohmann::json& j) {
  if (!j.is_array()) throw std::invalid_argument("chaos_vector_from_json: expected array");
  ChaosVector out;
  for (const auto& e : j) {
    out.set(multi_index_from_json(e.at("alpha")),
            Complex{e.at("re").get<double>(), e.at("im").get<double>()});
  }
  return out;
}

}  // namespace cwn::chaos
