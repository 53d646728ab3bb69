#pragma once

#include <json.hpp>

#include "cwn/chaos_vector.hpp"

namespace cwn::chaos {

// Wire format: [{"alpha": [[k, exp], ...], "re": x, "im": y}, ...] sorted by
// multi-index. Round-trips are bit-exact for finite doubles.
nlohmann::json to_json(const MultiIndex& alpha);
nlohmann::json to_json(const ChaosVector& f);
MultiIndex multi_index_from_json(const nlohmann::json& j);
ChaosVector chaos_vector_from_json(const nlohmann::json& j);

}  // namespace cwn::chaos
