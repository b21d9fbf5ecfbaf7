#pragma once

#include "svv/types.hpp"

#include <json.hpp>

#include <optional>
#include <string>

namespace svv {

// Matrix payload: {"rows":n,"cols":m,"dims":[dA,dB]?,"data":[[re,im],...]},
// data row-major. Doubles are emitted in shortest round-trip form so a
// save/load cycle is bit-exact.

nlohmann::json cmat_to_json(const CMat& m,
                            std::optional<std::pair<Eigen::Index, Eigen::Index>> dims = {});
CMat cmat_from_json(const nlohmann::json& j);
std::optional<std::pair<Eigen::Index, Eigen::Index>> dims_from_json(const nlohmann::json& j);

// Reads a matrix file; if "dims" is present returns it as a BipartiteOp,
// otherwise dims must be supplied by the caller.
BipartiteOp bipartite_from_json(const nlohmann::json& j);

nlohmann::json channel_to_json(const Channel& c);
Channel channel_from_json(const nlohmann::json& j);

nlohmann::json load_json_file(const std::string& path);
void save_json_file(const std::string& path, const nlohmann::json& j);

}  // namespace svv
