#pragma once

#include <filesystem>
#include <string>
#include <variant>

#include "aoi/model.hpp"
#include "aoi/sampling.hpp"

namespace aoi {

// JSON documents:
//   model:    {"num_states": 2, "age_dim": 2,
//              "transitions": [{"from": 0, "to": 1, "rate": 1.0,
//                               "reset": ["fresh", "id"]}, ...]}
//             reset entries are "id", "fresh" or {"copy": i} with 1-based i.
//   network:  {"hops": [{"family": "uniform", "b": 6},
//                       {"family": "exponential", "rate": 1},
//                       {"family": "gamma", "shape": 2, "scale": 1}]}
// Unknown keys are rejected.

using LoadedDocument = std::variant<ShsModel, SamplingNetwork>;

/// Malformed JSON raises InputError (with line and column); schema or
/// invariant violations raise ValidationError.
LoadedDocument parse_document(const std::string& text);
ShsModel parse_model(const std::string& text);
SamplingNetwork parse_network(const std::string& text);

LoadedDocument load_document(const std::filesystem::path& path);
ShsModel load_model(const std::filesystem::path& path);
SamplingNetwork load_network(const std::filesystem::path& path);

std::string to_json(const ShsModel& model);
std::string to_json(const SamplingNetwork& network);

void save(const std::filesystem::path& path, const std::string& text);

}  // namespace aoi
