#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>

#include <json.hpp>

#include "ample/models/models.hpp"

namespace ample::models {

using Json = nlohmann::ordered_json;

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Model files are JSON documents with a top-level "kind" tag; see docs/model-format.md.
Model parse_model(const Json& doc);
Model parse_model_text(std::string_view text);
Model load_model_file(const std::filesystem::path& path);

Json to_json(const Model& m);

// Building blocks shared with the report writer.
Json integer_to_json(const Integer& v);
Integer integer_from_json(const Json& j);
Json matrix_to_json(const IntMatrix& m);
IntMatrix matrix_from_json(const Json& j);
Json group_to_json(const FgAbelianGroup& g);
FgAbelianGroup group_from_json(const Json& j);
Json colimit_system_to_json(const StationaryColimit& s);
StationaryColimit colimit_system_from_json(const Json& j);

}  // namespace ample::models
