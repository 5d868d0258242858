#ifndef SINGER_SERIALIZE_HPP
#define SINGER_SERIALIZE_HPP

#include <string>

#include "json.hpp"
#include "singer/instgen.hpp"

namespace singer {

using Json = nlohmann::ordered_json;

inline constexpr const char* kInstanceFormat = "singer-instance/1";
inline constexpr const char* kResultFormat = "singer-result/1";

/// Field elements are written as integer encodings, matrices as row-major nested lists.
Json instance_to_json(const PlantedInstance& inst, bool include_oracle = true);
PlantedInstance instance_from_json(const Json& j);

/// Wall-clock time is left out so that identical runs serialize identically.
Json result_to_json(const RewriteResult& r);
RewriteResult result_from_json(const Json& j);

/// Parse text, mapping syntax errors to ParseError with the byte offset.
Json parse_json(const std::string& text);
std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& text);

} // namespace singer

#endif
