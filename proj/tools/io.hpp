#pragma once

#include <memory>
#include <string>
#include <vector>

#include "json.hpp"
#include "mnorm/amenability.hpp"
#include "mnorm/norm_result.hpp"

namespace mnorm::io {

using nlohmann::json;

/// Bad input documents or arguments; the CLI maps these to exit code 2.
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

json read_json_file(const std::string& path);

/// A number, or the strings "inf" / "infinity".
Exponent exponent_from(const json& j);

/// {"points": [...], "weights": [...], "vectors": [[...], ...]}. Points
/// default to "0".."m-1", weights to 1.
MultiVector multivector_from(const json& doc);
SpacePtr space_from(const json& doc, Index m);

/// JSON group spec, or a short name: zN (cyclic), sN (symmetric), fN (free
/// of rank N), latticeD. A value ending in .json is read as a file.
std::shared_ptr<const GroupModel> group_from(const std::string& spec);
std::shared_ptr<const GroupModel> group_from(const json& spec);

/// Elements separated by ';', whitespace, or commas outside parentheses.
std::vector<Element> elements_from(const GroupModel& G, const std::string& text);

/// "ball:R", "set:x,y,z" (uniform on the set) or "x=0.5,y=0.5".
FiniteSupportVector mean_from(const GroupModel& G, const std::string& text);

/// Non-finite doubles become the strings "inf", "-inf", "nan".
json number(double v);
json to_json(const NormResult& r);
json to_json(const GroupModel& G, const FiniteSupportVector& f);
json to_json(const GroupModel& G, const std::vector<Element>& s);

/// Flat objects and arrays of flat objects as key=value lines.
std::string to_text(const json& j);

}  // namespace mnorm::io
