#pragma once

#include <string>
#include <variant>

#include <json.hpp>

#include "ifcr/discrete.hpp"
#include "ifcr/model.hpp"

namespace ifcr::json_io {

using nlohmann::json;

using AnyChannel = std::variant<GaussianChannel, DiscreteChannel>;

/// Parses a channel spec:
///   {"kind":"gaussian","h11":...,"h12":{"re":...,"im":...},...}
///   {"kind":"discrete","sizes":[n1,n2,nc,m1,m2],"t":[...]}
/// Cross gains accept either a plain number or a {re, im} object. The
/// discrete tensor is flattened row-major over y1, y2, x1, x2, xc.
/// Throws MISSING_FIELD / BAD_VALUE naming the offending field.
AnyChannel parse_channel(const json& spec);
AnyChannel load_channel(const std::string& path);

/// {"p1":[...],"p2":[...],"pc":[...]} with pc flattened row-major x1, x2, xc.
ProductInputDistribution parse_product_distribution(const json& spec);
ProductInputDistribution load_product_distribution(const std::string& path);

json to_json(const GaussianChannel& ch);
json to_json(const DiscreteChannel& ch);
json to_json(const ProductInputDistribution& d);
json to_json(const RegimeLabel& label);
json to_json(const discrete::ConditionReport& rep);

}  // namespace ifcr::json_io
