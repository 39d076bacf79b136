#pragma once

#include "projpart/bounds.hpp"
#include "projpart/dependence.hpp"
#include "projpart/dspan.hpp"
#include "projpart/partition.hpp"

#include <json.hpp>

#include <string>

namespace projpart::io {

using nlohmann::json;

/// A flat is a list of spanning rows. On input a row is either a point index
/// or a coordinate vector of element codes; a bare index is that point.
json to_json(const Flat& flat);
Flat flat_from_json(const SpacePtr& space, const json& j);

/// {"base": flat, "holes": [flat, ...]}
json to_json(const Factor& factor);
Factor factor_from_json(const SpacePtr& space, const json& j);

/// {"factors": [...], "witness": flat | null}
json to_json(const ProductPart& part);

/// {"q", "n", "k", "parts": [...]}
json to_json(const Partition& partition);
/// Throws ParseError on malformed documents.
Partition partition_from_json(const json& j);

/// One line per part: id,pattern,size.
std::string partition_csv(const Partition& partition);

json to_json(const VerifyReport& report);
json to_json(const DependentCount& count);
json to_json(const Rational& r);

/// {"queries": [{"flat", "answer": "YES" | {"NO": i}}], "output": flat}
json to_json(const DecisionTrace& trace);

json to_json(const BoundsTable& table);
json to_json(const BenchRow& row);

}  // namespace projpart::io
