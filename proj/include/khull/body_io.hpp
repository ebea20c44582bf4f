#pragma once

#include "khull/convex_core.hpp"

#include <json.hpp>

#include <stdexcept>
#include <string>

namespace khull::io {

using nlohmann::json;

/// Schema or content error; `field` is a JSON-pointer-like path.
class ParseError : public std::runtime_error {
public:
    ParseError(std::string field, const std::string& what)
        : std::runtime_error(field + ": " + what), field_(std::move(field)) {}
    const std::string& field() const { return field_; }

private:
    std::string field_;
};

/// Body schema:
///   {"kind": "polytope",   "vertices": [[..],..], "facets": [{"normal": [..], "offset": h}, ..]}
///   {"kind": "ball",       "dim": d, "radius": r, "center": [..]}      center optional
///   {"kind": "half_ball",  "dim": d, "radius": r, "axis": [..]}        axis optional (e1)
///   {"kind": "half_space", "normal": [..], "offset": t}
///   {"kind": "cone",       "dim": d, "generators": [[..]], "normals": [[..]]}
/// A polytope needs vertices, facets, or both (both must be consistent).
json to_json(const ConvexBody& body);
ConvexBody body_from_json(const json& j);

json to_json(const Vec& v);
Vec vec_from_json(const json& j, const std::string& field);

/// Serializes with 17 significant digits.
std::string dump(const json& j);

/// Parses "x,y[,z]" rows; blank lines and lines starting with '#' are skipped.
PointList read_points_csv(const std::string& text);

}  // namespace khull::io
