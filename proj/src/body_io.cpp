#include "khull/body_io.hpp"

#include <charconv>
#include <sstream>

namespace khull::io {
namespace {

const json& require(const json& j, const char* key, const std::string& path) {
    if (!j.is_object() || !j.contains(key)) throw ParseError(path + "/" + key, "missing required field");
    return j.at(key);
}

double number(const json& j, const std::string& path) {
    if (!j.is_number()) throw ParseError(path, "expected a number");
    return j.get<double>();
}

PointList point_list(const json& j, const std::string& path) {
    if (!j.is_array()) throw ParseError(path, "expected an array of points");
    PointList pts;
    for (std::size_t i = 0; i < j.size(); ++i) pts.push_back(vec_from_json(j[i], path + "/" + std::to_string(i)));
    return pts;
}

json point_list_json(const PointList& pts) {
    json a = json::array();
    for (const Vec& p : pts) a.push_back(to_json(p));
    return a;
}

int dimension(const json& j, const std::string& path) {
    const double d = number(require(j, "dim", path), path + "/dim");
    if (d != static_cast<int>(d) || d < 1 || d > 3) throw ParseError(path + "/dim", "dimension must be 1, 2 or 3");
    return static_cast<int>(d);
}

}  // namespace

json to_json(const Vec& v) {
    json a = json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v(i));
    return a;
}

Vec vec_from_json(const json& j, const std::string& field) {
    if (!j.is_array() || j.empty()) throw ParseError(field, "expected a nonempty array of numbers");
    Vec v(static_cast<Eigen::Index>(j.size()));
    for (std::size_t i = 0; i < j.size(); ++i) v(static_cast<Eigen::Index>(i)) = number(j[i], field + "/" + std::to_string(i));
    return v;
}

json to_json(const ConvexBody& body) {
    json j;
    j["kind"] = to_string(body.kind());
    j["dim"] = body.dim();
    switch (body.kind()) {
        case BodyKind::Polytope: {
            const auto& p = body.as<Polytope>();
            j["vertices"] = point_list_json(p.vertices());
            json facets = json::array();
            for (const Facet& f : p.facets()) facets.push_back({{"normal", to_json(f.normal)}, {"offset", f.offset}});
            j["facets"] = facets;
            break;
        }
        case BodyKind::Ball:
            j["radius"] = body.as<Ball>().radius;
            j["center"] = to_json(body.as<Ball>().center);
            break;
        case BodyKind::HalfBall:
            j["radius"] = body.as<HalfBall>().radius;
            j["axis"] = to_json(body.as<HalfBall>().axis);
            break;
        case BodyKind::HalfSpace:
            j["normal"] = to_json(body.as<HalfSpace>().normal);
            j["offset"] = body.as<HalfSpace>().offset;
            break;
        case BodyKind::PolyhedralCone: {
            const auto& c = body.as<PolyhedralCone>();
            if (c.generators) j["generators"] = point_list_json(*c.generators);
            if (c.normals) j["normals"] = point_list_json(*c.normals);
            break;
        }
    }
    return j;
}

ConvexBody body_from_json(const json& j) {
    if (!j.is_object()) throw ParseError("", "body must be a JSON object");
    const json& kind_j = require(j, "kind", "");
    if (!kind_j.is_string()) throw ParseError("/kind", "expected a string");
    const std::string kind = kind_j.get<std::string>();
    try {
        if (kind == "polytope") {
            const bool has_v = j.contains("vertices");
            const bool has_f = j.contains("facets");
            if (!has_v && !has_f) throw ParseError("/vertices", "polytope needs vertices or facets");
            PointList vertices;
            if (has_v) vertices = point_list(j["vertices"], "/vertices");
            std::vector<Facet> facets;
            if (has_f) {
                const json& fj = j["facets"];
                if (!fj.is_array()) throw ParseError("/facets", "expected an array");
                for (std::size_t i = 0; i < fj.size(); ++i) {
                    const std::string path = "/facets/" + std::to_string(i);
                    Vec n = vec_from_json(require(fj[i], "normal", path), path + "/normal");
                    double off = number(require(fj[i], "offset", path), path + "/offset");
                    const double len = n.norm();
                    if (len == 0.0) throw ParseError(path + "/normal", "zero normal");
                    facets.push_back({n / len, off / len});
                }
            }
            const int d = has_v ? static_cast<int>(vertices.front().size()) : static_cast<int>(facets.front().normal.size());
            if (d > 3) throw ParseError("/vertices", "dimension must be at most 3");
            for (std::size_t i = 0; i < vertices.size(); ++i)
                if (vertices[i].size() != d) throw ParseError("/vertices/" + std::to_string(i), "dimension mismatch");
            for (std::size_t i = 0; i < facets.size(); ++i)
                if (facets[i].normal.size() != d) throw ParseError("/facets/" + std::to_string(i) + "/normal", "dimension mismatch");
            if (has_v && has_f) {
                Polytope p(d, vertices, facets);
                if (!p.is_consistent(1e-9)) throw ParseError("/facets", "vertices and facets are inconsistent");
                return p;
            }
            if (has_v) return Polytope::from_vertices(vertices);
            return Polytope::from_halfspaces(d, facets);
        }
        if (kind == "ball") {
            const double r = number(require(j, "radius", ""), "/radius");
            if (!(r > 0.0)) throw ParseError("/radius", "must be positive");
            Vec center = j.contains("center") ? vec_from_json(j["center"], "/center") : Vec::Zero(dimension(j, ""));
            return Ball{r, center};
        }
        if (kind == "half_ball") {
            const double r = j.contains("radius") ? number(j["radius"], "/radius") : 1.0;
            if (!(r > 0.0)) throw ParseError("/radius", "must be positive");
            if (j.contains("axis")) return HalfBall{r, vec_from_json(j["axis"], "/axis")};
            return ConvexBody::half_ball(dimension(j, ""), r);
        }
        if (kind == "half_space") {
            Vec n = vec_from_json(require(j, "normal", ""), "/normal");
            if (n.norm() == 0.0) throw ParseError("/normal", "zero normal");
            return HalfSpace{n, number(require(j, "offset", ""), "/offset")};
        }
        if (kind == "cone") {
            PolyhedralCone c;
            c.dim = dimension(j, "");
            if (j.contains("generators")) c.generators = point_list(j["generators"], "/generators");
            if (j.contains("normals")) c.normals = point_list(j["normals"], "/normals");
            if (!c.generators && !c.normals) throw ParseError("/generators", "cone needs generators or normals");
            return c;
        }
    } catch (const ParseError&) {
        throw;
    } catch (const std::exception& e) {
        throw ParseError("", e.what());
    }
    throw ParseError("/kind", "unknown body kind '" + kind + "'");
}

std::string dump(const json& j) {
    // nlohmann emits the shortest round-trip representation, which is at
    // most 17 significant digits and parses back to the same double.
    return j.dump(2);
}

PointList read_points_csv(const std::string& text) {
    PointList pts;
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    std::size_t dim = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.find_first_not_of(" \t") == std::string::npos || line[line.find_first_not_of(" \t")] == '#') continue;
        std::vector<double> row;
        std::stringstream ls(line);
        std::string cell;
        while (std::getline(ls, cell, ',')) {
            const auto b = cell.find_first_not_of(" \t");
            const auto e = cell.find_last_not_of(" \t");
            if (b == std::string::npos) throw ParseError("line " + std::to_string(line_no), "empty cell");
            const std::string tok = cell.substr(b, e - b + 1);
            double v = 0.0;
            auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
            if (ec != std::errc() || ptr != tok.data() + tok.size())
                throw ParseError("line " + std::to_string(line_no), "not a number: '" + tok + "'");
            row.push_back(v);
        }
        if (dim == 0) dim = row.size();
        if (row.size() != dim) throw ParseError("line " + std::to_string(line_no), "inconsistent column count");
        pts.push_back(Eigen::Map<Vec>(row.data(), static_cast<Eigen::Index>(row.size())));
    }
    return pts;
}

}  // namespace khull::io
