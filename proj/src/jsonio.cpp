#include "majorder/jsonio.hpp"

namespace majorder {

Json point_to_json(const OrderedSpace& space, const Point& p) {
    if (!space.is_loewner()) return Json(p.coords);
    Json j;
    j["packed_sym"] = p.coords;
    j["m"] = space.n;
    return j;
}

Point point_from_json(const OrderedSpace& space, const Json& j) {
    if (j.is_array()) {
        Point p(j.get<std::vector<double>>());
        if (static_cast<int>(p.dim()) != space.ambient_dim())
            throw DimensionError("point_from_json: wrong coordinate count");
        return p;
    }
    if (!j.contains("packed_sym"))
        throw Error("point_from_json: expected an array or a packed_sym object");
    if (space.is_loewner() && j.value("m", space.n) != space.n)
        throw DimensionError("point_from_json: packed_sym dimension mismatch");
    Point p(j.at("packed_sym").get<std::vector<double>>());
    if (static_cast<int>(p.dim()) != space.ambient_dim())
        throw DimensionError("point_from_json: wrong packed length");
    return p;
}

Json space_to_json(const OrderedSpace& space) {
    Json j;
    switch (space.kind) {
        case SpaceKind::RealLine: j["kind"] = "real_line"; break;
        case SpaceKind::Orthant: j["kind"] = "orthant"; break;
        case SpaceKind::OrthantInterior: j["kind"] = "orthant_interior"; break;
        case SpaceKind::Loewner: j["kind"] = "loewner"; break;
    }
    j["n"] = space.n;
    return j;
}

OrderedSpace space_from_json(const Json& j) {
    const std::string kind = j.at("kind").get<std::string>();
    const int n = j.value("n", 1);
    if (kind == "real_line") return OrderedSpace::real_line();
    if (kind == "orthant") return OrderedSpace::orthant(n);
    if (kind == "orthant_interior") return OrderedSpace::orthant_interior(n);
    if (kind == "loewner") return OrderedSpace::loewner(n);
    throw Error("space_from_json: unknown kind '" + kind + "'");
}

Json measure_to_json(const DiscreteMeasure& m) {
    Json j;
    j["space"] = space_to_json(m.space);
    j["weights"] = m.weights;
    Json support = Json::array();
    for (const auto& p : m.support) support.push_back(point_to_json(m.space, p));
    j["support"] = support;
    return j;
}

DiscreteMeasure measure_from_json(const Json& j) {
    const OrderedSpace space = space_from_json(j.at("space"));
    std::vector<Point> support;
    for (const auto& item : j.at("support")) support.push_back(point_from_json(space, item));
    return DiscreteMeasure(space, j.at("weights").get<std::vector<double>>(),
                           std::move(support));
}

Json verdict_to_json(const MajorizationVerdict& v) {
    Json j;
    j["relation"] = relation_name(v.relation);
    j["holds"] = v.holds;
    j["prefix_slacks"] = v.prefix_slacks;
    if (v.failing_index) j["failing_index"] = *v.failing_index;
    else j["failing_index"] = nullptr;
    j["equality_defect"] = v.equality_defect;
    return j;
}

Json class_verdict_to_json(const ClassVerdict& v) {
    Json j;
    j["holds"] = v.holds;
    j["worst_residual"] = v.worst_residual;
    j["samples_tested"] = v.samples_tested;
    j["samples_skipped"] = v.samples_skipped;
    j["seed"] = v.seed;
    if (v.witness) {
        Json w;
        Json pts = Json::array();
        for (const auto& p : v.witness->points) pts.push_back(Json(p.coords));
        w["points"] = pts;
        w["lambda"] = v.witness->lambda;
        w["sample_index"] = v.witness->sample_index;
        j["witness"] = w;
    } else {
        j["witness"] = nullptr;
    }
    return j;
}

Json report_to_json(const InequalityReport& r) {
    Json j;
    j["theorem"] = theorem_name(r.theorem);
    j["lhs"] = r.lhs;
    j["rhs"] = r.rhs;
    j["residual"] = r.residual;
    j["holds"] = r.holds;
    if (!r.prefix_reports.empty()) {
        Json prefixes = Json::array();
        for (const auto& pr : r.prefix_reports) {
            Json p;
            p["n"] = pr.n;
            p["lhs"] = pr.lhs;
            p["rhs"] = pr.rhs;
            p["residual"] = pr.residual;
            prefixes.push_back(p);
        }
        j["prefix"] = prefixes;
    }
    j["advisories"] = r.advisories;
    if (!r.instance_digest.empty()) j["instance"] = Json::parse(r.instance_digest);
    return j;
}

} // namespace majorder
