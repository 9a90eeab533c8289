#pragma once

#include <fstream>

#include <json.hpp>

#include "qcluster/cluster.hpp"

namespace qcluster {

using nlohmann::json;

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// --------------------------------------------------------------------------
// Triangulations: {edges:[{id, boundary}], triangles:[[e,e,e]...],
//                  points:[{id, ends:[[edge, endIndex]...]}]}

inline json to_json(const Triangulation& t) {
    json j;
    j["edges"] = json::array();
    for (const auto& e : t.edges) j["edges"].push_back({{"id", e.id}, {"boundary", e.boundary}});
    j["triangles"] = json::array();
    for (const auto& tri : t.triangles)
        j["triangles"].push_back({t.edges[tri[0]].id, t.edges[tri[1]].id, t.edges[tri[2]].id});
    j["points"] = json::array();
    for (std::size_t p = 0; p < t.point_ids.size(); ++p) {
        json ends = json::array();
        for (const auto& ee : t.end_orders[p]) ends.push_back({t.edges[ee.edge].id, ee.end});
        j["points"].push_back({{"id", t.point_ids[p]}, {"ends", ends}});
    }
    return j;
}

inline Triangulation triangulation_from_json(const json& j) {
    Triangulation t;
    try {
        for (const auto& e : j.at("edges"))
            t.edges.push_back({e.at("id").get<std::string>(), e.at("boundary").get<bool>()});
        for (const auto& tri : j.at("triangles")) {
            if (tri.size() != 3) throw IoError("triangle is not a triple");
            t.triangles.push_back({t.edge_index(tri[0].get<std::string>()),
                                   t.edge_index(tri[1].get<std::string>()),
                                   t.edge_index(tri[2].get<std::string>())});
        }
        for (const auto& p : j.at("points")) {
            t.point_ids.push_back(p.at("id").get<std::string>());
            std::vector<EdgeEnd> ends;
            for (const auto& ee : p.at("ends"))
                ends.push_back({t.edge_index(ee.at(0).get<std::string>()), ee.at(1).get<int>()});
            t.end_orders.push_back(std::move(ends));
        }
    } catch (const json::exception& e) {
        throw IoError(std::string("triangulation JSON: ") + e.what());
    }
    validate(t);
    return t;
}

// --------------------------------------------------------------------------
// Curves: {x:{edge:int}, a2:{edge:int}} with edges referenced by id.

inline json curve_to_json(const Triangulation& t, const CurveCoords& c) {
    json x = json::object(), a2 = json::object();
    for (int i = 0; i < t.edge_count(); ++i) {
        if (c.x[i] != 0) x[t.edges[i].id] = c.x[i];
        if (c.a2[i] != 0) a2[t.edges[i].id] = c.a2[i];
    }
    return {{"x", x}, {"a2", a2}};
}

inline CurveCoords curve_from_json(const Triangulation& t, const json& j) {
    CurveCoords c{std::vector<std::int64_t>(t.edge_count(), 0),
                  std::vector<std::int64_t>(t.edge_count(), 0)};
    try {
        for (const auto& [id, v] : j.at("x").items()) c.x[t.edge_index(id)] = v.get<std::int64_t>();
        for (const auto& [id, v] : j.at("a2").items()) c.a2[t.edge_index(id)] = v.get<std::int64_t>();
    } catch (const json::exception& e) {
        throw IoError(std::string("curve JSON: ") + e.what());
    }
    check_curve(t, c);
    return c;
}

// --------------------------------------------------------------------------
// Laminations: {base: <triangulation name>, curves:[{label, x, a2}...]}

inline MultiLamination lamination_from_json(const Triangulation& base, const json& j) {
    MultiLamination L;
    try {
        for (const auto& c : j.at("curves"))
            L.entries.push_back({c.at("label").get<std::int64_t>(), curve_from_json(base, c)});
    } catch (const json::exception& e) {
        throw IoError(std::string("lamination JSON: ") + e.what());
    }
    return L;
}

inline json to_json(const Triangulation& base, const MultiLamination& L, const std::string& base_name) {
    json j;
    j["base"] = base_name;
    j["curves"] = json::array();
    for (const auto& e : L.entries) {
        json c = curve_to_json(base, e.curve);
        c["label"] = e.label;
        j["curves"].push_back(c);
    }
    return j;
}

// --------------------------------------------------------------------------
// Wall systems: {labels:[...], walls:[{label, kind, plus, minus|null,
//                crossingless_label}...]}

inline WallSystem walls_from_json(const Triangulation& base, const json& j) {
    WallSystem w;
    try {
        for (const auto& wj : j.at("walls")) {
            WallSystem::Wall wall;
            wall.label = wj.at("label").get<std::int64_t>();
            std::string kind = wj.at("kind").get<std::string>();
            if (kind == "arc")
                wall.kind = WallSystem::Kind::Arc;
            else if (kind == "loop")
                wall.kind = WallSystem::Kind::Loop;
            else
                throw IoError("wall kind must be arc or loop");
            wall.plus = curve_from_json(base, wj.at("plus"));
            if (!wj.at("minus").is_null()) wall.minus = curve_from_json(base, wj.at("minus"));
            wall.crossingless_label = wj.value("crossingless_label", true);
            w.walls.push_back(std::move(wall));
        }
        if (j.contains("labels")) {
            std::vector<std::int64_t> declared;
            for (const auto& l : j.at("labels")) declared.push_back(l.get<std::int64_t>());
            for (std::int64_t l : declared)
                if (std::find_if(w.walls.begin(), w.walls.end(), [&](const auto& wall) {
                        return wall.label == l;
                    }) == w.walls.end())
                    throw IoError("declared label " + std::to_string(l) + " has no wall");
        }
    } catch (const json::exception& e) {
        throw IoError(std::string("wall JSON: ") + e.what());
    }
    check_walls(base, w);
    return w;
}

inline json to_json(const Triangulation& base, const WallSystem& w, const std::string& base_name) {
    json j;
    j["base"] = base_name;
    j["labels"] = w.labels();
    j["walls"] = json::array();
    for (const auto& wall : w.walls) {
        json wj;
        wj["label"] = wall.label;
        wj["kind"] = wall.kind == WallSystem::Kind::Arc ? "arc" : "loop";
        wj["plus"] = curve_to_json(base, wall.plus);
        wj["minus"] = wall.minus ? curve_to_json(base, *wall.minus) : json(nullptr);
        wj["crossingless_label"] = wall.crossingless_label;
        j["walls"].push_back(wj);
    }
    return j;
}

} // namespace qcluster
