#pragma once

#include "qcluster/jsonio.hpp"
#include "qcluster/skeinid.hpp"

namespace qcluster {

/// Named objects loaded from bundle files, with referential integrity:
/// wall systems, laminations and seeds refer to loaded triangulations.
class Workspace {
public:
    struct NamedWalls {
        std::string base;
        WallSystem walls;
    };
    struct NamedLam {
        std::string base;
        MultiLamination lam;
    };
    struct NamedSeed {
        std::string triangulation;
        QuantumSeed seed;
    };

    std::map<std::string, Triangulation> triangulations;
    std::map<std::string, NamedWalls> walls;
    std::map<std::string, NamedLam> laminations;
    std::map<std::string, NamedSeed> seeds;

    const Triangulation& triangulation(const std::string& name) const {
        auto it = triangulations.find(name);
        if (it == triangulations.end()) throw IoError("unknown triangulation: " + name);
        return it->second;
    }

    const NamedSeed& seed(const std::string& name) const {
        auto it = seeds.find(name);
        if (it == seeds.end()) throw IoError("unknown seed: " + name);
        return it->second;
    }

    /// Registers the objects of a bundle file. Built-in surfaces square,
    /// pentagon, hexagon and annulus are preloaded.
    std::vector<std::string> load(const json& bundle) {
        std::vector<std::string> registered;
        if (bundle.contains("triangulations")) {
            for (const auto& j : bundle.at("triangulations")) {
                std::string name = j.at("name").get<std::string>();
                triangulations[name] = triangulation_from_json(j);
                registered.push_back("triangulation " + name);
            }
        }
        if (bundle.contains("walls")) {
            for (const auto& j : bundle.at("walls")) {
                std::string name = j.at("name").get<std::string>();
                std::string base = j.at("base").get<std::string>();
                walls[name] = {base, walls_from_json(triangulation(base), j)};
                registered.push_back("walls " + name);
            }
        }
        if (bundle.contains("laminations")) {
            for (const auto& j : bundle.at("laminations")) {
                std::string name = j.at("name").get<std::string>();
                std::string base = j.at("base").get<std::string>();
                laminations[name] = {base, lamination_from_json(triangulation(base), j)};
                registered.push_back("lamination " + name);
            }
        }
        if (bundle.contains("seeds")) {
            for (const auto& j : bundle.at("seeds")) {
                std::string name = j.at("name").get<std::string>();
                std::string tname = j.at("triangulation").get<std::string>();
                const Triangulation& t = triangulation(tname);
                QuantumSeed s;
                const json& coeff = j.at("coefficients");
                std::string kind = coeff.at("kind").get<std::string>();
                if (kind == "none") {
                    s = seed_from_triangulation(t);
                } else if (kind == "wall") {
                    const auto& nw = walls.at(coeff.at("name").get<std::string>());
                    if (nw.base != tname) throw IoError("seed/wall base mismatch for " + name);
                    s = seed_from_triangulation(t, nw.walls);
                } else if (kind == "lamination") {
                    const auto& nl = laminations.at(coeff.at("name").get<std::string>());
                    if (nl.base != tname) throw IoError("seed/lamination base mismatch for " + name);
                    s = seed_from_triangulation(t, nl.lam);
                } else {
                    throw IoError("seed coefficients kind must be none, wall or lamination");
                }
                seeds[name] = {tname, std::move(s)};
                registered.push_back("seed " + name);
            }
        }
        return registered;
    }

    void preload_builtins() {
        triangulations["square"] = make_square();
        triangulations["pentagon"] = make_pentagon();
        triangulations["hexagon"] = make_hexagon();
        triangulations["annulus"] = make_annulus();
    }
};

} // namespace qcluster
