// Command-line front end: load surface/wall/lamination bundles, run
// mutations and expansions, evaluate coefficients, check specializations and
// quasi-homomorphisms, and run the golden fixtures.
//
// Exit codes: 0 success, 1 user error, 2 internal invariant violation.

#include <fstream>
#include <iostream>
#include <set>

#include <CLI11.hpp>

#include "qcluster/workspace.hpp"

using namespace qcluster;

namespace {

json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw IoError(path + ": " + e.what());
    }
    return j;
}

json matrix_json(const Triangulation& t, const IntMat& m, bool unfrozen_rows_only) {
    json rows = json::object();
    for (int i = 0; i < t.edge_count(); ++i) {
        if (unfrozen_rows_only && !t.is_unfrozen(i)) continue;
        json row = json::object();
        for (int j = 0; j < t.edge_count(); ++j)
            if (m.at(i, j) != 0) row[t.edges[j].id] = m.at(i, j);
        rows[t.edges[i].id] = row;
    }
    return rows;
}

void print_matrix(std::ostream& os, const Triangulation& t, const IntMat& m,
                  bool unfrozen_rows_only) {
    for (int i = 0; i < t.edge_count(); ++i) {
        if (unfrozen_rows_only && !t.is_unfrozen(i)) continue;
        os << t.edges[i].id << ":";
        for (int j = 0; j < t.edge_count(); ++j)
            if (m.at(i, j) != 0) os << ' ' << t.edges[j].id << "=" << m.at(i, j);
        os << '\n';
    }
}

json coeffs_json(const Triangulation& t, const std::map<int, CoeffPair>& p) {
    json out = json::object();
    for (const auto& [al, pair] : p)
        out[t.edges[al].id] = {{"plus", to_string(pair.plus)}, {"minus", to_string(pair.minus)}};
    return out;
}

std::map<Symbol, TropMonomial> assignment_from_json(const json& j) {
    std::map<Symbol, TropMonomial> out;
    for (const auto& [key, value] : j.items()) {
        TropMonomial src = parse_trop(key);
        if (src.monomial().entries().size() != 1 || src.monomial().entries()[0].second != 2)
            throw IoError("assignment keys must be single symbols: " + key);
        out[src.monomial().entries()[0].first] = parse_trop(value.get<std::string>());
    }
    return out;
}

struct CliState {
    Workspace ws;
    bool json_output = false;
};

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact quantum cluster algebra engine for walled surfaces"};
    app.require_subcommand(1);

    CliState st;
    st.ws.preload_builtins();
    std::vector<std::string> load_files;
    app.add_flag("--json", st.json_output, "machine-readable output");
    app.add_option("--load", load_files, "bundle file(s) to load before the command");

    auto* cmd_load = app.add_subcommand("load", "parse, validate and register bundle files");
    std::vector<std::string> load_args;
    cmd_load->add_option("files", load_args, "bundle files")->required();

    auto* cmd_validate = app.add_subcommand("validate", "validate a loaded triangulation");
    std::string validate_name;
    cmd_validate->add_option("name", validate_name, "triangulation name")->required();

    std::string eps_name, pi_name;
    auto* cmd_eps = app.add_subcommand("eps", "print the exchange matrix of a triangulation");
    cmd_eps->add_option("name", eps_name)->required();
    auto* cmd_pi = app.add_subcommand("pi", "print the compatibility matrix of a triangulation");
    cmd_pi->add_option("name", pi_name)->required();

    auto* cmd_mutate = app.add_subcommand("mutate", "mutate a seed along a flip sequence");
    std::string mutate_seed_name;
    std::vector<std::string> mutate_edges;
    cmd_mutate->add_option("seed", mutate_seed_name)->required();
    cmd_mutate->add_option("edges", mutate_edges, "edge ids to flip in order")->required();

    auto* cmd_expand = app.add_subcommand("expand", "Laurent expansion of one variable");
    std::string expand_seed_name, expand_target;
    std::vector<std::string> expand_flips;
    cmd_expand->add_option("seed", expand_seed_name)->required();
    cmd_expand->add_option("--flips", expand_flips, "flip sequence");
    cmd_expand->add_option("--target", expand_target, "target edge id")->required();

    auto* cmd_coeffs = app.add_subcommand("coeffs", "coefficient tuple of walls or a lamination");
    std::string coeffs_name;
    cmd_coeffs->add_option("name", coeffs_name, "wall system or lamination name")->required();

    auto* cmd_spec = app.add_subcommand("specialize", "apply a coefficient assignment to a seed");
    std::string spec_seed_name, spec_assign_file;
    bool spec_zminus = false;
    cmd_spec->add_option("seed", spec_seed_name)->required();
    cmd_spec->add_option("--assign", spec_assign_file, "JSON file mapping symbols to monomials");
    cmd_spec->add_flag("--zminus1", spec_zminus, "set every z-[j] to 1");

    auto* cmd_quasi = app.add_subcommand("quasi-check", "verify the quasi-homomorphism axioms");
    std::string quasi_source, quasi_target, quasi_assign_file, quasi_rescale_file;
    cmd_quasi->add_option("source", quasi_source)->required();
    cmd_quasi->add_option("target", quasi_target)->required();
    cmd_quasi->add_option("--assign", quasi_assign_file, "coefficient map file")->required();
    cmd_quasi->add_option("--rescale", quasi_rescale_file, "per-edge rescaling monomials");

    auto* cmd_fixtures = app.add_subcommand("fixtures", "run golden fixtures");
    std::string fixture_name = "all";
    cmd_fixtures->add_option("name", fixture_name, "fixture name or 'all'");

    CLI11_PARSE(app, argc, argv);

    try {
        for (const auto& f : load_files) st.ws.load(read_json_file(f));

        if (*cmd_load) {
            json reg = json::array();
            for (const auto& f : load_args)
                for (const auto& r : st.ws.load(read_json_file(f))) reg.push_back(r);
            if (st.json_output)
                std::cout << json{{"registered", reg}}.dump(2) << '\n';
            else
                for (const auto& r : reg) std::cout << "registered " << r.get<std::string>() << '\n';
        } else if (*cmd_validate) {
            validate(st.ws.triangulation(validate_name)); // throws on violation
            if (st.json_output)
                std::cout << json{{"valid", true}, {"name", validate_name}}.dump(2) << '\n';
            else
                std::cout << validate_name << ": ok\n";
        } else if (*cmd_eps) {
            const Triangulation& t = st.ws.triangulation(eps_name);
            if (st.json_output)
                std::cout << matrix_json(t, exchange_matrix(t), true).dump(2) << '\n';
            else
                print_matrix(std::cout, t, exchange_matrix(t), true);
        } else if (*cmd_pi) {
            const Triangulation& t = st.ws.triangulation(pi_name);
            if (st.json_output)
                std::cout << matrix_json(t, compatibility_matrix(t), false).dump(2) << '\n';
            else
                print_matrix(std::cout, t, compatibility_matrix(t), false);
        } else if (*cmd_mutate) {
            const auto& named = st.ws.seed(mutate_seed_name);
            const Triangulation& t0 = st.ws.triangulation(named.triangulation);
            MutationState ms{named.seed, {}};
            std::vector<int> changed;
            for (const auto& id : mutate_edges) {
                int k = t0.edge_index(id);
                ms = mutate_seed(ms, k);
                changed.push_back(k);
            }
            const QuantumSeed& s = ms.seed;
            const Triangulation& tcur =
                s.geometry ? s.geometry->triangulation : t0; // ids stable under flips
            json out;
            out["eps"] = matrix_json(tcur, s.eps, true);
            out["pi"] = matrix_json(tcur, s.pi, false);
            out["p"] = coeffs_json(tcur, s.p);
            json vars = json::object();
            std::set<int> uniq(changed.begin(), changed.end());
            for (int k : uniq) vars[tcur.edges[k].id] = to_string(s.frame[k]);
            out["variables"] = vars;
            if (st.json_output) {
                std::cout << out.dump(2) << '\n';
            } else {
                std::cout << "eps:\n";
                print_matrix(std::cout, tcur, s.eps, true);
                std::cout << "pi:\n";
                print_matrix(std::cout, tcur, s.pi, false);
                std::cout << "coefficients:\n";
                for (const auto& [al, pair] : s.p)
                    std::cout << "  " << tcur.edges[al].id << ": p+ = " << to_string(pair.plus)
                              << ", p- = " << to_string(pair.minus) << '\n';
                for (int k : uniq)
                    std::cout << tcur.edges[k].id << " = " << to_string(s.frame[k]) << '\n';
            }
        } else if (*cmd_expand) {
            const auto& named = st.ws.seed(expand_seed_name);
            const Triangulation& t0 = st.ws.triangulation(named.triangulation);
            std::vector<int> flips;
            for (const auto& id : expand_flips) flips.push_back(t0.edge_index(id));
            TorusElem var = expand_along(named.seed, flips, t0.edge_index(expand_target));
            if (st.json_output)
                std::cout << json{{"target", expand_target}, {"expansion", to_string(var)}}.dump(2)
                          << '\n';
            else
                std::cout << expand_target << " = " << to_string(var) << '\n';
        } else if (*cmd_coeffs) {
            json out;
            if (st.ws.walls.count(coeffs_name)) {
                const auto& nw = st.ws.walls.at(coeffs_name);
                const Triangulation& t = st.ws.triangulation(nw.base);
                auto p = wall_coeffs(t, nw.walls);
                out = coeffs_json(t, p);
                out["normalized"] = is_normalized(p);
            } else if (st.ws.laminations.count(coeffs_name)) {
                const auto& nl = st.ws.laminations.at(coeffs_name);
                const Triangulation& t = st.ws.triangulation(nl.base);
                out = coeffs_json(t, lam_coeffs(t, nl.lam));
            } else {
                throw IoError("unknown wall system or lamination: " + coeffs_name);
            }
            if (st.json_output) {
                std::cout << out.dump(2) << '\n';
            } else {
                for (const auto& [id, pair] : out.items()) {
                    if (id == "normalized") continue;
                    std::cout << id << ": p+ = " << pair.at("plus").get<std::string>()
                              << ", p- = " << pair.at("minus").get<std::string>() << '\n';
                }
                if (out.contains("normalized"))
                    std::cout << "normalized: " << (out["normalized"].get<bool>() ? "yes" : "no")
                              << '\n';
            }
        } else if (*cmd_spec) {
            const auto& named = st.ws.seed(spec_seed_name);
            const Triangulation& t = st.ws.triangulation(named.triangulation);
            QuantumSeed s = named.seed;
            if (spec_zminus) s = specialize_minus(s);
            if (!spec_assign_file.empty()) {
                CoeffHom hom{assignment_from_json(read_json_file(spec_assign_file))};
                for (auto& f : s.frame) f = hom.apply(f);
                for (auto& [i, pair] : s.p) {
                    pair.plus = hom.apply(pair.plus);
                    pair.minus = hom.apply(pair.minus);
                }
            }
            json out;
            out["p"] = coeffs_json(t, s.p);
            json rel = json::object();
            for (int k : s.unfrozen_indices()) rel[t.edges[k].id] = to_string(exchange_rhs(s, k));
            out["exchange_rhs"] = rel;
            if (st.json_output) {
                std::cout << out.dump(2) << '\n';
            } else {
                for (const auto& [id, pair] : out["p"].items())
                    std::cout << id << ": p+ = " << pair.at("plus").get<std::string>()
                              << ", p- = " << pair.at("minus").get<std::string>() << '\n';
                for (const auto& [id, r] : out["exchange_rhs"].items())
                    std::cout << "exchange at " << id << ": " << r.get<std::string>() << '\n';
            }
        } else if (*cmd_quasi) {
            const auto& src = st.ws.seed(quasi_source);
            const auto& tgt = st.ws.seed(quasi_target);
            const Triangulation& t = st.ws.triangulation(src.triangulation);
            CoeffHom psi{assignment_from_json(read_json_file(quasi_assign_file))};
            std::map<int, TropMonomial> rescale;
            if (!quasi_rescale_file.empty()) {
                for (const auto& [id, v] : read_json_file(quasi_rescale_file).items())
                    rescale[t.edge_index(id)] = parse_trop(v.get<std::string>());
            }
            QuasiReport rep = check_quasi(src.seed, tgt.seed, psi, rescale);
            if (st.json_output) {
                json out{{"ok", rep.ok}, {"failures", rep.failures}};
                json qp = json::object();
                for (const auto& [i, l] : rep.q_powers) qp[t.edges[i].id] = l;
                out["q_powers2"] = qp;
                std::cout << out.dump(2) << '\n';
            } else {
                std::cout << (rep.ok ? "quasi-homomorphism axioms hold\n" : "FAILED\n");
                for (const auto& f : rep.failures) std::cout << "  " << f << '\n';
            }
            if (!rep.ok) return 1;
        } else if (*cmd_fixtures) {
            std::vector<std::string> names =
                fixture_name == "all" ? fixture_names() : std::vector<std::string>{fixture_name};
            bool all_pass = true;
            json out = json::array();
            for (const auto& n : names) {
                FixtureReport rep = run_fixture(n); // throws UnknownFixture
                all_pass = all_pass && rep.pass;
                if (st.json_output)
                    out.push_back({{"name", rep.name}, {"pass", rep.pass}, {"detail", rep.detail}});
                else
                    std::cout << (rep.pass ? "PASS " : "FAIL ") << rep.name << ": " << rep.detail
                              << '\n';
            }
            if (st.json_output) std::cout << out.dump(2) << '\n';
            if (!all_pass) return 1;
        }
    } catch (const NotDivisible& e) {
        std::cerr << "internal invariant violation: " << e.what() << '\n';
        return 2;
    } catch (const std::logic_error& e) {
        std::cerr << "internal invariant violation: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
