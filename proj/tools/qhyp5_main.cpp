#include <CLI11.hpp>
#include <iostream>

#include "qhyp5/report.hpp"

using namespace qhyp5;
using nlohmann::json;

namespace {

FiberType type_from_string(std::string s) {
    std::string key;
    for (char c : s)
        if (std::isalnum(static_cast<unsigned char>(c))) key += static_cast<char>(std::toupper(c));
    for (FiberKind k : all_fiber_kinds()) {
        FiberType ft{k};
        std::string want;
        for (char c : ft.label())
            if (std::isalnum(static_cast<unsigned char>(c))) want += static_cast<char>(std::toupper(c));
        if (key == want) return ft;
    }
    throw InputError("unknown fiber type: " + s);
}

json germ_json(const GermResolution& res) {
    json j;
    j["at_infinity"] = res.at_infinity;
    if (res.at_infinity) {
        j["d"] = res.d;
        j["pa_Z"] = res.pa_Z;
        j["KZ_sq"] = res.KZ_sq;
        j["B_bar"] = res.B_bar;
        j["Z_bar"] = res.Z_bar;
    } else {
        j["e"] = res.e;
        j["E_P"] = res.E_P;
        j["E1"] = res.E1;
        j["E2"] = res.E2;
        j["E_can"] = res.E_can;
        j["mu"] = res.mu;
        j["nu"] = res.nu;
    }
    return j;
}

json graph_json(const DualGraph& g) {
    json comps = json::array();
    for (const auto& c : g.components)
        comps.push_back(json{{"id", c.id}, {"self_int", c.self_int}, {"mult", c.mult}, {"identity", c.is_identity}});
    json edges = json::array();
    for (const auto& e : g.edges)
        edges.push_back(json{{"a", e.a}, {"b", e.b}, {"weight", e.weight}, {"point", e.point}});
    json gamma = json::array();
    for (const auto& [id, w] : g.gamma_incidence) gamma.push_back(json{{"component", id}, {"weight", w}});
    return json{{"components", comps}, {"edges", edges}, {"gamma", gamma}, {"euler", g.euler()},
                {"cusp_components", g.cusp_components}};
}

int run_rational_table() {
    int verified = 0;
    bool all_ok = true;
    for (const auto& row : table3()) {
        if (!row.equation.empty()) {
            auto outcome = classify_rational(Poly::parse(row.equation, 1));
            auto* m = std::get_if<Table3Match>(&outcome);
            bool ok = m && m->row == row.row && *m->invariants.rho == row.rho && m->r == row.r &&
                      static_cast<int>(m->sections.size()) == row.section_count;
            all_ok &= ok;
            verified += ok;
            std::cout << "row " << row.row << ": " << (ok ? "verified" : "MISMATCH") << "  ("
                      << m->fiber_census.str() << ", rho=" << *m->invariants.rho << ", r=" << m->r
                      << ", sections=" << m->sections.size() << ")\n";
        } else {
            // Row 8: the stated parameter family admits no valid member.  The
            // census-level data is verified and the emptiness re-checked.
            FiberCensus c;
            c.affine[FiberKind::C33] = 4;
            c.infinity = FiberKind::C46;
            c.d = 13;
            c.m = 1;
            GramLattice lat = trivial_lattice(c, c.m);
            int r = torsion_rank(lat, 0);
            bool ok = lat.rank() == row.rho && r == row.r && !find_row8_equation(2).has_value();
            all_ok &= ok;
            verified += ok;
            std::cout << "row " << row.row << ": census-level data "
                      << (ok ? "verified" : "MISMATCH")
                      << " (rank=" << lat.rank() << ", r=" << r
                      << "); no defining equation exists for this family (see README)\n";
        }
    }
    std::cout << verified << "/10 rows verified against the embedded data\n";
    return all_ok ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"qhyp5: exact classification toolkit for genus-2 quasi-hyperelliptic fibrations in characteristic 5"};
    app.require_subcommand(1);

    std::string phi_text;
    int field = 1;
    int e_val = 0;
    long long d_val = 0;
    std::string type_name;
    bool want_dot = false, want_trace = false;
    int max_ext = 0;
    int scan_deg = 4;

    auto* classify = app.add_subcommand("classify", "full JSON report for y^2 = x^5 + phi(t)");
    classify->add_option("--phi", phi_text, "polynomial expression")->required();
    classify->add_option("--field", field, "coefficient field degree k (F_{5^k})");

    auto* fibers_cmd = app.add_subcommand("fibers", "fiber type lookup and Table-1 templates");
    fibers_cmd->add_option("--e", e_val, "local invariant e in {1,2,3,4,6,7,8,9}");
    fibers_cmd->add_option("--type", type_name, "fiber type label, e.g. C(3,3) or C33");
    fibers_cmd->add_flag("--dot", want_dot, "emit the dual graph in DOT format");

    auto* infinity_cmd = app.add_subcommand("infinity", "fiber type over t = infinity for a given degree d");
    infinity_cmd->add_option("--d", d_val, "degree of phi")->required();
    infinity_cmd->add_flag("--dot", want_dot, "emit the dual graph in DOT format");

    auto* resolve_cmd = app.add_subcommand("resolve", "run the canonical-resolution engine on a germ");
    resolve_cmd->add_option("--e", e_val, "affine germ exponent in {2,3,4,6,7,8,9}");
    resolve_cmd->add_option("--d", d_val, "resolve the germ at infinity for this degree instead");
    resolve_cmd->add_flag("--trace", want_trace, "print the blow-up trace as JSON lines");
    resolve_cmd->add_flag("--dot", want_dot, "emit the derived fiber graph in DOT format");

    auto* invariants_cmd = app.add_subcommand("invariants", "closed-form surface invariants");
    invariants_cmd->add_option("--phi", phi_text, "polynomial expression")->required();
    invariants_cmd->add_option("--field", field, "coefficient field degree k");

    auto* sections_cmd = app.add_subcommand("sections", "integral section search");
    sections_cmd->add_option("--phi", phi_text, "polynomial expression")->required();
    sections_cmd->add_option("--field", field, "coefficient field degree k");
    sections_cmd->add_option("--max-ext", max_ext, "constant field bound F_{5^max_ext} (default: splitting field)");

    auto* lattice_cmd = app.add_subcommand("lattice", "trivial-lattice Gram data");
    lattice_cmd->add_option("--phi", phi_text, "polynomial expression")->required();
    lattice_cmd->add_option("--field", field, "coefficient field degree k");

    app.add_subcommand("rational-table", "verify the ten rational cases against the embedded data");

    auto* scan_cmd = app.add_subcommand("scan", "exhaustive survey of phi over F_5 up to a degree bound");
    scan_cmd->add_option("--degree", scan_deg, "maximal degree (1..8)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& err) {
        if (err.get_name() == "CallForHelp" || err.get_name() == "CallForAllHelp") return app.exit(err);
        std::cerr << "error: " << err.what() << "\n";
        return 1;
    }

    try {
        if (classify->parsed()) {
            ReportResult rep = classify_report(phi_text, field);
            std::cout << rep.doc.dump(2) << "\n";
            return rep.consistency_failure ? 2 : 0;
        }
        if (fibers_cmd->parsed()) {
            FiberType ft = type_name.empty() ? classify_e(e_val) : type_from_string(type_name);
            DualGraph g = fiber_template(ft);
            if (want_dot) {
                std::cout << g.dot(ft.label());
            } else {
                json j{{"label", ft.label()},   {"nu_label", ft.nu_label()},       {"e", ft.e_value()},
                       {"euler", ft.euler()},   {"index", ft.index()},             {"components", ft.component_count()},
                       {"graph", graph_json(g)}};
                std::cout << j.dump(2) << "\n";
            }
            return 0;
        }
        if (infinity_cmd->parsed()) {
            FiberType ft = infinity_type(d_val);
            if (want_dot) {
                std::cout << fiber_template(ft).dot(ft.label());
            } else {
                json j{{"d", d_val}, {"type", ft.label()}, {"euler", ft.euler()}};
                std::cout << j.dump(2) << "\n";
            }
            return 0;
        }
        if (resolve_cmd->parsed()) {
            GermResolution res = (d_val > 0) ? resolve_infinity(d_val, true) : resolve_local_germ(e_val, true);
            CoverResult cov = derive_fiber_graph(res);
            if (want_trace)
                for (const auto& line : res.trace) std::cout << line << "\n";
            if (want_dot) {
                std::cout << cov.graph.dot(d_val > 0 ? "infinity_fiber" : "local_fiber");
            } else {
                json j = germ_json(res);
                j["contractions"] = cov.contractions;
                j["fiber"] = graph_json(cov.graph);
                if (!res.at_infinity) {
                    json pw = json::object();
                    for (const auto& [id, w] : cov.canonical_pullback) pw["R" + std::to_string(id)] = w;
                    j["canonical_pullback"] = pw;
                }
                std::cout << j.dump(2) << "\n";
            }
            return 0;
        }
        if (invariants_cmd->parsed()) {
            auto eq = normalize(Poly::parse(phi_text, field));
            auto c = census(eq);
            auto inv = surface_invariants(eq, c);
            auto ai = artin_invariants(eq);
            json j = invariants_json(inv);
            j["census"] = census_json(c);
            j["artin"] = json{{"pa", ai.pa}, {"K_sq", ai.K_sq}};
            std::cout << j.dump(2) << "\n";
            return 0;
        }
        if (sections_cmd->parsed()) {
            auto eq = normalize(Poly::parse(phi_text, field));
            int ext = max_ext;
            if (ext == 0) {
                ext = eq.phi.field();
                for (const Place& pl : eq.places)
                    ext = static_cast<int>(std::lcm(static_cast<long long>(ext),
                                                    static_cast<long long>(pl.alpha.ext_degree())));
            }
            auto secs = find_sections(eq, ext);
            json j{{"phi", eq.phi.str()}, {"max_ext", ext}, {"count", secs.size()},
                   {"sections", sections_json(secs)}};
            std::cout << j.dump(2) << "\n";
            return 0;
        }
        if (lattice_cmd->parsed()) {
            auto eq = normalize(Poly::parse(phi_text, field));
            auto c = census(eq);
            auto inv = surface_invariants(eq, c);
            GramLattice lat = trivial_lattice(c, eq.m);
            std::optional<int> r;
            if (inv.pa == 0) r = torsion_rank(lat, inv.pa);
            std::cout << lattice_json(lat, r).dump(2) << "\n";
            return 0;
        }
        if (app.get_subcommand("rational-table")->parsed()) return run_rational_table();
        if (scan_cmd->parsed()) {
            ScanResult res = scan_degree(scan_deg);
            json rows = json::object();
            for (const auto& [row, count] : res.row_counts) rows["row" + std::to_string(row)] = count;
            json pas = json::object();
            for (const auto& [pa, count] : res.nonrational_pa) pas[std::to_string(pa)] = count;
            json j{{"degree", scan_deg},   {"total", res.total},          {"degenerate", res.degenerate},
                   {"rows", rows},         {"nonrational_by_pa", pas}};
            std::cout << j.dump(2) << "\n";
            return 0;
        }
    } catch (const InputError& err) {
        std::cerr << "input error: " << err.what() << "\n";
        return 1;
    } catch (const ConsistencyError& err) {
        std::cerr << "consistency failure: " << err.what() << "\n";
        return 2;
    }
    return 0;
}
