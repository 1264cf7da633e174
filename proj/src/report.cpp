#include "qhyp5/report.hpp"

#include <numeric>

namespace qhyp5 {

using nlohmann::json;

const char* tool_version() { return "1.0.0"; }

json census_json(const FiberCensus& c) {
    json affine = json::object(), totals = json::object(), n = json::object(), N = json::object();
    for (FiberKind k : all_fiber_kinds()) {
        FiberType ft{k};
        if (c.n(k) > 0) affine[ft.label()] = c.n(k);
        if (c.N(k) > 0 && k != FiberKind::C10) totals[ft.label()] = c.N(k);
        n["n" + std::to_string(ft.index())] = c.n(k);
        N["N" + std::to_string(ft.index())] = c.N(k);
    }
    return json{{"affine", affine},
                {"infinity", FiberType{c.infinity}.label()},
                {"totals", totals},
                {"n", n},
                {"N", N},
                {"summary", c.str()}};
}

json invariants_json(const SurfaceInvariants& inv) {
    json j{{"d", inv.d},        {"m", inv.m},          {"pa", inv.pa},       {"K_sq", inv.K_sq},
           {"euler", inv.euler}, {"euler_note", "derived consistency check (fiber-census plumbing identity)"},
           {"gamma_sq", inv.gamma_sq}, {"delta", inv.delta}};
    if (inv.rho)
        j["rho"] = *inv.rho;
    else
        j["rho"] = nullptr;
    return j;
}

json lattice_json(const GramLattice& lat, std::optional<int> r, bool include_gram) {
    json j{{"rank", lat.rank()}, {"det", lat.det()}};
    if (r)
        j["r"] = *r;
    else
        j["r"] = nullptr;
    j["basis"] = lat.basis_labels;
    if (include_gram) {
        json rows = json::array();
        for (const auto& row : lat.gram) rows.push_back(row);
        j["gram"] = rows;
    }
    return j;
}

json sections_json(const std::vector<SectionCandidate>& sections) {
    json arr = json::array();
    for (const auto& s : sections) arr.push_back(json{{"x", s.x.str()}, {"y", s.y.str()}});
    return arr;
}

json places_json(const std::vector<Place>& places) {
    json arr = json::array();
    for (const auto& p : places)
        arr.push_back(json{{"alpha", p.alpha.str()},
                           {"field", p.alpha.ext_degree()},
                           {"mult_in_phi_prime", p.mult_in_phi_prime},
                           {"raw_e", p.raw_e},
                           {"effective_e", p.effective_e}});
    return arr;
}

json transforms_json(const std::vector<Transform>& transforms) {
    json arr = json::array();
    for (const auto& t : transforms) {
        json j;
        switch (t.kind) {
            case Transform::Kind::StripFifthPower:
                j["kind"] = "strip_fifth_power";
                j["exponent"] = t.exponent;
                j["coeff"] = t.coeff.str();
                break;
            case Transform::Kind::LocalShift:
                j["kind"] = "local_shift";
                j["alpha"] = t.alpha.str();
                j["gamma"] = t.gamma.str();
                break;
            case Transform::Kind::EDrop:
                j["kind"] = "e_drop";
                j["alpha"] = t.alpha.str();
                break;
        }
        j["describe"] = t.describe();
        arr.push_back(j);
    }
    return arr;
}

ReportResult classify_report(const std::string& phi_text, int field) {
    ReportResult out;
    json& doc = out.doc;
    doc["tool"] = json{{"name", "qhyp5"}, {"version", tool_version()}};
    doc["input"] = json{{"phi", phi_text}, {"field", field}};

    Poly phi = Poly::parse(phi_text, field);
    NormalizedEquation eq = normalize(phi);
    FiberCensus c = census(eq);
    SurfaceInvariants inv = surface_invariants(eq, c);

    doc["normalized"] = json{{"phi", eq.phi.str()},
                             {"field", eq.phi.field()},
                             {"d", eq.d},
                             {"m", eq.m},
                             {"transforms", transforms_json(eq.transforms)},
                             {"places", places_json(eq.places)}};
    doc["census"] = census_json(c);
    doc["invariants"] = invariants_json(inv);

    json warnings = json::array();
    long long gamma_res = gamma_sq_resolution(eq);
    doc["invariants"]["gamma_sq_resolution"] = gamma_res;
    if (gamma_res != inv.gamma_sq)
        warnings.push_back(
            "the Corollary formula for Gamma^2 disagrees with the resolution-path value for this residue of d; "
            "the formula value is reported (see docs/schema.md, delta-table note)");

    if (inv.pa == 0) {
        GramLattice lat = trivial_lattice(c, eq.m);
        int r = torsion_rank(lat, inv.pa);
        doc["lattice"] = lattice_json(lat, r, lat.rank() <= 16);
        int max_ext = eq.phi.field();
        for (const Place& pl : eq.places)
            max_ext = static_cast<int>(std::lcm(static_cast<long long>(max_ext),
                                                static_cast<long long>(pl.alpha.ext_degree())));
        if (max_ext <= 4)
            doc["sections"] = sections_json(find_sections(eq, max_ext));
        else {
            doc["sections"] = json::array();
            warnings.push_back("section search skipped: places live beyond F_{5^4}");
        }
        bool matched = false;
        auto totals = c.totals();
        for (const Table3Row& row : table3()) {
            if (row.fibers != totals) continue;
            matched = true;
            if (*inv.rho != row.rho || r != row.r)
                throw ConsistencyError("matched Table 3 row " + std::to_string(row.row) +
                                       " but (rho, r) disagrees with the table");
            doc["table3"] = json{{"status", "match"}, {"row", row.row}, {"rho", row.rho}, {"r", row.r}};
            if (row.row == 5)
                warnings.push_back(
                    "the published configuration figure for this case annotates Gamma with self-intersection 0 "
                    "while the Corollary formula yields 2; the formula value is reported");
            break;
        }
        if (!matched) {
            doc["table3"] = json{{"status", "no_match"}, {"row", nullptr}};
            warnings.push_back("pa = 0 but the fiber census matches no known rational case: " + c.str());
            out.consistency_failure = true;
        }
    } else {
        doc["table3"] = json{{"status", "not_rational"}, {"row", nullptr}, {"pa", inv.pa}};
        doc["sections"] = json::array();
    }
    doc["warnings"] = warnings;
    return out;
}

}  // namespace qhyp5
