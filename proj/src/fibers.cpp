#include "qhyp5/fibers.hpp"

#include <algorithm>
#include <array>
#include <functional>
#include <set>
#include <sstream>

namespace qhyp5 {

namespace {

struct TypeRow {
    FiberKind kind;
    const char* label;
    const char* nu;
    int e;
    int euler;
    int index;
    int comps;
};

constexpr std::array<TypeRow, 8> kTypeTable{{
    {FiberKind::C10, "C(1,0)", "VIII-1", 1, 2, 0, 1},
    {FiberKind::C51, "C(5,1)", "IX-1", 2, 6, 1, 5},
    {FiberKind::C92, "C(9,2)", "VIII-2", 3, 10, 2, 9},
    {FiberKind::C33, "C(3,3)", "IX-2", 4, 4, 3, 3},
    {FiberKind::C115, "C(11,5)", "IX-3", 6, 12, 5, 11},
    {FiberKind::C46, "C(4,6)", "VIII-3", 7, 5, 6, 4},
    {FiberKind::C97, "C(9,7)", "IX-4", 8, 10, 7, 9},
    {FiberKind::C138, "C(13,8)", "VIII-4", 9, 14, 8, 13},
}};

const TypeRow& row(FiberKind k) {
    for (const auto& r : kTypeTable)
        if (r.kind == k) return r;
    throw ConsistencyError("unknown fiber kind");
}

}  // namespace

std::string FiberType::label() const { return row(kind).label; }
std::string FiberType::nu_label() const { return row(kind).nu; }
int FiberType::euler() const { return row(kind).euler; }
int FiberType::e_value() const { return row(kind).e; }
int FiberType::index() const { return row(kind).index; }
int FiberType::component_count() const { return row(kind).comps; }

FiberType classify_e(int e) {
    for (const auto& r : kTypeTable)
        if (r.e == e) return FiberType{r.kind};
    if (e == 5)
        throw InputError("e = 5 must be resolved to its effective value first (see effective_e_at_place)");
    throw InputError("e must lie in {1,2,3,4,6,7,8,9}, got " + std::to_string(e));
}

FiberType fiber_type_from_kind(FiberKind k) { return FiberType{k}; }

const std::vector<FiberKind>& all_fiber_kinds() {
    static const std::vector<FiberKind> kinds{FiberKind::C10, FiberKind::C51,  FiberKind::C92, FiberKind::C33,
                                              FiberKind::C115, FiberKind::C46, FiberKind::C97, FiberKind::C138};
    return kinds;
}

FiberType infinity_type(long long d) {
    if (d < 1 || d % kChar == 0) throw InputError("d must be positive and not divisible by 5");
    // Transcribed from the terminal dual graphs of the eight subcases.
    switch (d % 10) {
        case 1: return FiberType{FiberKind::C138};
        case 2: return FiberType{FiberKind::C97};
        case 3: return FiberType{FiberKind::C46};
        case 4: return FiberType{FiberKind::C115};
        case 6: return FiberType{FiberKind::C33};
        case 7: return FiberType{FiberKind::C92};
        case 8: return FiberType{FiberKind::C51};
        case 9: return FiberType{FiberKind::C10};
    }
    throw ConsistencyError("unreachable");
}

// ---------------------------------------------------------------------------
// Dual graphs

int DualGraph::weight(int a, int b) const {
    int w = 0;
    for (const auto& e : edges)
        if ((e.a == a && e.b == b) || (e.a == b && e.b == a)) w += e.weight;
    return w;
}

long long DualGraph::fiber_dot(int j) const {
    long long acc = 0;
    for (const auto& c : components) {
        if (c.id == j)
            acc += static_cast<long long>(c.mult) * c.self_int;
        else
            acc += static_cast<long long>(c.mult) * weight(c.id, j);
    }
    return acc;
}

long long DualGraph::fiber_self_intersection() const {
    long long acc = 0;
    for (const auto& c : components) acc += static_cast<long long>(c.mult) * fiber_dot(c.id);
    return acc;
}

int DualGraph::euler() const {
    int e = 2 * static_cast<int>(components.size());
    std::map<int, std::set<int>> pts;
    for (const auto& ed : edges) {
        pts[ed.point].insert(ed.a);
        pts[ed.point].insert(ed.b);
    }
    for (const auto& [pt, comps] : pts) e -= static_cast<int>(comps.size()) - 1;
    return e;
}

int DualGraph::identity_component() const {
    int found = -1;
    for (const auto& c : components)
        if (c.is_identity) {
            if (found != -1) throw ConsistencyError("multiple identity components");
            found = c.id;
        }
    if (found == -1) throw ConsistencyError("no identity component");
    return found;
}

bool DualGraph::connected() const {
    if (components.empty()) return false;
    std::set<int> seen{components.front().id};
    bool grew = true;
    while (grew) {
        grew = false;
        for (const auto& e : edges) {
            bool a = seen.count(e.a), b = seen.count(e.b);
            if (a != b) {
                seen.insert(a ? e.b : e.a);
                grew = true;
            }
        }
    }
    return seen.size() == components.size();
}

void DualGraph::validate() const {
    int id = identity_component();
    for (const auto& c : components)
        if (c.id == id && c.mult != 1) throw ConsistencyError("identity component must have multiplicity 1");
    if (!connected()) throw ConsistencyError("fiber dual graph is not connected");
    for (const auto& c : components)
        if (fiber_dot(c.id) != 0)
            throw ConsistencyError("F . R_" + std::to_string(c.id) + " = " + std::to_string(fiber_dot(c.id)) +
                                   " != 0");
    if (fiber_self_intersection() != 0) throw ConsistencyError("F^2 != 0");
}

std::vector<int> DualGraph::non_identity_ids() const {
    int id = identity_component();
    std::vector<int> ids;
    for (const auto& c : components)
        if (c.id != id) ids.push_back(c.id);
    return ids;
}

std::vector<std::vector<long long>> DualGraph::gram(const std::vector<int>& ids) const {
    std::map<int, const Component*> by_id;
    for (const auto& c : components) by_id[c.id] = &c;
    std::vector<std::vector<long long>> g(ids.size(), std::vector<long long>(ids.size(), 0));
    for (size_t i = 0; i < ids.size(); ++i)
        for (size_t j = 0; j < ids.size(); ++j)
            g[i][j] = (i == j) ? by_id.at(ids[i])->self_int : weight(ids[i], ids[j]);
    return g;
}

std::string DualGraph::dot(const std::string& name) const {
    std::ostringstream os;
    os << "graph \"" << name << "\" {\n";
    for (const auto& c : components) {
        os << "  R" << c.id << " [label=\"R" << c.id << " (" << c.self_int << ") x" << c.mult << "\"";
        if (c.is_identity) os << ", shape=doublecircle";
        os << "];\n";
    }
    for (const auto& e : edges) os << "  R" << e.a << " -- R" << e.b << " [label=\"" << e.weight << "\"];\n";
    if (!gamma_incidence.empty()) {
        os << "  Gamma [label=\"Gamma\", style=dashed];\n";
        for (const auto& [id, w] : gamma_incidence)
            os << "  Gamma -- R" << id << " [label=\"" << w << "\", style=dashed];\n";
    }
    os << "}\n";
    return os.str();
}

bool isomorphic(const DualGraph& ga, const DualGraph& gb) {
    if (ga.components.size() != gb.components.size()) return false;
    auto label = [](const Component& c) { return std::make_tuple(c.self_int, c.mult, c.is_identity); };
    std::vector<Component> as = ga.components, bs = gb.components;
    // quick invariant: sorted label multisets
    auto key = [&](std::vector<Component> v) {
        std::vector<std::tuple<int, int, bool>> ks;
        for (const auto& c : v) ks.push_back(label(c));
        std::sort(ks.begin(), ks.end());
        return ks;
    };
    if (key(as) != key(bs)) return false;
    size_t n = as.size();
    std::vector<int> assign(n, -1);
    std::vector<bool> used(n, false);
    std::function<bool(size_t)> rec = [&](size_t i) -> bool {
        if (i == n) return true;
        for (size_t j = 0; j < n; ++j) {
            if (used[j] || label(as[i]) != label(bs[j])) continue;
            bool ok = true;
            for (size_t p = 0; p < i && ok; ++p)
                if (ga.weight(as[i].id, as[p].id) != gb.weight(bs[j].id, bs[assign[p]].id)) ok = false;
            if (!ok) continue;
            assign[i] = static_cast<int>(j);
            used[j] = true;
            if (rec(i + 1)) return true;
            used[j] = false;
            assign[i] = -1;
        }
        return false;
    };
    return rec(0);
}

// ---------------------------------------------------------------------------
// Table-1 templates

namespace {

struct TemplateSpec {
    std::vector<std::pair<int, int>> comps;  // (self_int, mult); component 0 is the identity
    std::vector<Edge> edges;
    std::vector<std::pair<int, int>> gamma;
    std::vector<int> cusps;
};

DualGraph build(const TemplateSpec& s) {
    DualGraph g;
    for (size_t i = 0; i < s.comps.size(); ++i)
        g.components.push_back({static_cast<int>(i), s.comps[i].first, s.comps[i].second, i == 0});
    g.edges = s.edges;
    g.gamma_incidence = s.gamma;
    g.cusp_components = s.cusps;
    return g;
}

// Chain helper: edges i-(i+1) along a list of ids, each at its own point.
void chain(TemplateSpec& s, std::vector<int> ids, int& pt) {
    for (size_t i = 0; i + 1 < ids.size(); ++i) s.edges.push_back({ids[i], ids[i + 1], 1, pt++});
}

}  // namespace

DualGraph fiber_template(const FiberType& ft) {
    TemplateSpec s;
    int pt = 0;
    switch (ft.kind) {
        case FiberKind::C10:
            s.comps = {{0, 1}};
            s.gamma = {{0, 5}};
            s.cusps = {0};
            break;
        case FiberKind::C51:
            s.comps = {{-4, 1}, {-2, 2}, {-2, 1}, {-2, 2}, {-2, 1}};
            s.edges = {{0, 1, 1, 0}, {0, 3, 1, 0}, {1, 3, 1, 0}, {1, 4, 1, 1}, {3, 2, 1, 2}};
            s.gamma = {{0, 1}, {1, 1}, {3, 1}};
            break;
        case FiberKind::C92:
            s.comps = {{-4, 1}, {-2, 4}, {-2, 7}, {-2, 10}, {-2, 5}, {-2, 8}, {-2, 6}, {-2, 4}, {-2, 2}};
            chain(s, {0, 1, 2, 3}, pt);
            s.edges.push_back({3, 4, 1, pt++});
            chain(s, {3, 5, 6, 7, 8}, pt);
            s.gamma = {{4, 1}};
            break;
        case FiberKind::C33:
            s.comps = {{-2, 1}, {-3, 1}, {-3, 1}};
            s.edges = {{0, 1, 1, 0}, {0, 2, 1, 0}, {1, 2, 2, 0}};
            s.gamma = {{0, 1}, {1, 2}, {2, 2}};
            break;
        case FiberKind::C115:
            s.comps = {{-2, 1}, {-3, 2}, {-2, 5}, {-2, 4}, {-2, 3}, {-2, 2},
                       {-2, 1}, {-2, 4}, {-2, 3}, {-2, 2}, {-2, 1}};
            chain(s, {0, 1, 2, 3, 4, 5, 6}, pt);
            s.edges.push_back({2, 7, 1, pt++});
            chain(s, {7, 8, 9, 10}, pt);
            s.gamma = {{2, 1}};
            break;
        case FiberKind::C46:
            s.comps = {{-2, 1}, {-2, 2}, {-2, 3}, {-3, 2}};
            s.edges = {{0, 1, 1, 0}, {1, 2, 1, 1}, {2, 3, 2, 2}};
            s.gamma = {{2, 1}, {3, 1}};
            break;
        case FiberKind::C97:
            s.comps = {{-2, 1}, {-2, 2}, {-2, 3}, {-2, 4}, {-2, 5}, {-2, 3}, {-3, 1}, {-2, 3}, {-3, 1}};
            chain(s, {0, 1, 2, 3, 4, 5, 6}, pt);
            chain(s, {4, 7, 8}, pt);
            s.gamma = {{4, 1}};
            break;
        case FiberKind::C138:
            s.comps = {{-2, 1}, {-2, 2}, {-2, 3}, {-2, 4}, {-2, 5}, {-2, 6}, {-2, 7},
                       {-2, 8}, {-2, 9}, {-2, 10}, {-2, 5}, {-2, 6}, {-3, 2}};
            chain(s, {0, 1, 2, 3, 4, 5, 6, 7, 8, 9}, pt);
            s.edges.push_back({9, 10, 1, pt++});
            chain(s, {9, 11, 12}, pt);
            s.gamma = {{10, 1}};
            break;
    }
    DualGraph g = build(s);
    g.validate();
    return g;
}

// ---------------------------------------------------------------------------
// Census

int FiberCensus::n(FiberKind k) const {
    auto it = affine.find(k);
    return it == affine.end() ? 0 : it->second;
}

int FiberCensus::N(FiberKind k) const { return n(k) + (infinity == k ? 1 : 0); }

std::map<FiberKind, int> FiberCensus::totals() const {
    std::map<FiberKind, int> t = affine;
    if (infinity != FiberKind::C10) t[infinity] += 1;
    for (auto it = t.begin(); it != t.end();)
        it = (it->second == 0) ? t.erase(it) : std::next(it);
    return t;
}

std::string FiberCensus::str() const {
    auto t = totals();
    if (t.empty()) return "(no reducible fibers)";
    std::string out;
    for (FiberKind k : all_fiber_kinds()) {
        auto it = t.find(k);
        if (it == t.end()) continue;
        if (!out.empty()) out += ", ";
        out += FiberType{k}.label() + " x " + std::to_string(it->second);
    }
    return out;
}

FiberCensus census(const NormalizedEquation& eq) {
    FiberCensus c;
    c.d = eq.d;
    c.m = eq.m;
    for (const Place& pl : eq.places) {
        FiberType ft = classify_e(pl.effective_e);
        c.affine[ft.kind] += 1;
    }
    c.infinity = infinity_type(eq.d).kind;
    return c;
}

}  // namespace qhyp5
