#include "qhyp5/resolve.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <sstream>

namespace qhyp5 {

namespace {

struct Curve {
    int id = 0;
    std::string name;
    long long self = 0;
    long long cC = 0, cM = 0, cL = 0;  // coefficients in the total transforms of C, M_inf, the fiber line
    long long disc = 0;                // discrepancy: coefficient in K - sigma^* K
    bool is_C = false, is_M = false, is_L = false;
    bool exceptional = false;
    bool alive = true;
    std::map<int, long long> pull;  // sigma-phase pullback rows (keyed by sigma-bar curve id)
};

struct Pt {
    int id = 0;
    bool alive = true;
    std::vector<int> curves;
    std::map<std::pair<int, int>, long long> w;
};

}  // namespace

struct DownstairsConfig {
    bool at_infinity = false;
    int e = 0;
    long long d = 0;
    std::vector<Curve> curves;
    std::vector<Pt> points;
    int cbar = 0, mline = 1, lline = 2;

    // germ state: strict transform of C is locally u^a + v^b with {u=0} = du,
    // {v=0} = dv (either may be absent); contact with du is b, with dv is a.
    long long ga = 0, gb = 0;
    int gdu = -1, gdv = -1;
    int gpt = -1;

    long long sum_mu_sq = 0;
    std::vector<int> sigma_bar_exceptionals;

    long long cA(const Curve& c) const { return c.cC - 5 * c.cM - (at_infinity ? d : 0) * c.cL; }
    bool in_branch(const Curve& c) const {
        long long a = cA(c);
        return ((a % 2) + 2) % 2 == 1;
    }
    long long weight(int a, int b) const {
        long long acc = 0;
        auto key = std::minmax(a, b);
        for (const auto& p : points) {
            if (!p.alive) continue;
            auto it = p.w.find({key.first, key.second});
            if (it != p.w.end()) acc += it->second;
        }
        return acc;
    }
};

namespace {

std::pair<int, int> pkey(int a, int b) { return {std::min(a, b), std::max(a, b)}; }

class Engine {
  public:
    DownstairsConfig cfg;
    bool with_trace = false;
    std::vector<std::string>* trace = nullptr;
    int step = 0;

    void init_affine(int e) {
        cfg.at_infinity = false;
        cfg.e = e;
        add_curve("Cbar", 0, 1, 0, 0, false).is_C = true;
        add_curve("Minf", 0, 0, 1, 0, false).is_M = true;
        add_curve("L", 0, 0, 0, 1, false).is_L = true;
        // Germ x^5 + t^e at a point of the fiber line; the section at x =
        // infinity meets the fiber line away from it.
        cfg.ga = 5;
        cfg.gb = e;
        cfg.gdu = -1;
        cfg.gdv = cfg.lline;
        Pt p0;
        p0.id = 0;
        p0.curves = {cfg.cbar, cfg.lline};
        p0.w[pkey(cfg.cbar, cfg.lline)] = cfg.ga;
        cfg.points.push_back(p0);
        cfg.gpt = 0;
        Pt p1;
        p1.id = 1;
        p1.curves = {cfg.mline, cfg.lline};
        p1.w[pkey(cfg.mline, cfg.lline)] = 1;
        cfg.points.push_back(p1);
    }

    void init_infinity(long long d) {
        cfg.at_infinity = true;
        cfg.d = d;
        add_curve("Cbar", 0, 1, 0, 0, false).is_C = true;
        add_curve("Minf", 0, 0, 1, 0, false).is_M = true;
        add_curve("Linf", 0, 0, 0, 1, false).is_L = true;
        // Germ xi^5 + tau^d at the corner M_inf x L_inf of P^1 x P^1.
        cfg.ga = 5;
        cfg.gb = d;
        cfg.gdu = cfg.mline;
        cfg.gdv = cfg.lline;
        Pt p0;
        p0.id = 0;
        p0.curves = {cfg.cbar, cfg.mline, cfg.lline};
        p0.w[pkey(cfg.mline, cfg.lline)] = 1;
        p0.w[pkey(cfg.cbar, cfg.mline)] = cfg.gb;
        p0.w[pkey(cfg.cbar, cfg.lline)] = cfg.ga;
        cfg.points.push_back(p0);
        cfg.gpt = 0;
    }

    Curve& add_curve(const std::string& name, long long self, long long cC, long long cM, long long cL,
                     bool exceptional) {
        Curve c;
        c.id = static_cast<int>(cfg.curves.size());
        c.name = name;
        c.self = self;
        c.cC = cC;
        c.cM = cM;
        c.cL = cL;
        c.exceptional = exceptional;
        cfg.curves.push_back(c);
        return cfg.curves.back();
    }

    void blow_up(int pt_id, bool sigma_bar_phase) {
        Pt& p = cfg.points[pt_id];
        if (!p.alive) throw ConsistencyError("blow-up at a dead point");
        bool germ_here = (pt_id == cfg.gpt);
        long long mu = germ_here ? std::min(cfg.ga, cfg.gb) : 0;
        if (germ_here) cfg.sum_mu_sq += mu * mu;

        // The branch strict transform sits at the germ point and nowhere else;
        // it enters the center multiplicity through mu, not as a member.
        std::vector<int> members;
        for (int cid : p.curves)
            if (cid != cfg.cbar) members.push_back(cid);
        if (!germ_here && members.size() != p.curves.size())
            throw ConsistencyError("branch curve at a non-germ point");

        // Multiplicity bookkeeping and the new exceptional.
        long long cC = germ_here ? mu : 0, cM = 0, cL = 0, disc = 1;
        std::map<int, long long> pull;
        for (int cid : members) {
            const Curve& c = cfg.curves[cid];
            cC += c.cC;
            cM += c.cM;
            cL += c.cL;
            disc += c.disc;
            for (const auto& [j, v] : c.pull) pull[j] += v;
        }
        Curve& e = add_curve("E" + std::to_string(++step), -1, cC, cM, cL, true);
        e.disc = disc;
        e.pull = pull;
        int eid = e.id;
        if (sigma_bar_phase) cfg.sigma_bar_exceptionals.push_back(eid);

        // Self-intersection drops: 1 per divisor, mu^2 for the germ curve.
        for (int cid : members) cfg.curves[cid].self -= 1;
        if (germ_here) cfg.curves[cfg.cbar].self -= mu * mu;

        // Verify only simple divisor-divisor crossings get blown up.
        for (size_t i = 0; i < members.size(); ++i)
            for (size_t j = i + 1; j < members.size(); ++j) {
                auto it = p.w.find(pkey(members[i], members[j]));
                long long w = it == p.w.end() ? 0 : it->second;
                if (w > 1 && !(members[i] == cfg.cbar || members[j] == cfg.cbar))
                    throw ConsistencyError("tangential divisor-divisor crossing at a center");
            }

        p.alive = false;

        // New transverse crossings of the strict transforms with E.
        for (int cid : members) {
            Pt np;
            np.id = static_cast<int>(cfg.points.size());
            np.curves = {cid, eid};
            np.w[pkey(cid, eid)] = 1;
            cfg.points.push_back(np);
        }

        // Germ transition.
        if (germ_here) {
            long long a = cfg.ga, b = cfg.gb;
            int du = cfg.gdu, dv = cfg.gdv;
            auto place_germ = [&](int ndu, int ndv, long long na, long long nb) {
                cfg.ga = na;
                cfg.gb = nb;
                cfg.gdu = ndu;
                cfg.gdv = ndv;
                // Find or create the point where the germ now sits.
                int target = -1;
                if (ndu != -1 && ndv != -1) {
                    for (auto& q : cfg.points) {
                        if (!q.alive) continue;
                        if (q.curves.size() == 2 && ((q.curves[0] == ndu && q.curves[1] == ndv) ||
                                                     (q.curves[0] == ndv && q.curves[1] == ndu)))
                            target = q.id;
                    }
                    if (target == -1) throw ConsistencyError("germ target corner not found");
                    Pt& q = cfg.points[target];
                    q.curves.push_back(cfg.cbar);
                    q.w[pkey(cfg.cbar, ndu)] = nb;
                    q.w[pkey(cfg.cbar, ndv)] = na;
                } else {
                    int dcurve = ndu != -1 ? ndu : ndv;
                    Pt q;
                    q.id = static_cast<int>(cfg.points.size());
                    q.curves = {cfg.cbar, dcurve};
                    q.w[pkey(cfg.cbar, dcurve)] = ndu != -1 ? nb : na;
                    cfg.points.push_back(q);
                    target = q.id;
                }
                cfg.gpt = target;
            };
            if (a < b) {
                place_germ(du, eid, a, b - a);
            } else if (a > b) {
                place_germ(eid, dv, a - b, b);
            } else if (a == 1 && b == 1) {
                place_germ(eid, -1, 1, 1);
            } else {
                throw ConsistencyError("germ reached u^a + v^a with a >= 2 (non-coprime pair)");
            }
        }

        if (with_trace && trace) {
            std::ostringstream os;
            os << "{\"step\":" << step << ",\"phase\":\"" << (sigma_bar_phase ? "sigma_bar" : "sigma")
               << "\",\"center\":[";
            for (size_t i = 0; i < members.size(); ++i) os << (i ? "," : "") << '"' << cfg.curves[members[i]].name << '"';
            if (germ_here) os << (members.empty() ? "" : ",") << "\"Cbar\"";
            os << "],\"germ_mult\":" << mu << ",\"new\":\"" << cfg.curves[eid].name << "\",\"mult_C\":" << cC
               << ",\"mult_A\":" << cfg.cA(cfg.curves[eid]) << ",\"in_branch\":"
               << (cfg.in_branch(cfg.curves[eid]) ? "true" : "false") << ",\"self_ints\":{";
            bool first = true;
            for (const auto& c : cfg.curves) {
                if (!c.alive) continue;
                os << (first ? "" : ",") << '"' << c.name << "\":" << c.self;
                first = false;
            }
            os << "}}";
            trace->push_back(os.str());
        }
    }

    void run_sigma_bar() {
        int guard = 0;
        while (std::min(cfg.ga, cfg.gb) >= 2) {
            blow_up(cfg.gpt, true);
            if (++guard > 500) throw ConsistencyError("sigma-bar phase did not terminate");
        }
    }

    // A point is bad when two branch components pass through it.
    int find_bad_point() const {
        for (const auto& p : cfg.points) {
            if (!p.alive) continue;
            int nb = 0;
            for (int cid : p.curves)
                if (cfg.in_branch(cfg.curves[cid])) ++nb;
            if (nb >= 2) return p.id;
        }
        return -1;
    }

    void run_sigma() {
        // Pullback rows start as the identity on the Sigma-bar configuration.
        for (auto& c : cfg.curves)
            if (c.alive) c.pull = {{c.id, 1}};
        int guard = 0;
        while (true) {
            int bad = find_bad_point();
            if (bad == -1) break;
            blow_up(bad, false);
            if (++guard > 2000) throw ConsistencyError("sigma phase did not terminate");
        }
    }

    // Intersection pairing of divisor combinations given by coefficient maps.
    long long pair_div(const std::map<int, long long>& A, const std::map<int, long long>& B) const {
        long long acc = 0;
        for (const auto& [i, a] : A)
            for (const auto& [j, b] : B) {
                if (a == 0 || b == 0) continue;
                acc += a * b * (i == j ? cfg.curves[i].self : cfg.weight(i, j));
            }
        return acc;
    }

    void snapshot(GermResolution& out) {
        if (!cfg.at_infinity) {
            std::map<int, long long> e2mEcan;  // E2 - Ecan
            std::map<int, long long> e2m;
            for (int id : cfg.sigma_bar_exceptionals) {
                const Curve& c = cfg.curves[id];
                out.exceptional_order.push_back(c.name);
                out.E_P[c.name] = c.cC;
                out.E1[c.name] = ((c.cC % 2) + 2) % 2;
                out.E2[c.name] = c.cC / 2;
                out.E_can[c.name] = c.disc;
                e2m[id] = c.cC / 2;
                e2mEcan[id] = c.cC / 2 - c.disc;
            }
            long long twice_mu = pair_div(e2m, e2mEcan);
            if (((twice_mu % 2) + 2) % 2 != 0) throw ConsistencyError("mu is not an integer");
            out.mu = twice_mu / 2;
            out.nu = pair_div(e2mEcan, e2mEcan);
        } else {
            std::map<int, long long> Z, KpZ;
            for (const Curve& c : cfg.curves) {
                if (!c.alive || c.is_C) continue;
                long long a = cfg.cA(c);
                long long b = ((a % 2) + 2) % 2;
                long long z = (b - a) / 2;
                long long kcoef;
                if (c.is_M || c.is_L)
                    kcoef = -2;
                else
                    kcoef = c.disc - 2 * (c.cM + c.cL);
                out.B_bar[c.name] = b;
                out.Z_bar[c.name] = z;
                if (z != 0) Z[c.id] = z;
                if (kcoef + z != 0) KpZ[c.id] = kcoef + z;
            }
            out.B_bar["Cbar"] = 1;
            long long zkz = 0;  // Z . (Z + K)
            for (const auto& [i, zi] : Z)
                for (const auto& [j, kj] : KpZ) zkz += zi * kj * (i == j ? cfg.curves[i].self : cfg.weight(i, j));
            // p_a(Z) = 1/2 Z.(Z+K) + 1
            if (((zkz % 2) + 2) % 2 != 0) throw ConsistencyError("Z.(Z+K) is odd");
            out.pa_Z = zkz / 2 + 1;
            out.KZ_sq = pair_div(KpZ, KpZ);
        }
    }
};

GermResolution run_resolution(bool at_infinity, int e, long long d, bool with_trace) {
    Engine eng;
    GermResolution out;
    eng.with_trace = with_trace;
    eng.trace = &out.trace;
    out.at_infinity = at_infinity;
    out.e = e;
    out.d = d;
    if (at_infinity)
        eng.init_infinity(d);
    else
        eng.init_affine(e);
    eng.run_sigma_bar();
    eng.snapshot(out);
    eng.run_sigma();
    out.sum_mu_sq = eng.cfg.sum_mu_sq;
    out.config = std::make_shared<DownstairsConfig>(std::move(eng.cfg));
    return out;
}

}  // namespace

GermResolution resolve_local_germ(int e, bool with_trace) {
    if (e < 2 || e > 9 || e == 5) throw InputError("resolve_local_germ requires e in {2,3,4,6,7,8,9}");
    return run_resolution(false, e, 0, with_trace);
}

GermResolution resolve_infinity(long long d, bool with_trace) {
    if (d < 1 || d % kChar == 0) throw InputError("resolve_infinity requires d >= 1 with 5 not dividing d");
    return run_resolution(true, 0, d, with_trace);
}

// ---------------------------------------------------------------------------
// Double cover assembly

namespace {

struct UpComp {
    int id = 0;
    int down_id = 0;
    int copy = 0;  // 0: doubled or irreducible; 1/2: split copies
    long long self = 0;
    long long mult = 0;  // multiplicity in the fiber (0 for Gamma and (O))
    bool fiber = false;
    bool is_O = false, is_gamma = false;
    bool cusp = false;
    bool alive = true;
};

struct UpPt {
    bool alive = true;
    std::map<int, int> branches;               // comp id -> number of branches here
    std::map<std::pair<int, int>, long long> w;
};

struct UpGraph {
    std::vector<UpComp> comps;
    std::vector<UpPt> points;

    long long weight(int a, int b) const {
        long long acc = 0;
        for (const auto& p : points) {
            if (!p.alive) continue;
            auto it = p.w.find(pkey(a, b));
            if (it != p.w.end()) acc += it->second;
        }
        return acc;
    }
    long long fiber_dot(int j) const {
        long long acc = 0;
        for (const auto& c : comps) {
            if (!c.alive || !c.fiber) continue;
            acc += c.mult * (c.id == j ? c.self : weight(c.id, j));
        }
        return acc;
    }
};

enum class CoverKind { Doubled, Irreducible, Split };

struct DownCover {
    CoverKind kind;
    std::vector<int> up_ids;  // one or two upstairs component ids
};

}  // namespace

CoverResult derive_fiber_graph(const GermResolution& res, const CoverContext& ctx) {
    if (!res.config) throw ConsistencyError("resolution carries no configuration");
    const DownstairsConfig& cfg = *res.config;
    auto in_branch = [&](int cid) {
        const Curve& c = cfg.curves[cid];
        if (c.is_M && !ctx.m_line_in_branch) return false;
        return cfg.in_branch(c);
    };

    // Classify each downstairs curve by its branch contacts.
    UpGraph up;
    std::map<int, DownCover> cover;
    for (const Curve& c : cfg.curves) {
        if (!c.alive) continue;
        bool fiber_comp = (c.is_L || c.exceptional) && c.cL >= 1;
        DownCover dc;
        std::vector<long long> contacts;  // weights of contacts with branch members
        std::vector<long long> odd, even;
        for (const Pt& p : cfg.points) {
            if (!p.alive) continue;
            if (std::find(p.curves.begin(), p.curves.end(), c.id) == p.curves.end()) continue;
            int nb = 0;
            long long wsum = 0;
            for (int other : p.curves) {
                if (other == c.id || !in_branch(other)) continue;
                ++nb;
                auto it = p.w.find(pkey(c.id, other));
                wsum += it == p.w.end() ? 0 : it->second;
            }
            if (in_branch(c.id) && nb > 0) throw ConsistencyError("branch components still meet after sigma phase");
            if (nb > 1) throw ConsistencyError("two branch members through one point after sigma phase");
            if (nb == 1 && wsum > 0) {
                contacts.push_back(wsum);
                (wsum % 2 == 1 ? odd : even).push_back(wsum);
            }
        }
        auto new_comp = [&](long long self, long long mult, int copy) {
            UpComp u;
            u.id = static_cast<int>(up.comps.size());
            u.down_id = c.id;
            u.copy = copy;
            u.self = self;
            u.mult = mult;
            u.fiber = fiber_comp;
            u.is_O = c.is_M;
            u.is_gamma = c.is_C;
            up.comps.push_back(u);
            return u.id;
        };
        if (in_branch(c.id)) {
            if (((c.self % 2) + 2) % 2 != 0) throw ConsistencyError("branch component with odd self-intersection");
            dc.kind = CoverKind::Doubled;
            dc.up_ids = {new_comp(c.self / 2, 2 * c.cL, 0)};
        } else if (odd.size() == 2) {
            dc.kind = CoverKind::Irreducible;
            dc.up_ids = {new_comp(2 * c.self, c.cL, 0)};
            if (!even.empty() && fiber_comp)
                throw ConsistencyError("irreducible cover component with an even branch contact");
            for (long long o : odd)
                if (o >= 3) up.comps[dc.up_ids[0]].cusp = true;
        } else if (odd.empty()) {
            long long drop = 0;
            for (long long v : even) drop += v / 2;
            dc.kind = CoverKind::Split;
            dc.up_ids = {new_comp(c.self - drop, c.cL, 1), new_comp(c.self - drop, c.cL, 2)};
        } else {
            throw ConsistencyError("curve " + c.name + " meets the branch with an odd total parity");
        }
        cover[c.id] = dc;
    }

    CoverResult result;
    for (const auto& [cid, dc] : cover) {
        switch (dc.kind) {
            case CoverKind::Doubled: result.doubled++; break;
            case CoverKind::Split: result.split++; break;
            case CoverKind::Irreducible: result.irreducible++; break;
        }
    }

    // Sheet-assignment variables: at a branch-free point, each split curve
    // beyond the first chooses which upstairs point its first copy lies on.
    struct FreePoint {
        const Pt* p;
        std::vector<int> splits;  // down ids of split curves through it
    };
    std::vector<FreePoint> free_points;
    std::vector<const Pt*> branch_points;
    for (const Pt& p : cfg.points) {
        if (!p.alive) continue;
        bool has_branch = false;
        for (int cid : p.curves)
            if (in_branch(cid)) has_branch = true;
        if (has_branch) {
            branch_points.push_back(&p);
        } else {
            FreePoint fp{&p, {}};
            for (int cid : p.curves)
                if (cover.at(cid).kind == CoverKind::Split) fp.splits.push_back(cid);
            free_points.push_back(fp);
        }
    }
    int nvars = 0;
    for (const auto& fp : free_points) nvars += std::max(0, static_cast<int>(fp.splits.size()) - 1);
    if (nvars > 12) throw ConsistencyError("too many sheet-assignment variables");

    auto build = [&](unsigned mask) -> UpGraph {
        UpGraph g = up;
        // Branch points: one upstairs point.
        for (const Pt* p : branch_points) {
            UpPt q;
            for (int cid : p->curves)
                for (int uid : cover.at(cid).up_ids) q.branches[uid] += 1;
            for (size_t i = 0; i < p->curves.size(); ++i)
                for (size_t j = i + 1; j < p->curves.size(); ++j) {
                    int a = p->curves[i], b = p->curves[j];
                    auto it = p->w.find(pkey(a, b));
                    long long w = it == p->w.end() ? 0 : it->second;
                    if (w == 0) continue;
                    const DownCover &ca = cover.at(a), &cb = cover.at(b);
                    auto bump = [&](int x, int y, long long v) { q.w[pkey(x, y)] += v; };
                    if (ca.kind == CoverKind::Doubled && cb.kind == CoverKind::Doubled)
                        throw ConsistencyError("branch components intersecting");
                    if (ca.kind == CoverKind::Doubled || cb.kind == CoverKind::Doubled) {
                        const DownCover& dbl = ca.kind == CoverKind::Doubled ? ca : cb;
                        const DownCover& oth = ca.kind == CoverKind::Doubled ? cb : ca;
                        if (oth.kind == CoverKind::Irreducible) {
                            bump(dbl.up_ids[0], oth.up_ids[0], w);
                        } else {  // split at its even-contact point: both copies here
                            if (w % 2 != 0) throw ConsistencyError("odd contact on a split curve");
                            bump(dbl.up_ids[0], oth.up_ids[0], w / 2);
                            bump(dbl.up_ids[0], oth.up_ids[1], w / 2);
                        }
                    } else if (ca.kind == CoverKind::Irreducible && cb.kind == CoverKind::Irreducible) {
                        bump(ca.up_ids[0], cb.up_ids[0], 2 * w);
                    } else if (ca.kind == CoverKind::Irreducible || cb.kind == CoverKind::Irreducible) {
                        const DownCover& irr = ca.kind == CoverKind::Irreducible ? ca : cb;
                        const DownCover& spl = ca.kind == CoverKind::Irreducible ? cb : ca;
                        bump(irr.up_ids[0], spl.up_ids[0], w);
                        bump(irr.up_ids[0], spl.up_ids[1], w);
                    } else {
                        throw ConsistencyError("two split curves through a branch point");
                    }
                }
            // Split copies crossing each other over a tangency with the branch.
            for (int cid : p->curves) {
                const DownCover& dc = cover.at(cid);
                if (dc.kind != CoverKind::Split) continue;
                for (int other : p->curves) {
                    if (!in_branch(other)) continue;
                    auto it = p->w.find(pkey(cid, other));
                    long long w = it == p->w.end() ? 0 : it->second;
                    if (w >= 2) q.w[pkey(dc.up_ids[0], dc.up_ids[1])] += w / 2;
                }
            }
            g.points.push_back(q);
        }
        // Branch-free points: two upstairs points; split copies distribute.
        int var_at = 0;
        for (const auto& fp : free_points) {
            UpPt qa, qb;
            std::map<int, int> side;  // split down id -> 0/1 for its first copy
            for (size_t s = 0; s < fp.splits.size(); ++s) {
                if (s == 0)
                    side[fp.splits[s]] = 0;
                else
                    side[fp.splits[s]] = (mask >> var_at++) & 1;
            }
            auto pieces_at = [&](int cid, int which) -> std::vector<int> {
                const DownCover& dc = cover.at(cid);
                if (dc.kind == CoverKind::Irreducible) return {dc.up_ids[0]};
                int first_side = side.at(cid);
                return {dc.up_ids[first_side == which ? 0 : 1]};
            };
            for (int which = 0; which < 2; ++which) {
                UpPt& q = which == 0 ? qa : qb;
                for (int cid : fp.p->curves)
                    for (int uid : pieces_at(cid, which)) q.branches[uid] += 1;
                for (size_t i = 0; i < fp.p->curves.size(); ++i)
                    for (size_t j = i + 1; j < fp.p->curves.size(); ++j) {
                        int a = fp.p->curves[i], b = fp.p->curves[j];
                        auto it = fp.p->w.find(pkey(a, b));
                        long long w = it == fp.p->w.end() ? 0 : it->second;
                        if (w == 0) continue;
                        for (int ua : pieces_at(a, which))
                            for (int ub : pieces_at(b, which)) q.w[pkey(ua, ub)] += w;
                    }
            }
            g.points.push_back(qa);
            g.points.push_back(qb);
        }
        return g;
    };

    // Search the assignments for one satisfying the fiber-numeric constraints.
    std::vector<UpGraph> solutions;
    for (unsigned mask = 0; mask < (1u << nvars); ++mask) {
        UpGraph g = build(mask);
        bool ok = true;
        for (const auto& c : g.comps) {
            if (!c.fiber) continue;
            if (g.fiber_dot(c.id) != 0) ok = false;
        }
        if (ok) solutions.push_back(std::move(g));
        if (solutions.size() > 4) break;  // plenty for the isomorphism check
    }
    if (solutions.empty()) throw ConsistencyError("no sheet assignment satisfies the fiber numerics");
    UpGraph g = solutions.front();

    auto to_dual_graph = [&](const UpGraph& ug) {
        DualGraph dg;
        std::map<int, int> renum;
        int oid = -1, gid = -1;
        for (const auto& c : ug.comps) {
            if (!c.alive) continue;
            if (c.is_O) oid = c.id;
            if (c.is_gamma) gid = c.id;
        }
        for (const auto& c : ug.comps) {
            if (!c.alive || !c.fiber) continue;
            int nid = static_cast<int>(renum.size());
            renum[c.id] = nid;
            bool ident = oid != -1 && ug.weight(c.id, oid) > 0;
            dg.components.push_back({nid, static_cast<int>(c.self), static_cast<int>(c.mult), ident});
            if (c.cusp) dg.cusp_components.push_back(nid);
        }
        int ptid = 0;
        for (const auto& p : ug.points) {
            if (!p.alive) continue;
            bool used = false;
            for (const auto& [pr, w] : p.w) {
                if (w == 0) continue;
                auto ia = renum.find(pr.first), ib = renum.find(pr.second);
                if (ia == renum.end() || ib == renum.end()) continue;
                dg.edges.push_back({ia->second, ib->second, static_cast<int>(w), ptid});
                used = true;
            }
            if (used) ++ptid;
        }
        if (gid != -1) {
            for (const auto& c : ug.comps) {
                if (!c.alive || !c.fiber) continue;
                long long w = ug.weight(c.id, gid);
                if (w > 0) dg.gamma_incidence.push_back({renum.at(c.id), static_cast<int>(w)});
            }
        }
        return dg;
    };

    if (solutions.size() > 1) {
        DualGraph first = to_dual_graph(solutions.front());
        for (size_t i = 1; i < solutions.size(); ++i)
            if (!isomorphic(first, to_dual_graph(solutions[i])))
                throw ConsistencyError("ambiguous sheet assignment: non-isomorphic fiber graphs satisfy the numerics");
    }

    // Contract fiberwise (-1)-curves to reach the relatively minimal model.
    int contractions = 0;
    while (true) {
        int victim = -1;
        for (const auto& c : g.comps)
            if (c.alive && c.fiber && c.self == -1) victim = c.id;
        if (victim == -1) break;
        ++contractions;
        // Global intersection updates.
        std::map<int, long long> meet;
        for (const auto& c : g.comps) {
            if (!c.alive || c.id == victim) continue;
            long long w = g.weight(c.id, victim);
            if (w > 0) meet[c.id] = w;
            if (c.is_gamma && w > 0) result.gamma_sq_gain += w * w;
        }
        for (auto& c : g.comps) {
            if (!c.alive || c.id == victim) continue;
            auto it = meet.find(c.id);
            if (it != meet.end()) c.self += it->second * it->second;
        }
        // Merge the victim's points into one.
        UpPt merged;
        for (auto& p : g.points) {
            if (!p.alive || !p.branches.count(victim)) continue;
            p.alive = false;
            for (const auto& [cid, br] : p.branches)
                if (cid != victim) merged.branches[cid] += br;
            for (const auto& [pr, w] : p.w)
                if (pr.first != victim && pr.second != victim) merged.w[pr] += w;
        }
        for (auto a = meet.begin(); a != meet.end(); ++a)
            for (auto b = std::next(a); b != meet.end(); ++b) merged.w[pkey(a->first, b->first)] += a->second * b->second;
        if (!merged.branches.empty()) g.points.push_back(merged);
        g.comps[victim].alive = false;
        if (contractions > 200) throw ConsistencyError("contraction loop did not terminate");
    }
    result.contractions = contractions;

    result.graph = to_dual_graph(g);
    result.graph.validate();

    for (const auto& c : g.comps)
        if (c.alive && c.is_O) result.O_sq = c.self;

    // pi^*(E_can - E_fin^(2)) on the surviving fiber components (affine runs).
    if (!res.at_infinity) {
        std::map<int, long long> W;  // Sigma-bar curve id -> coefficient
        for (const Curve& c : cfg.curves) {
            if (!c.exceptional) continue;
            auto it = res.E_can.find(c.name);
            if (it == res.E_can.end()) continue;
            W[c.id] = it->second - res.E2.at(c.name);
        }
        std::map<int, int> renum;
        {
            int nid = 0;
            for (const auto& c : g.comps)
                if (c.alive && c.fiber) renum[c.id] = nid++;
        }
        long long gamma_dot = 0;
        int gid = -1;
        for (const auto& c : g.comps)
            if (c.alive && c.is_gamma) gid = c.id;
        for (const auto& uc : g.comps) {
            if (!uc.alive || !uc.fiber) continue;
            const Curve& down = cfg.curves[uc.down_id];
            long long coef = 0;
            for (const auto& [j, wj] : W) {
                auto it = down.pull.find(j);
                if (it != down.pull.end()) coef += wj * it->second;
            }
            if (cover.at(down.id).kind == CoverKind::Doubled) coef *= 2;
            if (coef != 0) result.canonical_pullback[renum.at(uc.id)] = coef;
            if (gid != -1) gamma_dot += coef * g.weight(uc.id, gid);
        }
        result.gamma_dot_pullback = gamma_dot;
    }
    return result;
}

// ---------------------------------------------------------------------------
// Artin invariants

namespace {

struct GermCache {
    long long mu, nu;
    int contractions;
    long long sum_mu_sq;
    long long gamma_sq_gain;
};

const GermCache& germ_data(int e) {
    static std::map<int, GermCache> cache;
    auto it = cache.find(e);
    if (it == cache.end()) {
        GermResolution res = resolve_local_germ(e);
        CoverResult cov = derive_fiber_graph(res);
        it = cache.emplace(e, GermCache{res.mu, res.nu, cov.contractions, res.sum_mu_sq, cov.gamma_sq_gain}).first;
    }
    return it->second;
}

struct InfCache {
    long long pa_Z, KZ_sq;
    int contractions;
    long long sum_mu_sq;
    long long gamma_sq_gain;
};

const InfCache& infinity_data(long long d) {
    static std::map<long long, InfCache> cache;
    auto it = cache.find(d);
    if (it == cache.end()) {
        GermResolution res = resolve_infinity(d);
        CoverResult cov = derive_fiber_graph(res);
        it = cache.emplace(d, InfCache{res.pa_Z, res.KZ_sq, cov.contractions, res.sum_mu_sq, cov.gamma_sq_gain}).first;
    }
    return it->second;
}

}  // namespace

ArtinInvariants artin_invariants(const NormalizedEquation& eq) {
    long long mu = 0, nu = 0, contr = 0;
    for (const Place& pl : eq.places) {
        const GermCache& gc = germ_data(pl.effective_e);
        mu += gc.mu;
        nu += gc.nu;
        contr += gc.contractions;
    }
    const InfCache& inf = infinity_data(eq.d);
    contr += inf.contractions;
    ArtinInvariants out;
    out.pa = inf.pa_Z + mu;
    out.K_sq = 2 * (inf.KZ_sq + nu) + contr;
    return out;
}

long long gamma_sq_resolution(const NormalizedEquation& eq) {
    long long csq = 10 * eq.d;
    long long gain = 0;
    for (const Place& pl : eq.places) {
        const GermCache& gc = germ_data(pl.effective_e);
        csq -= gc.sum_mu_sq;
        gain += gc.gamma_sq_gain;
    }
    const InfCache& inf = infinity_data(eq.d);
    csq -= inf.sum_mu_sq;
    gain += inf.gamma_sq_gain;
    if (((csq % 2) + 2) % 2 != 0) throw ConsistencyError("branch-curve self-intersection is odd");
    return csq / 2 + gain;
}

}  // namespace qhyp5
