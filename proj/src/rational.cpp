#include "qhyp5/rational.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

namespace qhyp5 {

std::vector<CandidateCombo> enumerate_candidates() {
    // Solve the two equations exhaustively, then order as in the classical list.
    struct Raw {
        long long m;
        std::map<FiberKind, int> counts;
    };
    std::vector<Raw> found;
    const std::vector<std::pair<FiberKind, int>> coeff{
        {FiberKind::C51, 1}, {FiberKind::C92, 2},  {FiberKind::C33, 3}, {FiberKind::C115, 5},
        {FiberKind::C46, 6}, {FiberKind::C97, 7},  {FiberKind::C138, 8},
    };
    for (long long m = 0; m <= 1; ++m) {
        long long target = 10 * m + 8;
        long long genus_target = 4 * m + 2;
        // n_i bounded by target / coefficient
        std::function<void(size_t, long long, long long, std::map<FiberKind, int>&)> rec =
            [&](size_t i, long long rem, long long grem, std::map<FiberKind, int>& acc) {
                if (i == coeff.size()) {
                    if (rem == 0 && grem == 0) found.push_back({m, acc});
                    return;
                }
                auto [kind, c] = coeff[i];
                int gc = 0;
                switch (kind) {
                    case FiberKind::C33:
                    case FiberKind::C115: gc = 1; break;
                    case FiberKind::C46:
                    case FiberKind::C97:
                    case FiberKind::C138: gc = 2; break;
                    default: gc = 0;
                }
                for (long long n = 0; n * c <= rem; ++n) {
                    if (n * gc > grem) break;
                    if (n > 0) acc[kind] = static_cast<int>(n);
                    rec(i + 1, rem - n * c, grem - n * gc, acc);
                    acc.erase(kind);
                }
            };
        std::map<FiberKind, int> acc;
        rec(0, target, genus_target, acc);
    }
    // Present in the classical order (i)..(xi).
    auto counts_of = [](std::initializer_list<std::pair<FiberKind, int>> il) {
        std::map<FiberKind, int> m;
        for (auto [k, n] : il) m[k] = n;
        return m;
    };
    struct Ordered {
        const char* roman;
        long long m;
        std::map<FiberKind, int> counts;
        bool realizable;
        std::optional<int> row;
    };
    const std::vector<Ordered> order{
        {"(i)", 0, counts_of({{FiberKind::C138, 1}}), true, 1},
        {"(ii)", 0, counts_of({{FiberKind::C97, 1}, {FiberKind::C51, 1}}), true, 2},
        {"(iii)", 0, counts_of({{FiberKind::C46, 1}, {FiberKind::C92, 1}}), true, 3},
        {"(iv)", 0, counts_of({{FiberKind::C46, 1}, {FiberKind::C51, 2}}), true, 4},
        {"(v)", 0, counts_of({{FiberKind::C115, 1}, {FiberKind::C33, 1}}), true, 5},
        {"(vi)", 0, counts_of({{FiberKind::C33, 2}, {FiberKind::C92, 1}}), false, std::nullopt},
        {"(vii)", 0, counts_of({{FiberKind::C33, 2}, {FiberKind::C51, 2}}), true, 6},
        {"(viii)", 1, counts_of({{FiberKind::C33, 6}}), true, 7},
        {"(ix)", 1, counts_of({{FiberKind::C33, 4}, {FiberKind::C46, 1}}), true, 8},
        {"(x)", 1, counts_of({{FiberKind::C33, 2}, {FiberKind::C46, 2}}), true, 9},
        {"(xi)", 1, counts_of({{FiberKind::C46, 3}}), true, 10},
    };
    if (found.size() != order.size()) throw ConsistencyError("candidate enumeration did not yield 11 combos");
    std::vector<CandidateCombo> out;
    for (const auto& o : order) {
        bool present = false;
        for (const auto& f : found) present |= (f.m == o.m && f.counts == o.counts);
        if (!present) throw ConsistencyError(std::string("expected candidate missing: ") + o.roman);
        CandidateCombo c;
        c.roman = o.roman;
        c.m = o.m;
        c.counts = o.counts;
        c.realizable = o.realizable;
        c.table3_row = o.row;
        out.push_back(std::move(c));
    }
    return out;
}

const std::vector<Table3Row>& table3() {
    static const std::vector<Table3Row> rows = [] {
        auto counts_of = [](std::initializer_list<std::pair<FiberKind, int>> il) {
            std::map<FiberKind, int> m;
            for (auto [k, n] : il) m[k] = n;
            return m;
        };
        std::vector<Table3Row> t;
        t.push_back({1, counts_of({{FiberKind::C138, 1}}), 14, 0, "t", 0});
        t.push_back({2, counts_of({{FiberKind::C97, 1}, {FiberKind::C51, 1}}), 14, 1, "t^2", 2});
        t.push_back({3, counts_of({{FiberKind::C46, 1}, {FiberKind::C92, 1}}), 13, 0, "t^3", 0});
        t.push_back({4, counts_of({{FiberKind::C46, 1}, {FiberKind::C51, 2}}), 13, 1, "t^3+t^2", 0});
        t.push_back({5, counts_of({{FiberKind::C115, 1}, {FiberKind::C33, 1}}), 14, 1, "t^4", 2});
        t.push_back({6, counts_of({{FiberKind::C33, 2}, {FiberKind::C51, 2}}), 14, 2, "t^6+t^4", 4});
        t.push_back({7, counts_of({{FiberKind::C33, 6}}), 14, 3, "t^16+t^12+t^8+t^4", 12});
        // Row 8: the tabulated parameter family admits no valid member (see the
        // project notes); no representative equation is known.
        t.push_back({8, counts_of({{FiberKind::C33, 4}, {FiberKind::C46, 1}}), 13, 2, "", 0});
        t.push_back({9, counts_of({{FiberKind::C33, 2}, {FiberKind::C46, 2}}), 12, 1, "t^13+t^11+t^9+t^7", 0});
        t.push_back({10, counts_of({{FiberKind::C46, 3}}), 11, 0, "t^13+t^12+4*t^8+4*t^7", 0});
        return t;
    }();
    return rows;
}

ClassifyOutcome classify_rational(const Poly& phi) {
    NormalizedEquation eq = normalize(phi);
    FiberCensus c = census(eq);
    SurfaceInvariants inv = surface_invariants(eq, c);
    if (inv.pa != 0) return NotRational{eq, c, inv};
    auto totals = c.totals();
    for (const Table3Row& row : table3()) {
        if (row.fibers != totals) continue;
        Table3Match m;
        m.row = row.row;
        m.eq = eq;
        m.fiber_census = c;
        m.invariants = inv;
        m.lattice = trivial_lattice(c, eq.m);
        if (m.lattice.rank() != *inv.rho)
            throw ConsistencyError("trivial lattice rank " + std::to_string(m.lattice.rank()) +
                                   " differs from rho = " + std::to_string(*inv.rho));
        m.r = torsion_rank(m.lattice, inv.pa);
        if (*inv.rho != row.rho || m.r != row.r)
            throw ConsistencyError("row " + std::to_string(row.row) + " matched but (rho, r) = (" +
                                   std::to_string(*inv.rho) + ", " + std::to_string(m.r) + ") disagrees with the table");
        int max_ext = 1;
        for (const Place& pl : eq.places) max_ext = std::max(max_ext, pl.alpha.ext_degree());
        max_ext = std::lcm(max_ext, eq.phi.field());
        if (max_ext <= 4) m.sections = find_sections(eq, max_ext);
        return m;
    }
    throw ConsistencyError("pa = 0 but the fiber census {" + c.str() +
                           "} matches no Table 3 row: bug or genuinely new case");
}

std::optional<Poly> integrate(const Poly& phi_prime) {
    Poly out(phi_prime.field());
    for (const auto& [e, c] : phi_prime.coeffs()) {
        if (e % kChar == kChar - 1) return std::nullopt;
        int inv = 1;
        int target = static_cast<int>((e + 1) % kChar);
        for (int i = 1; i < kChar; ++i)
            if (target * i % kChar == 1) inv = i;
        out.set(e + 1, c * Fe(inv, phi_prime.field()));
    }
    return out;
}

std::vector<std::array<Fe, 3>> find_row7_parameters(int k) {
    std::vector<std::array<Fe, 3>> out;
    std::uint64_t size = 1;
    for (int i = 0; i < k; ++i) size *= kChar;
    std::vector<Fe> elems;
    for (std::uint64_t code = 0; code < size; ++code) {
        std::vector<int> coords(k);
        std::uint64_t c = code;
        for (int i = 0; i < k; ++i) {
            coords[i] = static_cast<int>(c % kChar);
            c /= kChar;
        }
        elems.emplace_back(coords, k);
    }
    Fe zero = Fe::zero(k), one = Fe::one(k);
    Poly t = Poly::t(k);
    for (size_t i = 0; i < elems.size(); ++i) {
        const Fe& a = elems[i];
        if (a == zero || a == one) continue;
        for (size_t j = i + 1; j < elems.size(); ++j) {
            const Fe& b = elems[j];
            if (b == zero || b == one) continue;
            for (size_t l = j + 1; l < elems.size(); ++l) {
                const Fe& c = elems[l];
                if (c == zero || c == one) continue;
                Poly q = t * (t - Poly::constant(one)) * (t - Poly::constant(a)) * (t - Poly::constant(b)) *
                         (t - Poly::constant(c));
                Poly phi_prime = q.pow(3);
                bool ok = true;
                for (long long e : {4LL, 9LL, 14LL})
                    if (!phi_prime.coeff(e).is_zero()) ok = false;
                if (ok) out.push_back({a, b, c});
            }
        }
    }
    return out;
}

std::optional<Poly> find_row8_equation(int search_ext) {
    for (int k = 1; k <= search_ext; ++k) {
        std::uint64_t size = 1;
        for (int i = 0; i < k; ++i) size *= kChar;
        std::vector<Fe> elems;
        for (std::uint64_t code = 0; code < size; ++code) {
            std::vector<int> coords(k);
            std::uint64_t c = code;
            for (int i = 0; i < k; ++i) {
                coords[i] = static_cast<int>(c % kChar);
                c /= kChar;
            }
            elems.emplace_back(coords, k);
        }
        Fe zero = Fe::zero(k), one = Fe::one(k);
        Poly t = Poly::t(k);
        auto lin = [&](const Fe& a) { return t - Poly::constant(a); };
        auto try_phi = [&](const Poly& phi_prime) -> std::optional<Poly> {
            auto phi = integrate(phi_prime);
            if (!phi) return std::nullopt;
            try {
                auto outcome = classify_rational(*phi);
                if (auto* m = std::get_if<Table3Match>(&outcome); m && m->row == 8) return *phi;
            } catch (const InputError&) {
            }
            return std::nullopt;
        };
        // Gauge d = 13: phi' = t^3 (t-1)^3 (t-a)^3 (t-b)^3.
        for (const Fe& a : elems) {
            if (a == zero || a == one) continue;
            for (const Fe& b : elems) {
                if (b == zero || b == one || b == a) continue;
                Poly q = t * lin(one) * lin(a) * lin(b);
                if (auto phi = try_phi(q.pow(3))) return phi;
            }
        }
        // Gauge d = 16: phi' = (t-beta)^6 (t-1)^3 (t-a)^3 (t-b)^3 with beta = 0.
        for (const Fe& a : elems) {
            if (a == zero || a == one) continue;
            for (const Fe& b : elems) {
                if (b == zero || b == one || b == a) continue;
                Poly q = lin(one) * lin(a) * lin(b);
                Poly phi_prime = t.pow(6) * q.pow(3);
                if (auto phi = try_phi(phi_prime)) return phi;
            }
        }
    }
    return std::nullopt;
}

ScanResult scan_degree(int max_degree) {
    if (max_degree < 1 || max_degree > 8) throw InputError("scan degree must lie in 1..8");
    ScanResult res;
    std::uint64_t size = 1;
    for (int i = 0; i < max_degree; ++i) size *= kChar;
    for (std::uint64_t code = 1; code < size; ++code) {
        Poly phi(1);
        std::uint64_t c = code;
        for (int i = 1; i <= max_degree; ++i) {
            phi.set(i, Fe(static_cast<int>(c % kChar), 1));
            c /= kChar;
        }
        if (phi.is_zero()) continue;
        ++res.total;
        try {
            auto outcome = classify_rational(phi);
            if (auto* m = std::get_if<Table3Match>(&outcome))
                res.row_counts[m->row] += 1;
            else
                res.nonrational_pa[std::get<NotRational>(outcome).invariants.pa] += 1;
        } catch (const InputError&) {
            ++res.degenerate;
        }
    }
    return res;
}

}  // namespace qhyp5
