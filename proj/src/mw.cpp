#include "qhyp5/mw.hpp"

#include <algorithm>
#include <numeric>

namespace qhyp5 {

Rat::Rat(long long n, long long d) : num(n), den(d) {
    if (den == 0) throw ConsistencyError("rational with zero denominator");
    if (den < 0) {
        num = -num;
        den = -den;
    }
    long long g = std::gcd(num < 0 ? -num : num, den);
    if (g > 1) {
        num /= g;
        den /= g;
    }
}

Rat Rat::operator+(const Rat& o) const { return Rat(num * o.den + o.num * den, den * o.den); }
Rat Rat::operator-(const Rat& o) const { return Rat(num * o.den - o.num * den, den * o.den); }
Rat Rat::operator*(const Rat& o) const { return Rat(num * o.num, den * o.den); }
Rat Rat::operator-() const { return Rat(-num, den); }

std::string Rat::str() const { return den == 1 ? std::to_string(num) : std::to_string(num) + "/" + std::to_string(den); }

long long int_det(const std::vector<std::vector<long long>>& a) {
    size_t n = a.size();
    if (n == 0) return 1;
    std::vector<std::vector<__int128>> m(n, std::vector<__int128>(n));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) m[i][j] = a[i][j];
    __int128 prev = 1;
    int sign = 1;
    for (size_t k = 0; k + 1 < n; ++k) {
        if (m[k][k] == 0) {
            size_t swap_row = k + 1;
            while (swap_row < n && m[swap_row][k] == 0) ++swap_row;
            if (swap_row == n) return 0;
            std::swap(m[k], m[swap_row]);
            sign = -sign;
        }
        for (size_t i = k + 1; i < n; ++i)
            for (size_t j = k + 1; j < n; ++j) m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
        prev = m[k][k];
    }
    __int128 det = m[n - 1][n - 1] * sign;
    long long out = static_cast<long long>(det);
    if (static_cast<__int128>(out) != det) throw ConsistencyError("determinant overflow");
    return out;
}

long long GramLattice::det() const { return int_det(gram); }

GramLattice trivial_lattice(const FiberCensus& c, long long m) {
    GramLattice lat;
    struct Block {
        std::string tag;
        DualGraph graph;
        std::vector<int> ids;
    };
    std::vector<Block> blocks;
    auto add_fiber = [&](FiberKind k, const std::string& tag) {
        FiberType ft{k};
        if (ft.component_count() < 2) return;
        Block b;
        b.tag = tag;
        b.graph = fiber_template(ft);
        b.ids = b.graph.non_identity_ids();
        blocks.push_back(std::move(b));
    };
    int v = 0;
    if (c.infinity != FiberKind::C10) add_fiber(c.infinity, "inf:" + FiberType{c.infinity}.label());
    for (FiberKind k : all_fiber_kinds()) {
        int count = c.n(k);
        for (int i = 0; i < count; ++i) add_fiber(k, "v" + std::to_string(v++) + ":" + FiberType{k}.label());
    }

    int n = 2;
    for (const auto& b : blocks) n += static_cast<int>(b.ids.size());
    lat.gram.assign(n, std::vector<long long>(n, 0));
    lat.basis_labels.assign(n, "");
    lat.basis_labels[0] = "(O)";
    lat.basis_labels[1] = "F";
    lat.gram[0][0] = -(m + 1);
    lat.gram[0][1] = lat.gram[1][0] = 1;
    lat.gram[1][1] = 0;
    int at = 2;
    for (const auto& b : blocks) {
        auto g = b.graph.gram(b.ids);
        for (size_t i = 0; i < b.ids.size(); ++i) {
            lat.basis_labels[at + i] = b.tag + ":R" + std::to_string(b.ids[i]);
            for (size_t j = 0; j < b.ids.size(); ++j) lat.gram[at + i][at + j] = g[i][j];
        }
        at += static_cast<int>(b.ids.size());
    }
    return lat;
}

int torsion_rank(const GramLattice& lat, long long pa) {
    if (pa != 0) throw InputError("torsion rank is defined here only for rational surfaces (pa = 0)");
    long long d = lat.det();
    if (d < 0) d = -d;
    int r2 = 0;
    while (d % kChar == 0) {
        d /= kChar;
        ++r2;
    }
    if (d != 1 || r2 % 2 != 0)
        throw ConsistencyError("|det Triv| = " + std::to_string(lat.det()) + " is not an even power of 5");
    return r2 / 2;
}

long long template_block_det(const FiberType& ft) {
    if (ft.component_count() < 2) return 1;
    DualGraph g = fiber_template(ft);
    return int_det(g.gram(g.non_identity_ids()));
}

Rat local_contribution(const FiberType& ft, int comp_i, int comp_j) {
    if (ft.component_count() < 2) throw InputError("local contributions require a reducible fiber type");
    DualGraph g = fiber_template(ft);
    int ident = g.identity_component();
    if (comp_i == ident || comp_j == ident) return Rat(0);
    auto ids = g.non_identity_ids();
    auto pos = [&](int c) {
        auto it = std::find(ids.begin(), ids.end(), c);
        if (it == ids.end()) throw InputError("component index out of range for " + ft.label());
        return static_cast<size_t>(it - ids.begin());
    };
    size_t i = pos(comp_i), j = pos(comp_j);
    // Solve A x = e_j exactly and return -x_i.
    auto a = g.gram(ids);
    size_t n = ids.size();
    std::vector<std::vector<Rat>> m(n, std::vector<Rat>(n + 1));
    for (size_t r = 0; r < n; ++r) {
        for (size_t c = 0; c < n; ++c) m[r][c] = Rat(a[r][c]);
        m[r][n] = Rat(r == j ? 1 : 0);
    }
    for (size_t col = 0, row = 0; col < n && row < n; ++col) {
        size_t piv = row;
        while (piv < n && m[piv][col].num == 0) ++piv;
        if (piv == n) throw ConsistencyError("singular fiber Gram block");
        std::swap(m[piv], m[row]);
        Rat inv = Rat(m[row][col].den, m[row][col].num);
        for (size_t c = col; c <= n; ++c) m[row][c] = m[row][c] * inv;
        for (size_t r = 0; r < n; ++r) {
            if (r == row || m[r][col].num == 0) continue;
            Rat f = m[r][col];
            for (size_t c = col; c <= n; ++c) m[r][c] = m[r][c] - f * m[row][c];
        }
        ++row;
    }
    return -m[i][n];
}

Rat height_pairing(long long PO, long long QO, long long PQ, long long O_sq, const std::vector<SectionHit>& hits) {
    Rat acc(-(PQ - PO - QO + O_sq));
    for (const auto& h : hits) {
        DualGraph g = fiber_template(h.type);
        int ident = g.identity_component();
        int pc = h.p_comp.value_or(ident);
        int qc = h.q_comp.value_or(ident);
        acc = acc - local_contribution(h.type, pc, qc);
    }
    return acc;
}

std::vector<SectionCandidate> find_sections(const NormalizedEquation& eq, int max_ext) {
    if (max_ext < 1 || max_ext > 4) throw InputError("max_ext must lie in 1..4");
    int W = std::lcm(static_cast<long long>(eq.phi.field()), static_cast<long long>(max_ext));
    for (const Place& pl : eq.places) W = static_cast<int>(std::lcm(static_cast<long long>(W), static_cast<long long>(pl.alpha.ext_degree())));
    if (W > GaloisField::kMaxDegree) throw InputError("section search field exceeds the supported bound");

    Poly phi = eq.phi.lift(W);
    Poly dphi = phi.derivative();

    // Exponent options per place: 0, or (mult+1)/2 when the multiplicity is odd.
    std::vector<std::pair<Fe, long long>> opts;  // (alpha, nonzero exponent option)
    for (const Place& pl : eq.places) {
        if (pl.mult_in_phi_prime % 2 == 1) opts.emplace_back(embed(pl.alpha, W), (pl.mult_in_phi_prime + 1) / 2);
    }
    if (opts.size() > 20) throw InputError("too many places for section enumeration");

    // Enumerate the nonzero constants of F_{5^max_ext} inside F_{5^W}.
    std::vector<Fe> constants;
    {
        std::uint64_t size = 1;
        for (int i = 0; i < max_ext; ++i) size *= kChar;
        for (std::uint64_t code = 1; code < size; ++code) {
            std::vector<int> coords(max_ext);
            std::uint64_t c = code;
            for (int i = 0; i < max_ext; ++i) {
                coords[i] = static_cast<int>(c % kChar);
                c /= kChar;
            }
            constants.push_back(embed(Fe(coords, max_ext), W));
        }
        std::sort(constants.begin(), constants.end());
    }

    std::vector<SectionCandidate> out;
    Fe two(2, W);
    for (std::uint64_t mask = 0; mask < (1ULL << opts.size()); ++mask) {
        Poly base = Poly::constant(Fe::one(W));
        for (size_t i = 0; i < opts.size(); ++i) {
            if (!(mask & (1ULL << i))) continue;
            Poly lin = Poly::t(W) - Poly::constant(opts[i].first);
            base = base * lin.pow(opts[i].second);
        }
        Poly dbase = base.derivative();
        for (const Fe& c : constants) {
            Poly y = base * c;
            Poly yp = dbase * c;
            if ((y * yp * two) != dphi) continue;
            auto x = try_fifth_root(y * y - phi);
            if (!x) continue;
            out.push_back({*x, y});
        }
    }
    std::sort(out.begin(), out.end(), [](const SectionCandidate& a, const SectionCandidate& b) {
        auto ka = std::make_pair(a.x.str(), a.y.str());
        auto kb = std::make_pair(b.x.str(), b.y.str());
        return ka < kb;
    });
    return out;
}

bool verify_section(const NormalizedEquation& eq, const SectionCandidate& cand) {
    int W = static_cast<int>(std::lcm(std::lcm(static_cast<long long>(eq.phi.field()), static_cast<long long>(cand.x.field())),
                                      static_cast<long long>(cand.y.field())));
    Poly x = cand.x.lift(W), y = cand.y.lift(W), phi = eq.phi.lift(W);
    return (y * y - x.pow(5) - phi).is_zero();
}

}  // namespace qhyp5
