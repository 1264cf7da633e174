#include "qhyp5/normal.hpp"

#include <algorithm>
#include <numeric>

namespace qhyp5 {

namespace {

// (t - alpha)-adic valuation of p - p(alpha); -1 means p - p(alpha) == 0.
long long val_at(const Poly& p, const Fe& alpha) {
    Poly q = p.shifted(alpha);
    q.set(0, Fe::zero(p.field()));
    return q.valuation();
}

struct LocalE {
    int raw = 0;
    int effective = 0;
    bool needs_global_shift = false;  // raw 5 masking a valuation >= 10
    Fe gamma;                         // the shift constant when raw = 5
};

// Local analysis at a critical point.  phi and alpha must share a field.
LocalE local_e(Poly p, const Fe& alpha) {
    LocalE out;
    long long v0 = val_at(p, alpha);
    if (v0 < 2) throw InputError("not a critical point of phi (valuation " + std::to_string(v0) + ")");
    out.raw = static_cast<int>(v0);
    bool first_shift = true;
    bool reduced = false;
    Poly lin = Poly::t(p.field()) - Poly::constant(alpha);
    while (true) {
        long long v = val_at(p, alpha);
        if (v == -1) throw InputError("degenerate place: phi - phi(alpha) vanishes identically");
        if (v == 1 && reduced) {
            out.effective = 1;  // the place became a general fiber after an e-drop
            return out;
        }
        if (v >= 2 && v <= 9 && v != 5) {
            out.effective = static_cast<int>(v);
            return out;
        }
        if (v == 5) {
            Poly psi = (p - Poly::constant(p.eval(alpha))) / lin.pow(5);
            Fe gamma = (-psi.eval(alpha)).fifth_root();
            if (first_shift) {
                out.gamma = gamma;
                first_shift = false;
            }
            p = p + lin.pow(5) * gamma.pow(5);
            continue;
        }
        if (v >= 10) {
            out.needs_global_shift = (out.raw == 5) || out.needs_global_shift;
            p = (p - Poly::constant(p.eval(alpha))) / lin.pow(10);
            reduced = true;
            continue;
        }
        throw InputError("not a critical point of phi");
    }
}

}  // namespace

std::string Transform::describe() const {
    switch (kind) {
        case Kind::StripFifthPower:
            return "strip " + Poly::term(coeff, exponent).str() + " via x -> x + (" +
                   coeff.fifth_root().str() + ")*t^" + std::to_string(exponent / kChar);
        case Kind::LocalShift:
            return "shift x -> x + (" + gamma.str() + ")*(t - (" + alpha.str() + "))";
        case Kind::EDrop:
            return "e-drop at alpha = " + alpha.str();
    }
    return "";
}

std::vector<Place> critical_places(const Poly& phi) {
    Poly dphi = phi.derivative();
    if (dphi.is_zero()) return {};
    std::vector<Place> out;
    for (const auto& [q, mu] : factor(dphi)) {
        if (q.degree() < 1) continue;
        int K = phi.field() * static_cast<int>(q.degree());
        if (q.degree() == 1 && q.field() == phi.field()) K = phi.field();
        Poly lifted = phi.lift(K);
        for (const auto& [alpha, one] : roots_in_field(q, K)) {
            (void)one;
            LocalE le = local_e(lifted, alpha);
            Place pl;
            pl.alpha = alpha;
            pl.mult_in_phi_prime = mu;
            pl.raw_e = le.raw;
            pl.effective_e = le.effective;
            out.push_back(pl);
        }
    }
    std::sort(out.begin(), out.end(), [](const Place& a, const Place& b) {
        int da = a.alpha.degree_over_prime(), db = b.alpha.degree_over_prime();
        if (da != db) return da < db;
        if (a.alpha.ext_degree() != b.alpha.ext_degree()) return a.alpha.ext_degree() < b.alpha.ext_degree();
        return a.alpha.lex_key() < b.alpha.lex_key();
    });
    return out;
}

int effective_e_at_place(const Poly& phi, const Fe& alpha) {
    int K = std::lcm(phi.field(), alpha.ext_degree());
    return local_e(phi.lift(K), embed(alpha, K)).effective;
}

NormalizedEquation normalize(const Poly& phi) {
    if (phi.degree() < 1) throw InputError("phi must be nonconstant");
    NormalizedEquation neq;
    Poly cur = phi;
    for (int guard = 0; guard < 1000; ++guard) {
        // Strip every term whose degree is a multiple of 5 (constant included).
        std::vector<std::pair<long long, Fe>> strips;
        for (const auto& [e, c] : cur.coeffs())
            if (e % kChar == 0) strips.emplace_back(e, c);
        for (const auto& [e, c] : strips) {
            cur.set(e, Fe::zero(cur.field()));
            Transform tr;
            tr.kind = Transform::Kind::StripFifthPower;
            tr.exponent = e;
            tr.coeff = c;
            neq.transforms.push_back(tr);
        }
        if (cur.is_zero())
            throw InputError("degenerate equation: phi reduces to zero, the surface is birationally a product");

        // Inspect places; resolve any e >= 10 (possibly masked behind raw 5).
        bool changed = false;
        for (const Place& pl : critical_places(cur)) {
            int K = std::lcm(cur.field(), pl.alpha.ext_degree());
            Poly lifted = cur.lift(K);
            Fe a = embed(pl.alpha, K);
            LocalE le = local_e(lifted, a);
            Poly lin = Poly::t(K) - Poly::constant(a);
            if (le.raw >= 10) {
                cur = (lifted - Poly::constant(lifted.eval(a))) / lin.pow(10);
                Transform tr;
                tr.kind = Transform::Kind::EDrop;
                tr.alpha = a;
                neq.transforms.push_back(tr);
                changed = true;
                break;
            }
            if (le.raw == 5 && le.needs_global_shift) {
                cur = lifted + lin.pow(5) * le.gamma.pow(5);
                Transform tr;
                tr.kind = Transform::Kind::LocalShift;
                tr.alpha = a;
                tr.gamma = le.gamma;
                neq.transforms.push_back(tr);
                changed = true;
                break;
            }
        }
        if (!changed) break;
    }
    if (cur.degree() < 1 || cur.degree() % kChar == 0)
        throw ConsistencyError("normalization failed to reach standard form");
    neq.phi = cur;
    neq.d = cur.degree();
    neq.m = neq.d / 10;
    neq.places = critical_places(cur);
    for (const Place& pl : neq.places) {
        if (pl.raw_e < 2 || pl.raw_e > 9)
            throw ConsistencyError("place with e outside {2..9} after normalization");
    }
    return neq;
}

Poly apply_transforms(const Poly& phi, const std::vector<Transform>& transforms) {
    Poly cur = phi;
    for (const Transform& tr : transforms) {
        int K = std::lcm(cur.field(), std::max(tr.coeff.ext_degree(), tr.alpha.ext_degree()));
        cur = cur.lift(K);
        switch (tr.kind) {
            case Transform::Kind::StripFifthPower:
                cur = cur - Poly::term(embed(tr.coeff, K), tr.exponent);
                break;
            case Transform::Kind::LocalShift: {
                Poly lin = Poly::t(K) - Poly::constant(embed(tr.alpha, K));
                cur = cur + lin.pow(5) * embed(tr.gamma, K).pow(5);
                break;
            }
            case Transform::Kind::EDrop: {
                Poly lin = Poly::t(K) - Poly::constant(embed(tr.alpha, K));
                cur = (cur - Poly::constant(cur.eval(embed(tr.alpha, K)))) / lin.pow(10);
                break;
            }
        }
    }
    return cur;
}

}  // namespace qhyp5
