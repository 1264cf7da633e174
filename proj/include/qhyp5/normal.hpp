#pragma once

#include <string>
#include <vector>

#include "qhyp5/poly.hpp"

namespace qhyp5 {

/// A critical point of the fibration: a root alpha of phi' together with the
/// local invariant e_alpha = v_alpha(phi - phi(alpha)).  Places with raw_e = 5
/// are kept; their fiber type is read off effective_e, obtained by the local
/// coordinate shift x -> x + gamma (t - alpha) with gamma^5 = -phi_alpha(alpha).
struct Place {
    Fe alpha;
    int mult_in_phi_prime = 0;
    int raw_e = 0;
    int effective_e = 0;  // in {2,3,4,6,7,8,9}
};

struct Transform {
    enum class Kind { StripFifthPower, LocalShift, EDrop };
    Kind kind;
    // StripFifthPower: removes coeff * t^exponent (exponent a multiple of 5),
    // realized by x -> x + coeff^{1/5} t^{exponent/5}.
    long long exponent = 0;
    Fe coeff;
    // LocalShift: x -> x + gamma (t - alpha); adds gamma^5 (t - alpha)^5.
    // EDrop: (t,x,y) -> (t, x/(t-alpha)^2, y/(t-alpha)^5); divides out (t-alpha)^10.
    Fe alpha;
    Fe gamma;
    std::string describe() const;
};

struct NormalizedEquation {
    Poly phi;
    long long d = 0;  // degree of phi
    long long m = 0;  // floor(d/10)
    std::vector<Place> places;
    std::vector<Transform> transforms;
};

/// Puts phi into standard form: no terms of degree divisible by 5, every place
/// with e in {2..9}, and no place whose raw_e = 5 masks a deeper degeneration
/// (those are resolved by a logged global shift + drop).  Errors if phi reduces
/// to zero (the surface would be birationally a product).
NormalizedEquation normalize(const Poly& phi);

/// Effective local invariant at a critical point alpha of phi', following the
/// raw-5 shift and any local e-drops.  Returns a value in {2,3,4,6,7,8,9}.
int effective_e_at_place(const Poly& phi, const Fe& alpha);

/// All places of phi (roots of phi' in their minimal extensions).
std::vector<Place> critical_places(const Poly& phi);

/// Replays a transform log against the original equation.
Poly apply_transforms(const Poly& phi, const std::vector<Transform>& transforms);

}  // namespace qhyp5
