#pragma once

#include <optional>

#include "qhyp5/fibers.hpp"

namespace qhyp5 {

struct SurfaceInvariants {
    long long d = 0;
    long long m = 0;
    FiberCensus census;
    long long pa = 0;
    long long K_sq = 0;
    std::optional<long long> rho;  // Picard number, populated only when pa = 0
    long long euler = 0;           // e(X) from the fiber census (derived consistency check)
    long long gamma_sq = 0;        // moving-cusp self-intersection, Corollary formula
    int delta = 0;
};

/// The residue-dependent constant of the Gamma^2 formula, defined exactly for
/// d mod 10 in {1,2,3,4,6,7,8,9}.
int delta_of_d(long long d);

long long gamma_self_intersection(const NormalizedEquation& eq, const FiberCensus& c);

SurfaceInvariants surface_invariants(const NormalizedEquation& eq, const FiberCensus& c);

}  // namespace qhyp5
