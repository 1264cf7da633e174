#include "qhyp5/invariants.hpp"

namespace qhyp5 {

int delta_of_d(long long d) {
    if (d < 1 || d % kChar == 0) throw InputError("delta(d) is defined only for d not divisible by 5");
    switch (d % 10) {
        case 1:
        case 4: return 2;
        case 2: return -1;
        case 3: return 0;
        case 6: return 3;
        case 7:
        case 8:
        case 9: return 7;
    }
    throw ConsistencyError("unreachable");
}

long long gamma_self_intersection(const NormalizedEquation& eq, const FiberCensus& c) {
    long long n3 = c.n(FiberKind::C33), n5 = c.n(FiberKind::C115), n6 = c.n(FiberKind::C46),
              n7 = c.n(FiberKind::C97), n8 = c.n(FiberKind::C138);
    return 4 * n3 + 5 * n5 + 7 * n6 + 8 * n7 + 9 * n8 - (15 * eq.m + delta_of_d(eq.d));
}

SurfaceInvariants surface_invariants(const NormalizedEquation& eq, const FiberCensus& c) {
    SurfaceInvariants inv;
    inv.d = eq.d;
    inv.m = eq.m;
    inv.census = c;
    long long N3 = c.N(FiberKind::C33), N5 = c.N(FiberKind::C115), N6 = c.N(FiberKind::C46),
              N7 = c.N(FiberKind::C97), N8 = c.N(FiberKind::C138);
    inv.pa = 4 * eq.m + 2 - (N3 + N5 + 2 * N6 + 2 * N7 + 2 * N8);
    inv.K_sq = 8 * eq.m - (2 * N3 + 2 * N5 + 3 * N6 + 4 * N7 + 4 * N8);
    inv.euler = 4;
    for (const auto& [kind, count] : c.totals()) inv.euler += static_cast<long long>(count) * (FiberType{kind}.euler() - 2);
    if (inv.pa == 0) inv.rho = 10 - inv.K_sq;
    inv.gamma_sq = gamma_self_intersection(eq, c);
    inv.delta = delta_of_d(eq.d);
    return inv;
}

}  // namespace qhyp5
