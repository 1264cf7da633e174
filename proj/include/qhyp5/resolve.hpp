#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "qhyp5/fibers.hpp"

namespace qhyp5 {

struct DownstairsConfig;  // final blown-up configuration (opaque, defined in resolve.cpp)

/// Result of running the blow-up scheduler on a germ (affine x^5 + t^e, or the
/// curve at infinity tau^d + xi^5 psi(tau)).  Carries the Sigma-bar snapshot
/// data of the local branch analysis and the finished configuration ready for
/// the double cover.
struct GermResolution {
    bool at_infinity = false;
    int e = 0;        // affine exponent (0 for infinity runs)
    long long d = 0;  // degree (0 for affine runs)

    // Sigma-bar data, keyed by exceptional-curve name in order of appearance.
    std::vector<std::string> exceptional_order;
    std::map<std::string, long long> E_P;     // coefficients of sigma-bar^* C - C-bar
    std::map<std::string, long long> E1;      // reduced part of E_P = E1 + 2 E2
    std::map<std::string, long long> E2;
    std::map<std::string, long long> E_can;   // discrepancies
    long long mu = 0;                         // (1/2) E2 . (E2 - E_can)
    long long nu = 0;                         // (E2 - E_can)^2

    // Infinity-part global data on Sigma-bar (branch B-bar and Z-bar, and the
    // Artin quantities with no affine contribution folded in).
    std::map<std::string, long long> B_bar;
    std::map<std::string, long long> Z_bar;
    long long pa_Z = 0;    // p_a(Z-bar), infinity part (add mu for the full surface)
    long long KZ_sq = 0;   // (K + Z-bar)^2, infinity part (add nu)

    long long sum_mu_sq = 0;  // sum of squared germ multiplicities over all blow-ups

    std::vector<std::string> trace;  // JSON lines, one per blow-up
    std::shared_ptr<const DownstairsConfig> config;
};

/// Cover-rule selection context.  The fiber line always meets the branch curve
/// once more at the section x = infinity; the flag exists so tests can probe
/// the rule dependence called out by the double-covering lemma.
struct CoverContext {
    bool m_line_in_branch = true;
};

struct CoverResult {
    DualGraph graph;      // fiber dual graph on the relatively minimal model
    int contractions = 0; // number of fiberwise (-1)-contractions applied
    long long O_sq = 0;   // self-intersection of the zero section afterwards
    // pi^*(E_can - E_fin^(2)) pushed to the minimal model, keyed by component id
    // of `graph` (affine germ runs only).
    std::map<int, long long> canonical_pullback;
    long long gamma_dot_pullback = 0;
    // Gamma^2 gained through the contractions: sum of (Gamma . R)^2 over the
    // contracted curves R.
    long long gamma_sq_gain = 0;
    // Which covering rules fired, for the audit trail.
    int doubled = 0, split = 0, irreducible = 0;
};

/// Runs the blow-up scheduler (Newton/Euclid descent plus branch separation)
/// on the germ x^5 + t^e.  e must lie in {2,3,4,6,7,8,9}.
GermResolution resolve_local_germ(int e, bool with_trace = false);

/// Resolves the germ tau^d + xi^5 psi(tau) at (infinity, infinity).
GermResolution resolve_infinity(long long d, bool with_trace = false);

/// Applies the double-covering rules to a finished resolution, assembles the
/// fiber dual graph, and contracts fiberwise (-1)-curves to relative
/// minimality.  Hard failure on any parity/rule ambiguity the fiber-numeric
/// constraints cannot settle.
CoverResult derive_fiber_graph(const GermResolution& res, const CoverContext& ctx = {});

struct ArtinInvariants {
    long long pa = 0;
    long long K_sq = 0;
};

/// Global invariants through the resolution path: pa from p_a(Z-bar) and the
/// mu-sum, K^2 from 2 (K + Z-bar)^2 plus the logged fiberwise contractions.
ArtinInvariants artin_invariants(const NormalizedEquation& eq);

/// Gamma^2 through the resolution path (adjunction diagnostic): the branch
/// curve has C^2 = 10 d on P^1 x P^1, drops by mu^2 per blow-up, halves under
/// the double cover, and regains (Gamma . R)^2 per contracted curve R.
long long gamma_sq_resolution(const NormalizedEquation& eq);

}  // namespace qhyp5
