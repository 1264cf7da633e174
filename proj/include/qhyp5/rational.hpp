#pragma once

#include <array>
#include <optional>
#include <variant>

#include "qhyp5/invariants.hpp"
#include "qhyp5/mw.hpp"

namespace qhyp5 {

/// One combinatorial candidate for the reducible-fiber multiset of a rational
/// quasi-hyperelliptic fibration (solutions of the two Diophantine equations).
struct CandidateCombo {
    std::string roman;  // "(i)" .. "(xi)"
    long long m = 0;
    std::map<FiberKind, int> counts;  // gauge-free multiset of reducible fiber types
    bool realizable = true;
    std::optional<int> table3_row;
};

/// The 11 solutions of n1+2n2+3n3+5n5+6n6+7n7+8n8 = 10m+8 and
/// n3+n5+2n6+2n7+2n8 = 4m+2 with m <= 1, in the classical order; (vi) is the
/// excluded combination.
std::vector<CandidateCombo> enumerate_candidates();

struct Table3Row {
    int row = 0;
    std::map<FiberKind, int> fibers;
    int rho = 0;
    int r = 0;
    std::string equation;   // representative defining equation; empty for row 8 (see notes)
    int section_count = 0;  // number of nonzero polynomial sections
};

const std::vector<Table3Row>& table3();

struct Table3Match {
    int row = 0;
    NormalizedEquation eq;
    FiberCensus fiber_census;
    SurfaceInvariants invariants;
    GramLattice lattice;
    int r = 0;
    std::vector<SectionCandidate> sections;
};

struct NotRational {
    NormalizedEquation eq;
    FiberCensus fiber_census;
    SurfaceInvariants invariants;
};

using ClassifyOutcome = std::variant<Table3Match, NotRational>;

/// Normalizes phi, computes census and invariants, and matches against the
/// ten rows when pa = 0.  A pa = 0 census outside the table is a consistency
/// error (either a bug or a genuinely new case) and throws loudly.
ClassifyOutcome classify_rational(const Poly& phi);

/// Antiderivative with zero constant term; fails (nullopt) when phi_prime has
/// a term of degree congruent to 4 mod 5, which is not a derivative.
std::optional<Poly> integrate(const Poly& phi_prime);

/// Parameter triples {a, b, c} over F_{5^k} for which
/// phi' = (t (t-1) (t-a) (t-b) (t-c))^3 integrates (row-7 family instances).
std::vector<std::array<Fe, 3>> find_row7_parameters(int k);

/// Exhaustive search for a defining equation with the row-8 census
/// (C(3,3) x 4, C(4,6) x 1) over F_{5^k}, k <= search_ext, in both gauges
/// (d = 13 and d = 16).  Returns nullopt when the space is exhausted empty.
std::optional<Poly> find_row8_equation(int search_ext);

struct ScanResult {
    int total = 0;
    int degenerate = 0;
    std::map<int, int> row_counts;            // Table 3 row -> count
    std::map<long long, int> nonrational_pa;  // pa -> count for pa != 0
};

/// Classifies every phi = sum_{i=1..n} c_i t^i over F_5 (exhaustive survey).
ScanResult scan_degree(int max_degree);

}  // namespace qhyp5
