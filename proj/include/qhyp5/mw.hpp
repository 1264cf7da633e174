#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qhyp5/fibers.hpp"

namespace qhyp5 {

/// Exact rational number on int64 (plenty for lattice data at this scale).
struct Rat {
    long long num = 0;
    long long den = 1;
    Rat() = default;
    Rat(long long n, long long d = 1);
    Rat operator+(const Rat& o) const;
    Rat operator-(const Rat& o) const;
    Rat operator*(const Rat& o) const;
    Rat operator-() const;
    bool operator==(const Rat& o) const { return num == o.num && den == o.den; }
    std::string str() const;
};

/// The trivial lattice Triv(X): zero section (O), general fiber F, and the
/// non-identity components of each reducible fiber, with its Gram matrix.
struct GramLattice {
    std::vector<std::string> basis_labels;
    std::vector<std::vector<long long>> gram;
    int rank() const { return static_cast<int>(gram.size()); }
    long long det() const;
};

/// Exact determinant of an integer matrix (fraction-free elimination).
long long int_det(const std::vector<std::vector<long long>>& a);

GramLattice trivial_lattice(const FiberCensus& c, long long m);

/// Torsion rank r from |det Triv| = 5^(2r) (det NS = +-1 for a rational
/// surface).  Requires pa == 0; errors if the determinant is not +-5^(2r).
int torsion_rank(const GramLattice& lat, long long pa);

/// Determinant of the non-identity Gram block of a fiber template.
long long template_block_det(const FiberType& ft);

/// Entry of -A_v^{-1} for the fiber type; component ids are the template ids.
/// Either argument equal to the identity component yields 0.
Rat local_contribution(const FiberType& ft, int comp_i, int comp_j);

/// One reducible fiber's incidence data for a pair of sections: the component
/// hit by P and by Q (nullopt = the identity component).
struct SectionHit {
    FiberType type;
    std::optional<int> p_comp;
    std::optional<int> q_comp;
};

/// <iota(P), iota(Q)> = -((P)-(O) . (Q)-(O)) - sum contr_v(P,Q) given the
/// caller-supplied intersection numbers.
Rat height_pairing(long long PO, long long QO, long long PQ, long long O_sq, const std::vector<SectionHit>& hits);

/// A polynomial section (x(t), y(t)) of y^2 = x^5 + phi.
struct SectionCandidate {
    Poly x;
    Poly y;
};

/// Integral sections: y = c prod (t-alpha)^(a_alpha) over the critical points
/// (exponent 0 or (mult+1)/2 for odd multiplicities), filtered by the exact
/// identities 2yy' = phi' and y^2 - phi being a fifth power.  c runs over the
/// nonzero elements of F_{5^max_ext}.  Deterministic ordering.
std::vector<SectionCandidate> find_sections(const NormalizedEquation& eq, int max_ext);

bool verify_section(const NormalizedEquation& eq, const SectionCandidate& cand);

}  // namespace qhyp5
