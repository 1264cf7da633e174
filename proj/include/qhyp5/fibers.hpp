#pragma once

#include <map>
#include <string>
#include <vector>

#include "qhyp5/normal.hpp"

namespace qhyp5 {

enum class FiberKind { C10, C51, C92, C33, C115, C46, C97, C138 };

/// One of the eight fiber types of a genus-2 quasi-hyperelliptic fibration in
/// characteristic 5, keyed by the local invariant e.
struct FiberType {
    FiberKind kind;

    std::string label() const;     // "C(5,1)"
    std::string nu_label() const;  // Namikawa-Ueno notation, e.g. "IX-1"
    int euler() const;             // topological Euler number of the fiber
    int e_value() const;           // the producing e in {1,2,3,4,6,7,8,9}
    int index() const;             // the b of C(a,b), used as the subscript of N_b / n_b
    int component_count() const;   // the a of C(a,b)

    bool operator==(const FiberType& o) const { return kind == o.kind; }
    bool operator<(const FiberType& o) const { return kind < o.kind; }
};

FiberType classify_e(int e);
FiberType fiber_type_from_kind(FiberKind k);
const std::vector<FiberKind>& all_fiber_kinds();

/// Fiber type over t = infinity as a function of d (requires 5 not dividing d).
/// Stored as an explicit table over d mod 10; equals classify_e(10 - d mod 10).
FiberType infinity_type(long long d);

struct Component {
    int id;
    int self_int;
    int mult;
    bool is_identity;
};

struct Edge {
    int a, b;
    int weight;  // local intersection multiplicity (2 encodes a tangency)
    int point;   // edges sharing a point id meet at one point of the fiber
};

/// Dual graph of a fiber: components with self-intersections and
/// multiplicities, weighted incidences grouped by intersection point, the
/// moving-cusp incidences, and markers for unibranch singular components.
struct DualGraph {
    std::vector<Component> components;
    std::vector<Edge> edges;
    std::vector<std::pair<int, int>> gamma_incidence;  // (component id, Gamma . R)
    std::vector<int> cusp_components;                  // components with a cusp

    int weight(int a, int b) const;
    long long fiber_dot(int j) const;           // F . R_j with F = sum mult_i R_i
    long long fiber_self_intersection() const;  // F . F
    int euler() const;
    int identity_component() const;  // id of the unique identity component
    bool connected() const;
    /// Checks unique mult-1 identity, connectivity, F.R_j = 0 and F^2 = 0.
    void validate() const;

    /// Gram matrix rows/cols over the given component ids.
    std::vector<std::vector<long long>> gram(const std::vector<int>& ids) const;
    std::vector<int> non_identity_ids() const;

    std::string dot(const std::string& name) const;
};

/// Encoded Table-1 configuration for a fiber type.
DualGraph fiber_template(const FiberType& ft);

/// Isomorphism respecting self-intersections, multiplicities, the identity
/// flag and edge weights.
bool isomorphic(const DualGraph& a, const DualGraph& b);

/// Counts of reducible fibers: affine part by type (n_i) plus the fiber at
/// infinity; N_i adds the two.
struct FiberCensus {
    std::map<FiberKind, int> affine;
    FiberKind infinity;

    int n(FiberKind k) const;
    int N(FiberKind k) const;
    long long d = 0;
    long long m = 0;
    /// Multiset of all reducible fiber types (affine + infinity if reducible).
    std::map<FiberKind, int> totals() const;
    std::string str() const;  // e.g. "C(3,3) x 2, C(5,1) x 2"
};

FiberCensus census(const NormalizedEquation& eq);

}  // namespace qhyp5
