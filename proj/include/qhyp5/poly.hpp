#pragma once

#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "qhyp5/gf.hpp"

namespace qhyp5 {

/// Univariate polynomial over F_{5^k}, stored as a sparse exponent map with no
/// zero coefficients.  The zero polynomial has an empty map and degree -1.
class Poly {
  public:
    explicit Poly(int ext_degree = 1) : k_(ext_degree) {}

    static Poly zero(int k = 1) { return Poly(k); }
    static Poly constant(const Fe& c);
    static Poly t(int k = 1);
    /// c * t^e
    static Poly term(const Fe& c, long long e);

    int field() const { return k_; }
    const std::map<long long, Fe>& coeffs() const { return c_; }
    bool is_zero() const { return c_.empty(); }
    long long degree() const { return c_.empty() ? -1 : c_.rbegin()->first; }
    Fe coeff(long long e) const;
    Fe leading() const;
    /// Lowest exponent with nonzero coefficient (t-adic valuation); -1 for zero.
    long long valuation() const { return c_.empty() ? -1 : c_.begin()->first; }

    Poly operator+(const Poly& o) const;
    Poly operator-(const Poly& o) const;
    Poly operator-() const;
    Poly operator*(const Poly& o) const;
    Poly operator*(const Fe& s) const;
    bool operator==(const Poly& o) const { return k_ == o.k_ && c_ == o.c_; }
    bool operator!=(const Poly& o) const { return !(*this == o); }

    std::pair<Poly, Poly> divrem(const Poly& d) const;
    Poly operator/(const Poly& d) const { return divrem(d).first; }
    Poly operator%(const Poly& d) const { return divrem(d).second; }

    Poly derivative() const;
    Fe eval(const Fe& x) const;
    /// p(t + a) via Taylor shift.
    Poly shifted(const Fe& a) const;
    Poly pow(long long e) const;
    Poly monic() const;
    /// Lift coefficients into F_{5^K} (k must divide K).
    Poly lift(int K) const;

    void set(long long e, const Fe& c);

    std::string str() const;
    /// Parses the polynomial grammar (terms joined by +/-, factors uint, g[^j],
    /// t[^j] with optional '*'); reports the byte position of syntax errors.
    static Poly parse(const std::string& text, int ext_degree);

  private:
    int k_;
    std::map<long long, Fe> c_;
};

Poly gcd(Poly a, Poly b);

/// q with q^5 == p, if every exponent of p is a multiple of 5; otherwise
/// nullopt with the smallest obstructing exponent stored in *obstruction.
std::optional<Poly> try_fifth_root(const Poly& p, long long* obstruction = nullptr);
/// Throwing wrapper for try_fifth_root.
Poly fifth_root(const Poly& p);

/// Canonical embedding F_{5^k} -> F_{5^K} for k | K (image of g_k is the
/// lexicographically smallest root of its defining polynomial).
Fe embed(const Fe& x, int K);

/// Monic irreducible factors with multiplicities, over the coefficient field.
/// Deterministic (fixed-seed equal-degree splitting).
std::vector<std::pair<Poly, int>> factor(const Poly& p);

/// All roots of p lying in F_{5^K} (p's field must divide K), each with its
/// multiplicity, sorted by (degree over F_5, lexicographic coordinates).
std::vector<std::pair<Fe, int>> roots_in_field(const Poly& p, int K);

struct RootsResult {
    int splitting_degree;                     // K of the smallest splitting field over F_5
    std::vector<std::pair<Fe, int>> roots;    // all roots in F_{5^K}, with multiplicities
};

/// Roots with multiplicities over the smallest extension splitting p.
/// Errors if that extension exceeds degree 12 (desk-scale bound).
RootsResult roots_with_multiplicity(const Poly& p);

}  // namespace qhyp5
