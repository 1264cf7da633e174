#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace qhyp5 {

inline constexpr int kChar = 5;

/// Bad user input (malformed expressions, values outside the supported range).
struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// An internal invariant failed; indicates a bug or an impossible configuration.
struct ConsistencyError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Immutable context for the field F_{5^k}: a fixed monic irreducible defining
/// polynomial of degree k over F_5, with elements written in the power basis of
/// its residue class g.  One context per degree, created on first use.
///
/// The default table picks, for each k, the monic irreducible x^k + sum c_i x^i
/// whose coefficient vector (c_0, ..., c_{k-1}) is smallest in base-5 counting
/// order.  The environment variable QHYP5_FIELD_TABLE may point to a file that
/// overrides entries (one line per degree: "k c_0 c_1 ... c_{k-1}").
class GaloisField {
  public:
    static const GaloisField& get(int ext_degree);
    static constexpr int kMaxDegree = 24;

    int degree() const { return k_; }
    /// Monic defining polynomial, ascending coefficients, size k+1.
    const std::vector<int>& defining() const { return defining_; }

  private:
    explicit GaloisField(int k);
    int k_;
    std::vector<int> defining_;
};

/// An element of F_{5^k}, stored as k coordinates in the fixed power basis.
/// Immutable value type; arithmetic between elements requires equal degrees
/// (use lift() to move into a bigger field first).
class Fe {
  public:
    Fe() : k_(1), c_(1, 0) {}
    Fe(int value, int ext_degree);                       // value mod 5 embedded as a constant
    Fe(std::vector<int> coords, int ext_degree);

    static Fe zero(int ext_degree) { return Fe(0, ext_degree); }
    static Fe one(int ext_degree) { return Fe(1, ext_degree); }
    static Fe gen(int ext_degree);                       // the residue class g

    int ext_degree() const { return k_; }
    const std::vector<int>& coords() const { return c_; }
    bool is_zero() const;

    Fe operator+(const Fe& o) const;
    Fe operator-(const Fe& o) const;
    Fe operator-() const;
    Fe operator*(const Fe& o) const;
    Fe operator/(const Fe& o) const;
    bool operator==(const Fe& o) const { return k_ == o.k_ && c_ == o.c_; }
    bool operator!=(const Fe& o) const { return !(*this == o); }

    Fe inverse() const;
    Fe pow(long long e) const;
    Fe frobenius() const;                                // x -> x^5
    Fe fifth_root() const;                               // inverse Frobenius (unique in char 5)

    /// Degree over F_5 of the subfield this element generates (divides k).
    int degree_over_prime() const;

    /// Numeric key sum c_i 5^i; defines the deterministic lexicographic order.
    std::uint64_t lex_key() const;
    bool operator<(const Fe& o) const;

    std::string str() const;                             // e.g. "g^3+2*g+4", "3"

  private:
    int k_;
    std::vector<int> c_;
    void check_same(const Fe& o) const;
};

}  // namespace qhyp5
