#include "qhyp5/poly.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <mutex>
#include <numeric>
#include <random>
#include <sstream>

namespace qhyp5 {

Poly Poly::constant(const Fe& c) {
    Poly p(c.ext_degree());
    if (!c.is_zero()) p.c_[0] = c;
    return p;
}

Poly Poly::t(int k) {
    Poly p(k);
    p.c_[1] = Fe::one(k);
    return p;
}

Poly Poly::term(const Fe& c, long long e) {
    Poly p(c.ext_degree());
    if (!c.is_zero()) p.c_[e] = c;
    return p;
}

Fe Poly::coeff(long long e) const {
    auto it = c_.find(e);
    return it == c_.end() ? Fe::zero(k_) : it->second;
}

Fe Poly::leading() const {
    if (c_.empty()) return Fe::zero(k_);
    return c_.rbegin()->second;
}

void Poly::set(long long e, const Fe& c) {
    if (e < 0) throw ConsistencyError("negative exponent");
    if (c.is_zero())
        c_.erase(e);
    else
        c_[e] = c;
}

Poly Poly::operator+(const Poly& o) const {
    if (k_ != o.k_) throw ConsistencyError("field mismatch in polynomial arithmetic");
    Poly r = *this;
    for (const auto& [e, c] : o.c_) r.set(e, r.coeff(e) + c);
    return r;
}

Poly Poly::operator-(const Poly& o) const { return *this + (-o); }

Poly Poly::operator-() const {
    Poly r(k_);
    for (const auto& [e, c] : c_) r.c_[e] = -c;
    return r;
}

Poly Poly::operator*(const Poly& o) const {
    if (k_ != o.k_) throw ConsistencyError("field mismatch in polynomial arithmetic");
    Poly r(k_);
    for (const auto& [e1, c1] : c_)
        for (const auto& [e2, c2] : o.c_) r.set(e1 + e2, r.coeff(e1 + e2) + c1 * c2);
    return r;
}

Poly Poly::operator*(const Fe& s) const {
    Poly r(k_);
    if (s.is_zero()) return r;
    for (const auto& [e, c] : c_) r.set(e, c * s);
    return r;
}

std::pair<Poly, Poly> Poly::divrem(const Poly& d) const {
    if (d.is_zero()) throw InputError("polynomial division by zero");
    if (k_ != d.k_) throw ConsistencyError("field mismatch in polynomial division");
    Poly q(k_), r = *this;
    Fe lead_inv = d.leading().inverse();
    while (!r.is_zero() && r.degree() >= d.degree()) {
        long long e = r.degree() - d.degree();
        Fe c = r.leading() * lead_inv;
        q.set(e, q.coeff(e) + c);
        for (const auto& [de, dc] : d.c_) r.set(e + de, r.coeff(e + de) - c * dc);
    }
    return {q, r};
}

Poly Poly::derivative() const {
    Poly r(k_);
    for (const auto& [e, c] : c_) {
        int em = static_cast<int>(e % kChar);
        if (em == 0) continue;  // d/dt t^(5j) = 0 in char 5
        r.set(e - 1, c * Fe(em, k_));
    }
    return r;
}

Fe Poly::eval(const Fe& x) const {
    Fe acc = Fe::zero(k_);
    long long prev = -1;
    // Horner on the sparse support, highest exponent first.
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
        if (prev >= 0) acc = acc * x.pow(prev - it->first);
        acc = acc + it->second;
        prev = it->first;
    }
    if (prev > 0) acc = acc * x.pow(prev);
    return acc;
}

Poly Poly::shifted(const Fe& a) const {
    // Horner: p(t+a) built highest coefficient first.
    Poly res(k_);
    Poly lin = Poly::t(k_) + Poly::constant(a);
    long long prev = -1;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
        if (prev >= 0)
            for (long long i = 0; i < prev - it->first; ++i) res = res * lin;
        res = res + Poly::constant(it->second);
        prev = it->first;
    }
    if (prev > 0)
        for (long long i = 0; i < prev; ++i) res = res * lin;
    return res;
}

Poly Poly::pow(long long e) const {
    Poly r = Poly::constant(Fe::one(k_)), b = *this;
    while (e > 0) {
        if (e & 1) r = r * b;
        b = b * b;
        e >>= 1;
    }
    return r;
}

Poly Poly::monic() const {
    if (is_zero()) return *this;
    return *this * leading().inverse();
}

Poly Poly::lift(int K) const {
    Poly r(K);
    for (const auto& [e, c] : c_) r.c_[e] = embed(c, K);
    return r;
}

Poly gcd(Poly a, Poly b) {
    while (!b.is_zero()) {
        Poly r = a % b;
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

std::optional<Poly> try_fifth_root(const Poly& p, long long* obstruction) {
    Poly r(p.field());
    for (const auto& [e, c] : p.coeffs()) {
        if (e % kChar != 0) {
            if (obstruction) *obstruction = e;
            return std::nullopt;
        }
        r.set(e / kChar, c.fifth_root());
    }
    return r;
}

Poly fifth_root(const Poly& p) {
    long long bad = -1;
    auto r = try_fifth_root(p, &bad);
    if (!r) throw InputError("not a fifth power: exponent " + std::to_string(bad) + " is not a multiple of 5");
    return *r;
}

// ---------------------------------------------------------------------------
// Parsing / printing

namespace {

struct Parser {
    const std::string& s;
    int k;
    size_t pos = 0;

    [[noreturn]] void fail(const std::string& what) const {
        throw InputError("syntax error at position " + std::to_string(pos) + ": " + what);
    }
    void skip_ws() {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }
    bool peek(char c) {
        skip_ws();
        return pos < s.size() && s[pos] == c;
    }
    bool eat(char c) {
        if (peek(c)) {
            ++pos;
            return true;
        }
        return false;
    }
    long long read_uint() {
        skip_ws();
        if (pos >= s.size() || !std::isdigit(static_cast<unsigned char>(s[pos]))) fail("expected integer");
        long long v = 0;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
            v = v * 10 + (s[pos] - '0');
            if (v > 1'000'000'000LL) fail("integer too large");
            ++pos;
        }
        return v;
    }

    // term := factor (['*'] factor)*, factor := uint | g[^uint] | t[^uint]
    Poly parse_term() {
        Fe coeff = Fe::one(k);
        long long texp = 0;
        bool any = false;
        while (true) {
            skip_ws();
            if (pos >= s.size()) break;
            char c = s[pos];
            if (std::isdigit(static_cast<unsigned char>(c))) {
                long long v = read_uint();
                coeff = coeff * Fe(static_cast<int>(v % kChar), k);
                any = true;
            } else if (c == 'g') {
                if (k < 2) fail("coefficient 'g' is not an element of F_5 (use --field k with k >= 2)");
                ++pos;
                long long e = eat('^') ? read_uint() : 1;
                coeff = coeff * Fe::gen(k).pow(e);
                any = true;
            } else if (c == 't') {
                ++pos;
                long long e = eat('^') ? read_uint() : 1;
                texp += e;
                any = true;
            } else {
                break;
            }
            skip_ws();
            if (eat('*')) continue;
            // juxtaposition without '*' only before a variable/factor start
            if (pos < s.size() && (s[pos] == 'g' || s[pos] == 't' || std::isdigit(static_cast<unsigned char>(s[pos]))))
                continue;
            break;
        }
        if (!any) fail("expected term");
        return Poly::term(coeff, texp);
    }

    Poly parse_poly() {
        Poly acc(k);
        skip_ws();
        bool neg = false;
        if (eat('-')) neg = true;
        while (true) {
            Poly term = parse_term();
            acc = neg ? acc - term : acc + term;
            skip_ws();
            if (eat('+'))
                neg = false;
            else if (eat('-'))
                neg = true;
            else
                break;
        }
        skip_ws();
        if (pos != s.size()) fail("unexpected character '" + std::string(1, s[pos]) + "'");
        return acc;
    }
};

}  // namespace

Poly Poly::parse(const std::string& text, int ext_degree) {
    Parser p{text, ext_degree};
    return p.parse_poly();
}

std::string Poly::str() const {
    if (is_zero()) return "0";
    std::string out;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
        long long e = it->first;
        const auto& coords = it->second.coords();
        for (int j = k_ - 1; j >= 0; --j) {
            if (coords[j] == 0) continue;
            std::vector<std::string> parts;
            if (coords[j] != 1 || (j == 0 && e == 0)) parts.push_back(std::to_string(coords[j]));
            if (j == 1)
                parts.push_back("g");
            else if (j > 1)
                parts.push_back("g^" + std::to_string(j));
            if (e == 1)
                parts.push_back("t");
            else if (e > 1)
                parts.push_back("t^" + std::to_string(e));
            if (parts.empty()) parts.push_back("1");
            if (!out.empty()) out += "+";
            for (size_t i = 0; i < parts.size(); ++i) {
                if (i) out += "*";
                out += parts[i];
            }
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Embeddings

namespace {

std::mutex g_embed_mutex;
std::map<std::pair<int, int>, Fe>& embed_cache() {
    static std::map<std::pair<int, int>, Fe> cache;
    return cache;
}

}  // namespace

Fe embed(const Fe& x, int K) {
    int k = x.ext_degree();
    if (k == K) return x;
    if (K % k != 0) throw InputError("no embedding F_{5^" + std::to_string(k) + "} -> F_{5^" + std::to_string(K) + "}");
    if (k == 1) {
        return Fe(x.coords()[0], K);
    }
    Fe img = Fe::zero(K);
    {
        std::lock_guard<std::mutex> lock(g_embed_mutex);
        auto it = embed_cache().find({k, K});
        if (it != embed_cache().end()) img = it->second;
    }
    if (img.is_zero()) {
        // Image of g_k: smallest root in F_{5^K} of the degree-k defining polynomial.
        Poly def(K);
        const auto& f = GaloisField::get(k).defining();
        for (size_t i = 0; i < f.size(); ++i)
            if (f[i] != 0) def.set(static_cast<long long>(i), Fe(f[i], K));
        auto roots = roots_in_field(def, K);
        if (roots.empty()) throw ConsistencyError("defining polynomial has no root in the target field");
        img = roots.front().first;
        std::lock_guard<std::mutex> lock(g_embed_mutex);
        embed_cache().emplace(std::make_pair(k, K), img);
    }
    Fe acc = Fe::zero(K);
    for (int i = k - 1; i >= 0; --i) acc = acc * img + Fe(x.coords()[i], K);
    return acc;
}

// ---------------------------------------------------------------------------
// Factorization

namespace {

// t^(5^k) mod f via k successive fifth powers.
Poly frobenius_power_t(const Poly& f, int times) {
    Poly w = Poly::t(f.field()) % f;
    for (int i = 0; i < times; ++i) {
        Poly w5 = (w * w) % f;       // w^2
        Poly w4 = (w5 * w5) % f;     // w^4
        w = (w4 * w) % f;            // w^5
    }
    return w;
}

Poly powmod(Poly base, unsigned long long e, const Poly& m) {
    Poly r = Poly::constant(Fe::one(m.field()));
    base = base % m;
    while (e > 0) {
        if (e & 1ULL) r = (r * base) % m;
        base = (base * base) % m;
        e >>= 1;
    }
    return r;
}

unsigned long long pow5_checked(int e) {
    if (e > 27) throw ConsistencyError("field tower too large for equal-degree splitting (5^" + std::to_string(e) + ")");
    unsigned long long r = 1;
    for (int i = 0; i < e; ++i) r *= kChar;
    return r;
}

// Equal-degree splitting: f monic squarefree, all irreducible factors of degree d.
void equal_degree_split(const Poly& f, int d, std::vector<Poly>& out, std::mt19937_64& rng) {
    if (f.degree() == d) {
        out.push_back(f.monic());
        return;
    }
    int k = f.field();
    unsigned long long qd = pow5_checked(k * d);
    unsigned long long exp = (qd - 1) / 2;
    while (true) {
        Poly a(k);
        for (long long i = 0; i < f.degree(); ++i) {
            std::vector<int> coords(k);
            for (int j = 0; j < k; ++j) coords[j] = static_cast<int>(rng() % kChar);
            a.set(i, Fe(coords, k));
        }
        if (a.is_zero() || a.degree() < 1) continue;
        Poly w = powmod(a, exp, f);
        Poly g = gcd(w - Poly::constant(Fe::one(k)), f);
        if (g.degree() > 0 && g.degree() < f.degree()) {
            equal_degree_split(g, d, out, rng);
            equal_degree_split(f / g, d, out, rng);
            return;
        }
    }
}

void factor_rec(Poly f, int outer_mult, std::map<std::string, std::pair<Poly, int>>& acc) {
    f = f.monic();
    if (f.degree() <= 0) return;
    Poly fp = f.derivative();
    if (fp.is_zero()) {
        // All exponents are multiples of 5: f = h^5.
        Poly h = fifth_root(f);
        factor_rec(h, outer_mult * kChar, acc);
        return;
    }
    Poly sqf = f / gcd(f, fp);  // product of the irreducibles whose multiplicity is not divisible by 5
    // Distinct-degree decomposition of sqf, then equal-degree splitting.
    std::mt19937_64 rng(0x51F5A11CEULL);
    std::vector<Poly> irreducibles;
    Poly rem = sqf;
    int k = f.field();
    for (int d = 1; rem.degree() > 0 && 2 * d <= rem.degree(); ++d) {
        Poly w = frobenius_power_t(rem, k * d);
        Poly g = gcd(w - Poly::t(k), rem);
        if (g.degree() > 0) {
            equal_degree_split(g, d, irreducibles, rng);
            rem = rem / g;
        }
    }
    if (rem.degree() > 0) irreducibles.push_back(rem.monic());
    Poly cofactor = f;
    for (const Poly& q : irreducibles) {
        int e = 0;
        while (true) {
            auto [quot, r] = cofactor.divrem(q);
            if (!r.is_zero()) break;
            cofactor = quot;
            ++e;
        }
        auto key = q.str();
        auto it = acc.find(key);
        if (it == acc.end())
            acc.emplace(key, std::make_pair(q, outer_mult * e));
        else
            it->second.second += outer_mult * e;
    }
    // What is left has every multiplicity divisible by 5; recurse (derivative is zero).
    factor_rec(cofactor, outer_mult, acc);
}

}  // namespace

std::vector<std::pair<Poly, int>> factor(const Poly& p) {
    if (p.is_zero()) throw InputError("cannot factor the zero polynomial");
    std::map<std::string, std::pair<Poly, int>> acc;
    factor_rec(p, 1, acc);
    std::vector<std::pair<Poly, int>> out;
    for (auto& [key, v] : acc) out.push_back(v);
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        if (a.first.degree() != b.first.degree()) return a.first.degree() < b.first.degree();
        return a.first.str() < b.first.str();
    });
    return out;
}

namespace {

// Product of the distinct monic irreducible factors (any multiplicities,
// including multiples of 5 where the naive f/gcd(f,f') trick fails).
Poly radical(Poly f) {
    f = f.monic();
    if (f.degree() <= 0) return Poly::constant(Fe::one(f.field()));
    Poly fp = f.derivative();
    if (fp.is_zero()) return radical(fifth_root(f));
    Poly r1 = (f / gcd(f, fp)).monic();
    Poly w = f;
    Poly g = gcd(w, r1);
    while (g.degree() > 0) {
        w = w / g;
        g = gcd(w, r1);
    }
    return (r1 * radical(w)).monic();
}

}  // namespace

std::vector<std::pair<Fe, int>> roots_in_field(const Poly& p, int K) {
    if (p.is_zero()) throw InputError("the zero polynomial has every root");
    if (K % p.field() != 0) throw InputError("root field must contain the coefficient field");
    Poly f = p.field() == K ? p : p.lift(K);
    f = f.monic();
    std::vector<Fe> root_list;
    if (K <= 3) {
        // Exhaustive evaluation over the (tiny) field.
        std::uint64_t size = 1;
        for (int i = 0; i < K; ++i) size *= kChar;
        for (std::uint64_t code = 0; code < size; ++code) {
            std::vector<int> coords(K);
            std::uint64_t c = code;
            for (int i = 0; i < K; ++i) {
                coords[i] = static_cast<int>(c % kChar);
                c /= kChar;
            }
            Fe x(coords, K);
            if (f.eval(x).is_zero()) root_list.push_back(x);
        }
    } else {
        // Equal-degree splitting of the linear part of the radical.
        Poly sq = radical(f);
        Poly w = frobenius_power_t(sq, K);
        Poly lin = gcd(w - Poly::t(K), sq);
        std::vector<Poly> linears;
        if (lin.degree() > 0) {
            std::mt19937_64 rng(0x51F5A11CEULL);
            equal_degree_split(lin, 1, linears, rng);
        }
        for (const Poly& l : linears) root_list.push_back(-l.coeff(0));
    }
    std::vector<std::pair<Fe, int>> roots;
    for (const Fe& r : root_list) {
        Poly l = Poly::t(K) - Poly::constant(r);
        // multiplicity in the original polynomial
        int mult = 0;
        Poly rem = f, d = l.monic();
        while (true) {
            auto [quot, rr] = rem.divrem(d);
            if (!rr.is_zero()) break;
            rem = quot;
            ++mult;
        }
        roots.emplace_back(r, mult);
    }
    std::sort(roots.begin(), roots.end(), [](const auto& a, const auto& b) {
        int da = a.first.degree_over_prime(), db = b.first.degree_over_prime();
        if (da != db) return da < db;
        return a.first.lex_key() < b.first.lex_key();
    });
    return roots;
}

RootsResult roots_with_multiplicity(const Poly& p) {
    if (p.is_zero()) throw InputError("roots of the zero polynomial are undefined");
    auto factors = factor(p);
    long long K = p.field();
    for (const auto& [q, mult] : factors) {
        if (q.degree() < 1) continue;
        K = std::lcm(K, p.field() * q.degree());
    }
    if (K > 12)
        throw InputError("splitting field F_{5^" + std::to_string(K) + "} exceeds the supported bound F_{5^12}");
    RootsResult res;
    res.splitting_degree = static_cast<int>(K);
    res.roots = roots_in_field(p, res.splitting_degree);
    long long total = 0;
    for (const auto& [r, m] : res.roots) total += m;
    if (total != p.degree())
        throw ConsistencyError("root multiplicities do not sum to the degree (splitting failure)");
    return res;
}

}  // namespace qhyp5
