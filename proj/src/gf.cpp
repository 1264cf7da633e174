#include "qhyp5/gf.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <map>
#include <memory>
#include <mutex>
#include <sstream>

namespace qhyp5 {

namespace {

// Dense F_5[x] helpers on int vectors (ascending coefficients, values 0..4).
using Vec = std::vector<int>;

void trim(Vec& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

Vec mul5(const Vec& a, const Vec& b) {
    if (a.empty() || b.empty()) return {};
    Vec r(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % kChar;
    trim(r);
    return r;
}

// Remainder of a by monic m.
Vec mod5(Vec a, const Vec& m) {
    trim(a);
    while (a.size() >= m.size()) {
        int c = a.back();
        size_t shift = a.size() - m.size();
        for (size_t i = 0; i < m.size(); ++i) {
            int& x = a[shift + i];
            x = ((x - c * m[i]) % kChar + kChar) % kChar;
        }
        trim(a);
    }
    return a;
}

Vec powmod5(Vec base, long long e, const Vec& m) {
    Vec r{1};
    base = mod5(std::move(base), m);
    while (e > 0) {
        if (e & 1) r = mod5(mul5(r, base), m);
        base = mod5(mul5(base, base), m);
        e >>= 1;
    }
    return r;
}

Vec gcd5(Vec a, Vec b) {
    trim(a);
    trim(b);
    while (!b.empty()) {
        // Make b monic for the division.
        int inv = 1;
        for (int i = 1; i < kChar; ++i)
            if (b.back() * i % kChar == 1) inv = i;
        Vec bm = b;
        for (int& c : bm) c = c * inv % kChar;
        a = mod5(std::move(a), bm);
        std::swap(a, b);
    }
    return a;
}

bool is_irreducible(const Vec& f) {
    int k = static_cast<int>(f.size()) - 1;
    // x^(5^k) == x mod f, and gcd(x^(5^(k/q)) - x, f) == 1 for primes q | k.
    Vec x{0, 1};
    Vec acc = mod5(x, f);
    for (int i = 0; i < k; ++i) acc = powmod5(acc, kChar, f);
    Vec diff = acc;
    diff.resize(std::max<size_t>(diff.size(), 2), 0);
    diff[1] = ((diff[1] - 1) % kChar + kChar) % kChar;
    trim(diff);
    if (!diff.empty()) return false;
    for (int q = 2; q <= k; ++q) {
        if (k % q != 0) continue;
        bool prime = true;
        for (int d = 2; d * d <= q; ++d)
            if (q % d == 0) prime = false;
        if (!prime) continue;
        Vec y = mod5(x, f);
        for (int i = 0; i < k / q; ++i) y = powmod5(y, kChar, f);
        y.resize(std::max<size_t>(y.size(), 2), 0);
        y[1] = ((y[1] - 1) % kChar + kChar) % kChar;
        trim(y);
        if (gcd5(std::move(y), f).size() > 1) return false;
    }
    return true;
}

std::map<int, Vec> load_field_table_override() {
    std::map<int, Vec> table;
    const char* path = std::getenv("QHYP5_FIELD_TABLE");
    if (!path) return table;
    std::ifstream in(path);
    if (!in) throw InputError(std::string("cannot open QHYP5_FIELD_TABLE file: ") + path);
    std::string line;
    while (std::getline(in, line)) {
        std::istringstream ls(line);
        int k;
        if (!(ls >> k)) continue;
        Vec f;
        int c;
        while (ls >> c) f.push_back(((c % kChar) + kChar) % kChar);
        if (static_cast<int>(f.size()) != k)
            throw InputError("QHYP5_FIELD_TABLE: expected k coefficients for degree " + std::to_string(k));
        f.push_back(1);  // monic
        if (!is_irreducible(f))
            throw InputError("QHYP5_FIELD_TABLE: polynomial for degree " + std::to_string(k) + " is reducible");
        table[k] = f;
    }
    return table;
}

std::mutex g_registry_mutex;
std::array<std::atomic<const GaloisField*>, GaloisField::kMaxDegree + 1>& registry() {
    static std::array<std::atomic<const GaloisField*>, GaloisField::kMaxDegree + 1> r{};
    return r;
}

}  // namespace

GaloisField::GaloisField(int k) : k_(k) {
    static std::map<int, Vec> overrides = load_field_table_override();
    if (auto it = overrides.find(k); it != overrides.end()) {
        defining_ = it->second;
        return;
    }
    if (k == 1) {
        defining_ = {0, 1};  // x
        return;
    }
    // Smallest irreducible x^k + sum c_i x^i in base-5 counting order of (c_0..c_{k-1}).
    std::uint64_t limit = 1;
    for (int i = 0; i < k; ++i) limit *= kChar;
    for (std::uint64_t code = 1; code < limit; ++code) {
        Vec f(k + 1, 0);
        f[k] = 1;
        std::uint64_t c = code;
        for (int i = 0; i < k; ++i) {
            f[i] = static_cast<int>(c % kChar);
            c /= kChar;
        }
        if (is_irreducible(f)) {
            defining_ = f;
            return;
        }
    }
    throw ConsistencyError("no irreducible polynomial found (impossible)");
}

const GaloisField& GaloisField::get(int ext_degree) {
    if (ext_degree < 1 || ext_degree > kMaxDegree)
        throw InputError("extension degree out of range [1," + std::to_string(kMaxDegree) +
                         "]: " + std::to_string(ext_degree));
    std::lock_guard<std::mutex> lock(g_registry_mutex);
    auto& r = registry();
    auto it = r.find(ext_degree);
    if (it == r.end()) it = r.emplace(ext_degree, std::unique_ptr<GaloisField>(new GaloisField(ext_degree))).first;
    return *it->second;
}

Fe::Fe(int value, int ext_degree) : k_(ext_degree), c_(ext_degree, 0) {
    GaloisField::get(ext_degree);
    c_[0] = ((value % kChar) + kChar) % kChar;
}

Fe::Fe(std::vector<int> coords, int ext_degree) : k_(ext_degree), c_(std::move(coords)) {
    GaloisField::get(ext_degree);
    if (static_cast<int>(c_.size()) != k_) throw InputError("coordinate vector size mismatch");
    for (int& x : c_) x = ((x % kChar) + kChar) % kChar;
}

Fe Fe::gen(int ext_degree) {
    if (ext_degree < 2) throw InputError("the generator g requires an extension field (k >= 2)");
    std::vector<int> c(ext_degree, 0);
    c[1] = 1;
    return Fe(std::move(c), ext_degree);
}

bool Fe::is_zero() const {
    return std::all_of(c_.begin(), c_.end(), [](int x) { return x == 0; });
}

void Fe::check_same(const Fe& o) const {
    if (k_ != o.k_)
        throw ConsistencyError("field degree mismatch in element arithmetic: " + std::to_string(k_) + " vs " +
                               std::to_string(o.k_));
}

Fe Fe::operator+(const Fe& o) const {
    check_same(o);
    Fe r = *this;
    for (int i = 0; i < k_; ++i) r.c_[i] = (r.c_[i] + o.c_[i]) % kChar;
    return r;
}

Fe Fe::operator-(const Fe& o) const {
    check_same(o);
    Fe r = *this;
    for (int i = 0; i < k_; ++i) r.c_[i] = ((r.c_[i] - o.c_[i]) % kChar + kChar) % kChar;
    return r;
}

Fe Fe::operator-() const {
    Fe r = *this;
    for (int i = 0; i < k_; ++i) r.c_[i] = (kChar - r.c_[i]) % kChar;
    return r;
}

Fe Fe::operator*(const Fe& o) const {
    check_same(o);
    const auto& f = GaloisField::get(k_).defining();
    Vec prod = mul5(c_, o.c_);
    prod = mod5(std::move(prod), f);
    prod.resize(k_, 0);
    return Fe(std::move(prod), k_);
}

Fe Fe::inverse() const {
    if (is_zero()) throw InputError("division by zero field element");
    // Extended Euclid in F_5[x] against the defining polynomial.
    const auto& f = GaloisField::get(k_).defining();
    Vec r0 = f, r1 = c_;
    trim(r1);
    Vec s0 = {}, s1 = {1};
    while (!r1.empty()) {
        // quotient of r0 by r1
        Vec q;
        Vec rem = r0;
        trim(rem);
        int lead_inv = 1;
        for (int i = 1; i < kChar; ++i)
            if (r1.back() * i % kChar == 1) lead_inv = i;
        if (rem.size() >= r1.size()) q.assign(rem.size() - r1.size() + 1, 0);
        while (rem.size() >= r1.size() && !rem.empty()) {
            int c = rem.back() * lead_inv % kChar;
            size_t shift = rem.size() - r1.size();
            q[shift] = c;
            for (size_t i = 0; i < r1.size(); ++i) {
                int& x = rem[shift + i];
                x = ((x - c * r1[i]) % kChar + kChar) % kChar;
            }
            trim(rem);
        }
        Vec s2 = s0;  // s2 = s0 - q*s1
        Vec qs = mul5(q, s1);
        s2.resize(std::max(s2.size(), qs.size()), 0);
        for (size_t i = 0; i < qs.size(); ++i) s2[i] = ((s2[i] - qs[i]) % kChar + kChar) % kChar;
        trim(s2);
        r0 = r1;
        r1 = rem;
        s0 = s1;
        s1 = s2;
    }
    // r0 is a nonzero constant gcd; scale s0 by its inverse.
    int g = r0.empty() ? 1 : r0[0];
    int ginv = 1;
    for (int i = 1; i < kChar; ++i)
        if (g * i % kChar == 1) ginv = i;
    for (int& x : s0) x = x * ginv % kChar;
    s0.resize(k_, 0);
    return Fe(std::move(s0), k_);
}

Fe Fe::operator/(const Fe& o) const { return *this * o.inverse(); }

Fe Fe::pow(long long e) const {
    if (e < 0) return inverse().pow(-e);
    Fe r = Fe::one(k_), b = *this;
    while (e > 0) {
        if (e & 1) r = r * b;
        b = b * b;
        e >>= 1;
    }
    return r;
}

Fe Fe::frobenius() const { return pow(kChar); }

Fe Fe::fifth_root() const {
    Fe r = *this;
    for (int i = 0; i < k_ - 1; ++i) r = r.frobenius();
    return r;
}

int Fe::degree_over_prime() const {
    for (int j = 1; j <= k_; ++j) {
        if (k_ % j != 0) continue;
        Fe img = *this;
        for (int i = 0; i < j; ++i) img = img.frobenius();
        if (img == *this) return j;
    }
    return k_;
}

std::uint64_t Fe::lex_key() const {
    std::uint64_t key = 0, p = 1;
    for (int i = 0; i < k_; ++i) {
        key += static_cast<std::uint64_t>(c_[i]) * p;
        p *= kChar;
    }
    return key;
}

bool Fe::operator<(const Fe& o) const {
    if (k_ != o.k_) return k_ < o.k_;
    return lex_key() < o.lex_key();
}

std::string Fe::str() const {
    if (is_zero()) return "0";
    std::string out;
    for (int i = k_ - 1; i >= 0; --i) {
        if (c_[i] == 0) continue;
        if (!out.empty()) out += "+";
        if (i == 0) {
            out += std::to_string(c_[i]);
        } else {
            if (c_[i] != 1) out += std::to_string(c_[i]) + "*";
            out += (i == 1) ? "g" : ("g^" + std::to_string(i));
        }
    }
    return out;
}

}  // namespace qhyp5
