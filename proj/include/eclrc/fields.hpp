#pragma once

#include <algorithm>
#include <cstdint>
#include <memory>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "eclrc/errors.hpp"

namespace eclrc {

class Field;
using FieldPtr = std::shared_ptr<const Field>;

namespace detail {

inline bool is_prime_u64(uint64_t n) {
    if (n < 2) return false;
    for (uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

// Dense polynomials over F_p as coefficient vectors (low degree first),
// used only for modulus search and table bootstrap.
using PPoly = std::vector<uint32_t>;

inline void ppoly_trim(PPoly& f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
}

inline PPoly ppoly_mulmod(const PPoly& f, const PPoly& g, const PPoly& mod, uint64_t p) {
    if (f.empty() || g.empty()) return {};
    PPoly r(f.size() + g.size() - 1, 0);
    for (size_t i = 0; i < f.size(); ++i) {
        if (f[i] == 0) continue;
        for (size_t j = 0; j < g.size(); ++j)
            r[i + j] = static_cast<uint32_t>((r[i + j] + uint64_t(f[i]) * g[j]) % p);
    }
    const size_t d = mod.size() - 1;  // mod is monic of degree d
    for (size_t i = r.size(); i-- > d;) {
        const uint64_t c = r[i];
        if (c == 0) continue;
        r[i] = 0;
        for (size_t j = 0; j < d; ++j) {
            uint64_t sub = (c * mod[j]) % p;
            r[i - d + j] = static_cast<uint32_t>((r[i - d + j] + p - sub) % p);
        }
    }
    r.resize(d);
    ppoly_trim(r);
    return r;
}

inline PPoly ppoly_powmod(PPoly base, uint64_t e, const PPoly& mod, uint64_t p) {
    PPoly r{1};
    while (e > 0) {
        if (e & 1) r = ppoly_mulmod(r, base, mod, p);
        base = ppoly_mulmod(base, base, mod, p);
        e >>= 1;
    }
    return r;
}

inline PPoly ppoly_gcd(PPoly a, PPoly b, uint64_t p) {
    ppoly_trim(a);
    ppoly_trim(b);
    while (!b.empty()) {
        // a mod b with b made monic on the fly
        PPoly bb = b;
        uint64_t lc = bb.back();
        // lc^-1 mod p by Fermat
        uint64_t inv = 1, base = lc, e = p - 2;
        while (e) {
            if (e & 1) inv = (inv * base) % p;
            base = (base * base) % p;
            e >>= 1;
        }
        for (auto& c : bb) c = static_cast<uint32_t>((uint64_t(c) * inv) % p);
        PPoly r = a;
        while (r.size() >= bb.size() && !r.empty()) {
            uint64_t c = r.back();
            if (c != 0) {
                size_t shift = r.size() - bb.size();
                for (size_t j = 0; j < bb.size(); ++j)
                    r[shift + j] = static_cast<uint32_t>((r[shift + j] + p - (c * bb[j]) % p) % p);
            }
            r.pop_back();
            ppoly_trim(r);
            if (r.size() < bb.size()) break;
        }
        a = b;
        b = r;
        ppoly_trim(b);
    }
    return a;
}

// Rabin test: f (monic, degree a) is irreducible over F_p iff
// x^(p^a) == x mod f and gcd(x^(p^(a/l)) - x, f) = 1 for every prime l | a.
inline bool ppoly_irreducible(const PPoly& f, uint64_t p) {
    const size_t a = f.size() - 1;
    if (a == 0) return false;
    if (a == 1) return true;
    auto pow_u64 = [](uint64_t b, unsigned e) {
        uint64_t r = 1;
        while (e--) r *= b;
        return r;
    };
    PPoly x{0, 1};
    PPoly xq = ppoly_powmod(x, pow_u64(p, static_cast<unsigned>(a)), f, p);
    // x^(p^a) - x must vanish mod f
    PPoly diff = xq;
    if (diff.size() < 2) diff.resize(2, 0);
    diff[1] = static_cast<uint32_t>((diff[1] + p - 1) % p);
    ppoly_trim(diff);
    if (!diff.empty()) return false;
    size_t n = a;
    for (size_t l = 2; l * l <= n; ++l) {
        if (n % l) continue;
        while (n % l == 0) n /= l;
        PPoly xe = ppoly_powmod(x, pow_u64(p, static_cast<unsigned>(a / l)), f, p);
        PPoly d = xe;
        if (d.size() < 2) d.resize(2, 0);
        d[1] = static_cast<uint32_t>((d[1] + p - 1) % p);
        PPoly g = ppoly_gcd(f, d, p);
        if (g.size() != 1) return false;
    }
    if (n > 1) {
        PPoly xe = ppoly_powmod(x, pow_u64(p, static_cast<unsigned>(a / n)), f, p);
        PPoly d = xe;
        if (d.size() < 2) d.resize(2, 0);
        d[1] = static_cast<uint32_t>((d[1] + p - 1) % p);
        PPoly g = ppoly_gcd(f, d, p);
        if (g.size() != 1) return false;
    }
    return true;
}

}  // namespace detail

class FieldElement;

/// Arithmetic in F_{p^a} with elements packed as the index sum(c_i p^i) of
/// their residue-class polynomial coefficients (low degree first). Index 0 is
/// zero, index 1 is one, and the index order is the canonical element order.
/// All state is immutable after construction; operations are pure.
class Field : public std::enable_shared_from_this<Field> {
   public:
    /// Builds F_{p^a} with the lexicographically smallest monic irreducible
    /// modulus (coefficients compared low-to-high as a tuple).
    static FieldPtr create(uint64_t p, unsigned a) {
        if (!detail::is_prime_u64(p)) fail(errc::not_prime, "p = " + std::to_string(p) + " is not prime");
        if (a < 1) fail(errc::range_error, "exponent must be positive");
        long double qf = 1;
        for (unsigned i = 0; i < a; ++i) qf *= static_cast<long double>(p);
        if (qf > 4294967296.0L) fail(errc::too_large, "p^a exceeds 2^32");
        uint64_t q = 1;
        for (unsigned i = 0; i < a; ++i) q *= p;

        // Scan monic candidates x^a + c_{a-1}x^{a-1} + ... + c_0 in tuple-lex
        // order on (c_0, ..., c_{a-1}).
        detail::PPoly mod(a + 1, 0);
        mod[a] = 1;
        bool found = false;
        for (uint64_t n = 0; n < q && !found; ++n) {
            // n's base-p digits fill c_0 (most significant) down to c_{a-1},
            // so candidates appear in tuple-lex order on (c_0, ..., c_{a-1})
            uint64_t v = n;
            for (unsigned j = a; j-- > 0;) {
                mod[j] = static_cast<uint32_t>(v % p);
                v /= p;
            }
            if (detail::ppoly_irreducible(mod, p)) found = true;
        }
        if (!found) fail(errc::not_found, "no irreducible modulus found");  // cannot happen
        return FieldPtr(new Field(p, a, q, std::move(mod)));
    }

    uint64_t p() const { return p_; }
    unsigned a() const { return a_; }
    uint64_t q() const { return q_; }
    const std::vector<uint32_t>& modulus() const { return modulus_; }

    bool same(const Field& other) const {
        return this == &other || (p_ == other.p_ && a_ == other.a_ && modulus_ == other.modulus_);
    }

    // --- index-level arithmetic -------------------------------------------

    uint64_t add(uint64_t x, uint64_t y) const {
        if (p_ == 2) return x ^ y;
        uint64_t r = 0, w = 1;
        while (x || y) {
            r += w * ((x % p_ + y % p_) % p_);
            x /= p_;
            y /= p_;
            w *= p_;
        }
        return r;
    }

    uint64_t neg(uint64_t x) const {
        if (p_ == 2) return x;
        uint64_t r = 0, w = 1;
        while (x) {
            uint64_t d = x % p_;
            r += w * (d ? p_ - d : 0);
            x /= p_;
            w *= p_;
        }
        return r;
    }

    uint64_t sub(uint64_t x, uint64_t y) const { return add(x, neg(y)); }

    uint64_t mul(uint64_t x, uint64_t y) const {
        if (x == 0 || y == 0) return 0;
        if (tables_) {
            uint64_t e = log_[x] + log_[y];
            if (e >= q_ - 1) e -= q_ - 1;
            return exp_[e];
        }
        return mul_generic(x, y);
    }

    uint64_t inv(uint64_t x) const {
        if (x == 0) fail(errc::division_by_zero, "inverse of zero");
        if (tables_) {
            uint64_t e = log_[x];
            return exp_[e == 0 ? 0 : q_ - 1 - e];
        }
        return pow(x, q_ - 2);
    }

    uint64_t div(uint64_t x, uint64_t y) const {
        if (y == 0) fail(errc::division_by_zero, "division by zero");
        return mul(x, inv(y));
    }

    uint64_t pow(uint64_t x, uint64_t e) const {
        if (x == 0) return e == 0 ? 1 : 0;
        if (tables_) {
            uint64_t le = (static_cast<unsigned __int128>(log_[x]) * (e % (q_ - 1))) % (q_ - 1);
            return exp_[le];
        }
        uint64_t r = 1;
        e %= (q_ - 1);  // x != 0, multiplicative order divides q-1
        while (e) {
            if (e & 1) r = mul_generic(r, x);
            x = mul_generic(x, x);
            e >>= 1;
        }
        return r;
    }

    /// Integer literal n reduced into the prime subfield.
    uint64_t from_int(int64_t n) const {
        int64_t m = n % static_cast<int64_t>(p_);
        if (m < 0) m += static_cast<int64_t>(p_);
        return static_cast<uint64_t>(m);
    }

    std::vector<uint32_t> coeffs(uint64_t v) const {
        std::vector<uint32_t> c(a_, 0);
        for (unsigned i = 0; i < a_ && v; ++i) {
            c[i] = static_cast<uint32_t>(v % p_);
            v /= p_;
        }
        return c;
    }

    uint64_t from_coeffs(const std::vector<uint32_t>& c) const {
        if (c.size() != a_) fail(errc::format_error, "coefficient list has wrong length");
        uint64_t v = 0, w = 1;
        for (unsigned i = 0; i < a_; ++i) {
            if (c[i] >= p_) fail(errc::format_error, "coefficient out of range");
            v += w * c[i];
            w *= p_;
        }
        return v;
    }

    FieldElement make(uint64_t v) const;
    FieldElement zero() const;
    FieldElement one() const;

   private:
    Field(uint64_t p, unsigned a, uint64_t q, detail::PPoly mod)
        : p_(p), a_(a), q_(q), modulus_(std::move(mod)) {
        if (q_ <= kTableLimit) build_tables();
    }

    static constexpr uint64_t kTableLimit = uint64_t(1) << 20;

    uint64_t mul_generic(uint64_t x, uint64_t y) const {
        detail::PPoly fx, fy;
        for (uint64_t v = x; v; v /= p_) fx.push_back(static_cast<uint32_t>(v % p_));
        for (uint64_t v = y; v; v /= p_) fy.push_back(static_cast<uint32_t>(v % p_));
        detail::PPoly r = detail::ppoly_mulmod(fx, fy, modulus_, p_);
        uint64_t out = 0, w = 1;
        for (auto c : r) {
            out += w * c;
            w *= p_;
        }
        return out;
    }

    void build_tables() {
        // find a generator of F_q^* by checking element indices in order
        std::vector<uint64_t> primes;
        uint64_t m = q_ - 1;
        for (uint64_t d = 2; d * d <= m; ++d) {
            if (m % d) continue;
            primes.push_back(d);
            while (m % d == 0) m /= d;
        }
        if (m > 1) primes.push_back(m);
        uint64_t g = 0;
        for (uint64_t cand = q_ >= 2 ? 1 : 0; cand < q_; ++cand) {
            if (cand == 0) continue;
            bool ok = cand != 1 || q_ == 2;
            for (uint64_t f : primes) {
                uint64_t r = 1, b = cand, e = (q_ - 1) / f;
                while (e) {
                    if (e & 1) r = mul_generic(r, b);
                    b = mul_generic(b, b);
                    e >>= 1;
                }
                if (r == 1) {
                    ok = false;
                    break;
                }
            }
            if (ok) {
                g = cand;
                break;
            }
        }
        exp_.resize(q_ - 1);
        log_.assign(q_, 0);
        uint64_t v = 1;
        for (uint64_t i = 0; i < q_ - 1; ++i) {
            exp_[i] = v;
            log_[v] = i;
            v = mul_generic(v, g);
        }
        tables_ = true;
    }

    uint64_t p_;
    unsigned a_;
    uint64_t q_;
    detail::PPoly modulus_;
    bool tables_ = false;
    std::vector<uint64_t> exp_, log_;
};

/// Value in a fixed F_{p^a}; the Field must outlive its elements (owners keep
/// the FieldPtr). Two elements compare equal iff their packed indices agree.
class FieldElement {
   public:
    FieldElement() : f_(nullptr), v_(0) {}
    FieldElement(const Field* f, uint64_t v) : f_(f), v_(v) {}

    const Field* field() const { return f_; }
    uint64_t index() const { return v_; }
    std::vector<uint32_t> coeffs() const { return f_->coeffs(v_); }
    bool is_zero() const { return v_ == 0; }

    friend FieldElement operator+(const FieldElement& x, const FieldElement& y) {
        check(x, y);
        return {x.f_, x.f_->add(x.v_, y.v_)};
    }
    friend FieldElement operator-(const FieldElement& x, const FieldElement& y) {
        check(x, y);
        return {x.f_, x.f_->sub(x.v_, y.v_)};
    }
    friend FieldElement operator*(const FieldElement& x, const FieldElement& y) {
        check(x, y);
        return {x.f_, x.f_->mul(x.v_, y.v_)};
    }
    friend FieldElement operator/(const FieldElement& x, const FieldElement& y) {
        check(x, y);
        return {x.f_, x.f_->div(x.v_, y.v_)};
    }
    FieldElement operator-() const { return {f_, f_->neg(v_)}; }
    FieldElement inverse() const { return {f_, f_->inv(v_)}; }
    FieldElement pow(uint64_t e) const { return {f_, f_->pow(v_, e)}; }

    friend bool operator==(const FieldElement& x, const FieldElement& y) {
        check(x, y);
        return x.v_ == y.v_;
    }
    friend bool operator!=(const FieldElement& x, const FieldElement& y) { return !(x == y); }
    friend bool operator<(const FieldElement& x, const FieldElement& y) {
        check(x, y);
        return x.v_ < y.v_;
    }

    friend std::ostream& operator<<(std::ostream& os, const FieldElement& x) {
        auto c = x.coeffs();
        bool first = true;
        for (size_t i = c.size(); i-- > 0;) {
            if (c[i] == 0) continue;
            if (!first) os << "+";
            if (i == 0 || c[i] != 1) os << c[i];
            if (i >= 1) os << "g";
            if (i >= 2) os << "^" << i;
            first = false;
        }
        if (first) os << "0";
        return os;
    }

   private:
    static void check(const FieldElement& x, const FieldElement& y) {
        if (!x.f_ || !y.f_ || !x.f_->same(*y.f_)) fail(errc::mixed_fields, "operands from different fields");
    }
    const Field* f_;
    uint64_t v_;
};

inline FieldElement Field::make(uint64_t v) const { return FieldElement(this, v % q_); }
inline FieldElement Field::zero() const { return FieldElement(this, 0); }
inline FieldElement Field::one() const { return FieldElement(this, 1); }

/// All q elements in canonical index order (zero first, then one).
inline std::vector<FieldElement> all_elements(const Field& f) {
    std::vector<FieldElement> out;
    out.reserve(f.q());
    for (uint64_t v = 0; v < f.q(); ++v) out.emplace_back(&f, v);
    return out;
}

/// Roots of c2 y^2 + c1 y + c0 = 0 by exhaustive scan, in index order.
/// Acceptable for the desk-scale q this library targets.
inline std::vector<uint64_t> solve_univariate_quadratic_idx(const Field& f, uint64_t c2, uint64_t c1,
                                                            uint64_t c0) {
    if (c2 == 0 && c1 == 0) {
        if (c0 == 0) fail(errc::degenerate_all_zero, "all coefficients zero: every y is a root");
        return {};
    }
    std::vector<uint64_t> roots;
    for (uint64_t y = 0; y < f.q(); ++y) {
        uint64_t v = f.add(f.mul(c2, f.mul(y, y)), f.add(f.mul(c1, y), c0));
        if (v == 0) roots.push_back(y);
    }
    return roots;
}

inline std::vector<FieldElement> solve_univariate_quadratic(const FieldElement& c2, const FieldElement& c1,
                                                            const FieldElement& c0) {
    const Field& f = *c2.field();
    std::vector<FieldElement> out;
    for (uint64_t v : solve_univariate_quadratic_idx(f, c2.index(), c1.index(), c0.index()))
        out.push_back(f.make(v));
    return out;
}

/// { u in F_q^* : u^n = 1 }; the set has size gcd(n, q-1).
inline std::vector<FieldElement> roots_of_unity(const Field& f, uint64_t n) {
    std::vector<FieldElement> out;
    for (uint64_t v = 1; v < f.q(); ++v)
        if (f.pow(v, n) == 1) out.emplace_back(&f, v);
    return out;
}

}  // namespace eclrc
