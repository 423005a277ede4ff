#pragma once

#include <cstdint>
#include <vector>

#include "eclrc/fields.hpp"

namespace eclrc {

/// Dense univariate polynomial over a fixed Field, coefficients stored as
/// packed element indices, low degree first, no trailing zeros.
struct Poly {
    std::vector<uint64_t> c;

    bool is_zero() const { return c.empty(); }
    int deg() const { return static_cast<int>(c.size()) - 1; }  // deg(0) == -1
    uint64_t lead() const { return c.empty() ? 0 : c.back(); }
    uint64_t coeff(size_t i) const { return i < c.size() ? c[i] : 0; }
};

inline void poly_trim(Poly& f) {
    while (!f.c.empty() && f.c.back() == 0) f.c.pop_back();
}

inline Poly poly_const(uint64_t v) { return v ? Poly{{v}} : Poly{}; }
inline Poly poly_x() { return Poly{{0, 1}}; }

inline Poly poly_add(const Field& F, const Poly& a, const Poly& b) {
    Poly r;
    r.c.resize(std::max(a.c.size(), b.c.size()), 0);
    for (size_t i = 0; i < r.c.size(); ++i) r.c[i] = F.add(a.coeff(i), b.coeff(i));
    poly_trim(r);
    return r;
}

inline Poly poly_neg(const Field& F, const Poly& a) {
    Poly r = a;
    for (auto& v : r.c) v = F.neg(v);
    return r;
}

inline Poly poly_sub(const Field& F, const Poly& a, const Poly& b) { return poly_add(F, a, poly_neg(F, b)); }

inline Poly poly_scale(const Field& F, const Poly& a, uint64_t s) {
    if (s == 0) return {};
    Poly r = a;
    for (auto& v : r.c) v = F.mul(v, s);
    return r;
}

inline Poly poly_mul(const Field& F, const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    Poly r;
    r.c.assign(a.c.size() + b.c.size() - 1, 0);
    for (size_t i = 0; i < a.c.size(); ++i) {
        if (a.c[i] == 0) continue;
        for (size_t j = 0; j < b.c.size(); ++j)
            r.c[i + j] = F.add(r.c[i + j], F.mul(a.c[i], b.c[j]));
    }
    return r;
}

/// Quotient and remainder; divisor must be nonzero.
inline std::pair<Poly, Poly> poly_divmod(const Field& F, Poly a, const Poly& b) {
    if (b.is_zero()) fail(errc::division_by_zero, "polynomial division by zero");
    Poly q;
    if (a.c.size() >= b.c.size()) q.c.assign(a.c.size() - b.c.size() + 1, 0);
    const uint64_t inv_lead = F.inv(b.lead());
    while (!a.is_zero() && a.c.size() >= b.c.size()) {
        const size_t shift = a.c.size() - b.c.size();
        const uint64_t coef = F.mul(a.lead(), inv_lead);
        q.c[shift] = coef;
        for (size_t i = 0; i < b.c.size(); ++i)
            a.c[shift + i] = F.sub(a.c[shift + i], F.mul(coef, b.c[i]));
        poly_trim(a);
    }
    poly_trim(q);
    return {q, a};
}

inline Poly poly_mod(const Field& F, const Poly& a, const Poly& b) { return poly_divmod(F, a, b).second; }

inline Poly poly_monic(const Field& F, const Poly& a) {
    if (a.is_zero() || a.lead() == 1) return a;
    return poly_scale(F, a, F.inv(a.lead()));
}

/// Monic gcd.
inline Poly poly_gcd(const Field& F, Poly a, Poly b) {
    while (!b.is_zero()) {
        Poly r = poly_mod(F, a, b);
        a = b;
        b = r;
    }
    return poly_monic(F, a);
}

inline uint64_t poly_eval(const Field& F, const Poly& a, uint64_t x) {
    uint64_t r = 0;
    for (size_t i = a.c.size(); i-- > 0;) r = F.add(F.mul(r, x), a.c[i]);
    return r;
}

inline Poly poly_pow(const Field& F, Poly base, uint64_t e) {
    Poly r = poly_const(1);
    while (e) {
        if (e & 1) r = poly_mul(F, r, base);
        base = poly_mul(F, base, base);
        e >>= 1;
    }
    return r;
}

/// Multiplicity of x0 as a root of f.
inline unsigned poly_root_multiplicity(const Field& F, Poly f, uint64_t x0) {
    unsigned m = 0;
    Poly lin{{F.neg(x0), 1}};
    while (!f.is_zero() && poly_eval(F, f, x0) == 0) {
        f = poly_divmod(F, f, lin).first;
        ++m;
    }
    return m;
}

inline bool operator==(const Poly& a, const Poly& b) { return a.c == b.c; }
inline bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

}  // namespace eclrc
