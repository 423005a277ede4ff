#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "eclrc/fields.hpp"

namespace eclrc {

/// Long Weierstrass model y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6.
/// Coefficients are packed element indices over `field`.
struct CurveSpec {
    FieldPtr field;
    uint64_t a1 = 0, a2 = 0, a3 = 0, a4 = 0, a6 = 0;

    const Field& F() const { return *field; }

    /// x^3 + a2 x^2 + a4 x + a6
    uint64_t rhs(uint64_t x) const {
        const Field& f = *field;
        uint64_t x2 = f.mul(x, x);
        return f.add(f.add(f.mul(x2, x), f.mul(a2, x2)), f.add(f.mul(a4, x), a6));
    }

    /// y^2 + a1 xy + a3 y - rhs(x); zero iff (x, y) lies on the curve.
    uint64_t equation(uint64_t x, uint64_t y) const {
        const Field& f = *field;
        uint64_t lhs = f.add(f.mul(y, y), f.mul(y, f.add(f.mul(a1, x), a3)));
        return f.sub(lhs, rhs(x));
    }

    friend bool operator==(const CurveSpec& a, const CurveSpec& b) {
        return a.field->same(*b.field) && a.a1 == b.a1 && a.a2 == b.a2 && a.a3 == b.a3 && a.a4 == b.a4 &&
               a.a6 == b.a6;
    }
};

/// Rational point: the point at infinity O or an affine pair. O sorts first;
/// affine points sort by (x, y) element order.
struct Point {
    bool inf = true;
    uint64_t x = 0, y = 0;

    static Point infinity() { return Point{}; }
    static Point affine(uint64_t x, uint64_t y) { return Point{false, x, y}; }

    friend bool operator==(const Point& a, const Point& b) {
        if (a.inf || b.inf) return a.inf == b.inf;
        return a.x == b.x && a.y == b.y;
    }
    friend bool operator!=(const Point& a, const Point& b) { return !(a == b); }
    friend bool operator<(const Point& a, const Point& b) {
        if (a.inf != b.inf) return a.inf;
        if (a.x != b.x) return a.x < b.x;
        return a.y < b.y;
    }
};

inline bool point_on_curve(const CurveSpec& E, const Point& P) {
    return P.inf || E.equation(P.x, P.y) == 0;
}

/// Discriminant and j-invariant of the model; j is absent for singular input.
inline std::pair<FieldElement, std::optional<FieldElement>> discriminant_and_j(const CurveSpec& E) {
    const Field& f = E.F();
    auto I = [&](int64_t n) { return f.from_int(n); };
    uint64_t b2 = f.add(f.mul(E.a1, E.a1), f.mul(I(4), E.a2));
    uint64_t b4 = f.add(f.mul(I(2), E.a4), f.mul(E.a1, E.a3));
    uint64_t b6 = f.add(f.mul(E.a3, E.a3), f.mul(I(4), E.a6));
    uint64_t b8 = f.add(f.add(f.mul(f.mul(E.a1, E.a1), E.a6), f.mul(f.mul(I(4), E.a2), E.a6)),
                        f.add(f.sub(f.mul(E.a2, f.mul(E.a3, E.a3)), f.mul(E.a1, f.mul(E.a3, E.a4))),
                              f.neg(f.mul(E.a4, E.a4))));
    uint64_t disc = f.add(f.sub(f.neg(f.mul(f.mul(b2, b2), b8)), f.mul(I(8), f.mul(b4, f.mul(b4, b4)))),
                          f.add(f.neg(f.mul(I(27), f.mul(b6, b6))), f.mul(I(9), f.mul(b2, f.mul(b4, b6)))));
    if (disc == 0) return {f.make(0), std::nullopt};
    uint64_t c4 = f.sub(f.mul(b2, b2), f.mul(I(24), b4));
    uint64_t j = f.div(f.mul(c4, f.mul(c4, c4)), disc);
    return {f.make(disc), f.make(j)};
}

inline bool is_nonsingular(const CurveSpec& E) { return discriminant_and_j(E).first.index() != 0; }

inline uint64_t isqrt_u64(uint64_t n) {
    uint64_t r = static_cast<uint64_t>(std::sqrt(static_cast<double>(n)));
    while (r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    return r;
}

/// All rational points: O first, affine points sorted by (x, y), found
/// x-slice by x-slice through the quadratic solver. Asserts Hasse-Weil.
inline std::vector<Point> enumerate_points(const CurveSpec& E) {
    if (!is_nonsingular(E)) fail(errc::singular_curve, "curve has zero discriminant");
    const Field& f = E.F();
    std::vector<Point> pts;
    pts.push_back(Point::infinity());
    for (uint64_t x = 0; x < f.q(); ++x) {
        uint64_t c1 = f.add(f.mul(E.a1, x), E.a3);
        uint64_t c0 = f.neg(E.rhs(x));
        for (uint64_t y : solve_univariate_quadratic_idx(f, 1, c1, c0)) pts.push_back(Point::affine(x, y));
    }
    int64_t excess = static_cast<int64_t>(pts.size()) - static_cast<int64_t>(f.q()) - 1;
    if (excess * excess > static_cast<int64_t>(4 * f.q()))
        fail(errc::hasse_weil_violation, "point count violates the Hasse-Weil bound");
    return pts;
}

inline Point curve_neg(const CurveSpec& E, const Point& P) {
    if (P.inf) return P;
    if (!point_on_curve(E, P)) fail(errc::point_not_on_curve, "negation of a point off the curve");
    const Field& f = E.F();
    return Point::affine(P.x, f.sub(f.neg(P.y), f.add(f.mul(E.a1, P.x), E.a3)));
}

/// Chord-tangent addition on the long Weierstrass model.
inline Point curve_add(const CurveSpec& E, const Point& P, const Point& Q) {
    if (!point_on_curve(E, P) || !point_on_curve(E, Q))
        fail(errc::point_not_on_curve, "addition of a point off the curve");
    if (P.inf) return Q;
    if (Q.inf) return P;
    const Field& f = E.F();
    if (Q == curve_neg(E, P)) return Point::infinity();
    uint64_t lam, nu;
    if (P.x != Q.x) {
        uint64_t dx = f.sub(Q.x, P.x);
        lam = f.div(f.sub(Q.y, P.y), dx);
        nu = f.div(f.sub(f.mul(P.y, Q.x), f.mul(Q.y, P.x)), dx);
    } else {
        // P == Q here: the remaining same-x case was P + (-P) above
        uint64_t den = f.add(f.add(P.y, P.y), f.add(f.mul(E.a1, P.x), E.a3));
        uint64_t x2 = f.mul(P.x, P.x);
        lam = f.div(f.sub(f.add(f.add(f.add(x2, x2), f.add(x2, f.mul(f.add(E.a2, E.a2), P.x))), E.a4),
                          f.mul(E.a1, P.y)),
                    den);
        nu = f.div(f.sub(f.add(f.neg(f.mul(x2, P.x)), f.add(f.mul(E.a4, P.x), f.add(E.a6, E.a6))),
                         f.mul(E.a3, P.y)),
                   den);
    }
    uint64_t x3 = f.sub(f.sub(f.add(f.mul(lam, lam), f.mul(E.a1, lam)), E.a2), f.add(P.x, Q.x));
    uint64_t y3 = f.sub(f.sub(f.neg(f.mul(f.add(lam, E.a1), x3)), nu), E.a3);
    return Point::affine(x3, y3);
}

inline Point curve_mul(const CurveSpec& E, Point P, uint64_t n) {
    Point R = Point::infinity();
    while (n) {
        if (n & 1) R = curve_add(E, R, P);
        P = curve_add(E, P, P);
        n >>= 1;
    }
    return R;
}

inline size_t point_count(const CurveSpec& E) { return enumerate_points(E).size(); }

/// t = q + 1 - N.
inline int64_t trace(const CurveSpec& E) {
    return static_cast<int64_t>(E.F().q()) + 1 - static_cast<int64_t>(point_count(E));
}

inline void require_square_q(const Field& f) {
    uint64_t s = isqrt_u64(f.q());
    if (s * s != f.q()) fail(errc::not_a_square, "q is not a square");
}

inline bool is_maximal(const CurveSpec& E) {
    require_square_q(E.F());
    return trace(E) == -2 * static_cast<int64_t>(isqrt_u64(E.F().q()));
}

inline bool is_minimal(const CurveSpec& E) {
    require_square_q(E.F());
    return trace(E) == 2 * static_cast<int64_t>(isqrt_u64(E.F().q()));
}

enum class CurveFamily { char2_basic, char2_twist, char3_lemma214, p3mod4_lemma214, p2mod3_lemma215 };

inline const char* family_name(CurveFamily f) {
    switch (f) {
        case CurveFamily::char2_basic: return "char2_basic";
        case CurveFamily::char2_twist: return "char2_twist";
        case CurveFamily::char3_lemma214: return "char3_lemma214";
        case CurveFamily::p3mod4_lemma214: return "p3mod4_lemma214";
        case CurveFamily::p2mod3_lemma215: return "p2mod3_lemma215";
    }
    return "?";
}

/// A maximal curve from the explicit catalog, with its count re-verified by
/// enumeration (never trusted from theory).
struct CurveCatalogEntry {
    CurveSpec curve;
    CurveFamily family;
    uint64_t param = 0;  // gamma (char 2 twist) or theta, as element index
    uint64_t expected_count = 0;
};

inline bool is_square_in(const Field& f, uint64_t v) {
    if (v == 0) return true;
    return f.pow(v, (f.q() - 1) / 2) == 1;  // odd q only
}

inline uint64_t smallest_nonsquare(const Field& f) {
    for (uint64_t v = 1; v < f.q(); ++v)
        if (!is_square_in(f, v)) return v;
    fail(errc::not_found, "no non-square found");  // impossible for q odd > 1
}

namespace detail {

inline CurveCatalogEntry make_catalog_entry(const FieldPtr& field, CurveFamily fam) {
    const Field& f = *field;
    const bool a_mod4_0 = (f.a() % 4 == 0);
    CurveCatalogEntry e;
    e.family = fam;
    e.curve.field = field;
    switch (fam) {
        case CurveFamily::char2_basic:
            e.curve.a3 = 1;  // y^2 + y = x^3
            e.param = 0;
            break;
        case CurveFamily::char2_twist: {
            // gamma: smallest element outside {b^2 + b}
            std::vector<bool> image(f.q(), false);
            for (uint64_t b = 0; b < f.q(); ++b) image[f.add(f.mul(b, b), b)] = true;
            uint64_t gamma = 0;
            while (gamma < f.q() && image[gamma]) ++gamma;
            if (gamma == f.q()) fail(errc::not_found, "no twist parameter found");
            e.curve.a3 = 1;
            e.curve.a6 = gamma;  // y^2 + y = x^3 + gamma
            e.param = gamma;
            break;
        }
        case CurveFamily::char3_lemma214:
        case CurveFamily::p3mod4_lemma214: {
            uint64_t theta = a_mod4_0 ? smallest_nonsquare(f) : 1;
            e.curve.a4 = f.mul(theta, theta);  // y^2 = x^3 + theta^2 x
            e.param = theta;
            break;
        }
        case CurveFamily::p2mod3_lemma215: {
            uint64_t theta = a_mod4_0 ? smallest_nonsquare(f) : 1;
            e.curve.a6 = f.mul(theta, f.mul(theta, theta));  // y^2 = x^3 + theta^3
            e.param = theta;
            break;
        }
    }
    return e;
}

}  // namespace detail

/// The catalog families applicable to this field, canonical order. The first
/// entry is the canonical maximal curve; later entries cover localities whose
/// subgroup lives only in the alternate family (p = 11 mod 12).
inline std::vector<CurveCatalogEntry> maximal_curve_candidates(const FieldPtr& field) {
    const Field& f = *field;
    if (f.a() % 2 != 0) fail(errc::unsupported_characteristic, "catalog requires an even exponent a");
    std::vector<CurveFamily> fams;
    if (f.p() == 2) {
        fams.push_back(f.a() % 4 == 2 ? CurveFamily::char2_basic : CurveFamily::char2_twist);
    } else if (f.p() == 3) {
        fams.push_back(CurveFamily::char3_lemma214);
    } else {
        if (f.p() % 4 == 3) fams.push_back(CurveFamily::p3mod4_lemma214);
        if (f.p() % 3 == 2) fams.push_back(CurveFamily::p2mod3_lemma215);
    }
    if (fams.empty())
        fail(errc::unsupported_characteristic,
             "no catalog family for p = " + std::to_string(f.p()) + " (need p=2, p=3, p=3 mod 4 or p=2 mod 3)");
    std::vector<CurveCatalogEntry> out;
    for (CurveFamily fam : fams) {
        CurveCatalogEntry e = detail::make_catalog_entry(field, fam);
        uint64_t s = isqrt_u64(f.q());
        e.expected_count = f.q() + 1 + 2 * s;
        size_t n = point_count(e.curve);
        if (n != e.expected_count)
            fail(errc::catalog_verification_failed,
                 "catalog curve has " + std::to_string(n) + " points, expected " +
                     std::to_string(e.expected_count));
        out.push_back(std::move(e));
    }
    return out;
}

inline CurveCatalogEntry maximal_curve(const FieldPtr& field) { return maximal_curve_candidates(field).front(); }

}  // namespace eclrc
