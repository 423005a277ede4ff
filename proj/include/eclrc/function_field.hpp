#pragma once

#include <map>
#include <optional>
#include <vector>

#include "eclrc/automorphisms.hpp"
#include "eclrc/curves.hpp"
#include "eclrc/linalg.hpp"
#include "eclrc/polynomials.hpp"

namespace eclrc {

/// Element of the elliptic function field E = F_q(x, y) in the canonical form
/// (g0(x) + g1(x) y) / h(x): y^2 is always eliminated through the curve
/// relation, h is monic, and the common polynomial content is cancelled.
struct CurveFunction {
    CurveSpec curve;
    Poly g0, g1, h{{1}};

    bool is_zero() const { return g0.is_zero() && g1.is_zero(); }

    friend bool operator==(const CurveFunction& a, const CurveFunction& b) {
        return a.curve == b.curve && a.g0 == b.g0 && a.g1 == b.g1 && a.h == b.h;
    }
    friend bool operator!=(const CurveFunction& a, const CurveFunction& b) { return !(a == b); }
};

namespace detail {

inline Poly y_line(const CurveSpec& E) { return Poly{{E.a3, E.a1}}; }  // a1 x + a3

inline Poly rhs_cubic(const CurveSpec& E) {
    Poly c{{E.a6, E.a4, E.a2, 1}};
    poly_trim(c);
    return c;
}

}  // namespace detail

inline CurveFunction fn_make(const CurveSpec& E, Poly g0, Poly g1, Poly h) {
    const Field& F = E.F();
    poly_trim(g0);
    poly_trim(g1);
    poly_trim(h);
    if (h.is_zero()) fail(errc::division_by_zero, "function with zero denominator");
    if (g0.is_zero() && g1.is_zero()) return CurveFunction{E, {}, {}, Poly{{1}}};
    Poly g = poly_gcd(F, poly_gcd(F, g0, g1), h);
    if (g.deg() > 0) {
        g0 = poly_divmod(F, g0, g).first;
        g1 = poly_divmod(F, g1, g).first;
        h = poly_divmod(F, h, g).first;
    }
    uint64_t lead = h.lead();
    if (lead != 1) {
        uint64_t il = F.inv(lead);
        g0 = poly_scale(F, g0, il);
        g1 = poly_scale(F, g1, il);
        h = poly_scale(F, h, il);
    }
    return CurveFunction{E, std::move(g0), std::move(g1), std::move(h)};
}

inline CurveFunction fn_const(const CurveSpec& E, uint64_t v) { return fn_make(E, poly_const(v), {}, Poly{{1}}); }
inline CurveFunction fn_x(const CurveSpec& E) { return fn_make(E, poly_x(), {}, Poly{{1}}); }
inline CurveFunction fn_y(const CurveSpec& E) { return fn_make(E, {}, poly_const(1), Poly{{1}}); }

inline void fn_check_same_curve(const CurveFunction& a, const CurveFunction& b) {
    if (!(a.curve == b.curve)) fail(errc::mixed_fields, "functions on different curves");
}

inline CurveFunction fn_add(const CurveFunction& a, const CurveFunction& b) {
    fn_check_same_curve(a, b);
    const Field& F = a.curve.F();
    Poly g0 = poly_add(F, poly_mul(F, a.g0, b.h), poly_mul(F, b.g0, a.h));
    Poly g1 = poly_add(F, poly_mul(F, a.g1, b.h), poly_mul(F, b.g1, a.h));
    return fn_make(a.curve, g0, g1, poly_mul(F, a.h, b.h));
}

inline CurveFunction fn_neg(const CurveFunction& a) {
    const Field& F = a.curve.F();
    return CurveFunction{a.curve, poly_neg(F, a.g0), poly_neg(F, a.g1), a.h};
}

inline CurveFunction fn_sub(const CurveFunction& a, const CurveFunction& b) { return fn_add(a, fn_neg(b)); }

inline CurveFunction fn_mul(const CurveFunction& a, const CurveFunction& b) {
    fn_check_same_curve(a, b);
    const Field& F = a.curve.F();
    // (g0 + g1 y)(f0 + f1 y) with y^2 = cubic - (a1 x + a3) y
    Poly cross = poly_mul(F, a.g1, b.g1);
    Poly g0 = poly_add(F, poly_mul(F, a.g0, b.g0), poly_mul(F, cross, detail::rhs_cubic(a.curve)));
    Poly g1 = poly_sub(F, poly_add(F, poly_mul(F, a.g0, b.g1), poly_mul(F, a.g1, b.g0)),
                       poly_mul(F, cross, detail::y_line(a.curve)));
    return fn_make(a.curve, g0, g1, poly_mul(F, a.h, b.h));
}

inline CurveFunction fn_scale(const CurveFunction& a, uint64_t v) {
    const Field& F = a.curve.F();
    return fn_make(a.curve, poly_scale(F, a.g0, v), poly_scale(F, a.g1, v), a.h);
}

/// Norm (g0 + g1 y)(g0 + g1 ybar) as a polynomial in x; zero iff the
/// numerator is the zero function.
inline Poly fn_norm_numerator(const CurveFunction& a) {
    const Field& F = a.curve.F();
    Poly n = poly_sub(F, poly_mul(F, a.g0, a.g0),
                      poly_mul(F, poly_mul(F, a.g0, a.g1), detail::y_line(a.curve)));
    return poly_sub(F, n, poly_mul(F, poly_mul(F, a.g1, a.g1), detail::rhs_cubic(a.curve)));
}

inline CurveFunction fn_inv(const CurveFunction& a) {
    if (a.is_zero()) fail(errc::zero_inverse, "inverse of the zero function");
    const Field& F = a.curve.F();
    // 1/((g0+g1 y)/h) = h (g0 + g1 ybar) / N with ybar = -y - a1 x - a3
    Poly num0 = poly_mul(F, a.h, poly_sub(F, a.g0, poly_mul(F, a.g1, detail::y_line(a.curve))));
    Poly num1 = poly_mul(F, a.h, poly_neg(F, a.g1));
    return fn_make(a.curve, num0, num1, fn_norm_numerator(a));
}

inline CurveFunction fn_div(const CurveFunction& a, const CurveFunction& b) { return fn_mul(a, fn_inv(b)); }

inline CurveFunction fn_pow(const CurveFunction& a, uint64_t e) {
    CurveFunction r = fn_const(a.curve, 1);
    CurveFunction base = a;
    while (e) {
        if (e & 1) r = fn_mul(r, base);
        base = fn_mul(base, base);
        e >>= 1;
    }
    return r;
}

/// Substitutes the automorphism action into f and renormalizes.
inline CurveFunction apply_automorphism(const Automorphism& sigma, const CurveFunction& f) {
    if (!(sigma.curve == f.curve)) fail(errc::shape_mismatch, "automorphism and function on different curves");
    const Field& F = f.curve.F();
    auto subst = [&](const Poly& g) {  // g(ax x + bx)
        Poly r;
        Poly lin{{sigma.bx, sigma.ax}};
        poly_trim(lin);
        for (size_t i = g.c.size(); i-- > 0;) {
            r = poly_mul(F, r, lin);
            r = poly_add(F, r, poly_const(g.c[i]));
        }
        return r;
    };
    Poly G0 = subst(f.g0), G1 = subst(f.g1), H = subst(f.h);
    // y -> cy y + dy x + ey
    Poly shear{{sigma.ey, sigma.dy}};
    poly_trim(shear);
    Poly g0 = poly_add(F, G0, poly_mul(F, G1, shear));
    Poly g1 = poly_scale(F, G1, sigma.cy);
    return fn_make(f.curve, g0, g1, H);
}

// ---------------------------------------------------------------------------
// Local expansions
// ---------------------------------------------------------------------------

namespace detail {

/// Truncated power series sum c[i] tau^i, exact through c[prec-1].
struct Series {
    std::vector<uint64_t> c;

    static Series zero(size_t prec) { return Series{std::vector<uint64_t>(prec, 0)}; }
    size_t prec() const { return c.size(); }
};

inline Series series_add(const Field& F, const Series& a, const Series& b) {
    Series r = Series::zero(std::min(a.prec(), b.prec()));
    for (size_t i = 0; i < r.prec(); ++i) r.c[i] = F.add(a.c[i], b.c[i]);
    return r;
}

inline Series series_mul(const Field& F, const Series& a, const Series& b) {
    size_t prec = std::min(a.prec(), b.prec());
    Series r = Series::zero(prec);
    for (size_t i = 0; i < prec; ++i) {
        if (a.c[i] == 0) continue;
        for (size_t j = 0; i + j < prec; ++j)
            if (b.c[j] != 0) r.c[i + j] = F.add(r.c[i + j], F.mul(a.c[i], b.c[j]));
    }
    return r;
}

inline Series series_scale(const Field& F, const Series& a, uint64_t v) {
    Series r = a;
    for (auto& x : r.c) x = F.mul(x, v);
    return r;
}

/// g evaluated on a series argument (Horner).
inline Series series_of_poly(const Field& F, const Poly& g, const Series& arg) {
    Series r = Series::zero(arg.prec());
    for (size_t i = g.c.size(); i-- > 0;) {
        r = series_mul(F, r, arg);
        r.c[0] = F.add(r.c[0], g.c[i]);
    }
    return r;
}

inline int series_order(const Series& s) {  // -1 if identically zero to precision
    for (size_t i = 0; i < s.prec(); ++i)
        if (s.c[i] != 0) return static_cast<int>(i);
    return -1;
}

/// Local coordinates at an affine point: x and y as series in the uniformizer
/// (x - x0 when the fiber over x0 is split there, y - y0 otherwise).
struct LocalChart {
    Series xs, ys;
};

inline LocalChart local_chart(const CurveSpec& E, const Point& P, size_t prec) {
    const Field& F = E.F();
    if (P.inf) fail(errc::range_error, "affine chart requested at O");
    if (!point_on_curve(E, P)) fail(errc::point_not_on_curve, "expansion at a point off the curve");
    // partial derivatives of y^2 + (a1 x + a3) y - rhs(x)
    uint64_t fy = F.add(F.add(P.y, P.y), F.add(F.mul(E.a1, P.x), E.a3));
    LocalChart ch;
    if (fy != 0) {
        // tau = x - x0; y = y0 + sum c_k tau^k with F_y(P) invertible
        ch.xs = Series::zero(prec);
        ch.xs.c[0] = P.x;
        if (prec > 1) ch.xs.c[1] = 1;
        ch.ys = Series::zero(prec);
        ch.ys.c[0] = P.y;
        uint64_t ify = F.inv(fy);
        for (size_t k = 1; k < prec; ++k) {
            // residual of the curve relation with current partial y-series
            Series lhs = series_mul(F, ch.ys, ch.ys);
            Series lin = series_of_poly(F, y_line(E), ch.xs);
            lhs = series_add(F, lhs, series_mul(F, lin, ch.ys));
            Series rhs = series_of_poly(F, rhs_cubic(E), ch.xs);
            uint64_t resid = F.sub(lhs.c[k], rhs.c[k]);
            ch.ys.c[k] = F.mul(F.neg(resid), ify);
        }
    } else {
        uint64_t fx = F.sub(F.mul(E.a1, P.y),
                            F.add(F.add(F.mul(F.from_int(3), F.mul(P.x, P.x)),
                                        F.mul(F.from_int(2), F.mul(E.a2, P.x))),
                                  E.a4));
        if (fx == 0) fail(errc::singular_curve, "singular point");  // nonsingular curve excludes this
        // tau = y - y0; x = x0 + sum d_k tau^k with F_x(P) invertible
        ch.ys = Series::zero(prec);
        ch.ys.c[0] = P.y;
        if (prec > 1) ch.ys.c[1] = 1;
        ch.xs = Series::zero(prec);
        ch.xs.c[0] = P.x;
        uint64_t ifx = F.inv(fx);
        for (size_t k = 1; k < prec; ++k) {
            Series lhs = series_mul(F, ch.ys, ch.ys);
            Series lin = series_of_poly(F, y_line(E), ch.xs);
            lhs = series_add(F, lhs, series_mul(F, lin, ch.ys));
            Series rhs = series_of_poly(F, rhs_cubic(E), ch.xs);
            uint64_t resid = F.sub(lhs.c[k], rhs.c[k]);
            ch.xs.c[k] = F.mul(F.neg(resid), ifx);  // tau^k coefficient is resid + F_x(P) d_k
        }
    }
    return ch;
}

/// Orders (and leading coefficients) of numerator and denominator of f at an
/// affine point, to the given precision. first = numerator, second = h.
struct AffineOrders {
    int num_ord, den_ord;
    uint64_t num_lead, den_lead;
    bool conclusive;
};

inline AffineOrders affine_orders(const CurveFunction& f, const Point& P, size_t prec) {
    const Field& F = f.curve.F();
    LocalChart ch = local_chart(f.curve, P, prec);
    Series num = series_add(F, series_of_poly(F, f.g0, ch.xs),
                            series_mul(F, series_of_poly(F, f.g1, ch.xs), ch.ys));
    Series den = series_of_poly(F, f.h, ch.xs);
    AffineOrders r{};
    r.num_ord = series_order(num);
    r.den_ord = series_order(den);
    r.conclusive = r.num_ord >= 0 && r.den_ord >= 0;
    if (r.conclusive) {
        r.num_lead = num.c[static_cast<size_t>(r.num_ord)];
        r.den_lead = den.c[static_cast<size_t>(r.den_ord)];
    }
    return r;
}

inline AffineOrders affine_orders_auto(const CurveFunction& f, const Point& P) {
    // zero order of the numerator function is bounded by its pole degree at O;
    // the chart may double x-orders, hence the factor of 2
    int bound = 0;
    if (!f.g0.is_zero()) bound = std::max(bound, 2 * f.g0.deg());
    if (!f.g1.is_zero()) bound = std::max(bound, 3 + 2 * f.g1.deg());
    size_t max_prec = static_cast<size_t>(2 * bound + 2 * 2 * std::max(f.h.deg(), 0) + 4);
    size_t prec = std::min<size_t>(16, max_prec);
    for (;; prec *= 2) {
        if (prec > max_prec) prec = max_prec;
        AffineOrders r = affine_orders(f, P, prec);
        if (r.conclusive) return r;
        if (prec == max_prec) {
            if (series_order(series_of_poly(f.curve.F(), f.h, local_chart(f.curve, P, prec).xs)) < 0)
                fail(errc::zero_function, "denominator vanishes identically");  // cannot happen, h != 0
            fail(errc::zero_function, "numerator vanishes identically");        // cannot happen for f != 0
        }
    }
}

}  // namespace detail

/// v_O(f): the pole/zero order at infinity from the degree formula; the two
/// numerator candidates -2 deg g0 and -3 - 2 deg g1 have opposite parity, so
/// the minimum is exact.
inline int valuation_at_infinity(const CurveFunction& f) {
    if (f.is_zero()) fail(errc::zero_function, "valuation of the zero function");
    int v = std::numeric_limits<int>::max();
    if (!f.g0.is_zero()) v = std::min(v, -2 * f.g0.deg());
    if (!f.g1.is_zero()) v = std::min(v, -3 - 2 * f.g1.deg());
    return v + 2 * static_cast<int>(f.h.deg());
}

/// v_P(f) for a rational place (including O).
inline int valuation(const CurveFunction& f, const Point& P) {
    if (f.is_zero()) fail(errc::zero_function, "valuation of the zero function");
    if (P.inf) return valuation_at_infinity(f);
    detail::AffineOrders r = detail::affine_orders_auto(f, P);
    return r.num_ord - r.den_ord;
}

/// Value at P, or nullopt for a pole.
inline std::optional<FieldElement> evaluate(const CurveFunction& f, const Point& P) {
    const Field& F = f.curve.F();
    if (f.is_zero()) return F.zero();
    if (P.inf) {
        int v = valuation_at_infinity(f);
        if (v < 0) return std::nullopt;
        if (v > 0) return F.zero();
        return F.make(f.g0.lead());  // h monic; the even-order part dominates at v = 0
    }
    if (!point_on_curve(f.curve, P)) fail(errc::point_not_on_curve, "evaluation off the curve");
    uint64_t hv = poly_eval(F, f.h, P.x);
    if (hv != 0) {
        uint64_t num = F.add(poly_eval(F, f.g0, P.x), F.mul(poly_eval(F, f.g1, P.x), P.y));
        return F.make(F.div(num, hv));
    }
    detail::AffineOrders r = detail::affine_orders_auto(f, P);
    int v = r.num_ord - r.den_ord;
    if (v < 0) return std::nullopt;
    if (v > 0) return F.zero();
    return F.make(F.div(r.num_lead, r.den_lead));
}

/// Formal integer combination of rational places.
struct DivisorSpec {
    std::map<Point, int> mult;

    void add(const Point& P, int m) {
        if (m == 0) return;
        auto it = mult.find(P);
        if (it == mult.end())
            mult.emplace(P, m);
        else if ((it->second += m) == 0)
            mult.erase(it);
    }
    int degree() const {
        int d = 0;
        for (const auto& [p, m] : mult) d += m;
        return d;
    }
    bool effective() const {
        for (const auto& [p, m] : mult)
            if (m < 0) return false;
        return true;
    }
    friend bool operator==(const DivisorSpec& a, const DivisorSpec& b) { return a.mult == b.mult; }
};

/// The principal divisor (f); requires every zero and pole to sit at a
/// rational place (degree-zero check enforces it).
inline DivisorSpec principal_divisor(const CurveFunction& f) {
    if (f.is_zero()) fail(errc::zero_function, "divisor of the zero function");
    const Field& F = f.curve.F();
    DivisorSpec d;
    d.add(Point::infinity(), valuation_at_infinity(f));
    Poly norm = fn_norm_numerator(f);
    for (uint64_t x0 = 0; x0 < F.q(); ++x0) {
        if (poly_eval(F, f.h, x0) != 0 && poly_eval(F, norm, x0) != 0) continue;
        uint64_t c1 = F.add(F.mul(f.curve.a1, x0), f.curve.a3);
        uint64_t c0 = F.neg(f.curve.rhs(x0));
        for (uint64_t y0 : solve_univariate_quadratic_idx(F, 1, c1, c0)) {
            Point P = Point::affine(x0, y0);
            int v = valuation(f, P);
            d.add(P, v);
        }
    }
    if (d.degree() != 0)
        fail(errc::non_rational_support, "a zero or pole of the function lies outside F_q");
    return d;
}

// ---------------------------------------------------------------------------
// Riemann-Roch spaces
// ---------------------------------------------------------------------------

/// Basis of L(mO): monomials x^i y^j with j <= 1 and 2i + 3j <= m, sorted by
/// pole order. dim = m for m >= 1 (with the Weierstrass gap at m = 1).
inline std::vector<CurveFunction> rr_basis_pole_at_O(const CurveSpec& E, int m) {
    if (m < 0) fail(errc::range_error, "negative pole order");
    std::vector<std::pair<int, CurveFunction>> fns;
    for (int i = 0; 2 * i <= m; ++i) {
        Poly xi = poly_pow(E.F(), poly_x(), static_cast<uint64_t>(i));
        fns.emplace_back(2 * i, fn_make(E, xi, {}, Poly{{1}}));
        if (2 * i + 3 <= m) fns.emplace_back(2 * i + 3, fn_make(E, {}, xi, Poly{{1}}));
    }
    std::sort(fns.begin(), fns.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    std::vector<CurveFunction> out;
    for (auto& [ord, fn] : fns) out.push_back(std::move(fn));
    return out;
}

namespace detail {

/// Rows that force v_P(g) >= n_P on a span of functions with poles only at O:
/// the first n_P local-series coefficients of each basis element must vanish.
inline void append_vanishing_rows(Mat& rows, size_t& next_row, const std::vector<CurveFunction>& basis,
                                  const Point& P, int n) {
    const Field& F = basis.front().curve.F();
    size_t prec = static_cast<size_t>(n) + 2;
    LocalChart ch = local_chart(basis.front().curve, P, prec);
    for (size_t m = 0; m < basis.size(); ++m) {
        Series s = series_add(F, series_of_poly(F, basis[m].g0, ch.xs),
                              series_mul(F, series_of_poly(F, basis[m].g1, ch.xs), ch.ys));
        for (int k = 0; k < n; ++k) rows.at(next_row + static_cast<size_t>(k), m) = s.c[static_cast<size_t>(k)];
    }
    next_row += static_cast<size_t>(n);
}

}  // namespace detail

/// Basis of L(D) for an effective divisor with rational support, deg D >= 1.
/// Reduction: D ~ Q + (deg D - 1) O through the group law; an interpolating
/// eta in L((deg D_aff + 1) O) with divisor D_aff + Q - (deg D_aff + 1) O
/// turns L(D) into a quotient of a subspace of L((deg D + 1) O).
inline std::vector<CurveFunction> rr_basis(const CurveSpec& E, const DivisorSpec& D) {
    const Field& F = E.F();
    if (!D.effective() || D.degree() < 1) fail(errc::range_error, "divisor must be effective of degree >= 1");
    int k = D.degree();
    int n_O = 0;
    std::vector<std::pair<Point, int>> aff;
    for (const auto& [P, m] : D.mult) {
        if (P.inf)
            n_O = m;
        else {
            if (!point_on_curve(E, P)) fail(errc::point_not_on_curve, "divisor point off the curve");
            aff.emplace_back(P, m);
        }
    }
    int k_aff = k - n_O;
    if (k_aff == 0) return rr_basis_pole_at_O(E, k);

    // Q = -(group sum of the affine part)
    Point S = Point::infinity();
    for (const auto& [P, m] : aff)
        for (int i = 0; i < m; ++i) S = curve_add(E, S, P);
    Point Q = curve_neg(E, S);

    const int m_eta = k_aff + (Q.inf ? 0 : 1);
    std::vector<CurveFunction> eta_basis = rr_basis_pole_at_O(E, m_eta);
    size_t total_rows = 0;
    for (const auto& [P, m] : aff) total_rows += static_cast<size_t>(m);
    Mat rows(&F, total_rows, eta_basis.size());
    size_t next_row = 0;
    for (const auto& [P, m] : aff) detail::append_vanishing_rows(rows, next_row, eta_basis, P, m);
    auto kernel = mat_kernel(rows);
    if (kernel.empty()) fail(errc::dimension_mismatch, "no interpolating function found");  // bug guard
    CurveFunction eta = fn_const(E, 0);
    for (size_t m = 0; m < eta_basis.size(); ++m)
        if (kernel[0][m] != 0) eta = fn_add(eta, fn_scale(eta_basis[m], kernel[0][m]));

    std::vector<CurveFunction> out;
    if (Q.inf) {
        for (const auto& g : rr_basis_pole_at_O(E, k)) out.push_back(fn_div(g, eta));
    } else {
        std::vector<CurveFunction> big = rr_basis_pole_at_O(E, k + 1);
        Mat ev(&F, 1, big.size());
        for (size_t m = 0; m < big.size(); ++m) {
            auto val = evaluate(big[m], Q);
            if (!val) fail(errc::dimension_mismatch, "basis function with unexpected pole");  // bug guard
            ev.at(0, m) = val->index();
        }
        for (const auto& vec : mat_kernel(ev)) {
            CurveFunction g = fn_const(E, 0);
            for (size_t m = 0; m < big.size(); ++m)
                if (vec[m] != 0) g = fn_add(g, fn_scale(big[m], vec[m]));
            out.push_back(fn_div(g, eta));
        }
    }
    if (static_cast<int>(out.size()) != k)
        fail(errc::dimension_mismatch, "computed dim L(D) = " + std::to_string(out.size()) +
                                           ", expected " + std::to_string(k));
    for (const auto& f : out)
        for (const auto& [P, m] : D.mult)
            if (valuation(f, P) < -m)
                fail(errc::dimension_mismatch, "basis function violates the pole bound");  // bug guard
    return out;
}

/// Leading coefficient of f at P when v_P(f) = -1, zero when v_P(f) >= 0.
/// Anything below -1 is a contract violation of the caller.
inline uint64_t simple_pole_coefficient(const CurveFunction& f, const Point& P) {
    if (f.is_zero()) return 0;
    detail::AffineOrders r = detail::affine_orders_auto(f, P);
    int v = r.num_ord - r.den_ord;
    if (v >= 0) return 0;
    if (v < -1) fail(errc::range_error, "pole order exceeds one");
    return f.curve.F().div(r.num_lead, r.den_lead);
}

/// w with pole divisor exactly P_1 + ... + P_{i+1} (simple pole at every
/// prefix point). Deterministic greedy combination over the L(D) basis.
inline CurveFunction function_with_exact_poles(const CurveSpec& E, const std::vector<Point>& prefix) {
    const Field& F = E.F();
    if (prefix.size() < 2) fail(errc::range_error, "need at least two pole points");
    DivisorSpec D;
    for (const Point& P : prefix) {
        if (P.inf) fail(errc::range_error, "pole prescription must be affine");
        D.add(P, 1);
    }
    if (D.mult.size() != prefix.size()) fail(errc::range_error, "pole points must be distinct");
    std::vector<CurveFunction> basis = rr_basis(E, D);
    const size_t n = basis.size();
    // phi[j][m]: order -1 coefficient of basis[m] at prefix[j]; w has a pole
    // at prefix[j] iff phi[j] . coords != 0
    std::vector<std::vector<uint64_t>> phi(prefix.size(), std::vector<uint64_t>(n, 0));
    for (size_t j = 0; j < prefix.size(); ++j)
        for (size_t m = 0; m < n; ++m) phi[j][m] = simple_pole_coefficient(basis[m], prefix[j]);
    std::vector<uint64_t> coords(n, 0);
    auto dot = [&](const std::vector<uint64_t>& a, const std::vector<uint64_t>& b) {
        uint64_t s = 0;
        for (size_t i = 0; i < a.size(); ++i) s = F.add(s, F.mul(a[i], b[i]));
        return s;
    };
    for (size_t j = 0; j < prefix.size(); ++j) {
        if (dot(phi[j], coords) != 0) continue;
        size_t pick = n;
        for (size_t m = 0; m < n; ++m)
            if (phi[j][m] != 0) {
                pick = m;
                break;
            }
        if (pick == n) fail(errc::not_found, "no basis function has a pole at a prescribed point");
        uint64_t chosen = 0;
        for (uint64_t c = 1; c < F.q() && chosen == 0; ++c) {
            bool ok = true;
            for (size_t l = 0; l <= j && ok; ++l) {
                uint64_t val = F.add(dot(phi[l], coords), F.mul(c, phi[l][pick]));
                if (val == 0) ok = false;
            }
            if (ok) chosen = c;
        }
        if (chosen == 0) fail(errc::not_found, "greedy pole search exhausted the field");
        coords[pick] = F.add(coords[pick], chosen);
    }
    CurveFunction w = fn_const(E, 0);
    for (size_t m = 0; m < n; ++m)
        if (coords[m] != 0) w = fn_add(w, fn_scale(basis[m], coords[m]));
    for (const Point& P : prefix)
        if (valuation(w, P) != -1) fail(errc::not_found, "constructed function misses a prescribed pole");
    return w;
}

/// The G-invariant function z = prod_i 1/(sigma_i^{-1}(x) - a) over
/// representatives with pairwise distinct x-actions; divisor
/// (r+1) O - (orbit of P). Both properties are asserted.
inline CurveFunction invariant_z(const Subgroup& G, const Point& P) {
    if (G.order() % 2 != 0 || G.order() < 4) fail(errc::range_error, "subgroup order must be even, >= 4");
    const CurveSpec& E = G.elements.front().curve;
    const Field& F = E.F();
    if (P.inf) fail(errc::not_split, "pole point must be affine");
    const size_t s = G.order() / 2;
    if (G.x_action_set().size() != s) fail(errc::not_split, "x-action set does not have half the group order");
    // orbit must be full-size
    std::set<Point> orbit;
    for (const auto& sigma : G.elements) orbit.insert(apply_to_point(sigma, P));
    if (orbit.size() != G.order()) fail(errc::not_split, "point does not split completely");
    // representatives with distinct x-actions, identity first
    std::vector<Automorphism> reps;
    std::set<std::pair<uint64_t, uint64_t>> seen;
    for (const auto& sigma : G.elements)
        if (seen.insert(sigma.x_action()).second) reps.push_back(sigma);
    Poly den = poly_const(1);
    for (const auto& sigma : reps) {
        Automorphism si = inverse(sigma);
        Poly lin{{F.sub(si.bx, P.x), si.ax}};  // sigma_i^{-1}(x) - a
        den = poly_mul(F, den, lin);
    }
    CurveFunction z = fn_inv(fn_make(E, den, {}, Poly{{1}}));
    for (const auto& sigma : G.elements)
        if (apply_automorphism(sigma, z) != z) fail(errc::not_invariant, "z is not fixed by the subgroup");
    DivisorSpec want;
    want.add(Point::infinity(), static_cast<int>(G.order()));
    for (const Point& Q : orbit) want.add(Q, -1);
    if (!(principal_divisor(z) == want)) fail(errc::not_invariant, "z has an unexpected divisor");
    return z;
}

}  // namespace eclrc
