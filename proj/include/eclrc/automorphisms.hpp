#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <set>
#include <vector>

#include "eclrc/curves.hpp"

namespace eclrc {

enum class AutShape { char2, char3, large_char };

inline const char* shape_name(AutShape s) {
    switch (s) {
        case AutShape::char2: return "char2";
        case AutShape::char3: return "char3";
        case AutShape::large_char: return "large_char";
    }
    return "?";
}

/// Curve automorphism in the explicit catalog shapes. It acts on the function
/// symbols by sigma(x) = ax*x + bx, sigma(y) = cy*y + dy*x + ey, and on points
/// by the same formulas applied to coordinates. Shape parameters:
///   char2:      u^3 = 1, s^4 + s = 0, t^2 + t + s^6 = 0,
///               sigma(x) = u^2 x + s^2, sigma(y) = u^3 y + u^2 s x + t
///   char3:      u^4 = 1, s^3 + a4 s = 0, sigma(x) = u^2 x + s, sigma(y) = u^3 y
///   large_char: u^4 = 1 (y^2 = x^3 + a4 x) or u^6 = 1 (y^2 = x^3 + a6),
///               sigma(x) = u^2 x, sigma(y) = u^3 y
struct Automorphism {
    AutShape shape;
    uint64_t u = 1, s = 0, t = 0;
    uint64_t ax = 1, bx = 0, cy = 1, dy = 0, ey = 0;
    CurveSpec curve;

    bool is_identity() const { return ax == 1 && bx == 0 && cy == 1 && dy == 0 && ey == 0; }
    std::array<uint64_t, 5> affine_key() const { return {ax, bx, cy, dy, ey}; }
    std::pair<uint64_t, uint64_t> x_action() const { return {ax, bx}; }

    friend bool operator==(const Automorphism& a, const Automorphism& b) {
        return a.affine_key() == b.affine_key() && a.curve == b.curve;
    }
    friend bool operator<(const Automorphism& a, const Automorphism& b) {
        return a.affine_key() < b.affine_key();
    }
};

namespace detail {

/// Checks that substituting the action into the Weierstrass polynomial gives
/// a nonzero scalar multiple of it (exact bivariate identity).
inline bool preserves_curve(const CurveSpec& E, uint64_t ax, uint64_t bx, uint64_t cy, uint64_t dy,
                            uint64_t ey) {
    const Field& f = E.F();
    if (ax == 0 || cy == 0) return false;
    // coefficient array c[i][j] of x^i y^j for W(sigma(x), sigma(y))
    uint64_t c[4][3] = {};
    auto acc = [&](int i, int j, uint64_t v) { c[i][j] = f.add(c[i][j], v); };
    // sigma(y)^2
    acc(0, 2, f.mul(cy, cy));
    acc(2, 0, f.mul(dy, dy));
    acc(0, 0, f.mul(ey, ey));
    acc(1, 1, f.mul(f.from_int(2), f.mul(cy, dy)));
    acc(0, 1, f.mul(f.from_int(2), f.mul(cy, ey)));
    acc(1, 0, f.mul(f.from_int(2), f.mul(dy, ey)));
    // a1 sigma(x) sigma(y)
    acc(1, 1, f.mul(E.a1, f.mul(ax, cy)));
    acc(2, 0, f.mul(E.a1, f.mul(ax, dy)));
    acc(1, 0, f.mul(E.a1, f.add(f.mul(ax, ey), f.mul(bx, dy))));
    acc(0, 1, f.mul(E.a1, f.mul(bx, cy)));
    acc(0, 0, f.mul(E.a1, f.mul(bx, ey)));
    // a3 sigma(y)
    acc(0, 1, f.mul(E.a3, cy));
    acc(1, 0, f.mul(E.a3, dy));
    acc(0, 0, f.mul(E.a3, ey));
    // - sigma(x)^3
    uint64_t ax2 = f.mul(ax, ax), bx2 = f.mul(bx, bx);
    acc(3, 0, f.neg(f.mul(ax2, ax)));
    acc(2, 0, f.neg(f.mul(f.from_int(3), f.mul(ax2, bx))));
    acc(1, 0, f.neg(f.mul(f.from_int(3), f.mul(ax, bx2))));
    acc(0, 0, f.neg(f.mul(bx2, bx)));
    // - a2 sigma(x)^2
    acc(2, 0, f.neg(f.mul(E.a2, ax2)));
    acc(1, 0, f.neg(f.mul(E.a2, f.mul(f.from_int(2), f.mul(ax, bx)))));
    acc(0, 0, f.neg(f.mul(E.a2, bx2)));
    // - a4 sigma(x) - a6
    acc(1, 0, f.neg(f.mul(E.a4, ax)));
    acc(0, 0, f.neg(f.mul(E.a4, bx)));
    acc(0, 0, f.neg(E.a6));
    // must equal lambda * (y^2 + a1 xy + a3 y - x^3 - a2 x^2 - a4 x - a6)
    uint64_t lam = c[0][2];
    if (lam == 0) return false;
    uint64_t want[4][3] = {};
    want[0][2] = lam;
    want[1][1] = f.mul(lam, E.a1);
    want[0][1] = f.mul(lam, E.a3);
    want[3][0] = f.neg(lam);
    want[2][0] = f.neg(f.mul(lam, E.a2));
    want[1][0] = f.neg(f.mul(lam, E.a4));
    want[0][0] = f.neg(f.mul(lam, E.a6));
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 3; ++j)
            if (c[i][j] != want[i][j]) return false;
    return true;
}

inline Automorphism from_params(const CurveSpec& E, AutShape shape, uint64_t u, uint64_t s, uint64_t t) {
    const Field& f = E.F();
    Automorphism a;
    a.shape = shape;
    a.curve = E;
    a.u = u;
    a.s = s;
    a.t = t;
    switch (shape) {
        case AutShape::char2:
            a.ax = f.mul(u, u);
            a.bx = f.mul(s, s);
            a.cy = f.mul(u, f.mul(u, u));
            a.dy = f.mul(f.mul(u, u), s);
            a.ey = t;
            break;
        case AutShape::char3:
            a.ax = f.mul(u, u);
            a.bx = s;
            a.cy = f.mul(u, f.mul(u, u));
            a.dy = 0;
            a.ey = 0;
            break;
        case AutShape::large_char:
            a.ax = f.mul(u, u);
            a.bx = 0;
            a.cy = f.mul(u, f.mul(u, u));
            a.dy = 0;
            a.ey = 0;
            break;
    }
    if (!preserves_curve(E, a.ax, a.bx, a.cy, a.dy, a.ey))
        fail(errc::not_invariant, "automorphism parameters do not preserve the curve equation");
    return a;
}

/// Recovers shape parameters from an affine action known to lie in the group.
inline Automorphism from_affine(const CurveSpec& E, AutShape shape, uint64_t ax, uint64_t bx, uint64_t cy,
                                uint64_t dy, uint64_t ey) {
    const Field& f = E.F();
    uint64_t u = 1, s = 0, t = 0;
    switch (shape) {
        case AutShape::char2:
            u = f.mul(ax, ax);  // u = u^4 since u^3 = 1
            s = f.mul(bx, bx);  // s = s^4 since s in F_4
            t = ey;
            break;
        case AutShape::char3:
            u = f.div(cy, ax);  // u = u^3 / u^2
            s = bx;
            break;
        case AutShape::large_char:
            u = f.div(cy, ax);
            break;
    }
    Automorphism a = from_params(E, shape, u, s, t);
    if (a.affine_key() != std::array<uint64_t, 5>{ax, bx, cy, dy, ey})
        fail(errc::shape_mismatch, "affine action is not of the declared shape");
    return a;
}

}  // namespace detail

/// A finite set of automorphisms closed under composition; identity first,
/// remaining elements in canonical affine-key order.
struct Subgroup {
    std::vector<Automorphism> elements;
    size_t order() const { return elements.size(); }

    /// Distinct formal x-actions sigma(x) over the subgroup.
    std::set<std::pair<uint64_t, uint64_t>> x_action_set() const {
        std::set<std::pair<uint64_t, uint64_t>> s;
        for (const auto& a : elements) s.insert(a.x_action());
        return s;
    }
};

inline Automorphism compose(const Automorphism& sigma, const Automorphism& tau) {
    if (!(sigma.curve == tau.curve)) fail(errc::shape_mismatch, "composition across different curves");
    if (sigma.shape != tau.shape) fail(errc::shape_mismatch, "composition across different shapes");
    const Field& f = sigma.curve.F();
    uint64_t ax = f.mul(tau.ax, sigma.ax);
    uint64_t bx = f.add(f.mul(tau.ax, sigma.bx), tau.bx);
    uint64_t cy = f.mul(tau.cy, sigma.cy);
    uint64_t dy = f.add(f.mul(tau.cy, sigma.dy), f.mul(tau.dy, sigma.ax));
    uint64_t ey = f.add(f.add(f.mul(tau.cy, sigma.ey), f.mul(tau.dy, sigma.bx)), tau.ey);
    return detail::from_affine(sigma.curve, sigma.shape, ax, bx, cy, dy, ey);
}

inline Automorphism inverse(const Automorphism& sigma) {
    const Field& f = sigma.curve.F();
    uint64_t ax = f.inv(sigma.ax);
    uint64_t bx = f.neg(f.mul(sigma.bx, ax));
    uint64_t cy = f.inv(sigma.cy);
    uint64_t dy = f.neg(f.mul(cy, f.div(sigma.dy, sigma.ax)));
    uint64_t ey = f.neg(f.add(f.mul(cy, sigma.ey), f.mul(dy, sigma.bx)));
    return detail::from_affine(sigma.curve, sigma.shape, ax, bx, cy, dy, ey);
}

inline Point apply_to_point(const Automorphism& sigma, const Point& P) {
    if (P.inf) return P;
    if (!point_on_curve(sigma.curve, P)) fail(errc::point_not_on_curve, "automorphism applied off the curve");
    const Field& f = sigma.curve.F();
    Point Q = Point::affine(f.add(f.mul(sigma.ax, P.x), sigma.bx),
                            f.add(f.add(f.mul(sigma.cy, P.y), f.mul(sigma.dy, P.x)), sigma.ey));
    if (!point_on_curve(sigma.curve, Q))
        fail(errc::point_not_on_curve, "automorphism image left the curve");  // signals a bug
    return Q;
}

/// Full Aut(E/F_q) for a catalog curve, every member verified against the
/// curve equation; the size is checked against the lemma for the family.
inline Subgroup enumerate_automorphisms(const CurveCatalogEntry& entry) {
    const CurveSpec& E = entry.curve;
    const Field& f = E.F();
    Subgroup g;
    size_t expected = 0;
    switch (entry.family) {
        case CurveFamily::char2_basic:
        case CurveFamily::char2_twist: {
            if (f.a() % 2 != 0)
                fail(errc::unsupported_shape, "char-2 shape needs F_4 inside F_q (even a)");
            std::vector<uint64_t> us, ss;
            for (const auto& u : roots_of_unity(f, 3)) us.push_back(u.index());
            ss.push_back(0);
            for (const auto& r : roots_of_unity(f, 3)) ss.push_back(r.index());  // s^4+s=0
            std::sort(ss.begin(), ss.end());
            for (uint64_t u : us)
                for (uint64_t s : ss)
                    for (uint64_t t : solve_univariate_quadratic_idx(f, 1, 1, f.pow(s, 6)))
                        g.elements.push_back(detail::from_params(E, AutShape::char2, u, s, t));
            expected = 24;
            break;
        }
        case CurveFamily::char3_lemma214: {
            std::vector<uint64_t> us, ss;
            for (const auto& u : roots_of_unity(f, 4)) us.push_back(u.index());
            for (uint64_t s = 0; s < f.q(); ++s)
                if (f.add(f.mul(s, f.mul(s, s)), f.mul(E.a4, s)) == 0) ss.push_back(s);
            for (uint64_t u : us)
                for (uint64_t s : ss) g.elements.push_back(detail::from_params(E, AutShape::char3, u, s, 0));
            expected = is_square_in(f, f.neg(E.a4)) ? 12 : 4;
            break;
        }
        case CurveFamily::p3mod4_lemma214: {
            for (const auto& u : roots_of_unity(f, 4))
                g.elements.push_back(detail::from_params(E, AutShape::large_char, u.index(), 0, 0));
            expected = 4;
            break;
        }
        case CurveFamily::p2mod3_lemma215: {
            for (const auto& u : roots_of_unity(f, 6))
                g.elements.push_back(detail::from_params(E, AutShape::large_char, u.index(), 0, 0));
            expected = 6;
            break;
        }
    }
    std::sort(g.elements.begin(), g.elements.end());
    if (g.order() != expected)
        fail(errc::unsupported_shape, "automorphism count " + std::to_string(g.order()) +
                                          " does not match the lemma value " + std::to_string(expected));
    return g;
}

namespace detail {

/// All subgroups of the given order, found by closing generator subsets of
/// size up to 3 (|full| <= 24 keeps this exhaustive: every subgroup of such a
/// group is generated by at most 3 elements).
inline std::vector<std::vector<size_t>> subgroups_of_order(const Subgroup& full, size_t m) {
    const size_t n = full.order();
    std::map<std::array<uint64_t, 5>, size_t> index_of;
    for (size_t i = 0; i < n; ++i) index_of[full.elements[i].affine_key()] = i;
    std::vector<std::vector<size_t>> table(n, std::vector<size_t>(n));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) {
            auto it = index_of.find(compose(full.elements[i], full.elements[j]).affine_key());
            if (it == index_of.end()) fail(errc::shape_mismatch, "group is not closed");  // bug guard
            table[i][j] = it->second;
        }
    auto closure = [&](std::vector<size_t> gen) {
        std::set<size_t> cl(gen.begin(), gen.end());
        size_t id = index_of.begin()->second;
        for (size_t i = 0; i < n; ++i)
            if (full.elements[i].is_identity()) id = i;
        cl.insert(id);
        bool grew = true;
        while (grew) {
            grew = false;
            std::vector<size_t> cur(cl.begin(), cl.end());
            for (size_t a : cur)
                for (size_t b : cur)
                    if (cl.insert(table[a][b]).second) grew = true;
        }
        return std::vector<size_t>(cl.begin(), cl.end());
    };
    std::set<std::vector<size_t>> found;
    for (size_t i = 0; i < n; ++i) {
        auto c1 = closure({i});
        if (c1.size() == m) found.insert(c1);
        if (m <= 2) continue;  // order-m subgroups with m prime are cyclic anyway
    }
    for (size_t i = 0; i < n; ++i)
        for (size_t j = i + 1; j < n; ++j) {
            auto c2 = closure({i, j});
            if (c2.size() == m) found.insert(c2);
            for (size_t k = j + 1; k < n; ++k) {
                auto c3 = closure({i, j, k});
                if (c3.size() == m) found.insert(c3);
            }
        }
    return {found.begin(), found.end()};
}

inline Subgroup build_subgroup(const Subgroup& full, const std::vector<size_t>& idx) {
    Subgroup g;
    for (size_t i : idx) g.elements.push_back(full.elements[i]);
    std::sort(g.elements.begin(), g.elements.end());
    return g;
}

}  // namespace detail

/// Subgroups of order m = 2s whose formal x-action set has exactly s members
/// (the hypothesis of the odd-locality construction), canonical order.
inline std::vector<Subgroup> subgroups_with_half_x_orbit(const Subgroup& full, size_t m) {
    if (m % 2 != 0 || m == 0 || m > full.order()) return {};
    std::vector<Subgroup> out;
    for (const auto& idx : detail::subgroups_of_order(full, m)) {
        Subgroup g = detail::build_subgroup(full, idx);
        if (g.x_action_set().size() == m / 2) out.push_back(std::move(g));
    }
    return out;
}

/// Order-3 subgroups whose elements all fix y formally (the locality-2
/// construction groups), canonical order.
inline std::vector<Subgroup> order3_y_fixing_subgroups(const Subgroup& full) {
    std::vector<Subgroup> out;
    for (const auto& idx : detail::subgroups_of_order(full, 3)) {
        Subgroup g = detail::build_subgroup(full, idx);
        bool fixes_y = true;
        for (const auto& a : g.elements)
            if (a.cy != 1 || a.dy != 0 || a.ey != 0) fixes_y = false;
        if (fixes_y) out.push_back(std::move(g));
    }
    return out;
}

/// Orbit partition of `points` under G: full-size orbits (fibers) sorted
/// internally and by minimal point; shorter orbits spill into `ramified`.
struct OrbitPartition {
    std::vector<std::vector<Point>> fibers;
    std::vector<Point> ramified;
};

inline OrbitPartition orbits(const Subgroup& G, const std::vector<Point>& points) {
    OrbitPartition part;
    std::set<Point> seen;
    for (const Point& P : points) {
        if (seen.count(P)) continue;
        std::set<Point> orbit;
        for (const auto& sigma : G.elements) orbit.insert(apply_to_point(sigma, P));
        for (const Point& Q : orbit) seen.insert(Q);
        if (orbit.size() == G.order())
            part.fibers.emplace_back(orbit.begin(), orbit.end());
        else
            part.ramified.insert(part.ramified.end(), orbit.begin(), orbit.end());
    }
    std::sort(part.fibers.begin(), part.fibers.end(),
              [](const auto& a, const auto& b) { return a.front() < b.front(); });
    std::sort(part.ramified.begin(), part.ramified.end());
    return part;
}

}  // namespace eclrc
