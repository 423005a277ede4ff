#pragma once

#include <string>
#include <vector>

#include "eclrc/function_field.hpp"
#include "eclrc/linalg.hpp"

namespace eclrc {

/// Everything needed to re-derive and re-check a constructed code without
/// repeating the construction: curve, subgroup, fibers, the z and w functions
/// and the evaluated basis in generator row order.
struct LrcProvenance {
    CurveCatalogEntry entry;
    Subgroup subgroup;
    std::vector<std::vector<Point>> fibers;  // evaluation fibers, column order
    std::vector<Point> excluded;             // ramified points, plus the pole fiber for odd locality
    std::vector<Point> pole_fiber;           // empty for locality 2
    CurveFunction z;
    std::vector<CurveFunction> w;  // w_0 .. w_{r-1}
    std::vector<CurveFunction> basis;
    int t = 0, ell = 0;
    std::string construction;  // "locality2" or "general"
};

/// Evaluation code with designated repair groups (one per fiber).
struct LrcCode {
    FieldPtr field;
    int n = 0, k = 0, r = 0, d_design = 0;
    Mat generator;  // k x n
    std::vector<std::vector<size_t>> repair_groups;
    LrcProvenance prov;
};

/// Curve + subgroup + orbit data underlying a construction for one (q, r).
struct ConstructionContext {
    CurveCatalogEntry entry;
    Subgroup G;
    std::vector<Point> points;
    OrbitPartition part;

    size_t fiber_count() const { return part.fibers.size(); }
};

namespace detail {

inline CurveFamily locality2_family(const Field& f) {
    if (f.p() == 2) return f.a() % 4 == 2 ? CurveFamily::char2_basic : CurveFamily::char2_twist;
    if (f.p() == 3) return CurveFamily::char3_lemma214;
    if (f.p() % 3 == 2) return CurveFamily::p2mod3_lemma215;
    fail(errc::unsupported_characteristic, "locality 2 requires p = 3 or p = 2 mod 3");
}

inline CurveCatalogEntry catalog_entry_for_family(const FieldPtr& field, CurveFamily fam) {
    for (auto& e : maximal_curve_candidates(field))
        if (e.family == fam) return e;
    fail(errc::unsupported_characteristic, "requested catalog family unavailable for this field");
}

/// z for the locality-2 construction: y whenever the subgroup fixes it (true
/// for every catalog family), otherwise the first G-invariant with a triple
/// pole at O found in L(3O).
inline CurveFunction locality2_z(const CurveSpec& E, const Subgroup& G) {
    CurveFunction y = fn_y(E);
    bool fixes_y = true;
    for (const auto& s : G.elements)
        if (!(s.cy == 1 && s.dy == 0 && s.ey == 0)) fixes_y = false;
    if (fixes_y) return y;
    const Field& F = E.F();
    // f = c0 + c1 x + c2 y invariant under every sigma
    Mat rows(&F, 3 * G.order(), 3);
    size_t rr = 0;
    for (const auto& s : G.elements) {
        rows.at(rr, 1) = F.sub(s.ax, 1);
        rows.at(rr, 2) = s.dy;
        ++rr;
        rows.at(rr, 2) = F.sub(s.cy, 1);
        ++rr;
        rows.at(rr, 1) = s.bx;
        rows.at(rr, 2) = s.ey;
        ++rr;
    }
    for (const auto& v : mat_kernel(rows)) {
        if (v[2] == 0) continue;
        CurveFunction z = fn_add(fn_const(E, v[0]),
                                 fn_add(fn_scale(fn_x(E), v[1]), fn_scale(fn_y(E), v[2])));
        return z;
    }
    fail(errc::not_found, "no invariant function with pole divisor 3O");
}

inline void check_fiber_matrices(const Field& F, const std::vector<std::vector<Point>>& fibers,
                                 const std::vector<CurveFunction>& w) {
    const size_t r = w.size();
    for (const auto& fib : fibers) {
        Mat M(&F, fib.size(), r);
        for (size_t i = 0; i < fib.size(); ++i)
            for (size_t j = 0; j < r; ++j) {
                auto v = evaluate(w[j], fib[i]);
                if (!v) fail(errc::submatrix_singular, "w function has a pole on an evaluation fiber");
                M.at(i, j) = v->index();
            }
        for (size_t omit = 0; omit < fib.size(); ++omit) {
            Mat sub(&F, r, r);
            size_t rr2 = 0;
            for (size_t i = 0; i < fib.size(); ++i) {
                if (i == omit) continue;
                for (size_t j = 0; j < r; ++j) sub.at(rr2, j) = M.at(i, j);
                ++rr2;
            }
            if (mat_det(sub) == 0)
                fail(errc::submatrix_singular, "an r x r submatrix of a fiber matrix is singular");
        }
    }
}

inline LrcCode assemble(const FieldPtr& field, int r, int t, int ell, int d_design,
                        ConstructionContext ctx, std::vector<std::vector<Point>> eval_fibers,
                        std::vector<Point> pole_fiber, CurveFunction z, std::vector<CurveFunction> w,
                        std::vector<CurveFunction> basis, const char* construction) {
    const Field& F = *field;
    const int n = ell * (r + 1);
    const int k = static_cast<int>(basis.size());
    LrcCode code;
    code.field = field;
    code.n = n;
    code.k = k;
    code.r = r;
    code.d_design = d_design;
    code.generator = Mat(&F, basis.size(), static_cast<size_t>(n));
    std::vector<Point> columns;
    for (const auto& fib : eval_fibers) columns.insert(columns.end(), fib.begin(), fib.end());
    for (size_t row = 0; row < basis.size(); ++row)
        for (size_t col = 0; col < columns.size(); ++col) {
            auto v = evaluate(basis[row], columns[col]);
            if (!v) fail(errc::submatrix_singular, "basis function has a pole at an evaluation point");
            code.generator.at(row, col) = v->index();
        }
    if (mat_rank(code.generator) != basis.size())
        fail(errc::dimension_mismatch, "generator rank differs from the design dimension");
    for (int g = 0; g < ell; ++g) {
        std::vector<size_t> grp;
        for (int j = 0; j <= r; ++j) grp.push_back(static_cast<size_t>(g * (r + 1) + j));
        code.repair_groups.push_back(std::move(grp));
    }
    code.prov.entry = ctx.entry;
    code.prov.subgroup = ctx.G;
    code.prov.fibers = std::move(eval_fibers);
    code.prov.excluded = ctx.part.ramified;
    code.prov.excluded.insert(code.prov.excluded.end(), pole_fiber.begin(), pole_fiber.end());
    std::sort(code.prov.excluded.begin(), code.prov.excluded.end());
    code.prov.pole_fiber = std::move(pole_fiber);
    code.prov.z = std::move(z);
    code.prov.w = std::move(w);
    code.prov.basis = std::move(basis);
    code.prov.t = t;
    code.prov.ell = ell;
    code.prov.construction = construction;
    return code;
}

}  // namespace detail

/// Orbit data for the locality-2 construction over F_q. tie_break relabels
/// the canonical subgroup choice (experiments only; 0 is canonical).
inline ConstructionContext locality2_context(const FieldPtr& field, unsigned tie_break = 0) {
    const Field& f = *field;
    ConstructionContext ctx;
    ctx.entry = detail::catalog_entry_for_family(field, detail::locality2_family(f));
    Subgroup full = enumerate_automorphisms(ctx.entry);
    auto groups = order3_y_fixing_subgroups(full);
    if (groups.empty()) fail(errc::no_qualifying_subgroup, "no order-3 subgroup fixing y");
    ctx.G = groups[tie_break % groups.size()];
    ctx.points = enumerate_points(ctx.entry.curve);
    ctx.part = orbits(ctx.G, ctx.points);
    return ctx;
}

/// Orbit data for an odd-locality construction over F_q; tries the catalog
/// families admissible for p in canonical order.
inline ConstructionContext general_context(const FieldPtr& field, int r, unsigned tie_break = 0) {
    if (r < 3 || r % 2 == 0) fail(errc::range_error, "general construction needs odd locality r >= 3");
    if (static_cast<uint64_t>(r) >= field->q()) fail(errc::range_error, "construction requires r < q");
    std::string tried;
    for (auto& entry : maximal_curve_candidates(field)) {
        Subgroup full = enumerate_automorphisms(entry);
        auto subs = subgroups_with_half_x_orbit(full, static_cast<size_t>(r + 1));
        if (subs.empty()) {
            tried += std::string(tried.empty() ? "" : ", ") + family_name(entry.family);
            continue;
        }
        ConstructionContext ctx;
        ctx.entry = entry;
        ctx.G = subs[tie_break % subs.size()];
        ctx.points = enumerate_points(entry.curve);
        ctx.part = orbits(ctx.G, ctx.points);
        return ctx;
    }
    fail(errc::no_qualifying_subgroup,
         "no subgroup of order " + std::to_string(r + 1) + " with half-size x-action set (tried: " + tried + ")");
}

/// Optimal [3l, 2t+1, 3l-3t] code with locality 2: evaluations of
/// {1, z, ..., z^t, x, xz, ..., x z^{t-1}} at the first l split fibers of the
/// order-3 subgroup. The context overload allows reuse across a parameter sweep.
inline LrcCode build_locality2(const FieldPtr& field, ConstructionContext ctx, int t, int ell) {
    if (!(0 <= t && t < ell)) fail(errc::range_error, "need 0 <= t < ell");
    if (static_cast<size_t>(ell) > ctx.fiber_count())
        fail(errc::range_error, "ell = " + std::to_string(ell) + " exceeds the " +
                                    std::to_string(ctx.fiber_count()) + " available split fibers");
    const CurveSpec& E = ctx.entry.curve;
    CurveFunction z = detail::locality2_z(E, ctx.G);
    for (const auto& s : ctx.G.elements)
        if (apply_automorphism(s, z) != z) fail(errc::not_invariant, "z is not fixed by the subgroup");
    if (valuation_at_infinity(z) != -3) fail(errc::not_invariant, "z does not have pole divisor 3O");
    CurveFunction x = fn_x(E);
    std::vector<CurveFunction> basis;
    for (int j = 0; j <= t; ++j) basis.push_back(fn_pow(z, static_cast<uint64_t>(j)));
    for (int j = 0; j < t; ++j) basis.push_back(fn_mul(x, fn_pow(z, static_cast<uint64_t>(j))));
    std::vector<std::vector<Point>> eval_fibers(ctx.part.fibers.begin(), ctx.part.fibers.begin() + ell);
    std::vector<CurveFunction> w{fn_const(E, 1), x};
    detail::check_fiber_matrices(E.F(), eval_fibers, w);
    return detail::assemble(field, 2, t, ell, 3 * ell - 3 * t, std::move(ctx), std::move(eval_fibers), {},
                            std::move(z), std::move(w), std::move(basis), "locality2");
}

inline LrcCode build_locality2(const FieldPtr& field, int t, int ell, unsigned tie_break = 0) {
    return build_locality2(field, locality2_context(field, tie_break), t, ell);
}

/// Optimal [l(r+1), rt-r+1, n-(t-1)(r+1)] code with odd locality r from a
/// subgroup of order r+1 whose x-action set has half size. One split fiber is
/// spent on the poles of z; evaluation runs over the first l remaining fibers.
inline LrcCode build_general(const FieldPtr& field, ConstructionContext ctx, int r, int t, int ell) {
    if (!(1 <= t && t < ell)) fail(errc::range_error, "need 1 <= t < ell");
    const size_t capacity = ctx.fiber_count() - 1;
    if (static_cast<size_t>(ell) > capacity)
        fail(errc::range_error, "ell = " + std::to_string(ell) + " exceeds the capacity of " +
                                    std::to_string(capacity) + " fibers (one fiber carries the poles of z)");
    const CurveSpec& E = ctx.entry.curve;
    std::string last_error;
    for (size_t pf = 0; pf < ctx.fiber_count(); ++pf) {
        const std::vector<Point>& pole_fiber = ctx.part.fibers[pf];
        try {
            CurveFunction z = invariant_z(ctx.G, pole_fiber.front());
            std::vector<CurveFunction> w{fn_const(E, 1)};
            for (int i = 1; i < r; ++i) {
                std::vector<Point> prefix(pole_fiber.begin(), pole_fiber.begin() + i + 1);
                w.push_back(function_with_exact_poles(E, prefix));
            }
            std::vector<CurveFunction> basis;
            for (int j = 1; j <= t; ++j) basis.push_back(fn_pow(z, static_cast<uint64_t>(j - 1)));
            for (int i = 1; i < r; ++i)
                for (int j = 1; j <= t - 1; ++j)
                    basis.push_back(fn_mul(fn_pow(z, static_cast<uint64_t>(j - 1)), w[static_cast<size_t>(i)]));
            // V sits inside L((t-1) * pole fiber)
            for (const auto& b : basis)
                for (const Point& Q : pole_fiber)
                    if (!b.is_zero() && valuation(b, Q) < -(t - 1))
                        fail(errc::dimension_mismatch, "basis function escapes L((t-1) D)");
            std::vector<std::vector<Point>> eval_fibers;
            for (size_t i = 0; i < ctx.fiber_count() && eval_fibers.size() < static_cast<size_t>(ell); ++i)
                if (i != pf) eval_fibers.push_back(ctx.part.fibers[i]);
            detail::check_fiber_matrices(E.F(), eval_fibers, w);
            std::vector<Point> pole_copy = pole_fiber;  // ctx is consumed by assemble
            return detail::assemble(field, r, t, ell, ell * (r + 1) - (t - 1) * (r + 1), std::move(ctx),
                                    std::move(eval_fibers), std::move(pole_copy), std::move(z), std::move(w),
                                    std::move(basis), "general");
        } catch (const error& e) {
            if (e.code() != errc::submatrix_singular) throw;
            last_error = e.what();  // degenerate split point; retry with the next fiber
        }
    }
    fail(errc::submatrix_singular, "every split point produced a singular fiber matrix: " + last_error);
}

inline LrcCode build_general(const FieldPtr& field, int r, int t, int ell, unsigned tie_break = 0) {
    return build_general(field, general_context(field, r, tie_break), r, t, ell);
}

/// message (length k) -> message * G.
inline std::vector<uint64_t> encode(const LrcCode& code, const std::vector<uint64_t>& message) {
    if (message.size() != static_cast<size_t>(code.k)) fail(errc::length_mismatch, "message length != k");
    return vec_mat_mul(*code.field, message, code.generator);
}

/// Recovers coordinate i of a codeword from the other members of its repair
/// group: solve G_I lambda = G_i, return lambda . c|_I.
inline uint64_t repair(const LrcCode& code, const std::vector<uint64_t>& codeword, size_t i) {
    if (i >= static_cast<size_t>(code.n)) fail(errc::index_out_of_range, "coordinate out of range");
    if (codeword.size() != static_cast<size_t>(code.n)) fail(errc::length_mismatch, "codeword length != n");
    const Field& F = *code.field;
    const std::vector<size_t>* group = nullptr;
    for (const auto& g : code.repair_groups)
        for (size_t j : g)
            if (j == i) group = &g;
    if (!group) fail(errc::index_out_of_range, "coordinate not covered by a repair group");
    std::vector<size_t> siblings;
    for (size_t j : *group)
        if (j != i) siblings.push_back(j);
    Mat GI = code.generator.select_columns(siblings);
    std::vector<uint64_t> gi(code.generator.rows());
    for (size_t row = 0; row < code.generator.rows(); ++row) gi[row] = code.generator.at(row, i);
    auto lambda = mat_solve(GI, gi);
    if (!lambda) fail(errc::not_repairable, "repair group columns do not span the erased column");
    uint64_t out = 0;
    for (size_t j = 0; j < siblings.size(); ++j) out = F.add(out, F.mul((*lambda)[j], codeword[siblings[j]]));
    return out;
}

}  // namespace eclrc
