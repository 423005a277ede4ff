#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "eclrc/fields.hpp"

namespace eclrc {

/// Dense matrix over a fixed Field; entries are packed element indices.
class Mat {
   public:
    Mat() : rows_(0), cols_(0), f_(nullptr) {}
    Mat(const Field* f, size_t rows, size_t cols) : rows_(rows), cols_(cols), d_(rows * cols, 0), f_(f) {}

    size_t rows() const { return rows_; }
    size_t cols() const { return cols_; }
    const Field* field() const { return f_; }

    uint64_t& at(size_t r, size_t c) { return d_[r * cols_ + c]; }
    uint64_t at(size_t r, size_t c) const { return d_[r * cols_ + c]; }

    std::vector<uint64_t> row(size_t r) const {
        return {d_.begin() + r * cols_, d_.begin() + (r + 1) * cols_};
    }

    Mat select_columns(const std::vector<size_t>& idx) const {
        Mat m(f_, rows_, idx.size());
        for (size_t r = 0; r < rows_; ++r)
            for (size_t j = 0; j < idx.size(); ++j) m.at(r, j) = at(r, idx[j]);
        return m;
    }

    friend bool operator==(const Mat& a, const Mat& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.d_ == b.d_;
    }

   private:
    size_t rows_, cols_;
    std::vector<uint64_t> d_;
    const Field* f_;
};

/// In-place reduced row echelon form; returns the pivot column of each pivot
/// row in order. Deterministic (first nonzero pivot).
inline std::vector<size_t> mat_rref(Mat& m) {
    const Field& F = *m.field();
    std::vector<size_t> pivots;
    size_t r = 0;
    for (size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
        size_t sel = r;
        while (sel < m.rows() && m.at(sel, c) == 0) ++sel;
        if (sel == m.rows()) continue;
        if (sel != r)
            for (size_t j = 0; j < m.cols(); ++j) std::swap(m.at(sel, j), m.at(r, j));
        const uint64_t inv = F.inv(m.at(r, c));
        for (size_t j = c; j < m.cols(); ++j) m.at(r, j) = F.mul(m.at(r, j), inv);
        for (size_t i = 0; i < m.rows(); ++i) {
            if (i == r || m.at(i, c) == 0) continue;
            const uint64_t factor = m.at(i, c);
            for (size_t j = c; j < m.cols(); ++j)
                m.at(i, j) = F.sub(m.at(i, j), F.mul(factor, m.at(r, j)));
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

inline size_t mat_rank(Mat m) { return mat_rref(m).size(); }

/// Basis of the right kernel {x : m x = 0}, canonical (one vector per free
/// column in column order, free coordinate set to 1).
inline std::vector<std::vector<uint64_t>> mat_kernel(Mat m) {
    const Field& F = *m.field();
    std::vector<size_t> pivots = mat_rref(m);
    std::vector<bool> is_pivot(m.cols(), false);
    for (size_t c : pivots) is_pivot[c] = true;
    std::vector<std::vector<uint64_t>> basis;
    for (size_t c = 0; c < m.cols(); ++c) {
        if (is_pivot[c]) continue;
        std::vector<uint64_t> v(m.cols(), 0);
        v[c] = 1;
        for (size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = F.neg(m.at(r, c));
        basis.push_back(std::move(v));
    }
    return basis;
}

/// Solves m x = b if consistent.
inline std::optional<std::vector<uint64_t>> mat_solve(const Mat& m, const std::vector<uint64_t>& b) {
    const Field& F = *m.field();
    Mat aug(m.field(), m.rows(), m.cols() + 1);
    for (size_t r = 0; r < m.rows(); ++r) {
        for (size_t c = 0; c < m.cols(); ++c) aug.at(r, c) = m.at(r, c);
        aug.at(r, m.cols()) = b[r];
    }
    std::vector<size_t> pivots = mat_rref(aug);
    if (!pivots.empty() && pivots.back() == m.cols()) return std::nullopt;  // row (0..0|1)
    std::vector<uint64_t> x(m.cols(), 0);
    for (size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = aug.at(r, m.cols());
    return x;
}

inline uint64_t mat_det(Mat m) {
    const Field& F = *m.field();
    if (m.rows() != m.cols()) fail(errc::range_error, "determinant of non-square matrix");
    uint64_t det = 1;
    for (size_t c = 0; c < m.cols(); ++c) {
        size_t sel = c;
        while (sel < m.rows() && m.at(sel, c) == 0) ++sel;
        if (sel == m.rows()) return 0;
        if (sel != c) {
            for (size_t j = 0; j < m.cols(); ++j) std::swap(m.at(sel, j), m.at(c, j));
            det = F.neg(det);
        }
        det = F.mul(det, m.at(c, c));
        const uint64_t inv = F.inv(m.at(c, c));
        for (size_t i = c + 1; i < m.rows(); ++i) {
            if (m.at(i, c) == 0) continue;
            const uint64_t factor = F.mul(m.at(i, c), inv);
            for (size_t j = c; j < m.cols(); ++j)
                m.at(i, j) = F.sub(m.at(i, j), F.mul(factor, m.at(c, j)));
        }
    }
    return det;
}

/// Row vector times matrix.
inline std::vector<uint64_t> vec_mat_mul(const Field& F, const std::vector<uint64_t>& v, const Mat& m) {
    std::vector<uint64_t> out(m.cols(), 0);
    for (size_t r = 0; r < m.rows(); ++r) {
        if (v[r] == 0) continue;
        for (size_t c = 0; c < m.cols(); ++c) out[c] = F.add(out[c], F.mul(v[r], m.at(r, c)));
    }
    return out;
}

}  // namespace eclrc
