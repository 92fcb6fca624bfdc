#pragma once

#include <vector>

#include "ppmod/errors.hpp"
#include "ppmod/ring.hpp"

namespace ppmod {

/// Dense matrix over the base domain D, row-major.
template <class D>
struct Mat {
    using E = typename D::Elem;

    int rows = 0;
    int cols = 0;
    std::vector<E> a;

    Mat() = default;
    Mat(int r, int c, E fill) : rows(r), cols(c), a(static_cast<std::size_t>(r) * c, fill) {}

    static Mat zero(const D& dom, int r, int c) { return Mat(r, c, dom.zero()); }
    static Mat identity(const D& dom, int n) {
        Mat m = zero(dom, n, n);
        for (int i = 0; i < n; ++i) m.at(i, i) = dom.one();
        return m;
    }
    static Mat from_col(std::vector<E> v) {
        Mat m;
        m.rows = static_cast<int>(v.size());
        m.cols = 1;
        m.a = std::move(v);
        return m;
    }
    static Mat from_row(std::vector<E> v) {
        Mat m;
        m.rows = 1;
        m.cols = static_cast<int>(v.size());
        m.a = std::move(v);
        return m;
    }
    static Mat from_data(int r, int c, std::vector<E> data) {
        if (static_cast<std::size_t>(r) * c != data.size())
            throw DimensionMismatch("from_data: entry count differs from shape");
        Mat m;
        m.rows = r;
        m.cols = c;
        m.a = std::move(data);
        return m;
    }

    E& at(int i, int j) { return a[static_cast<std::size_t>(i) * cols + j]; }
    const E& at(int i, int j) const { return a[static_cast<std::size_t>(i) * cols + j]; }

    bool operator==(const Mat&) const = default;

    std::vector<E> col(int j) const {
        std::vector<E> v;
        v.reserve(rows);
        for (int i = 0; i < rows; ++i) v.push_back(at(i, j));
        return v;
    }
    std::vector<E> row(int i) const {
        std::vector<E> v(a.begin() + static_cast<std::size_t>(i) * cols,
                         a.begin() + static_cast<std::size_t>(i + 1) * cols);
        return v;
    }
};

template <class D>
Mat<D> transpose(const Mat<D>& m) {
    Mat<D> t;
    t.rows = m.cols;
    t.cols = m.rows;
    t.a.resize(m.a.size());
    for (int i = 0; i < m.rows; ++i)
        for (int j = 0; j < m.cols; ++j) t.at(j, i) = m.at(i, j);
    return t;
}

template <class D>
Mat<D> mat_mul(const D& dom, const Mat<D>& x, const Mat<D>& y) {
    if (x.cols != y.rows) throw DimensionMismatch("mat_mul: inner dimensions differ");
    Mat<D> r = Mat<D>::zero(dom, x.rows, y.cols);
    for (int i = 0; i < x.rows; ++i)
        for (int k = 0; k < x.cols; ++k) {
            if (dom.is_zero(x.at(i, k))) continue;
            for (int j = 0; j < y.cols; ++j)
                r.at(i, j) = dom.add(r.at(i, j), dom.mul(x.at(i, k), y.at(k, j)));
        }
    return r;
}

template <class D>
Mat<D> mat_add(const D& dom, const Mat<D>& x, const Mat<D>& y) {
    if (x.rows != y.rows || x.cols != y.cols) throw DimensionMismatch("mat_add: shapes differ");
    Mat<D> r = x;
    for (std::size_t i = 0; i < r.a.size(); ++i) r.a[i] = dom.add(r.a[i], y.a[i]);
    return r;
}

template <class D>
Mat<D> mat_sub(const D& dom, const Mat<D>& x, const Mat<D>& y) {
    if (x.rows != y.rows || x.cols != y.cols) throw DimensionMismatch("mat_sub: shapes differ");
    Mat<D> r = x;
    for (std::size_t i = 0; i < r.a.size(); ++i) r.a[i] = dom.sub(r.a[i], y.a[i]);
    return r;
}

template <class D>
Mat<D> mat_neg(const D& dom, const Mat<D>& x) {
    Mat<D> r = x;
    for (auto& e : r.a) e = dom.neg(e);
    return r;
}

template <class D>
std::vector<typename D::Elem> mat_vec(const D& dom, const Mat<D>& m,
                                      const std::vector<typename D::Elem>& v) {
    if (m.cols != static_cast<int>(v.size()))
        throw DimensionMismatch("mat_vec: dimensions differ");
    std::vector<typename D::Elem> r(m.rows, dom.zero());
    for (int i = 0; i < m.rows; ++i)
        for (int j = 0; j < m.cols; ++j)
            if (!dom.is_zero(m.at(i, j))) r[i] = dom.add(r[i], dom.mul(m.at(i, j), v[j]));
    return r;
}

/// [x | y], side by side.  Either side may have zero columns.
template <class D>
Mat<D> hstack(const Mat<D>& x, const Mat<D>& y) {
    if (x.rows != y.rows) throw DimensionMismatch("hstack: row counts differ");
    Mat<D> r;
    r.rows = x.rows;
    r.cols = x.cols + y.cols;
    r.a.reserve(static_cast<std::size_t>(r.rows) * r.cols);
    for (int i = 0; i < r.rows; ++i) {
        for (int j = 0; j < x.cols; ++j) r.a.push_back(x.at(i, j));
        for (int j = 0; j < y.cols; ++j) r.a.push_back(y.at(i, j));
    }
    return r;
}

template <class D>
Mat<D> vstack(const Mat<D>& x, const Mat<D>& y) {
    if (x.cols != y.cols) throw DimensionMismatch("vstack: column counts differ");
    Mat<D> r = x;
    r.rows = x.rows + y.rows;
    r.a.insert(r.a.end(), y.a.begin(), y.a.end());
    return r;
}

template <class D>
Mat<D> block_diag(const D& dom, const Mat<D>& x, const Mat<D>& y) {
    Mat<D> r = Mat<D>::zero(dom, x.rows + y.rows, x.cols + y.cols);
    for (int i = 0; i < x.rows; ++i)
        for (int j = 0; j < x.cols; ++j) r.at(i, j) = x.at(i, j);
    for (int i = 0; i < y.rows; ++i)
        for (int j = 0; j < y.cols; ++j) r.at(x.rows + i, x.cols + j) = y.at(i, j);
    return r;
}

/// n diagonal copies of m.
template <class D>
Mat<D> block_diag_copies(const D& dom, const Mat<D>& m, int n) {
    Mat<D> r = Mat<D>::zero(dom, m.rows * n, m.cols * n);
    for (int b = 0; b < n; ++b)
        for (int i = 0; i < m.rows; ++i)
            for (int j = 0; j < m.cols; ++j) r.at(b * m.rows + i, b * m.cols + j) = m.at(i, j);
    return r;
}

/// Kronecker product m (x) I_k, the coordinate form of applying m blockwise.
template <class D>
Mat<D> kron_identity(const D& dom, const Mat<D>& m, int k) {
    Mat<D> r = Mat<D>::zero(dom, m.rows * k, m.cols * k);
    for (int i = 0; i < m.rows; ++i)
        for (int j = 0; j < m.cols; ++j) {
            if (dom.is_zero(m.at(i, j))) continue;
            for (int c = 0; c < k; ++c) r.at(i * k + c, j * k + c) = m.at(i, j);
        }
    return r;
}

template <class D>
Mat<D> submatrix_rows(const Mat<D>& m, int row0, int nrows) {
    Mat<D> r;
    r.rows = nrows;
    r.cols = m.cols;
    r.a.assign(m.a.begin() + static_cast<std::size_t>(row0) * m.cols,
               m.a.begin() + static_cast<std::size_t>(row0 + nrows) * m.cols);
    return r;
}

template <class D>
Mat<D> select_cols(const Mat<D>& m, const std::vector<int>& js) {
    Mat<D> r;
    r.rows = m.rows;
    r.cols = static_cast<int>(js.size());
    r.a.reserve(static_cast<std::size_t>(r.rows) * r.cols);
    for (int i = 0; i < m.rows; ++i)
        for (int j : js) r.a.push_back(m.at(i, j));
    return r;
}

template <class D>
Mat<D> reduce_entries(const Ring<D>& ring, Mat<D> m) {
    for (auto& e : m.a) e = ring.reduce(e);
    return m;
}

template <class D>
bool is_zero_mat(const D& dom, const Mat<D>& m) {
    for (const auto& e : m.a)
        if (!dom.is_zero(e)) return false;
    return true;
}

}  // namespace ppmod
