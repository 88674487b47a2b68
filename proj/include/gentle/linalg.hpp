#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <cstddef>
#include <map>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace gentle {

using Q = mpq_class;
using Z = mpz_class;

/// Library error carrying a short machine-readable code such as "NotGentle".
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& what)
        : std::runtime_error(code + ": " + what), code_(std::move(code)) {}
    const std::string& code() const { return code_; }

private:
    std::string code_;
};

/// Dense row-major matrix over the rationals.
class Matrix {
public:
    Matrix() = default;
    Matrix(int rows, int cols) : r_(rows), c_(cols), a_(static_cast<std::size_t>(rows) * cols) {}

    static Matrix identity(int n)
    {
        Matrix m(n, n);
        for (int i = 0; i < n; ++i) m(i, i) = 1;
        return m;
    }

    int rows() const { return r_; }
    int cols() const { return c_; }
    bool empty() const { return r_ == 0 || c_ == 0; }

    Q& operator()(int i, int j) { return a_[static_cast<std::size_t>(i) * c_ + j]; }
    const Q& operator()(int i, int j) const { return a_[static_cast<std::size_t>(i) * c_ + j]; }

    bool is_zero() const
    {
        for (const auto& x : a_)
            if (sgn(x) != 0) return false;
        return true;
    }

    Matrix transpose() const
    {
        Matrix t(c_, r_);
        for (int i = 0; i < r_; ++i)
            for (int j = 0; j < c_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    friend Matrix operator*(const Matrix& x, const Matrix& y)
    {
        if (x.c_ != y.r_) throw Error("ShapeMismatch", "matrix product");
        Matrix p(x.r_, y.c_);
        for (int i = 0; i < x.r_; ++i)
            for (int k = 0; k < x.c_; ++k) {
                const Q& xik = x(i, k);
                if (sgn(xik) == 0) continue;
                for (int j = 0; j < y.c_; ++j)
                    if (sgn(y(k, j)) != 0) p(i, j) += xik * y(k, j);
            }
        return p;
    }

    friend Matrix operator+(const Matrix& x, const Matrix& y)
    {
        if (x.r_ != y.r_ || x.c_ != y.c_) throw Error("ShapeMismatch", "matrix sum");
        Matrix s = x;
        for (std::size_t i = 0; i < s.a_.size(); ++i) s.a_[i] += y.a_[i];
        return s;
    }

    friend Matrix operator-(const Matrix& x, const Matrix& y)
    {
        if (x.r_ != y.r_ || x.c_ != y.c_) throw Error("ShapeMismatch", "matrix difference");
        Matrix s = x;
        for (std::size_t i = 0; i < s.a_.size(); ++i) s.a_[i] -= y.a_[i];
        return s;
    }

    Matrix scaled(const Q& c) const
    {
        Matrix s = *this;
        for (auto& x : s.a_) x *= c;
        return s;
    }

    friend bool operator==(const Matrix& x, const Matrix& y)
    {
        return x.r_ == y.r_ && x.c_ == y.c_ && x.a_ == y.a_;
    }

    Matrix column(int j) const
    {
        Matrix v(r_, 1);
        for (int i = 0; i < r_; ++i) v(i, 0) = (*this)(i, j);
        return v;
    }

private:
    int r_ = 0, c_ = 0;
    std::vector<Q> a_;
};

/// Reduced row echelon form in place; returns the pivot columns.
inline std::vector<int> rref(Matrix& m)
{
    std::vector<int> piv;
    int row = 0;
    for (int col = 0; col < m.cols() && row < m.rows(); ++col) {
        int p = -1;
        for (int i = row; i < m.rows(); ++i)
            if (sgn(m(i, col)) != 0) { p = i; break; }
        if (p < 0) continue;
        if (p != row)
            for (int j = 0; j < m.cols(); ++j) std::swap(m(p, j), m(row, j));
        Q inv = 1 / m(row, col);
        for (int j = col; j < m.cols(); ++j) m(row, j) *= inv;
        for (int i = 0; i < m.rows(); ++i) {
            if (i == row || sgn(m(i, col)) == 0) continue;
            Q f = m(i, col);
            for (int j = col; j < m.cols(); ++j)
                if (sgn(m(row, j)) != 0) m(i, j) -= f * m(row, j);
        }
        piv.push_back(col);
        ++row;
    }
    return piv;
}

inline int rank(Matrix m) { return static_cast<int>(rref(m).size()); }

/// Basis of the right kernel, one column per basis vector.
inline Matrix nullspace(const Matrix& a)
{
    Matrix m = a;
    auto piv = rref(m);
    std::vector<char> is_piv(a.cols(), 0);
    for (int p : piv) is_piv[p] = 1;
    int nfree = a.cols() - static_cast<int>(piv.size());
    Matrix k(a.cols(), nfree);
    int f = 0;
    for (int j = 0; j < a.cols(); ++j) {
        if (is_piv[j]) continue;
        k(j, f) = 1;
        for (std::size_t r = 0; r < piv.size(); ++r) k(piv[r], f) = -m(static_cast<int>(r), j);
        ++f;
    }
    return k;
}

/// Columns of a spanning the column space, as a basis matrix.
inline Matrix column_basis(const Matrix& a)
{
    Matrix m = a;
    auto piv = rref(m);
    Matrix b(a.rows(), static_cast<int>(piv.size()));
    for (std::size_t j = 0; j < piv.size(); ++j)
        for (int i = 0; i < a.rows(); ++i) b(i, static_cast<int>(j)) = a(i, piv[j]);
    return b;
}

inline Matrix hcat(const Matrix& x, const Matrix& y)
{
    if (x.cols() == 0) return y;
    if (y.cols() == 0) return x;
    if (x.rows() != y.rows()) throw Error("ShapeMismatch", "hcat");
    Matrix m(x.rows(), x.cols() + y.cols());
    for (int i = 0; i < x.rows(); ++i) {
        for (int j = 0; j < x.cols(); ++j) m(i, j) = x(i, j);
        for (int j = 0; j < y.cols(); ++j) m(i, x.cols() + j) = y(i, j);
    }
    return m;
}

inline Matrix vcat(const Matrix& x, const Matrix& y)
{
    if (x.rows() == 0) return y;
    if (y.rows() == 0) return x;
    if (x.cols() != y.cols()) throw Error("ShapeMismatch", "vcat");
    Matrix m(x.rows() + y.rows(), x.cols());
    for (int j = 0; j < x.cols(); ++j) {
        for (int i = 0; i < x.rows(); ++i) m(i, j) = x(i, j);
        for (int i = 0; i < y.rows(); ++i) m(x.rows() + i, j) = y(i, j);
    }
    return m;
}

/// Solves b = basis * x for x, where basis has independent columns.
/// Throws if b is not in the column span.
inline Matrix solve_in_basis(const Matrix& basis, const Matrix& b)
{
    int k = basis.cols();
    Matrix aug = hcat(basis, b);
    auto piv = rref(aug);
    Matrix x(k, b.cols());
    for (std::size_t r = 0; r < piv.size(); ++r) {
        if (piv[r] >= k) throw Error("NotInSpan", "vector outside column span");
        for (int j = 0; j < b.cols(); ++j) x(piv[r], j) = aug(static_cast<int>(r), k + j);
    }
    if (static_cast<int>(piv.size()) < k) throw Error("Singular", "basis columns dependent");
    return x;
}

inline Matrix inverse(const Matrix& a)
{
    if (a.rows() != a.cols()) throw Error("ShapeMismatch", "inverse of non-square");
    return solve_in_basis(a, Matrix::identity(a.rows()));
}

inline bool invertible(const Matrix& a) { return a.rows() == a.cols() && rank(a) == a.rows(); }

/// Basis of a complement of span(sub) inside K^n, chosen among unit vectors.
inline Matrix complement_basis(const Matrix& sub, int n)
{
    Matrix cur = sub.cols() ? column_basis(sub) : Matrix(n, 0);
    Matrix out(n, 0);
    int have = cur.cols();
    for (int i = 0; i < n && have < n; ++i) {
        Matrix e(n, 1);
        e(i, 0) = 1;
        Matrix t = hcat(cur, e);
        if (rank(t) > have) {
            cur = t;
            out = hcat(out, e);
            ++have;
        }
    }
    return out;
}

/// Intersection of two column spans, returned as a basis.
inline Matrix intersect_spans(const Matrix& u, const Matrix& w)
{
    int n = u.rows();
    if (u.cols() == 0 || w.cols() == 0) return Matrix(n, 0);
    Matrix m = hcat(u, w.scaled(-1));
    Matrix k = nullspace(m);
    Matrix r(n, k.cols());
    for (int c = 0; c < k.cols(); ++c)
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < u.cols(); ++j)
                if (sgn(k(j, c)) != 0) r(i, c) += u(i, j) * k(j, c);
    return r.cols() ? column_basis(r) : r;
}

inline Matrix random_integer_matrix(int rows, int cols, std::mt19937_64& rng, int bound = 97)
{
    std::uniform_int_distribution<int> d(-bound, bound);
    Matrix m(rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) m(i, j) = d(rng);
    return m;
}

inline Matrix random_invertible(int n, std::mt19937_64& rng, int bound = 97)
{
    for (;;) {
        Matrix m = random_integer_matrix(n, n, rng, bound);
        if (invertible(m)) return m;
    }
}

/// Sparse homogeneous linear system solved by incremental elimination.
class SparseSystem {
public:
    using Row = std::vector<std::pair<int, Q>>;

    explicit SparseSystem(int ncols) : n_(ncols), pivot_of_(ncols, -1) {}

    int cols() const { return n_; }
    int rank() const { return static_cast<int>(pivots_.size()); }

    /// Adds an equation; entries may be unsorted and repeated.
    void add(Row r)
    {
        normalize(r);
        while (!r.empty()) {
            int c = r.front().first;
            int p = pivot_of_[c];
            if (p < 0) {
                Q inv = 1 / r.front().second;
                for (auto& e : r) e.second *= inv;
                pivot_of_[c] = static_cast<int>(pivots_.size());
                pivots_.push_back(std::move(r));
                return;
            }
            Q f = r.front().second;
            r = axpy(r, pivots_[p], -f);
        }
    }

    /// Kernel basis as dense vectors.
    std::vector<std::vector<Q>> kernel() const
    {
        // tails of fully reduced rows, filled from the largest pivot column down
        std::vector<std::map<int, Q>> tail(pivots_.size());
        for (int c = n_ - 1; c >= 0; --c) {
            int p = pivot_of_[c];
            if (p < 0) continue;
            std::map<int, Q>& acc = tail[p];
            const Row& r = pivots_[p];
            for (std::size_t k = 1; k < r.size(); ++k) {
                int c2 = r[k].first;
                int p2 = pivot_of_[c2];
                if (p2 < 0) {
                    acc[c2] += r[k].second;
                } else {
                    for (const auto& [c3, v3] : tail[p2]) acc[c3] -= r[k].second * v3;
                }
            }
        }
        std::vector<int> free_index(n_, -1);
        std::vector<std::vector<Q>> basis;
        for (int j = 0; j < n_; ++j) {
            if (pivot_of_[j] >= 0) continue;
            free_index[j] = static_cast<int>(basis.size());
            std::vector<Q> v(n_);
            v[j] = 1;
            basis.push_back(std::move(v));
        }
        for (int c = 0; c < n_; ++c) {
            int p = pivot_of_[c];
            if (p < 0) continue;
            for (const auto& [c2, v2] : tail[p])
                if (sgn(v2) != 0) basis[free_index[c2]][c] = -v2;
        }
        return basis;
    }

private:
    static void normalize(Row& r)
    {
        std::sort(r.begin(), r.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
        Row out;
        for (auto& e : r) {
            if (!out.empty() && out.back().first == e.first)
                out.back().second += e.second;
            else
                out.push_back(std::move(e));
        }
        Row z;
        for (auto& e : out)
            if (sgn(e.second) != 0) z.push_back(std::move(e));
        r = std::move(z);
    }

    static Row axpy(const Row& x, const Row& y, const Q& f)
    {
        Row out;
        out.reserve(x.size() + y.size());
        std::size_t i = 0, j = 0;
        while (i < x.size() || j < y.size()) {
            if (j == y.size() || (i < x.size() && x[i].first < y[j].first)) {
                out.push_back(x[i++]);
            } else if (i == x.size() || y[j].first < x[i].first) {
                out.emplace_back(y[j].first, f * y[j].second);
                ++j;
            } else {
                Q v = x[i].second + f * y[j].second;
                if (sgn(v) != 0) out.emplace_back(x[i].first, std::move(v));
                ++i;
                ++j;
            }
        }
        return out;
    }

    int n_;
    std::vector<int> pivot_of_;
    std::vector<Row> pivots_;
};

} // namespace gentle
