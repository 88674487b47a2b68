#pragma once

#include "words.hpp"

#include <numeric>
#include <random>
#include <vector>

namespace gentle {

/// Representation with matrices[a] of shape dims[t(a)] x dims[s(a)].
struct Representation {
    std::vector<int> dims;
    std::vector<Matrix> mats;

    int total_dim() const { return std::accumulate(dims.begin(), dims.end(), 0); }
    bool is_zero() const { return total_dim() == 0; }
    friend bool operator==(const Representation&, const Representation&) = default;
};

inline Representation zero_rep(const GentleAlgebra& A, const std::vector<int>& dims)
{
    Representation M;
    M.dims = dims;
    for (int a = 0; a < A.m(); ++a) M.mats.emplace_back(dims[A.t(a)], dims[A.s(a)]);
    return M;
}

inline bool satisfies_relations(const GentleAlgebra& A, const Representation& M)
{
    for (auto [a, b] : A.relations)
        if (!(M.mats[a] * M.mats[b]).is_zero()) return false;
    return true;
}

inline void check_rep(const GentleAlgebra& A, const Representation& M)
{
    if (static_cast<int>(M.dims.size()) != A.n() || static_cast<int>(M.mats.size()) != A.m())
        throw Error("InvalidRepresentation", "wrong number of vertices or arrows");
    for (int a = 0; a < A.m(); ++a)
        if (M.mats[a].rows() != M.dims[A.t(a)] || M.mats[a].cols() != M.dims[A.s(a)])
            throw Error("InvalidRepresentation", "matrix shape for arrow " + A.quiver.arrow(a).id);
    if (!satisfies_relations(A, M)) throw Error("InvalidRepresentation", "relations not satisfied");
}

/// Basis position of each standard basis vector: (vertex, index within that vertex).
struct BasisLayout {
    std::vector<int> vertex, index;
    std::vector<int> dims;
};

inline BasisLayout layout(int n, const std::vector<int>& vertex_of)
{
    BasisLayout L;
    L.dims.assign(n, 0);
    L.vertex = vertex_of;
    for (int v : vertex_of) L.index.push_back(L.dims[v]++);
    return L;
}

/// Vertex of the basis vector b_{j+1} (0-based j) of M(C).
inline int string_basis_vertex(const GentleAlgebra& A, const StringWord& C, int j)
{
    if (C.trivial()) return C.vertex;
    if (j < C.length()) return ltgt(A, C.letters[j]);
    return lsrc(A, C.letters.back());
}

inline Representation string_module(const GentleAlgebra& A, const StringWord& C)
{
    check_string(A, C);
    int m = C.length();
    std::vector<int> vx;
    for (int j = 0; j <= m; ++j) vx.push_back(string_basis_vertex(A, C, j));
    auto L = layout(A.n(), vx);
    Representation M = zero_rep(A, L.dims);
    for (int j = 0; j < m; ++j) {
        const Letter& c = C.letters[j];
        // direct c_j: a b_{j+1} = b_j; inverse c_j: a b_j = b_{j+1}
        int from = c.inv ? j : j + 1;
        int to = c.inv ? j + 1 : j;
        M.mats[c.arrow](L.index[to], L.index[from]) = 1;
    }
    return M;
}

/// Band module with the scalar parameter replaced by a k x k matrix T
/// (T = [lambda] gives M(B, lambda, 1)).
inline Representation band_module(const GentleAlgebra& A, const BandWord& B, const Matrix& T)
{
    check_band(A, B);
    int k = T.rows();
    if (k == 0 || T.cols() != k) throw Error("InvalidParameter", "band parameter must be square");
    if (!invertible(T)) throw Error("ZeroLambda", "band parameter must be invertible");
    int m = B.length();
    std::vector<int> vx;
    for (int j = 0; j < m; ++j)
        for (int r = 0; r < k; ++r) vx.push_back(ltgt(A, B.letters[j]));
    auto L = layout(A.n(), vx);
    Representation M = zero_rep(A, L.dims);
    for (int j = 0; j < m; ++j) {
        const Letter& c = B.letters[j];
        int nxt = (j + 1) % m;
        int from = c.inv ? j : nxt;
        int to = c.inv ? nxt : j;
        bool wrap = j == m - 1;
        for (int r = 0; r < k; ++r)
            for (int s = 0; s < k; ++s) {
                Q val = wrap ? T(s, r) : Q(r == s ? 1 : 0);
                if (sgn(val) == 0) continue;
                M.mats[c.arrow](L.index[to * k + s], L.index[from * k + r]) = val;
            }
    }
    return M;
}

inline Representation band_module(const GentleAlgebra& A, const BandWord& B, const Q& lambda, int q = 1)
{
    if (sgn(lambda) == 0) throw Error("ZeroLambda", "lambda must be nonzero");
    if (q != 1) throw Error("UnsupportedQuasiLength", "only quasi-length 1 band modules are built");
    Matrix T(1, 1);
    T(0, 0) = lambda;
    return band_module(A, B, T);
}

/// Paths starting at vertex i as arrow sequences (first arrow first).
inline std::vector<std::vector<int>> paths_from(const GentleAlgebra& A, int i)
{
    std::vector<std::vector<int>> paths{{}};
    for (std::size_t h = 0; h < paths.size(); ++h) {
        auto p = paths[h];
        int at = p.empty() ? i : A.t(p.back());
        for (int a = 0; a < A.m(); ++a) {
            if (A.s(a) != at) continue;
            if (!p.empty() && A.in_I(a, p.back())) continue;
            auto q = p;
            q.push_back(a);
            paths.push_back(std::move(q));
        }
    }
    return paths;
}

/// Indecomposable projective P_i = e_i A realised on the paths starting at i.
inline Representation projective(const GentleAlgebra& A, int i)
{
    auto paths = paths_from(A, i);
    std::vector<int> vx;
    for (const auto& p : paths) vx.push_back(p.empty() ? i : A.t(p.back()));
    auto L = layout(A.n(), vx);
    Representation M = zero_rep(A, L.dims);
    for (std::size_t x = 0; x < paths.size(); ++x)
        for (std::size_t y = 0; y < paths.size(); ++y) {
            if (paths[y].size() != paths[x].size() + 1) continue;
            if (!std::equal(paths[x].begin(), paths[x].end(), paths[y].begin())) continue;
            int a = paths[y].back();
            M.mats[a](L.index[y], L.index[x]) = 1;
        }
    return M;
}

inline Representation simple(const GentleAlgebra& A, int i)
{
    std::vector<int> d(A.n(), 0);
    d[i] = 1;
    return zero_rep(A, d);
}

/// The string C with M(C) isomorphic to P_i.
inline StringWord projective_string(const GentleAlgebra& A, int i)
{
    StringWord C = trivial_string(i, 1);
    std::vector<Letter> left, right;
    for (int a : A.quiver.out(i)) {
        if (A.sigma[a] == -1) left.push_back({a, false});
        else right.push_back({a, true});
    }
    while (!left.empty()) {
        Letter c = left.back();
        Letter nxt{-1, false};
        for (int b = 0; b < A.m(); ++b)
            if (letters_compose(A, Letter{b, false}, c)) nxt = {b, false};
        if (nxt.arrow < 0) break;
        left.push_back(nxt);
    }
    while (!right.empty()) {
        Letter c = right.back();
        Letter nxt{-1, true};
        for (int b = 0; b < A.m(); ++b)
            if (letters_compose(A, c, Letter{b, true})) nxt = {b, true};
        if (nxt.arrow < 0) break;
        right.push_back(nxt);
    }
    std::vector<Letter> w(left.rbegin(), left.rend());
    w.insert(w.end(), right.begin(), right.end());
    if (w.empty()) return C;
    return canonical_string(A, {w, 0, 1});
}

inline Representation direct_sum(const GentleAlgebra& A, const Representation& X, const Representation& Y)
{
    std::vector<int> d(A.n());
    for (int v = 0; v < A.n(); ++v) d[v] = X.dims[v] + Y.dims[v];
    Representation S = zero_rep(A, d);
    for (int a = 0; a < A.m(); ++a) {
        int s = A.s(a), t = A.t(a);
        for (int i = 0; i < X.dims[t]; ++i)
            for (int j = 0; j < X.dims[s]; ++j) S.mats[a](i, j) = X.mats[a](i, j);
        for (int i = 0; i < Y.dims[t]; ++i)
            for (int j = 0; j < Y.dims[s]; ++j) S.mats[a](X.dims[t] + i, X.dims[s] + j) = Y.mats[a](i, j);
    }
    return S;
}

inline Representation direct_sum(const GentleAlgebra& A, const std::vector<Representation>& parts)
{
    Representation S = zero_rep(A, std::vector<int>(A.n(), 0));
    for (const auto& P : parts) S = direct_sum(A, S, P);
    return S;
}

/// g_t M_a g_s^{-1} for a base change g per vertex.
inline Representation conjugate(const GentleAlgebra& A, const Representation& M, const std::vector<Matrix>& g)
{
    Representation N = M;
    std::vector<Matrix> ginv;
    for (const auto& x : g) ginv.push_back(inverse(x));
    for (int a = 0; a < A.m(); ++a) N.mats[a] = g[A.t(a)] * M.mats[a] * ginv[A.s(a)];
    return N;
}

inline std::vector<Matrix> random_base_change(const std::vector<int>& dims, std::mt19937_64& rng, int bound = 97)
{
    std::vector<Matrix> g;
    for (int d : dims) g.push_back(random_invertible(d, rng, bound));
    return g;
}

inline std::vector<int> rank_function_of(const GentleAlgebra& A, const Representation& M)
{
    std::vector<int> r(A.m());
    for (int a = 0; a < A.m(); ++a) r[a] = rank(M.mats[a]);
    return r;
}

/// Restriction to a subrepresentation spanned by the columns of U[v].
inline Representation restrict_to(const GentleAlgebra& A, const Representation& M, const std::vector<Matrix>& U)
{
    std::vector<int> d(A.n());
    for (int v = 0; v < A.n(); ++v) d[v] = U[v].cols();
    Representation S = zero_rep(A, d);
    for (int a = 0; a < A.m(); ++a) {
        int s = A.s(a), t = A.t(a);
        if (d[s] == 0 || d[t] == 0) {
            if (d[s] && !(M.mats[a] * U[s]).is_zero()) throw Error("NotInSpan", "subspace not invariant");
            continue;
        }
        S.mats[a] = solve_in_basis(U[t], M.mats[a] * U[s]);
    }
    return S;
}

/// Quotient by the subrepresentation spanned by the columns of U[v].
inline Representation quotient_by(const GentleAlgebra& A, const Representation& M, const std::vector<Matrix>& U)
{
    std::vector<Matrix> Cb(A.n());
    std::vector<int> d(A.n());
    for (int v = 0; v < A.n(); ++v) {
        Cb[v] = complement_basis(U[v], M.dims[v]);
        d[v] = Cb[v].cols();
    }
    Representation R = zero_rep(A, d);
    for (int a = 0; a < A.m(); ++a) {
        int s = A.s(a), t = A.t(a);
        if (d[s] == 0 || d[t] == 0) continue;
        Matrix full = hcat(U[t].cols() ? U[t] : Matrix(M.dims[t], 0), Cb[t]);
        Matrix x = solve_in_basis(full, M.mats[a] * Cb[s]);
        Matrix y(d[t], d[s]);
        for (int i = 0; i < d[t]; ++i)
            for (int j = 0; j < d[s]; ++j) y(i, j) = x(U[t].cols() + i, j);
        R.mats[a] = y;
    }
    return R;
}

}  // namespace gentle
