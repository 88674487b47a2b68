#pragma once

#include "rep.hpp"

#include <optional>
#include <variant>

namespace gentle {

// ---------------------------------------------------------------- Hom spaces

namespace detail {

struct HomIndex {
    std::vector<int> offset;
    int total = 0;
};

inline HomIndex hom_index(const Representation& M, const Representation& N)
{
    HomIndex h;
    for (std::size_t v = 0; v < M.dims.size(); ++v) {
        h.offset.push_back(h.total);
        h.total += N.dims[v] * M.dims[v];
    }
    return h;
}

// equations N_a f_s - f_t M_a = 0 for all arrows
inline SparseSystem hom_system(const GentleAlgebra& A, const Representation& M, const Representation& N,
                               const HomIndex& h)
{
    SparseSystem sys(h.total);
    for (int a = 0; a < A.m(); ++a) {
        int s = A.s(a), t = A.t(a);
        int ms = M.dims[s], mt = M.dims[t], ns = N.dims[s], nt = N.dims[t];
        if (nt == 0 || ms == 0) continue;
        const Matrix& Na = N.mats[a];
        const Matrix& Ma = M.mats[a];
        for (int i = 0; i < nt; ++i)
            for (int j = 0; j < ms; ++j) {
                SparseSystem::Row row;
                for (int k = 0; k < ns; ++k)
                    if (sgn(Na(i, k)) != 0) row.emplace_back(h.offset[s] + k * ms + j, Na(i, k));
                for (int l = 0; l < mt; ++l)
                    if (sgn(Ma(l, j)) != 0) row.emplace_back(h.offset[t] + i * mt + l, -Ma(l, j));
                if (!row.empty()) sys.add(std::move(row));
            }
    }
    return sys;
}

}  // namespace detail

/// dim Hom_A(M, N) from the intertwiner equations.
inline int hom_dim_oracle(const GentleAlgebra& A, const Representation& M, const Representation& N)
{
    auto h = detail::hom_index(M, N);
    if (h.total == 0) return 0;
    auto sys = detail::hom_system(A, M, N, h);
    return h.total - sys.rank();
}

/// A homomorphism as one matrix per vertex (shape dims_N[v] x dims_M[v]).
using Morphism = std::vector<Matrix>;

inline std::vector<Morphism> hom_basis(const GentleAlgebra& A, const Representation& M, const Representation& N)
{
    auto h = detail::hom_index(M, N);
    std::vector<Morphism> out;
    if (h.total == 0) return out;
    auto sys = detail::hom_system(A, M, N, h);
    for (const auto& vec : sys.kernel()) {
        Morphism f;
        for (int v = 0; v < A.n(); ++v) {
            Matrix x(N.dims[v], M.dims[v]);
            for (int i = 0; i < N.dims[v]; ++i)
                for (int j = 0; j < M.dims[v]; ++j) x(i, j) = vec[h.offset[v] + i * M.dims[v] + j];
            f.push_back(std::move(x));
        }
        out.push_back(std::move(f));
    }
    return out;
}

inline Morphism random_combination(const std::vector<Morphism>& basis, std::mt19937_64& rng, int bound = 97)
{
    std::uniform_int_distribution<int> dist(-bound, bound);
    Morphism f = basis.front();
    for (auto& x : f) x = x.scaled(0);
    for (const auto& b : basis) {
        Q c = dist(rng);
        for (std::size_t v = 0; v < f.size(); ++v) f[v] = f[v] + b[v].scaled(c);
    }
    return f;
}

/// Isomorphism test: numerical invariants, then an explicit invertible intertwiner.
inline bool isomorphic(const GentleAlgebra& A, const Representation& M, const Representation& N,
                       std::uint64_t seed = 0)
{
    if (M.dims != N.dims) return false;
    if (M.is_zero()) return true;
    if (rank_function_of(A, M) != rank_function_of(A, N)) return false;
    int hmn = hom_dim_oracle(A, M, N);
    if (hmn != hom_dim_oracle(A, N, M) || hmn != hom_dim_oracle(A, M, M) || hmn != hom_dim_oracle(A, N, N))
        return false;
    auto basis = hom_basis(A, M, N);
    std::mt19937_64 rng(seed);
    for (int attempt = 0; attempt < 8; ++attempt) {
        Morphism f = random_combination(basis, rng);
        bool ok = true;
        for (const auto& x : f) ok = ok && invertible(x);
        if (ok) return true;
    }
    return false;
}

// ------------------------------------------------------ Projective presentations

/// Element of P0 = sum of copies of P_{v_c}: coefficients on (copy, path) pairs.
struct PathTerm {
    int copy = 0;
    int path = 0;
    Q coef;
};

/// All nonzero paths of A, each with its arrow list (first arrow first).
struct PathTable {
    std::vector<std::vector<int>> arrows;
    std::vector<int> src, tgt;
    std::map<std::vector<int>, int> id;

    explicit PathTable(const GentleAlgebra& A)
    {
        for (int v = 0; v < A.n(); ++v)
            for (auto& p : paths_from(A, v)) {
                id[p.empty() ? std::vector<int>{-1 - v} : p] = static_cast<int>(arrows.size());
                src.push_back(v);
                tgt.push_back(p.empty() ? v : A.t(p.back()));
                arrows.push_back(std::move(p));
            }
    }
    int trivial(int v) const { return id.at({-1 - v}); }
    int size() const { return static_cast<int>(arrows.size()); }

    /// Path u followed by path p, or -1 when zero.
    int compose(const GentleAlgebra& A, int u, int p) const
    {
        if (tgt[u] != src[p]) return -1;
        if (arrows[u].empty()) return p;
        if (arrows[p].empty()) return u;
        if (A.in_I(arrows[p].front(), arrows[u].back())) return -1;
        std::vector<int> w = arrows[u];
        w.insert(w.end(), arrows[p].begin(), arrows[p].end());
        auto it = id.find(w);
        return it == id.end() ? -1 : it->second;
    }
};

struct Presentation {
    std::vector<int> n;                       // top multiplicities of M
    std::vector<int> m;                       // top multiplicities of Omega M
    std::vector<int> copy_vertex;             // vertex of each copy of P0
    std::vector<int> gen_vertex;              // vertex of each generator of Omega M
    std::vector<std::vector<PathTerm>> gens;  // generators of Omega M inside P0
    Representation omega;
};

namespace detail {

inline std::vector<Matrix> radical(const GentleAlgebra& A, const Representation& M)
{
    std::vector<Matrix> rad(A.n());
    for (int v = 0; v < A.n(); ++v) {
        Matrix span(M.dims[v], 0);
        for (int a = 0; a < A.m(); ++a)
            if (A.t(a) == v && M.dims[A.s(a)] > 0) span = hcat(span, M.mats[a]);
        rad[v] = span.cols() ? column_basis(span) : Matrix(M.dims[v], 0);
    }
    return rad;
}

// vector M_p g for a path p applied to g in M at src(p)
inline Matrix act_path(const Representation& M, const std::vector<int>& p, const Matrix& g)
{
    Matrix x = g;
    for (int a : p) x = M.mats[a] * x;
    return x;
}

}  // namespace detail

inline std::vector<int> top_multiplicities(const GentleAlgebra& A, const Representation& M)
{
    auto rad = detail::radical(A, M);
    std::vector<int> n(A.n());
    for (int v = 0; v < A.n(); ++v) n[v] = M.dims[v] - rad[v].cols();
    return n;
}

inline Presentation min_proj_presentation(const GentleAlgebra& A, const Representation& M,
                                          const PathTable& paths)
{
    Presentation pr;
    auto rad = detail::radical(A, M);
    std::vector<Matrix> top_gens;  // generator vectors per copy
    pr.n.assign(A.n(), 0);
    for (int v = 0; v < A.n(); ++v) {
        Matrix comp = complement_basis(rad[v], M.dims[v]);
        pr.n[v] = comp.cols();
        for (int j = 0; j < comp.cols(); ++j) {
            pr.copy_vertex.push_back(v);
            top_gens.push_back(comp.column(j));
        }
    }
    // basis of P0 at each vertex: (copy, path)
    std::vector<std::vector<std::pair<int, int>>> basis(A.n());
    for (std::size_t c = 0; c < pr.copy_vertex.size(); ++c)
        for (int p = 0; p < paths.size(); ++p)
            if (paths.src[p] == pr.copy_vertex[c]) basis[paths.tgt[p]].push_back({static_cast<int>(c), p});
    // the cover map and its kernel
    std::vector<Matrix> K(A.n());
    std::vector<int> p0dims(A.n());
    for (int w = 0; w < A.n(); ++w) {
        p0dims[w] = static_cast<int>(basis[w].size());
        Matrix pi(M.dims[w], p0dims[w]);
        for (int j = 0; j < p0dims[w]; ++j) {
            auto [c, p] = basis[w][j];
            Matrix x = detail::act_path(M, paths.arrows[p], top_gens[c]);
            for (int i = 0; i < M.dims[w]; ++i) pi(i, j) = x(i, 0);
        }
        K[w] = M.dims[w] ? nullspace(pi) : Matrix::identity(p0dims[w]);
    }
    Representation P0 = zero_rep(A, p0dims);
    for (int a = 0; a < A.m(); ++a) {
        int s = A.s(a), t = A.t(a);
        for (int j = 0; j < p0dims[s]; ++j) {
            auto [c, p] = basis[s][j];
            int q = paths.compose(A, p, paths.id.at({a}));
            if (q < 0) continue;
            for (int i = 0; i < p0dims[t]; ++i)
                if (basis[t][i] == std::pair{c, q}) P0.mats[a](i, j) = 1;
        }
    }
    pr.omega = restrict_to(A, P0, K);
    auto orad = detail::radical(A, pr.omega);
    pr.m.assign(A.n(), 0);
    for (int w = 0; w < A.n(); ++w) {
        Matrix comp = complement_basis(orad[w], pr.omega.dims[w]);
        pr.m[w] = comp.cols();
        for (int j = 0; j < comp.cols(); ++j) {
            Matrix h = K[w] * comp.column(j);
            std::vector<PathTerm> terms;
            for (int i = 0; i < p0dims[w]; ++i)
                if (sgn(h(i, 0)) != 0) terms.push_back({basis[w][i].first, basis[w][i].second, h(i, 0)});
            pr.gen_vertex.push_back(w);
            pr.gens.push_back(std::move(terms));
        }
    }
    return pr;
}

inline Presentation min_proj_presentation(const GentleAlgebra& A, const Representation& M)
{
    return min_proj_presentation(A, M, PathTable(A));
}

// ------------------------------------------------------------ AR translation

/// tau M = D Tr M from the minimal presentation.
inline Representation tau_dtr(const GentleAlgebra& A, const Representation& M, const PathTable& paths)
{
    Presentation pr = min_proj_presentation(A, M, paths);
    int n = A.n();
    // (P1*)_x has basis (k, u) with u a path from x to gen_vertex[k];
    // (P0*)_x has basis (c, u) with u a path from x to copy_vertex[c].
    std::vector<std::vector<std::pair<int, int>>> b1(n), b0(n);
    std::vector<std::map<std::pair<int, int>, int>> b1_index(n);
    for (int p = 0; p < paths.size(); ++p) {
        int x = paths.src[p];
        for (std::size_t k = 0; k < pr.gen_vertex.size(); ++k)
            if (pr.gen_vertex[k] == paths.tgt[p]) {
                b1_index[x][{static_cast<int>(k), p}] = static_cast<int>(b1[x].size());
                b1[x].push_back({static_cast<int>(k), p});
            }
        for (std::size_t c = 0; c < pr.copy_vertex.size(); ++c)
            if (pr.copy_vertex[c] == paths.tgt[p]) b0[x].push_back({static_cast<int>(c), p});
    }
    std::vector<Matrix> Kx(n);
    std::vector<int> dims(n);
    for (int x = 0; x < n; ++x) {
        int d1 = static_cast<int>(b1[x].size()), d0 = static_cast<int>(b0[x].size());
        Matrix F(d1, d0);
        for (int j = 0; j < d0; ++j) {
            auto [c, u] = b0[x][j];
            for (std::size_t k = 0; k < pr.gens.size(); ++k)
                for (const auto& term : pr.gens[k]) {
                    if (term.copy != c) continue;
                    int pu = paths.compose(A, u, term.path);
                    if (pu < 0) continue;
                    F(b1_index[x].at({static_cast<int>(k), pu}), j) += term.coef;
                }
        }
        Kx[x] = d1 ? nullspace(F.transpose()) : Matrix(0, 0);
        dims[x] = Kx[x].cols();
    }
    Representation T = zero_rep(A, dims);
    for (int a = 0; a < A.m(); ++a) {
        int x = A.s(a), y = A.t(a);
        if (dims[x] == 0 || dims[y] == 0) continue;
        int dx = static_cast<int>(b1[x].size()), dy = static_cast<int>(b1[y].size());
        int pa = paths.id.at({a});
        Matrix R(dx, dy);
        for (int j = 0; j < dy; ++j) {
            auto [k, u] = b1[y][j];
            int ua = paths.compose(A, pa, u);
            if (ua < 0) continue;
            R(b1_index[x].at({k, ua}), j) = 1;
        }
        // rows phi R_a for each basis functional phi of tau M at x
        Matrix images = (Kx[x].transpose() * R).transpose();
        T.mats[a] = solve_in_basis(Kx[y], images);
    }
    return T;
}

inline Representation tau_dtr(const GentleAlgebra& A, const Representation& M)
{
    return tau_dtr(A, M, PathTable(A));
}

struct Zero {};
using TauResult = std::variant<StringWord, Zero>;

namespace detail {

inline std::optional<Letter> direct_before(const GentleAlgebra& A, Letter c)
{
    for (int b = 0; b < A.m(); ++b)
        if (letters_compose(A, Letter{b, false}, c)) return Letter{b, false};
    return std::nullopt;
}
inline std::optional<Letter> inverse_before(const GentleAlgebra& A, Letter c)
{
    for (int b = 0; b < A.m(); ++b)
        if (letters_compose(A, Letter{b, true}, c)) return Letter{b, true};
    return std::nullopt;
}
inline std::optional<Letter> direct_after(const GentleAlgebra& A, Letter c)
{
    for (int b = 0; b < A.m(); ++b)
        if (letters_compose(A, c, Letter{b, false})) return Letter{b, false};
    return std::nullopt;
}
inline std::optional<Letter> inverse_after(const GentleAlgebra& A, Letter c)
{
    for (int b = 0; b < A.m(); ++b)
        if (letters_compose(A, c, Letter{b, true})) return Letter{b, true};
    return std::nullopt;
}

}  // namespace detail

inline bool is_projective_string(const GentleAlgebra& A, const StringWord& C)
{
    StringWord c = canonical_string(A, C);
    for (int v = 0; v < A.n(); ++v)
        if (canonical_string(A, projective_string(A, v)) == c) return true;
    return false;
}

/// AR translate of M(C) by adding cohooks and deleting hooks.
inline TauResult tau_string(const GentleAlgebra& A, const StringWord& C)
{
    check_string(A, C);
    if (is_projective_string(A, C)) return Zero{};
    std::vector<Letter> w = C.letters;
    int left_vertex = string_target(A, C), left_eps = string_epsilon(A, C);
    int right_vertex = string_source(A, C), right_sig = string_sigma(A, C);
    // a direct letter b may be prepended when s(b) = t(C) and sigma(b) = -eps(C)
    std::optional<Letter> lb, rb;
    for (int b = 0; b < A.m(); ++b) {
        if (A.s(b) == left_vertex && A.sigma[b] == -left_eps) lb = Letter{b, false};
        if (A.s(b) == right_vertex && A.sigma[b] == -right_sig) rb = Letter{b, true};
    }
    bool add_left = lb.has_value(), add_right = rb.has_value();
    if (add_left) {
        w.insert(w.begin(), *lb);
        while (auto c = detail::inverse_before(A, w.front())) w.insert(w.begin(), *c);
    }
    if (add_right) {
        w.push_back(*rb);
        while (auto c = detail::direct_after(A, w.back())) w.push_back(*c);
    }
    StringWord r{w, left_vertex, left_eps};
    if (!add_left) {
        auto it = std::find_if(r.letters.begin(), r.letters.end(), [](Letter c) { return c.inv; });
        if (it == r.letters.end()) throw Error("InternalError", "no hook to delete on the left");
        Letter c = *it;
        r.letters.erase(r.letters.begin(), it + 1);
        if (r.letters.empty()) r = trivial_string(lsrc(A, c), -lsigma(A, c));
    }
    if (!add_right) {
        auto it = std::find_if(r.letters.rbegin(), r.letters.rend(), [](Letter c) { return !c.inv; });
        if (it == r.letters.rend()) throw Error("InternalError", "no hook to delete on the right");
        Letter c = *it;
        r.letters.erase(std::prev(it.base()), r.letters.end());
        if (r.letters.empty()) r = trivial_string(ltgt(A, c), lepsilon(A, c));
    }
    return canonical_string(A, r);
}

// ---------------------------------------------------- Ext, g-vectors, E-invariants

struct DecoratedModule {
    Representation module;
    std::vector<int> v;
};

inline int ext1_dim(const GentleAlgebra& A, const Representation& M, const Representation& N,
                    const PathTable& paths)
{
    Presentation pr = min_proj_presentation(A, M, paths);
    int p0n = 0;
    for (int v = 0; v < A.n(); ++v) p0n += pr.n[v] * N.dims[v];
    return hom_dim_oracle(A, pr.omega, N) - p0n + hom_dim_oracle(A, M, N);
}

inline int ext1_dim(const GentleAlgebra& A, const Representation& M, const Representation& N)
{
    return ext1_dim(A, M, N, PathTable(A));
}

inline std::vector<int> g_vector(const GentleAlgebra& A, const DecoratedModule& dec, const PathTable& paths)
{
    std::vector<int> g = dec.v.empty() ? std::vector<int>(A.n(), 0) : dec.v;
    if (dec.module.is_zero()) return g;
    Presentation pr = min_proj_presentation(A, dec.module, paths);
    for (int i = 0; i < A.n(); ++i) g[i] += pr.m[i] - pr.n[i];
    return g;
}

inline std::vector<int> g_vector(const GentleAlgebra& A, const DecoratedModule& dec)
{
    return g_vector(A, dec, PathTable(A));
}

inline int e_invariant(const GentleAlgebra& A, const DecoratedModule& M, const DecoratedModule& N,
                       const PathTable& paths)
{
    const Representation& X = M.module;
    const Representation& Y = N.module;
    int pair_v = 0, pair_g = 0;
    auto g = g_vector(A, M, paths);
    for (int i = 0; i < A.n(); ++i) {
        int vi = M.v.empty() ? 0 : M.v[i];
        pair_v += vi * Y.dims[i];
        pair_g += g[i] * Y.dims[i];
    }
    int lhs = (X.is_zero() || Y.is_zero() ? 0 : hom_dim_oracle(A, Y, tau_dtr(A, X, paths))) + pair_v;
    int rhs = (X.is_zero() || Y.is_zero() ? 0 : hom_dim_oracle(A, X, Y)) + pair_g;
    if (lhs != rhs) throw Error("FormulaMismatch", "E-invariant formulas disagree");
    return lhs;
}

inline int e_invariant(const GentleAlgebra& A, const DecoratedModule& M, const DecoratedModule& N)
{
    return e_invariant(A, M, N, PathTable(A));
}

inline bool is_tau_rigid(const GentleAlgebra& A, const Representation& M)
{
    if (M.is_zero()) return true;
    return hom_dim_oracle(A, M, tau_dtr(A, M)) == 0;
}

// ------------------------------------------------------ Standard homomorphisms

/// A word that is either a string or a band, read as a periodic word for bands.
struct Walk {
    std::vector<Letter> w;
    bool band = false;
    int vertex = 0;  // for trivial strings
    int sign = 1;

    static Walk of(const StringWord& C) { return {C.letters, false, C.vertex, C.sign}; }
    static Walk of(const BandWord& B) { return {B.letters, true, 0, 1}; }
    int m() const { return static_cast<int>(w.size()); }
    Letter at(int i) const { return w[((i % m()) + m()) % m()]; }
};

/// A substring E of a walk with the letters next to it.
struct Segment {
    int start = 0, len = 0;
    std::vector<Letter> e;
    int vertex = 0;  // used when len == 0
    int sign = 0;    // sign of the trivial string, 0 when free
    bool has_before = false, has_after = false;
};

namespace detail {

inline int walk_vertex(const GentleAlgebra& A, const Walk& W, int p)
{
    if (W.band) return ltgt(A, W.at(p));
    if (W.w.empty()) return W.vertex;
    if (p < W.m()) return ltgt(A, W.w[p]);
    return lsrc(A, W.w.back());
}

/// factor=true: E is a factor (D ends direct, F starts inverse); else a submodule.
inline std::vector<Segment> segments(const GentleAlgebra& A, const Walk& W, bool factor, int cap)
{
    std::vector<Segment> out;
    int m = W.m();
    int starts = W.band ? m : m + 1;
    for (int p = 0; p < starts; ++p) {
        int maxlen = W.band ? cap : m - p;
        for (int len = 0; len <= maxlen; ++len) {
            Segment s;
            s.start = p;
            s.len = len;
            s.has_before = W.band || p > 0;
            s.has_after = W.band || p + len < m;
            if (s.has_before) {
                Letter b = W.band ? W.at(p - 1) : W.w[p - 1];
                if (b.inv == factor) continue;
            }
            if (s.has_after) {
                Letter f = W.band ? W.at(p + len) : W.w[p + len];
                if (f.inv != factor) continue;
            }
            for (int k = 0; k < len; ++k) s.e.push_back(W.band ? W.at(p + k) : W.w[p + k]);
            s.vertex = walk_vertex(A, W, p);
            if (len == 0) {
                if (s.has_before) s.sign = -lsigma(A, W.band ? W.at(p - 1) : W.w[p - 1]);
                else if (s.has_after) s.sign = lepsilon(A, W.band ? W.at(p) : W.w[p]);
                else s.sign = W.sign;
            }
            out.push_back(std::move(s));
        }
    }
    return out;
}

}  // namespace detail

struct StandardHom {
    Segment source;  // factor of the source word
    Segment target;  // submodule of the target word
    bool oriented = true;
    bool two_sided = true;
    bool identity = false;
};

/// Standard homomorphisms M(X) -> M(Y) for strings or bands (quasi-length 1).
inline std::vector<StandardHom> standard_homs(const GentleAlgebra& A, const Walk& X, const Walk& Y)
{
    int cap = X.m() + Y.m();
    auto fs = detail::segments(A, X, true, cap);
    auto ss = detail::segments(A, Y, false, cap);
    std::vector<StandardHom> out;
    for (const auto& f : fs)
        for (const auto& s : ss) {
            if (f.len != s.len) continue;
            bool same, rev;
            if (f.len == 0) {
                same = rev = f.vertex == s.vertex;
            } else {
                same = f.e == s.e;
                rev = !same && f.e == inverse_letters(s.e);
            }
            if (!same && !rev) continue;
            StandardHom h{f, s, true, true, false};
            if (f.len == 0) h.oriented = f.sign == 0 || s.sign == 0 || f.sign == s.sign;
            else h.oriented = same;
            if (!X.band && !Y.band) {
                bool d1 = f.has_before, f1 = f.has_after, d2 = s.has_before, f2 = s.has_after;
                if (h.oriented) h.two_sided = (d1 || d2) && (f1 || f2);
                else h.two_sided = (d1 || f2) && (f1 || d2);
            }
            out.push_back(std::move(h));
        }
    if (X.band && Y.band && X.m() == Y.m() && min_rotation(X.w) == min_rotation(Y.w)) {
        StandardHom id;
        id.identity = true;
        out.push_back(id);
    }
    return out;
}

inline std::vector<StandardHom> standard_homs(const GentleAlgebra& A, const StringWord& X, const StringWord& Y)
{
    return standard_homs(A, Walk::of(X), Walk::of(Y));
}

}  // namespace gentle
