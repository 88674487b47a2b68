#pragma once

#include "hom.hpp"
#include "poly.hpp"

#include <variant>

namespace gentle {

/// Band summand M(B, companion(param)); param is monic with nonzero constant term.
/// Over the algebraic closure it splits into deg(param) band modules M(B, lambda)
/// with lambda running over the roots.
struct BandSummand {
    BandWord band;
    UPoly param;

    /// The scalar parameter when param is linear.
    Q lambda() const
    {
        if (param.degree() != 1) throw Error("NotLinear", "band parameter has degree " + std::to_string(param.degree()));
        return -param.coeff(0);
    }
    friend bool operator==(const BandSummand&, const BandSummand&) = default;
};

using Summand = std::variant<StringWord, BandSummand>;

inline Representation summand_module(const GentleAlgebra& A, const Summand& s)
{
    if (const auto* c = std::get_if<StringWord>(&s)) return string_module(A, *c);
    const auto& b = std::get<BandSummand>(s);
    return band_module(A, b.band, companion(b.param));
}

inline std::vector<int> word_dims(const GentleAlgebra& A, const StringWord& C)
{
    std::vector<int> d(A.n(), 0);
    for (int j = 0; j <= C.length(); ++j) ++d[string_basis_vertex(A, C, j)];
    return d;
}

inline std::vector<int> word_dims(const GentleAlgebra& A, const BandWord& B)
{
    std::vector<int> d(A.n(), 0);
    for (Letter c : B.letters) ++d[ltgt(A, c)];
    return d;
}

namespace detail {

inline bool fits(const std::vector<int>& x, const std::vector<int>& bound)
{
    for (std::size_t i = 0; i < x.size(); ++i)
        if (x[i] > bound[i]) return false;
    return true;
}

// multiplicity of the string module X in M: rank of (f, g) -> trace(g f)
inline int string_multiplicity(const GentleAlgebra& A, const Representation& X, const Representation& M)
{
    auto F = hom_basis(A, X, M);
    if (F.empty()) return 0;
    auto G = hom_basis(A, M, X);
    if (G.empty()) return 0;
    Matrix P(static_cast<int>(F.size()), static_cast<int>(G.size()));
    for (std::size_t k = 0; k < F.size(); ++k)
        for (std::size_t l = 0; l < G.size(); ++l) {
            Q tr = 0;
            for (int v = 0; v < A.n(); ++v) {
                if (X.dims[v] == 0 || M.dims[v] == 0) continue;
                Matrix gf = G[l][v] * F[k][v];
                for (int i = 0; i < gf.rows(); ++i) tr += gf(i, i);
            }
            P(static_cast<int>(k), static_cast<int>(l)) = tr;
        }
    return rank(P);
}

// Invariant factors of the pencil describing Hom(M, M(B, t)), with powers of t removed,
// split into one factor per rational root and a cofactor without rational roots.
inline std::vector<UPoly> band_parameters(const GentleAlgebra& A, const BandWord& B, const Representation& M)
{
    Representation N1 = band_module(A, B, Q(1));
    Representation N2 = band_module(A, B, Q(2));
    int a0 = B.letters.back().arrow;
    int i0 = -1, j0 = -1;
    for (int i = 0; i < N1.mats[a0].rows(); ++i)
        for (int j = 0; j < N1.mats[a0].cols(); ++j)
            if (N1.mats[a0](i, j) != N2.mats[a0](i, j)) {
                i0 = i;
                j0 = j;
            }
    Representation N0 = N1;
    N0.mats[a0](i0, j0) = 0;

    auto h = hom_index(M, N0);
    SparseSystem fixed(h.total);
    std::vector<SparseSystem::Row> moving;
    std::vector<int> moving_col;
    for (int a = 0; a < A.m(); ++a) {
        int s = A.s(a), t = A.t(a);
        int ms = M.dims[s], mt = M.dims[t], ns = N0.dims[s], nt = N0.dims[t];
        if (nt == 0 || ms == 0) continue;
        for (int i = 0; i < nt; ++i)
            for (int j = 0; j < ms; ++j) {
                SparseSystem::Row row;
                for (int k = 0; k < ns; ++k)
                    if (sgn(N0.mats[a](i, k)) != 0) row.emplace_back(h.offset[s] + k * ms + j, N0.mats[a](i, k));
                for (int l = 0; l < mt; ++l)
                    if (sgn(M.mats[a](l, j)) != 0) row.emplace_back(h.offset[t] + i * mt + l, -M.mats[a](l, j));
                if (a == a0 && i == i0) {
                    moving.push_back(std::move(row));
                    moving_col.push_back(h.offset[s] + j0 * ms + j);
                } else if (!row.empty()) {
                    fixed.add(std::move(row));
                }
            }
    }
    auto W = fixed.kernel();
    if (W.empty() || moving.empty()) return {};
    std::vector<std::vector<UPoly>> pencil(moving.size(), std::vector<UPoly>(W.size()));
    for (std::size_t r = 0; r < moving.size(); ++r)
        for (std::size_t w = 0; w < W.size(); ++w) {
            Q c0 = 0;
            for (const auto& [col, val] : moving[r]) c0 += val * W[w][col];
            Q c1 = W[w][moving_col[r]];
            pencil[r][w] = UPoly(std::vector<Q>{c0, c1});
        }
    std::vector<UPoly> out;
    for (UPoly f : invariant_factors(pencil)) {
        while (f.degree() >= 1 && sgn(f.coeff(0)) == 0) f = f.divmod(UPoly::t()).first;
        for (const auto& g : primary_split(f)) out.push_back(g);
    }
    return out;
}

}  // namespace detail

inline int band_count(const std::vector<Summand>& parts)
{
    int q = 0;
    for (const auto& s : parts)
        if (const auto* b = std::get_if<BandSummand>(&s)) q += b->param.degree();
    return q;
}

inline int string_count(const std::vector<Summand>& parts)
{
    int q = 0;
    for (const auto& s : parts) q += std::holds_alternative<StringWord>(s);
    return q;
}

/// Krull-Schmidt decomposition into string and band summands of length at most
/// dictionary_bound. The reassembled direct sum is checked to be isomorphic to M.
inline std::vector<Summand> decompose(const GentleAlgebra& A, const Representation& M, int dictionary_bound,
                                      std::uint64_t seed = 0)
{
    check_rep(A, M);
    std::vector<Summand> out;
    if (M.is_zero()) return out;
    int dim = M.total_dim();
    auto r = rank_function_of(A, M);
    int strings_left = dim - std::accumulate(r.begin(), r.end(), 0);
    std::vector<int> used(A.n(), 0);

    int len = std::min(dictionary_bound, dim - 1);
    for (const auto& C : enumerate_strings(A, len)) {
        if (strings_left == 0) break;
        auto dc = word_dims(A, C);
        if (!detail::fits(dc, M.dims)) continue;
        int mult = detail::string_multiplicity(A, string_module(A, C), M);
        for (int k = 0; k < mult; ++k) {
            out.push_back(C);
            for (int v = 0; v < A.n(); ++v) used[v] += dc[v];
        }
        strings_left -= mult;
    }
    if (strings_left != 0) throw Error("DictionaryExhausted", "string summands beyond the dictionary bound");

    std::vector<int> rest(A.n());
    for (int v = 0; v < A.n(); ++v) rest[v] = M.dims[v] - used[v];
    if (std::any_of(rest.begin(), rest.end(), [](int x) { return x != 0; })) {
        for (const auto& B : enumerate_bands(A, std::min(dictionary_bound, dim))) {
            auto db = word_dims(A, B);
            if (!detail::fits(db, rest)) continue;
            for (const auto& f : detail::band_parameters(A, B, M)) {
                out.push_back(BandSummand{B, f});
                for (int v = 0; v < A.n(); ++v) rest[v] -= f.degree() * db[v];
            }
        }
        if (std::any_of(rest.begin(), rest.end(), [](int x) { return x != 0; }))
            throw Error("DictionaryExhausted", "band summands beyond the dictionary bound");
    }

    std::vector<Representation> parts;
    for (const auto& s : out) parts.push_back(summand_module(A, s));
    if (!isomorphic(A, direct_sum(A, parts), M, seed))
        throw Error("ConsistencyFailure", "reassembled summands are not isomorphic to the input");
    return out;
}

inline std::string format_summand(const GentleAlgebra& A, const Summand& s)
{
    if (const auto* c = std::get_if<StringWord>(&s)) return "string " + format_string(A, *c);
    const auto& b = std::get<BandSummand>(s);
    if (b.param.degree() == 1) return "band " + format_band(A, b.band) + " lambda=" + b.lambda().get_str();
    return "band " + format_band(A, b.band) + " min-poly=" + b.param.str();
}

}  // namespace gentle
