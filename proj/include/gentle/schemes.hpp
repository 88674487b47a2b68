#pragma once

#include "decompose.hpp"

#include <functional>
#include <set>

namespace gentle {

using RankFunction = std::vector<int>;

/// Irreducible component mod(A, d, r) for a maximal rank function r.
struct Component {
    std::vector<int> d;
    RankFunction r;
    friend bool operator==(const Component&, const Component&) = default;
};

inline bool rank_function_valid(const GentleAlgebra& A, const std::vector<int>& d, const RankFunction& r)
{
    for (int a = 0; a < A.m(); ++a)
        if (r[a] < 0 || r[a] > std::min(d[A.s(a)], d[A.t(a)])) return false;
    for (auto [a, b] : A.relations)
        if (r[a] + r[b] > d[A.s(a)]) return false;
    return true;
}

/// r <= s componentwise.
inline bool rank_leq(const RankFunction& r, const RankFunction& s)
{
    for (std::size_t i = 0; i < r.size(); ++i)
        if (r[i] > s[i]) return false;
    return true;
}

namespace detail {

// all (or only maximal) rank functions restricted to the arrows of one block
inline std::vector<std::vector<int>> block_rank_functions(const GentleAlgebra& A, const RhoBlock& B,
                                                          const std::vector<int>& d, bool maximal_only)
{
    int k = B.model_arrows();
    std::vector<std::vector<int>> out;
    std::vector<int> cur(k, 0);
    std::vector<int> top(k);
    for (int j = 0; j < k; ++j) {
        int a = B.arrow_map[j];
        top[j] = std::min(d[A.s(a)], d[A.t(a)]);
    }
    // relation between model arrows j+1 and j (and 0, k-1 for C~)
    auto ok_with = [&](int j, const std::vector<int>& r) {
        int a = B.arrow_map[j];
        if (j > 0 && r[j] + r[j - 1] > d[A.s(a)]) return false;
        if (B.type == BlockType::Ctilde && j == k - 1) {
            int a0 = B.arrow_map[0];
            if (k == 1) return 2 * r[0] <= d[A.s(a0)];
            if (r[0] + r[j] > d[A.s(a0)]) return false;
        }
        return true;
    };
    auto valid = [&](const std::vector<int>& r) {
        for (int j = 0; j < k; ++j)
            if (r[j] > top[j] || !ok_with(j, r)) return false;
        return true;
    };
    std::function<void(int)> rec = [&](int j) {
        if (j == k) {
            if (maximal_only) {
                for (int x = 0; x < k; ++x) {
                    ++cur[x];
                    bool grows = valid(cur);
                    --cur[x];
                    if (grows) return;
                }
            }
            out.push_back(cur);
            return;
        }
        for (int v = 0; v <= top[j]; ++v) {
            cur[j] = v;
            if (ok_with(j, cur)) rec(j + 1);
        }
        cur[j] = 0;
    };
    rec(0);
    return out;
}

}  // namespace detail

/// Rank functions for (A, d); with maximal_only, those indexing irreducible components.
inline std::vector<RankFunction> rank_functions(const GentleAlgebra& A, const std::vector<int>& d,
                                                bool maximal_only)
{
    if (static_cast<int>(d.size()) != A.n()) throw Error("LengthMismatch", "dimension vector length");
    std::vector<RankFunction> out{RankFunction(A.m(), 0)};
    for (const auto& B : rho_blocks(A)) {
        if (B.model_arrows() == 0) continue;
        auto local = detail::block_rank_functions(A, B, d, maximal_only);
        std::vector<RankFunction> next;
        for (const auto& r : out)
            for (const auto& l : local) {
                RankFunction x = r;
                for (int j = 0; j < B.model_arrows(); ++j) x[B.arrow_map[j]] = l[j];
                next.push_back(std::move(x));
            }
        out = std::move(next);
    }
    std::sort(out.begin(), out.end());
    return out;
}

inline std::vector<Component> components(const GentleAlgebra& A, const std::vector<int>& d)
{
    std::vector<Component> out;
    for (auto& r : rank_functions(A, d, true)) out.push_back({d, std::move(r)});
    return out;
}

// ------------------------------------------------------------ block modules

/// The model module M_{d',r'} of one block as multiplicities of P_{s(k)} and S_i.
struct BlockGenericModule {
    RhoBlock block;
    std::vector<int> d;  // model dimension vector
    std::vector<int> r;  // model rank function
    std::vector<int> proj_mult;    // per model arrow
    std::vector<int> simple_mult;  // per model vertex
};

inline BlockGenericModule block_generic_module(const GentleAlgebra& A, const RhoBlock& B, const Component& Z)
{
    BlockGenericModule G;
    G.block = B;
    G.d = transport_dimvec(B, Z.d, A.n());
    for (int a : B.arrow_map) G.r.push_back(Z.r[a]);
    G.proj_mult = G.r;
    std::vector<int> incident(B.size, 0);
    for (int k = 0; k < B.model_arrows(); ++k) {
        incident[B.model_s(k)] += G.r[k];
        incident[B.model_t(k)] += G.r[k];
    }
    for (int i = 0; i < B.size; ++i) {
        int u = G.d[i] - incident[i];
        if (u < 0) throw Error("InvalidComponent", "rank function exceeds dimensions");
        G.simple_mult.push_back(u);
    }
    return G;
}

namespace detail {

// normalised key: ('S', vertex) = 0 + 2*i, ('P', vertex) = 1 + 2*i
inline int key_S(int i) { return 2 * i; }
inline int key_P(const RhoBlock& B, int i)
{
    bool last = B.type == BlockType::C && i == B.size - 1;
    return last ? key_S(i) : 2 * i + 1;
}

// pairs (X, Y) of block indecomposables with Hom(X, Y) != 0
inline std::set<std::pair<int, int>> block_hom_pairs(const RhoBlock& B)
{
    std::set<std::pair<int, int>> h;
    for (int i = 0; i < B.size; ++i) {
        h.insert({key_S(i), key_S(i)});
        h.insert({key_P(B, i), key_P(B, i)});
        h.insert({key_P(B, i), key_S(i)});
    }
    for (int k = 0; k < B.model_arrows(); ++k) {
        int s = B.model_s(k), t = B.model_t(k);
        h.insert({key_S(t), key_P(B, s)});
        h.insert({key_P(B, t), key_P(B, s)});
    }
    return h;
}

}  // namespace detail

/// dim End(M_{d',r'}) from the table of nonzero Hom pairs of C_n / C~_n.
inline int block_end_dim(const BlockGenericModule& G)
{
    const RhoBlock& B = G.block;
    std::map<int, int> mult;
    for (int k = 0; k < B.model_arrows(); ++k)
        if (G.proj_mult[k]) mult[detail::key_P(B, B.model_s(k))] += G.proj_mult[k];
    for (int i = 0; i < B.size; ++i)
        if (G.simple_mult[i]) mult[detail::key_S(i)] += G.simple_mult[i];
    auto pairs = detail::block_hom_pairs(B);
    bool ctilde1 = B.type == BlockType::Ctilde && B.size == 1;
    int total = 0;
    for (auto [x, mx] : mult)
        for (auto [y, my] : mult) {
            if (!pairs.count({x, y})) continue;
            int h = (ctilde1 && x == y && (x & 1)) ? 2 : 1;
            total += mx * my * h;
        }
    return total;
}

/// M_{d',r'} as an explicit module over the model algebra.
inline Representation block_generic_representation(const GentleAlgebra& model, const BlockGenericModule& G)
{
    std::vector<Representation> parts;
    for (int k = 0; k < G.block.model_arrows(); ++k)
        for (int c = 0; c < G.proj_mult[k]; ++c) parts.push_back(string_module(model, {{Letter{k, false}}, 0, 1}));
    for (int i = 0; i < G.block.size; ++i)
        for (int c = 0; c < G.simple_mult[i]; ++c) parts.push_back(simple(model, i));
    Representation M = direct_sum(model, parts);
    if (M.is_zero()) M = zero_rep(model, std::vector<int>(G.block.size, 0));
    return M;
}

inline int gl_dim(const std::vector<int>& d)
{
    int s = 0;
    for (int x : d) s += x * x;
    return s;
}

inline int component_dim(const GentleAlgebra& A, const Component& Z)
{
    int dim = 0;
    for (const auto& B : rho_blocks(A)) {
        auto G = block_generic_module(A, B, Z);
        dim += gl_dim(G.d) - block_end_dim(G);
    }
    return dim;
}

// --------------------------------------------------------- critical summands

struct CriticalSummand {
    int block = 0;
    int type = 1;  // 1: S_{s(a)} + S_{t(a)}, 2: P_{t(a)} + S_{s(a)}
    int arrow = 0;  // parent arrow a
};

/// Type I and type II critical summands of the block modules of Z.
inline std::vector<CriticalSummand> block_critical_summands(const GentleAlgebra& A, const Component& Z)
{
    std::vector<CriticalSummand> out;
    for (const auto& B : rho_blocks(A)) {
        if (B.model_arrows() == 0) continue;
        auto G = block_generic_module(A, B, Z);
        // multiplicity of P_i, where P_{n} = S_{n} at the end of a C_n chain
        auto p_mult = [&](int i) {
            if (B.type == BlockType::C && i == B.size - 1) return G.simple_mult[i];
            return G.proj_mult[i];
        };
        for (int k = 0; k < B.model_arrows(); ++k) {
            int s = B.model_s(k), t = B.model_t(k);
            if (G.simple_mult[s] > 0 && G.simple_mult[t] > 0) out.push_back({B.id, 1, B.arrow_map[k]});
            if (G.simple_mult[s] > 0 && p_mult(t) > 0) out.push_back({B.id, 2, B.arrow_map[k]});
        }
    }
    return out;
}

inline bool is_tau_reduced(const GentleAlgebra& A, const Component& Z)
{
    if (!is_jacobian(A)) throw Error("NotJacobian", "block criterion needs a gentle Jacobian algebra");
    return block_critical_summands(A, Z).empty();
}

inline bool is_generically_reduced(const GentleAlgebra& A, const Component& Z)
{
    for (int a = 0; a < A.m(); ++a)
        if (A.s(a) == A.t(a) && Z.d[A.s(a)] % 2 != 0) return false;
    return true;
}

// ------------------------------------------------------------ smooth points

/// Singularity test on the rank function of M.
inline bool is_smooth_point(const GentleAlgebra& A, const Representation& M)
{
    const auto& d = M.dims;
    auto r = rank_function_of(A, M);
    for (auto [a, b] : A.relations) {
        if (!(r[a] < d[A.t(a)] && r[b] < d[A.s(b)] && r[a] + r[b] < d[A.s(a)])) continue;
        bool cond2 = true, cond3 = true;
        for (int x = 0; x < A.m(); ++x) {
            if (A.in_I(x, a) && r[x] + r[a] >= d[A.t(a)]) cond2 = false;
            if (A.in_I(b, x) && r[b] + r[x] >= d[A.s(b)]) cond3 = false;
        }
        if (cond2 && cond3) return false;
    }
    return true;
}

/// dim of the Zariski tangent space of mod(A, d) at M.
inline int tangent_dim(const GentleAlgebra& A, const Representation& M)
{
    const auto& d = M.dims;
    std::vector<int> off(A.m());
    int total = 0;
    for (int a = 0; a < A.m(); ++a) {
        off[a] = total;
        total += d[A.t(a)] * d[A.s(a)];
    }
    if (total == 0) return 0;
    SparseSystem sys(total);
    for (auto [a, b] : A.relations) {
        // X_a M_b + M_a X_b = 0, an equation for each entry (i, j)
        int ta = d[A.t(a)], mid = d[A.s(a)], sb = d[A.s(b)];
        const Matrix& Ma = M.mats[a];
        const Matrix& Mb = M.mats[b];
        for (int i = 0; i < ta; ++i)
            for (int j = 0; j < sb; ++j) {
                SparseSystem::Row row;
                for (int k = 0; k < mid; ++k) {
                    if (sgn(Mb(k, j)) != 0) row.emplace_back(off[a] + i * mid + k, Mb(k, j));
                    if (sgn(Ma(i, k)) != 0) row.emplace_back(off[b] + k * sb + j, Ma(i, k));
                }
                if (!row.empty()) sys.add(std::move(row));
            }
    }
    return total - sys.rank();
}

/// max dim Z over the components containing a module with rank function r.
inline int max_component_dim_above(const GentleAlgebra& A, const std::vector<int>& d, const RankFunction& r)
{
    int best = -1;
    for (const auto& Z : components(A, d))
        if (rank_leq(r, Z.r)) best = std::max(best, component_dim(A, Z));
    return best;
}

inline int components_containing(const GentleAlgebra& A, const std::vector<int>& d, const RankFunction& r)
{
    int n = 0;
    for (const auto& Z : components(A, d)) n += rank_leq(r, Z.r);
    return n;
}

// ---------------------------------------------------------- generic points

/// A random point of Z: per block, M_{d',r'} under a random base change of each
/// model vertex, copied to the parent arrows.
inline Representation generic_point(const GentleAlgebra& A, const Component& Z, std::uint64_t seed)
{
    if (!rank_function_valid(A, Z.d, Z.r)) throw Error("InvalidComponent", "rank function not valid for d");
    std::mt19937_64 rng(seed);
    for (int attempt = 0; attempt < 8; ++attempt) {
        Representation M = zero_rep(A, Z.d);
        for (const auto& B : rho_blocks(A)) {
            if (B.model_arrows() == 0) continue;
            GentleAlgebra model = model_algebra(B);
            auto G = block_generic_module(A, B, Z);
            Representation X = block_generic_representation(model, G);
            X = conjugate(model, X, random_base_change(X.dims, rng));
            for (int k = 0; k < B.model_arrows(); ++k) M.mats[B.arrow_map[k]] = X.mats[k];
        }
        if (rank_function_of(A, M) == Z.r && satisfies_relations(A, M)) return M;
    }
    throw Error("SamplingFailure", "no point with the requested rank function after 8 attempts");
}

struct CEH {
    int c = 0, e = 0, h = 0;
    friend bool operator==(const CEH&, const CEH&) = default;
};

/// Generic orbit codimension, self-extension and Hom(M, tau M) dimensions, minimised over 3 seeds.
inline CEH ceh_values(const GentleAlgebra& A, const Component& Z, std::uint64_t seed = 0)
{
    int dimZ = component_dim(A, Z);
    int gl = gl_dim(Z.d);
    PathTable paths(A);
    CEH best{1 << 30, 1 << 30, 1 << 30};
    for (std::uint64_t s = 0; s < 3; ++s) {
        Representation M = generic_point(A, Z, seed + s);
        if (M.is_zero()) return {0, 0, 0};
        int end = hom_dim_oracle(A, M, M);
        best.c = std::min(best.c, dimZ - (gl - end));
        best.e = std::min(best.e, ext1_dim(A, M, M, paths));
        best.h = std::min(best.h, hom_dim_oracle(A, M, tau_dtr(A, M, paths)));
    }
    return best;
}

/// Summands of a generic point of Z, checked against the string count |d| - sum r
/// and the band count c.
inline std::vector<Summand> canonical_decomposition(const GentleAlgebra& A, const Component& Z, int bound,
                                                    std::uint64_t seed = 0)
{
    Representation M = generic_point(A, Z, seed);
    auto parts = decompose(A, M, bound, seed);
    int dim = std::accumulate(Z.d.begin(), Z.d.end(), 0);
    int sum_r = std::accumulate(Z.r.begin(), Z.r.end(), 0);
    if (string_count(parts) != dim - sum_r)
        throw Error("ConsistencyFailure", "string summand count differs from |d| - sum r");
    if (band_count(parts) != ceh_values(A, Z, seed).c)
        throw Error("ConsistencyFailure", "band summand count differs from c");
    return parts;
}

// -------------------------------------------------------------------- census

/// Every dimension vector with entries in [0, bound], in lexicographic order.
inline std::vector<std::vector<int>> dimension_vectors(int n, int bound)
{
    std::vector<std::vector<int>> out;
    std::vector<int> d(n, 0);
    for (;;) {
        out.push_back(d);
        int i = n - 1;
        while (i >= 0 && d[i] == bound) d[i--] = 0;
        if (i < 0) break;
        ++d[i];
    }
    return out;
}

struct CensusEntry {
    std::vector<int> d;
    Component component;
};

/// The tau-reduced component of each d with entries <= d_bound, when one exists.
inline std::vector<CensusEntry> tau_reduced_components_census(const GentleAlgebra& A, int d_bound)
{
    if (!is_jacobian(A)) throw Error("NotJacobian", "census needs a gentle Jacobian algebra");
    std::vector<CensusEntry> out;
    for (const auto& d : dimension_vectors(A.n(), d_bound)) {
        int found = 0;
        for (const auto& Z : components(A, d))
            if (is_tau_reduced(A, Z)) {
                if (++found > 1) throw Error("UniquenessViolation", "two tau-reduced components for one d");
                out.push_back({d, Z});
            }
    }
    return out;
}

}  // namespace gentle
