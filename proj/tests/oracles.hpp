#pragma once

// Independent test-side oracles: exhaustive subset filters, naive polynomial
// products and point counts of quiver Grassmannians over prime fields.

#include <gentle/gentle.hpp>

#include <map>
#include <vector>

namespace oracle {

using gentle::Representation;

/// Coideals by filtering all 2^m subsets.
inline long brute_coideals(const gentle::CoefficientQuiver& Q)
{
    int m = Q.size();
    long count = 0;
    for (long mask = 0; mask < (1L << m); ++mask) {
        bool ok = true;
        for (const auto& e : Q.edges)
            if ((mask >> e.to & 1) && !(mask >> e.from & 1)) ok = false;
        count += ok;
    }
    return count;
}

/// Term-list product without the map-based accumulation of LaurentPoly.
inline std::vector<std::pair<gentle::LaurentPoly::Key, gentle::Z>> naive_product(const gentle::LaurentPoly& a,
                                                                                  const gentle::LaurentPoly& b)
{
    std::vector<std::pair<gentle::LaurentPoly::Key, gentle::Z>> out;
    for (const auto& [ka, ca] : a.terms())
        for (const auto& [kb, cb] : b.terms()) {
            auto k = ka;
            for (std::size_t i = 0; i < k.first.size(); ++i) {
                k.first[i] += kb.first[i];
                k.second[i] += kb.second[i];
            }
            bool merged = false;
            for (auto& [kk, cc] : out)
                if (kk == k) {
                    cc += ca * cb;
                    merged = true;
                }
            if (!merged) out.push_back({k, ca * cb});
        }
    std::erase_if(out, [](const auto& t) { return t.second == 0; });
    return out;
}

// ---- prime field subspace counting

inline long mod(long a, long q) { return ((a % q) + q) % q; }

inline long inv_mod(long a, long q)
{
    long r = 1, e = q - 2, b = mod(a, q);
    for (; e; e >>= 1, b = b * b % q)
        if (e & 1) r = r * b % q;
    return r;
}

inline long reduce(const gentle::Q& x, long q)
{
    long num = mod(mpz_fdiv_ui(x.get_num_mpz_t(), q), q);
    long den = mpz_fdiv_ui(x.get_den_mpz_t(), q);
    if (den == 0) throw std::runtime_error("denominator vanishes mod q");
    return num * inv_mod(den, q) % q;
}

// vectors of F_q^k encoded base q
struct Subspace {
    int dim = 0;
    std::vector<char> member;  // indexed by code
    std::vector<std::vector<long>> basis;
};

inline long encode(const std::vector<long>& v, long q)
{
    long c = 0;
    for (auto it = v.rbegin(); it != v.rend(); ++it) c = c * q + *it;
    return c;
}

inline std::vector<Subspace> all_subspaces(int k, long q)
{
    long total = 1;
    for (int i = 0; i < k; ++i) total *= q;
    std::vector<Subspace> out;
    // enumerate reduced echelon bases: pivot set, then free entries
    for (int mask = 0; mask < (1 << k); ++mask) {
        std::vector<int> piv;
        for (int j = 0; j < k; ++j)
            if (mask >> j & 1) piv.push_back(j);
        int r = static_cast<int>(piv.size());
        std::vector<std::pair<int, int>> free;
        for (int i = 0; i < r; ++i)
            for (int j = piv[i] + 1; j < k; ++j)
                if (!(mask >> j & 1)) free.push_back({i, j});
        long combos = 1;
        for (std::size_t f = 0; f < free.size(); ++f) combos *= q;
        for (long c = 0; c < combos; ++c) {
            std::vector<std::vector<long>> B(r, std::vector<long>(k, 0));
            for (int i = 0; i < r; ++i) B[i][piv[i]] = 1;
            long x = c;
            for (auto [i, j] : free) {
                B[i][j] = x % q;
                x /= q;
            }
            Subspace S{r, std::vector<char>(total, 0), B};
            long spans = 1;
            for (int i = 0; i < r; ++i) spans *= q;
            for (long s = 0; s < spans; ++s) {
                std::vector<long> v(k, 0);
                long y = s;
                for (int i = 0; i < r; ++i) {
                    long a = y % q;
                    y /= q;
                    for (int j = 0; j < k; ++j) v[j] = (v[j] + a * B[i][j]) % q;
                }
                S.member[encode(v, q)] = 1;
            }
            out.push_back(std::move(S));
        }
    }
    return out;
}

/// Number of F_q-points of the factor-module Grassmannian of M, per factor dimension vector.
inline std::map<std::vector<int>, long> factor_grassmannian_points(const gentle::GentleAlgebra& A,
                                                                  const Representation& M, long q)
{
    int n = A.n();
    std::vector<std::vector<Subspace>> subs(n);
    for (int v = 0; v < n; ++v) subs[v] = all_subspaces(M.dims[v], q);
    std::vector<std::vector<std::vector<long>>> mat(A.m());
    for (int a = 0; a < A.m(); ++a) {
        const auto& X = M.mats[a];
        mat[a].assign(X.rows(), std::vector<long>(X.cols()));
        for (int i = 0; i < X.rows(); ++i)
            for (int j = 0; j < X.cols(); ++j) mat[a][i][j] = reduce(X(i, j), q);
    }
    std::map<std::vector<int>, long> out;
    std::vector<int> pick(n, 0);
    auto closed = [&](int a) {
        int s = A.s(a), t = A.t(a);
        const auto& U = subs[s][pick[s]];
        const auto& W = subs[t][pick[t]];
        for (const auto& b : U.basis) {
            std::vector<long> img(M.dims[t], 0);
            for (int i = 0; i < M.dims[t]; ++i)
                for (int j = 0; j < M.dims[s]; ++j) img[i] = (img[i] + mat[a][i][j] * b[j]) % q;
            if (!W.member[encode(img, q)]) return false;
        }
        return true;
    };
    std::function<void(int)> rec = [&](int v) {
        if (v == n) {
            std::vector<int> e(n);
            for (int i = 0; i < n; ++i) e[i] = M.dims[i] - subs[i][pick[i]].dim;
            ++out[e];
            return;
        }
        for (std::size_t k = 0; k < subs[v].size(); ++k) {
            pick[v] = static_cast<int>(k);
            bool ok = true;
            for (int a = 0; a < A.m() && ok; ++a)
                if (std::max(A.s(a), A.t(a)) == v) ok = closed(a);
            if (ok) rec(v + 1);
        }
    };
    rec(0);
    return out;
}

/// Euler characteristics obtained by interpolating point counts at q = 2, 3, 5, 7 to q = 1.
/// Returns false if the four counts are not fitted by a cubic with integer value at 1.
inline bool grassmannian_euler(const gentle::GentleAlgebra& A, const Representation& M,
                               std::map<std::vector<int>, long>& chi)
{
    const long qs[4] = {2, 3, 5, 7};
    std::map<std::vector<int>, std::array<long, 4>> pts;
    for (int k = 0; k < 4; ++k)
        for (const auto& [e, c] : factor_grassmannian_points(A, M, qs[k])) pts[e][k] = c;
    chi.clear();
    for (const auto& [e, c] : pts) {
        gentle::Q val = 0;
        for (int k = 0; k < 4; ++k) {
            gentle::Q w = c[k];
            for (int l = 0; l < 4; ++l)
                if (l != k) w *= gentle::Q(1 - qs[l]) / gentle::Q(qs[k] - qs[l]);
            val += w;
        }
        if (val.get_den() != 1) return false;
        if (val != 0) chi[e] = val.get_num().get_si();
    }
    return true;
}

}  // namespace oracle
