#pragma once

#include "decompose.hpp"
#include "laurent.hpp"
#include "surface.hpp"

#include <functional>

namespace gentle {

/// b_ij = #(i -> j) - #(j -> i) in Q_T.
struct SignedAdjacency {
    std::vector<std::vector<int>> B;
    int n() const { return static_cast<int>(B.size()); }
};

inline SignedAdjacency signed_adjacency(const GentleAlgebra& A)
{
    SignedAdjacency S{std::vector<std::vector<int>>(A.n(), std::vector<int>(A.n(), 0))};
    for (int a = 0; a < A.m(); ++a) {
        ++S.B[A.s(a)][A.t(a)];
        --S.B[A.t(a)][A.s(a)];
    }
    for (int i = 0; i < A.n(); ++i)
        for (int j = 0; j < A.n(); ++j)
            if (S.B[i][j] != -S.B[j][i]) throw Error("InternalError", "signed adjacency not skew-symmetric");
    return S;
}

inline SignedAdjacency signed_adjacency(const Triangulation& T) { return signed_adjacency(build_QT(T)); }

/// y_j times the x-monomial read from column j of B.
inline LaurentPoly yhat(int j, const SignedAdjacency& S)
{
    int n = S.n();
    std::vector<int> x(n), y(n, 0);
    for (int i = 0; i < n; ++i) x[i] = S.B[i][j];
    y[j] = 1;
    return LaurentPoly::monomial(x, y);
}

/// Calls f on every predecessor-closed vertex subset, in depth-first order on
/// vertex indices (excluded before included).
inline void order_coideals(const CoefficientQuiver& Q, const std::function<void(const std::vector<char>&)>& f)
{
    int m = Q.size();
    // constraints checked once both endpoints are decided
    std::vector<std::vector<std::pair<int, int>>> at(m);
    for (const auto& e : Q.edges) at[std::max(e.from, e.to)].push_back({e.from, e.to});
    std::vector<char> in(m, 0);
    std::function<void(int)> rec = [&](int k) {
        if (k == m) {
            f(in);
            return;
        }
        for (char v : {0, 1}) {
            in[k] = v;
            bool ok = true;
            for (auto [u, w] : at[k])
                if (in[w] && !in[u]) ok = false;
            if (ok) rec(k + 1);
        }
        in[k] = 0;
    };
    rec(0);
}

/// Number of coideals per degree vector (label counts).
inline std::map<std::vector<int>, Z> coideal_degrees(const CoefficientQuiver& Q, int n)
{
    std::map<std::vector<int>, Z> out;
    order_coideals(Q, [&](const std::vector<char>& in) {
        std::vector<int> e(n, 0);
        for (int i = 0; i < Q.size(); ++i)
            if (in[i]) ++e[Q.labels[i]];
        ++out[e];
    });
    return out;
}

namespace detail {

// sum_e c_e y^e as a polynomial with no x-dependence
inline LaurentPoly y_series(const std::map<std::vector<int>, Z>& gen, int n)
{
    LaurentPoly p(n);
    for (const auto& [e, c] : gen) p.add_term({e, std::vector<int>(n, 0)}, c);
    return p;
}

// x^base * sum_e c_e yhat^e
inline LaurentPoly apply_yhat(const LaurentPoly& F, const SignedAdjacency& S, const std::vector<int>& base)
{
    int n = S.n();
    LaurentPoly r(n);
    for (const auto& [k, c] : F.terms()) {
        std::vector<int> x = base;
        for (int j = 0; j < n; ++j)
            for (int i = 0; i < n; ++i) x[i] += S.B[i][j] * k.first[j];
        r.add_term({k.first, x}, c);
    }
    return r;
}

}  // namespace detail

/// x^{shear} times the coideal generating function in the yhat variables; x_j for arcs of T.
inline LaurentPoly bangle(const Triangulation& T, const SurfaceAlgebra& S, const Curve& c)
{
    int n = T.n();
    if (c.kind == CurveKind::Arc) return LaurentPoly::x(n, c.arc);
    auto F = detail::y_series(coideal_degrees(coefficient_quiver(T, S, c), n), n);
    return detail::apply_yhat(F, signed_adjacency(S.algebra), shear_coordinates(T, c));
}

inline LaurentPoly bangle_lamination(const Triangulation& T, const SurfaceAlgebra& S, const Lamination& L)
{
    LaurentPoly r = LaurentPoly::one(T.n());
    for (const auto& [c, k] : L.entries) r = r * bangle(T, S, c).pow(k);
    return r;
}

/// Euler characteristics of factor-module Grassmannians of one summand, as a y-polynomial.
inline LaurentPoly grassmannian_series(const GentleAlgebra& A, const Summand& s)
{
    int n = A.n();
    if (const auto* C = std::get_if<StringWord>(&s))
        return detail::y_series(coideal_degrees(word_coefficient_quiver(A, C->letters, false, C->vertex), n), n);
    const auto& b = std::get<BandSummand>(s);
    auto one = detail::y_series(coideal_degrees(word_coefficient_quiver(A, b.band.letters, true), n), n);
    return one.pow(b.param.degree());
}

/// Dual Caldero-Chapoton function of a decorated module, with the module split into
/// string and band summands of length at most dictionary_bound.
inline LaurentPoly cc_prime(const GentleAlgebra& A, const DecoratedModule& dec, int dictionary_bound,
                            std::uint64_t seed = 0)
{
    int n = A.n();
    auto g = g_vector(A, dec);
    LaurentPoly F = LaurentPoly::one(n);
    if (!dec.module.is_zero()) {
        std::vector<Summand> parts;
        try {
            parts = decompose(A, dec.module, dictionary_bound, seed);
        } catch (const Error& e) {
            if (e.code() == "DictionaryExhausted") throw Error("UnsupportedModule", e.what());
            throw;
        }
        for (const auto& s : parts) F = F * grassmannian_series(A, s);
    }
    return detail::apply_yhat(F, signed_adjacency(A), g);
}

/// [{"coeff": "c", "x": [...], "y": [...]}, ...] in term order.
inline json laurent_to_json(const LaurentPoly& p)
{
    json j = json::array();
    for (const auto& [k, c] : p.terms()) j.push_back({{"coeff", c.get_str()}, {"x", k.second}, {"y", k.first}});
    return j;
}

inline LaurentPoly laurent_from_json(const json& j, int n)
{
    LaurentPoly p(n);
    for (const auto& t : j) {
        auto x = field<std::vector<int>>(t, "x", "term");
        auto y = field<std::vector<int>>(t, "y", "term");
        if (static_cast<int>(x.size()) != n || static_cast<int>(y.size()) != n)
            throw Error("ParseError", "term exponent length");
        p.add_term({y, x}, Z(field<std::string>(t, "coeff", "term")));
    }
    return p;
}

struct VerifyResult {
    bool equal = false;
    LaurentPoly bangle, generic;
    std::string diff;  // first differing term, empty when equal
};

/// Compares the bangle function of L with CC' of a generic decorated module of eta(L).
inline VerifyResult verify_bangle_equals_generic(const Triangulation& T, const SurfaceAlgebra& S, const Lamination& L,
                                                 std::uint64_t seed = 0)
{
    const GentleAlgebra& A = S.algebra;
    auto D = eta(T, S, L);
    int bound = 1;
    for (const auto& [c, k] : L.entries) bound = std::max(bound, c.length());
    DecoratedModule dec{generic_point(A, D.component, seed), D.v};
    VerifyResult r{false, bangle_lamination(T, S, L), cc_prime(A, dec, bound, seed), ""};
    r.equal = r.bangle == r.generic;
    if (!r.equal) {
        LaurentPoly d = r.bangle - r.generic;
        const auto& [k, c] = *d.terms().begin();
        LaurentPoly t(T.n());
        t.add_term(k, c);
        r.diff = "bangle - generic has term " + t.str();
    }
    return r;
}

}  // namespace gentle
