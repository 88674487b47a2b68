// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.
#include "oracles.hpp"

#include <chrono>
#include <functional>
#include <iostream>
#include <random>

using namespace gentle;

namespace {

constexpr double kFastLimit = 1.0;  // seconds, criteria 1 and 2
constexpr long kMinHomPairs = 10000;
constexpr int kWordLength = 8;
constexpr int kSmoothCap = 3;
constexpr int kSec11SmoothSamples = 20000;
constexpr int kLaminations = 50;
constexpr int kLaminationCrossings = 8;

std::string corpus(const std::string& f) { return std::string(GENTLE_CORPUS) + "/" + f; }
GentleAlgebra algebra(const std::string& name) { return load_algebra(corpus(name + "_algebra.json")); }

using Clock = std::chrono::steady_clock;
double since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Report {
    int failed = 0;
    void line(int k, bool ok, const std::string& detail)
    {
        std::cout << (ok ? "PASS" : "FAIL") << " criterion " << k << ": " << detail << std::endl;
        failed += !ok;
    }
};

struct Check {
    bool ok = true;
    std::vector<std::string> notes;
    void expect(bool cond, const std::string& what)
    {
        if (!cond) {
            ok = false;
            notes.push_back(what);
        }
    }
    std::string summary(const std::string& good) const
    {
        if (ok) return good;
        std::string s;
        for (const auto& n : notes) s += (s.empty() ? "" : "; ") + n;
        return s;
    }
};

template <class F>
void guarded(Check& c, const std::string& what, F&& f)
{
    try {
        f();
    } catch (const std::exception& e) {
        c.expect(false, what + " threw " + e.what());
    }
}

// ------------------------------------------------------------------ 1

std::string criterion1(Check& c)
{
    auto timed = [&](const std::string& name, const std::function<void()>& f) {
        auto t0 = Clock::now();
        guarded(c, name, f);
        double s = since(t0);
        c.expect(s < kFastLimit, name + " took " + std::to_string(s) + " s");
    };
    timed("loop d=(1)", [&] {
        auto A = algebra("sec7_5_1");
        auto Zs = components(A, {1});
        c.expect(Zs.size() == 1, "loop d=(1): component count");
        c.expect(!Zs.empty() && component_dim(A, Zs[0]) == 0, "loop d=(1): dimension");
        c.expect(!is_smooth_point(A, simple(A, 0)), "loop d=(1): smooth point");
        c.expect(!Zs.empty() && !is_generically_reduced(A, Zs[0]), "loop d=(1): generically reduced");
    });
    timed("loop d=(2)", [&] {
        auto A = algebra("sec7_5_1");
        auto Zs = components(A, {2});
        c.expect(Zs.size() == 1 && is_generically_reduced(A, Zs[0]), "loop d=(2): not generically reduced");
    });
    timed("A3/(ab)", [&] {
        auto A = algebra("sec7_5_2");
        c.expect(components(A, {1, 1, 1}).size() == 2, "A3/(ab) d=(1,1,1): component count");
        c.expect(components(A, {1, 2, 1}).size() == 1, "A3/(ab) d=(1,2,1): component count");
    });
    timed("sec7_5_4", [&] {
        auto A = algebra("sec7_5_4");
        std::vector<int> d{2, 2, 2, 2};
        auto Zs = components(A, d);
        c.expect(Zs.size() == 3, "d=(2,2,2,2): component count " + std::to_string(Zs.size()));
        for (const auto& Z : Zs) {
            c.expect(component_dim(A, Z) == 16 && gl_dim(d) == 16, "d=(2,2,2,2): dimension");
            auto parts = canonical_decomposition(A, Z, kWordLength);
            c.expect(string_count(parts) == 0 && band_count(parts) >= 1, "d=(2,2,2,2): not band-only");
        }
    });
    return "loop, A3/(ab) and (2,2,2,2) censuses exact";
}

// ------------------------------------------------------------------ 2

std::string criterion2(Check& c)
{
    auto t0 = Clock::now();
    guarded(c, "sec11", [&] {
        auto T = load_triangulation(corpus("sec11_triangulation.json"));
        auto S = build_QT_full(T);
        auto golden = read_json_file(corpus("sec11_golden.json"));
        auto sigma = curve_from_json(T, read_json_file(corpus("sec11_sigma_curve.json")));
        auto B = signed_adjacency(S.algebra);

        std::string ours = json(B.B).dump(), expected = golden.at("B_T_expected").dump();
        c.expect(ours == expected, "B_T " + ours + " differs from expected " + expected);

        auto s = shear_coordinates(T, sigma);
        c.expect(s == std::vector<int>{0, -1, 1, -1, 1, 0}, "shear(sigma)");

        auto b = bangle(T, S, sigma);
        auto base = LaurentPoly::monomial(s, std::vector<int>(6, 0));
        auto y2 = yhat(1, B), y4 = yhat(3, B), y6 = yhat(5, B);
        for (const auto& m : {base * y2, base * y2 * y4, base * y2 * y4 * y6}) {
            auto it = b.terms().find(m.terms().begin()->first);
            Z coef = it == b.terms().end() ? Z(0) : it->second;
            c.expect(coef == 1, "term " + m.str() + " has coefficient " + coef.get_str());
        }
        for (int lam : {1, 3}) {
            auto M = curve_representation(T, S, sigma, Q(lam));
            c.expect(cc_prime(S.algebra, {M, {}}, sigma.length()) == b,
                     "bangle(sigma) != cc_prime at lambda " + std::to_string(lam));
        }

        long brute = oracle::brute_coideals(coefficient_quiver(T, S, sigma));
        c.expect(golden.at("coideal_count_brute_force").get<long>() == brute, "recorded coideal count");
        c.expect(brute == 27 || golden.contains("coideal_count_note"), "coideal discrepancy undocumented");
    });
    double sec = since(t0);
    c.expect(sec < kFastLimit, "took " + std::to_string(sec) + " s");
    return "B_T, shear, displayed terms, bangle = cc_prime, coideal count";
}

// ------------------------------------------------------------------ 3

std::vector<Representation> indecomposables(const GentleAlgebra& A, int cap, int len)
{
    std::vector<Representation> ind;
    auto small = [&](const Representation& M) {
        return std::all_of(M.dims.begin(), M.dims.end(), [&](int x) { return x <= cap; });
    };
    for (const auto& s : enumerate_strings(A, len))
        if (auto M = string_module(A, s); small(M)) ind.push_back(M);
    for (const auto& b : enumerate_bands(A, len))
        for (int lam : {1, 2})
            if (auto M = band_module(A, b, Q(lam)); small(M)) ind.push_back(M);
    return ind;
}

bool smooth_agrees(const GentleAlgebra& A, const Representation& M)
{
    int top = max_component_dim_above(A, M.dims, rank_function_of(A, M));
    return is_smooth_point(A, M) == (tangent_dim(A, M) == top);
}

// all sums of indecomposables with entries <= cap, or `samples` random ones when samples > 0
long smooth_mismatches(const GentleAlgebra& A, int cap, int len, int samples, long& modules)
{
    auto ind = indecomposables(A, cap, len);
    long bad = 0;
    modules = 0;
    auto fits = [&](const std::vector<int>& used, const Representation& X) {
        for (int v = 0; v < A.n(); ++v)
            if (used[v] + X.dims[v] > cap) return false;
        return true;
    };
    if (samples > 0) {
        std::mt19937_64 rng(31);
        for (int k = 0; k < samples; ++k) {
            std::vector<int> used(A.n(), 0);
            std::vector<Representation> parts;
            for (;;) {
                std::vector<int> fit;
                for (int i = 0; i < static_cast<int>(ind.size()); ++i)
                    if (fits(used, ind[i])) fit.push_back(i);
                if (fit.empty()) break;
                const auto& X = ind[fit[rng() % fit.size()]];
                parts.push_back(X);
                for (int v = 0; v < A.n(); ++v) used[v] += X.dims[v];
                if (rng() % 4 == 0) break;
            }
            ++modules;
            bad += !smooth_agrees(A, direct_sum(A, parts));
        }
        return bad;
    }
    std::vector<int> used(A.n(), 0), pick;
    std::function<void(int)> rec = [&](int from) {
        if (!pick.empty()) {
            std::vector<Representation> parts;
            for (int i : pick) parts.push_back(ind[i]);
            ++modules;
            bad += !smooth_agrees(A, direct_sum(A, parts));
        }
        for (int i = from; i < static_cast<int>(ind.size()); ++i) {
            if (!fits(used, ind[i])) continue;
            for (int v = 0; v < A.n(); ++v) used[v] += ind[i].dims[v];
            pick.push_back(i);
            rec(i);
            pick.pop_back();
            for (int v = 0; v < A.n(); ++v) used[v] -= ind[i].dims[v];
        }
    };
    rec(0);
    return bad;
}

std::string criterion3(Check& c)
{
    long pairs = 0, hom_bad = 0, tau_tested = 0, tau_bad = 0, smooth = 0, smooth_bad = 0, e_pairs = 0;
    for (auto f : {"sec4", "sec7_5_2", "sec11"})
        guarded(c, std::string("3a/3b ") + f, [&] {
            auto A = algebra(f);
            std::vector<Walk> walks;
            std::vector<Representation> mods;
            for (const auto& s : enumerate_strings(A, kWordLength)) {
                walks.push_back(Walk::of(s));
                mods.push_back(string_module(A, s));
            }
            for (const auto& b : enumerate_bands(A, kWordLength)) {
                walks.push_back(Walk::of(b));
                mods.push_back(band_module(A, b, Q(1)));
            }
            for (std::size_t i = 0; i < walks.size(); ++i)
                for (std::size_t j = 0; j < walks.size(); ++j) {
                    ++pairs;
                    hom_bad += static_cast<int>(standard_homs(A, walks[i], walks[j]).size()) !=
                               hom_dim_oracle(A, mods[i], mods[j]);
                }
            PathTable P(A);
            for (const auto& C : enumerate_strings(A, kWordLength)) {
                auto M = string_module(A, C);
                auto D = tau_dtr(A, M, P);
                auto r = tau_string(A, C);
                if (std::holds_alternative<Zero>(r)) {
                    tau_bad += !D.is_zero();
                    continue;
                }
                ++tau_tested;
                tau_bad += !isomorphic(A, string_module(A, std::get<StringWord>(r)), D);
            }
        });
    c.expect(hom_bad == 0, "3a: " + std::to_string(hom_bad) + " hom mismatches");
    c.expect(pairs >= kMinHomPairs, "3a: only " + std::to_string(pairs) + " pairs");
    c.expect(tau_bad == 0, "3b: " + std::to_string(tau_bad) + " tau mismatches");

    struct Sweep {
        const char* name;
        int cap, len, samples;
    };
    for (auto s : {Sweep{"sec7_5_1", kSmoothCap, 12, 0}, Sweep{"sec7_5_2", kSmoothCap, 12, 0},
                   Sweep{"sec7_5_4", kSmoothCap, 12, 0}, Sweep{"sec11", 2, 12, 0},
                   Sweep{"sec11", kSmoothCap, 17, kSec11SmoothSamples}})
        guarded(c, std::string("3c ") + s.name, [&] {
            long mods = 0;
            smooth_bad += smooth_mismatches(algebra(s.name), s.cap, s.len, s.samples, mods);
            smooth += mods;
        });
    c.expect(smooth_bad == 0, "3c: " + std::to_string(smooth_bad) + " smoothness mismatches");

    for (auto f : {"sec4", "sec7_5_2", "sec7_5_4", "sec11"})
        guarded(c, std::string("3d ") + f, [&] {
            auto A = algebra(f);
            int n = A.n();
            PathTable P(A);
            std::vector<DecoratedModule> mods;
            std::mt19937_64 rng(19);
            for (const auto& C : enumerate_strings(A, 3)) {
                std::vector<int> v(n, 0);
                if (rng() % 3 == 0) v[rng() % n] = 1;
                mods.push_back({string_module(A, C), v});
            }
            for (const auto& B : enumerate_bands(A, 4)) mods.push_back({band_module(A, B, Q(1)), {}});
            for (int j = 0; j < n; ++j) {
                std::vector<int> v(n, 0);
                v[j] = 1;
                mods.push_back({zero_rep(A, std::vector<int>(n, 0)), v});
            }
            // e_invariant throws FormulaMismatch when the two expressions differ
            for (const auto& M : mods)
                for (const auto& N : mods) {
                    e_invariant(A, M, N, P);
                    ++e_pairs;
                }
        });
    return std::to_string(pairs) + " hom pairs, " + std::to_string(tau_tested) + " tau strings, " +
           std::to_string(smooth) + " smoothness modules, " + std::to_string(e_pairs) + " E-invariant pairs";
}

// ------------------------------------------------------------------ 4

std::string criterion4(Check& c)
{
    long tested = 0, bands = 0;
    guarded(c, "sec11", [&] {
        auto A = algebra("sec11");
        std::set<std::vector<int>> ds;
        for (const auto& e : tau_reduced_components_census(A, 2))
            c.expect(ds.insert(e.d).second, "two tau-reduced components");
        for (const auto& d : dimension_vectors(A.n(), 2))
            for (const auto& Z : components(A, d)) {
                ++tested;
                auto v = ceh_values(A, Z);
                if (is_tau_reduced(A, Z) != (v.c == v.e && v.e == v.h)) c.expect(false, "block criterion vs ceh");
                auto parts = canonical_decomposition(A, Z, 12);
                if (string_count(parts) == 0 && band_count(parts) == 1) {
                    ++bands;
                    c.expect(v == CEH{1, 1, 1}, "band component ceh");
                }
            }
    });
    c.expect(bands > 0, "no band components");
    return std::to_string(tested) + " components, " + std::to_string(bands) + " band components";
}

// ------------------------------------------------------------------ 5

std::string criterion5(Check& c)
{
    int done = 0;
    guarded(c, "laminations", [&] {
        auto T = load_triangulation(corpus("sec11_triangulation.json"));
        auto S = build_QT_full(T);
        std::vector<Curve> pool;
        for (int j = 0; j < T.n(); ++j) pool.push_back(arc_curve(j));
        for (const auto& x : enumerate_open_curves(T, kLaminationCrossings))
            if (int_zero(T, S, x, x)) pool.push_back(x);
        for (const auto& x : enumerate_loops(T, kLaminationCrossings))
            if (int_zero(T, S, x, x)) pool.push_back(x);
        std::mt19937_64 rng(5);
        int attempts = 0;
        while (done < kLaminations && attempts++ < 100000) {
            std::vector<std::pair<Curve, int>> raw;
            int k = 1 + static_cast<int>(rng() % 3);
            for (int i = 0; i < k; ++i) raw.push_back({pool[rng() % pool.size()], 1 + static_cast<int>(rng() % 2)});
            Lamination L;
            try {
                L = make_lamination(T, S, raw);
            } catch (const Error&) {
                continue;
            }
            ++done;
            auto D = eta(T, S, L);
            c.expect(generic_g_vector(S.algebra, D) == shear_coordinates(T, L), "g_vector(eta(L)) != shear(L)");
            auto r = verify_bangle_equals_generic(T, S, L);
            c.expect(r.equal, "verify: " + r.diff);
        }
    });
    c.expect(done >= kLaminations, "only " + std::to_string(done) + " laminations");
    return std::to_string(done) + " random laminations";
}

// ------------------------------------------------------------------ 6

std::string criterion6(Check& c)
{
    guarded(c, "annulus", [&] {
        auto T = load_triangulation(corpus("annulus_triangulation.json"));
        auto S = build_QT_full(T);
        auto L = lamination_from_json(T, S, read_json_file(corpus("annulus_loop_lamination.json")));
        const auto& loop = L.entries.at(0).first;
        auto at1 = bangle(T, S, loop).specialize({1, 1});
        auto mono = [](int a, int b) { return LaurentPoly::monomial({a, b}, {0, 0}); };
        auto expected = mono(1, -1) + mono(-1, 1) + mono(-1, -1);
        c.expect(at1.size() == 3, "bangle at y=1 has " + std::to_string(at1.size()) + " terms");
        c.expect(at1 == expected, "bangle at y=1 is " + at1.str());

        std::map<std::vector<int>, long> chi;
        bool fitted = oracle::grassmannian_euler(S.algebra, curve_representation(T, S, loop, Q(1)), chi);
        c.expect(fitted, "finite-field counts not polynomial");
        std::map<std::vector<int>, Z> gen(chi.begin(), chi.end());
        auto F = detail::y_series(gen, 2);
        auto oracle_poly = detail::apply_yhat(F, signed_adjacency(S.algebra), shear_coordinates(T, loop));
        c.expect(oracle_poly.specialize({1, 1}) == expected, "finite-field route gives " + oracle_poly.str());
    });
    return "(x1^2 + x2^2 + 1)/(x1 x2) by both routes";
}

}  // namespace

int main()
{
    Report rep;
    std::vector<std::function<std::string(Check&)>> crit{criterion1, criterion2, criterion3,
                                                         criterion4, criterion5, criterion6};
    for (std::size_t k = 0; k < crit.size(); ++k) {
        Check c;
        auto t0 = Clock::now();
        std::string good;
        guarded(c, "criterion", [&] { good = crit[k](c); });
        char t[32];
        std::snprintf(t, sizeof t, " (%.2f s)", since(t0));
        rep.line(static_cast<int>(k + 1), c.ok, c.summary(good) + t);
    }
    return rep.failed ? 1 : 0;
}
