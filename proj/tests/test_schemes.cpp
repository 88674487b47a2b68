#include <gentle/gentle.hpp>

#include <gtest/gtest.h>

#include <chrono>
#include <functional>
#include <random>

using namespace gentle;

namespace {

std::string corpus(const std::string& f) { return std::string(GENTLE_CORPUS) + "/" + f; }

GentleAlgebra algebra(const std::string& name) { return load_algebra(corpus(name + "_algebra.json")); }

double seconds_since(std::chrono::steady_clock::time_point t0)
{
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

struct Sweep {
    long modules = 0;
    long mismatches = 0;
};

// every direct sum of enumerated indecomposables (bands at lambda = 1, 2) with
// dimension at most cap at each vertex; smooth iff tangent_dim reaches the largest
// component through M
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

bool oracle_agrees(const GentleAlgebra& A, const Representation& M)
{
    int top = max_component_dim_above(A, M.dims, rank_function_of(A, M));
    return is_smooth_point(A, M) == (tangent_dim(A, M) == top);
}

Sweep smoothness_sweep(const GentleAlgebra& A, int cap, int len)
{
    auto ind = indecomposables(A, cap, len);
    Sweep out;
    std::vector<int> used(A.n(), 0);
    std::vector<int> pick;
    std::function<void(int)> rec = [&](int from) {
        if (!pick.empty()) {
            std::vector<Representation> parts;
            for (int i : pick) parts.push_back(ind[i]);
            ++out.modules;
            if (!oracle_agrees(A, direct_sum(A, parts))) ++out.mismatches;
        }
        for (int i = from; i < static_cast<int>(ind.size()); ++i) {
            bool fits = true;
            for (int v = 0; v < A.n(); ++v) fits = fits && used[v] + ind[i].dims[v] <= cap;
            if (!fits) continue;
            for (int v = 0; v < A.n(); ++v) used[v] += ind[i].dims[v];
            pick.push_back(i);
            rec(i);
            pick.pop_back();
            for (int v = 0; v < A.n(); ++v) used[v] -= ind[i].dims[v];
        }
    };
    rec(0);
    return out;
}

// random direct sums with dimension at most cap at each vertex: summands are drawn
// among those that still fit, stopping with probability 1/4 after each draw
Sweep sampled_sweep(const GentleAlgebra& A, int cap, int len, int samples, std::uint64_t seed)
{
    auto ind = indecomposables(A, cap, len);
    std::mt19937_64 rng(seed);
    Sweep out;
    for (int k = 0; k < samples; ++k) {
        std::vector<int> used(A.n(), 0);
        std::vector<Representation> parts;
        for (;;) {
            std::vector<int> fit;
            for (int i = 0; i < static_cast<int>(ind.size()); ++i) {
                bool ok = true;
                for (int v = 0; v < A.n(); ++v) ok = ok && used[v] + ind[i].dims[v] <= cap;
                if (ok) fit.push_back(i);
            }
            if (fit.empty()) break;
            const auto& X = ind[fit[rng() % fit.size()]];
            parts.push_back(X);
            for (int v = 0; v < A.n(); ++v) used[v] += X.dims[v];
            if (rng() % 4 == 0) break;
        }
        ++out.modules;
        if (!oracle_agrees(A, direct_sum(A, parts))) ++out.mismatches;
    }
    return out;
}

}  // namespace

// ---------------------------------------------------------------- census

TEST(Census, LoopAlgebraDimensionOne)
{
    auto t0 = std::chrono::steady_clock::now();
    auto A = algebra("sec7_5_1");
    auto Zs = components(A, {1});
    ASSERT_EQ(Zs.size(), 1u);
    EXPECT_EQ(Zs[0].r, std::vector<int>{0});
    EXPECT_EQ(component_dim(A, Zs[0]), 0);
    EXPECT_FALSE(is_smooth_point(A, simple(A, 0)));
    EXPECT_FALSE(is_generically_reduced(A, Zs[0]));
    EXPECT_EQ(tangent_dim(A, simple(A, 0)), 1);
    EXPECT_LT(seconds_since(t0), 1.0);
}

TEST(Census, LoopAlgebraDimensionTwo)
{
    auto A = algebra("sec7_5_1");
    auto Zs = components(A, {2});
    ASSERT_EQ(Zs.size(), 1u);
    EXPECT_TRUE(is_generically_reduced(A, Zs[0]));
}

TEST(Census, A3WithRelation)
{
    auto t0 = std::chrono::steady_clock::now();
    auto A = algebra("sec7_5_2");
    auto Z111 = components(A, {1, 1, 1});
    ASSERT_EQ(Z111.size(), 2u);
    std::set<RankFunction> rs;
    for (const auto& Z : Z111) rs.insert(Z.r);
    EXPECT_EQ(rs, (std::set<RankFunction>{{1, 0}, {0, 1}}));
    auto Z121 = components(A, {1, 2, 1});
    ASSERT_EQ(Z121.size(), 1u);
    EXPECT_EQ(Z121[0].r, (RankFunction{1, 1}));
    EXPECT_TRUE(is_generically_reduced(A, Z121[0]));
    auto semisimple = direct_sum(A, {simple(A, 0), simple(A, 1), simple(A, 2)});
    EXPECT_FALSE(is_smooth_point(A, semisimple));
    EXPECT_LT(seconds_since(t0), 1.0);
}

TEST(Census, Sec7_5_4ThreeBandComponents)
{
    auto t0 = std::chrono::steady_clock::now();
    auto A = algebra("sec7_5_4");
    std::vector<int> d{2, 2, 2, 2};
    auto Zs = components(A, d);
    ASSERT_EQ(Zs.size(), 3u);
    for (const auto& Z : Zs) {
        EXPECT_EQ(component_dim(A, Z), 16);
        EXPECT_EQ(gl_dim(d), 16);
        auto parts = canonical_decomposition(A, Z, 8);
        EXPECT_EQ(string_count(parts), 0);
        EXPECT_GE(band_count(parts), 1);
    }
    EXPECT_LT(seconds_since(t0), 1.0);
}

TEST(Census, ZeroDimensionVector)
{
    auto A = algebra("sec11");
    auto Zs = components(A, std::vector<int>(6, 0));
    ASSERT_EQ(Zs.size(), 1u);
    EXPECT_EQ(component_dim(A, Zs[0]), 0);
    EXPECT_TRUE(is_tau_reduced(A, Zs[0]));
}

TEST(Census, Sec11SigmaDimensionVectorContainsBandComponent)
{
    auto T = load_triangulation(corpus("sec11_triangulation.json"));
    auto S = build_QT_full(T);
    auto sigma = curve_from_json(T, read_json_file(corpus("sec11_sigma_curve.json")));
    auto M = curve_representation(T, S, sigma);
    EXPECT_EQ(M.dims, (std::vector<int>{1, 1, 1, 1, 1, 2}));
    auto r = rank_function_of(S.algebra, M);
    int hits = 0;
    for (const auto& Z : components(S.algebra, M.dims)) hits += Z.r == r;
    EXPECT_EQ(hits, 1);
}

TEST(RankFunctions, LoopAlgebraOnlyZero)
{
    auto A = algebra("sec7_5_1");
    EXPECT_EQ(rank_functions(A, {1}, false), std::vector<RankFunction>{{0}});
}

TEST(RankFunctions, MaximalAreMaximal)
{
    auto A = algebra("sec4");
    for (const auto& d : dimension_vectors(A.n(), 2)) {
        auto all = rank_functions(A, d, false);
        auto maxi = rank_functions(A, d, true);
        for (const auto& r : all) {
            EXPECT_TRUE(rank_function_valid(A, d, r));
            int above = 0;
            for (const auto& s : maxi) above += rank_leq(r, s);
            EXPECT_GE(above, 1);
        }
        for (const auto& r : maxi)
            for (const auto& s : all)
                if (r != s) EXPECT_FALSE(rank_leq(r, s));
    }
}

// ---------------------------------------------------------- block End table

TEST(Blocks, EndTableMatchesOracle)
{
    int tested = 0;
    for (auto f : {"sec4", "sec7_5_1", "sec7_5_2", "sec7_5_4", "sec11", "wheel"}) {
        auto A = algebra(f);
        for (const auto& d : dimension_vectors(A.n(), 2))
            for (const auto& Z : components(A, d))
                for (const auto& B : rho_blocks(A)) {
                    auto G = block_generic_module(A, B, Z);
                    auto model = model_algebra(B);
                    auto X = block_generic_representation(model, G);
                    int oracle = X.is_zero() ? 0 : hom_dim_oracle(model, X, X);
                    EXPECT_EQ(block_end_dim(G), oracle) << f << " " << B.type_name();
                    ++tested;
                }
    }
    EXPECT_GT(tested, 1000);
}

TEST(Components, DimensionMatchesGenericOrbit)
{
    // rigid generic points: dim Z = dim GL_d - dim End M
    auto A = algebra("sec4");
    for (const auto& d : dimension_vectors(A.n(), 1))
        for (const auto& Z : components(A, d)) {
            auto M = generic_point(A, Z, 1);
            if (M.is_zero() || ext1_dim(A, M, M) != 0) continue;
            EXPECT_EQ(component_dim(A, Z), gl_dim(d) - hom_dim_oracle(A, M, M));
        }
}

TEST(Components, BandOnlyIffFullDimension)
{
    for (auto f : {"sec7_5_4", "sec11"}) {
        auto A = algebra(f);
        for (const auto& d : dimension_vectors(A.n(), f == std::string("sec11") ? 1 : 2))
            for (const auto& Z : components(A, d)) {
                if (std::accumulate(d.begin(), d.end(), 0) == 0) continue;
                auto parts = canonical_decomposition(A, Z, 8);
                EXPECT_EQ(string_count(parts) == 0, component_dim(A, Z) == gl_dim(d)) << f;
            }
    }
}

TEST(GenericPoint, RankFunctionAndDeterminism)
{
    auto A = algebra("sec11");
    for (const auto& d : dimension_vectors(A.n(), 1))
        for (const auto& Z : components(A, d)) {
            auto M = generic_point(A, Z, 5);
            EXPECT_EQ(rank_function_of(A, M), Z.r);
            EXPECT_TRUE(satisfies_relations(A, M));
            EXPECT_EQ(M, generic_point(A, Z, 5));
        }
}

// ------------------------------------------------------------ smoothness

TEST(Smoothness, TangentDimensionExamples)
{
    auto A = validate_gentle(Quiver(3, {{"a", 0, 1}, {"b", 1, 2}}), {});
    auto M = direct_sum(A, {simple(A, 0), simple(A, 1), simple(A, 2)});
    EXPECT_EQ(tangent_dim(A, M), 2);
    EXPECT_TRUE(is_smooth_point(A, M));
}

TEST(Smoothness, RigidModulesAreSmooth)
{
    auto A = algebra("sec11");
    for (const auto& C : enumerate_strings(A, 4)) {
        auto M = string_module(A, C);
        if (ext1_dim(A, M, M) == 0) EXPECT_TRUE(is_smooth_point(A, M)) << format_string(A, C);
    }
}

TEST(Smoothness, OracleLoopAlgebra)
{
    auto s = smoothness_sweep(algebra("sec7_5_1"), 3, 12);
    EXPECT_EQ(s.mismatches, 0);
    EXPECT_EQ(s.modules, 5);
}

TEST(Smoothness, OracleA3WithRelation)
{
    auto s = smoothness_sweep(algebra("sec7_5_2"), 3, 12);
    EXPECT_EQ(s.mismatches, 0);
    EXPECT_EQ(s.modules, 205);
}

TEST(Smoothness, OracleSec7_5_4)
{
    auto s = smoothness_sweep(algebra("sec7_5_4"), 3, 12);
    EXPECT_EQ(s.mismatches, 0);
    EXPECT_GT(s.modules, 40000);
}

TEST(Smoothness, OracleSec11AllUpToTwo)
{
    auto s = smoothness_sweep(algebra("sec11"), 2, 12);
    EXPECT_EQ(s.mismatches, 0);
    EXPECT_EQ(s.modules, 146030);
}

TEST(Smoothness, OracleSec11SampledUpToThree)
{
    // the full set of sums with entries <= 3 is far too large to sweep
    auto s = sampled_sweep(algebra("sec11"), 3, 17, 20000, 31);
    EXPECT_EQ(s.mismatches, 0);
    EXPECT_EQ(s.modules, 20000);
}

TEST(Smoothness, SingularIffTwoComponentsForJacobian)
{
    auto A = algebra("sec11");
    for (const auto& d : dimension_vectors(A.n(), 1))
        for (const auto& r : rank_functions(A, d, false)) {
            Component Z{d, r};
            auto M = generic_point(A, Z, 2);
            EXPECT_EQ(!is_smooth_point(A, M), components_containing(A, d, r) >= 2);
        }
}

// ------------------------------------------------------ tau-reduced theory

TEST(TauReduced, Sec11UniquenessUpToTwo)
{
    auto A = algebra("sec11");
    std::vector<CensusEntry> census;
    ASSERT_NO_THROW(census = tau_reduced_components_census(A, 2));
    std::set<std::vector<int>> ds;
    for (const auto& e : census) EXPECT_TRUE(ds.insert(e.d).second);
}

TEST(TauReduced, BlockCriterionMatchesCeh)
{
    auto A = algebra("sec11");
    int bands = 0, tested = 0;
    for (const auto& d : dimension_vectors(A.n(), 2))
        for (const auto& Z : components(A, d)) {
            auto v = ceh_values(A, Z);
            ++tested;
            EXPECT_LE(v.c, v.e);
            EXPECT_LE(v.e, v.h);
            EXPECT_EQ(is_tau_reduced(A, Z), v.c == v.h);
            if (is_generically_reduced(A, Z)) EXPECT_EQ(v.c, v.e);
            auto parts = canonical_decomposition(A, Z, 12);
            EXPECT_EQ(v.c, band_count(parts));
            if (string_count(parts) == 0 && band_count(parts) == 1) {
                ++bands;
                EXPECT_EQ(v, (CEH{1, 1, 1}));
                EXPECT_TRUE(is_tau_reduced(A, Z));
                EXPECT_TRUE(block_critical_summands(A, Z).empty());
            }
        }
    EXPECT_GT(bands, 0);
    EXPECT_GE(tested, 729);
}

TEST(TauReduced, SimpleDimensionVectors)
{
    auto A = algebra("sec11");
    auto census = tau_reduced_components_census(A, 1);
    for (int j = 0; j < A.n(); ++j) {
        std::vector<int> d(A.n(), 0);
        d[j] = 1;
        bool present = false;
        for (const auto& e : census) present = present || e.d == d;
        EXPECT_EQ(present, is_tau_rigid(A, simple(A, j)));
    }
}

TEST(TauReduced, NonJacobianRefused)
{
    auto A = algebra("sec7_5_2");
    try {
        is_tau_reduced(A, components(A, {1, 1, 1})[0]);
        FAIL() << "accepted a non-Jacobian algebra";
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), "NotJacobian");
    }
}

TEST(TauReduced, TypeTwoCriticalSummand)
{
    // a 3-block whose generic module is P_2 + S_1 for a: 1 -> 2
    auto A = algebra("sec4");
    for (const auto& d : dimension_vectors(A.n(), 1))
        for (const auto& Z : components(A, d)) {
            bool type2 = false;
            for (const auto& c : block_critical_summands(A, Z)) type2 = type2 || c.type == 2;
            if (type2) EXPECT_FALSE(is_tau_reduced(A, Z));
            EXPECT_EQ(is_tau_reduced(A, Z), ceh_values(A, Z).c == ceh_values(A, Z).h);
        }
}

TEST(CEH, OrbitClosureOfTauRigidString)
{
    auto A = algebra("sec11");
    for (const auto& C : enumerate_strings(A, 3)) {
        auto M = string_module(A, C);
        if (!is_tau_rigid(A, M)) continue;
        Component Z{M.dims, rank_function_of(A, M)};
        bool is_component = false;
        for (const auto& Y : components(A, M.dims)) is_component = is_component || Y == Z;
        if (!is_component) continue;
        EXPECT_EQ(ceh_values(A, Z), (CEH{0, 0, 0}));
        EXPECT_TRUE(is_tau_reduced(A, Z));
    }
}
