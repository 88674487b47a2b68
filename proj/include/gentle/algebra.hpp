#pragma once

#include "linalg.hpp"

#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace gentle {

struct Arrow {
    std::string id;
    int s = 0;  // source, 0-based
    int t = 0;  // target, 0-based
};

/// Finite quiver with vertices 0..n-1 (printed 1..n).
class Quiver {
public:
    Quiver() = default;
    Quiver(int n, std::vector<Arrow> arrows) : n_(n), arrows_(std::move(arrows))
    {
        if (n_ <= 0) throw Error("InvalidQuiver", "need at least one vertex");
        for (std::size_t i = 0; i < arrows_.size(); ++i) {
            const Arrow& a = arrows_[i];
            if (a.s < 0 || a.s >= n_ || a.t < 0 || a.t >= n_)
                throw Error("InvalidQuiver", "arrow " + a.id + " has an endpoint out of range");
            if (!index_.emplace(a.id, static_cast<int>(i)).second)
                throw Error("InvalidQuiver", "duplicate arrow id " + a.id);
        }
    }

    int n() const { return n_; }
    int m() const { return static_cast<int>(arrows_.size()); }
    const Arrow& arrow(int i) const { return arrows_[i]; }
    const std::vector<Arrow>& arrows() const { return arrows_; }
    int s(int a) const { return arrows_[a].s; }
    int t(int a) const { return arrows_[a].t; }

    int index(const std::string& id) const
    {
        auto it = index_.find(id);
        if (it == index_.end()) throw Error("UnknownArrow", id);
        return it->second;
    }
    bool has(const std::string& id) const { return index_.count(id) != 0; }

    std::vector<int> out(int v) const
    {
        std::vector<int> r;
        for (int a = 0; a < m(); ++a)
            if (s(a) == v) r.push_back(a);
        return r;
    }
    std::vector<int> in(int v) const
    {
        std::vector<int> r;
        for (int a = 0; a < m(); ++a)
            if (t(a) == v) r.push_back(a);
        return r;
    }

private:
    int n_ = 0;
    std::vector<Arrow> arrows_;
    std::map<std::string, int> index_;
};

/// Gentle algebra KQ/I.  A relation (a, b) means the path ab lies in I,
/// that is b is followed by a and s(a) = t(b).
class GentleAlgebra {
public:
    Quiver quiver;
    std::set<std::pair<int, int>> relations;
    std::vector<int> sigma, epsilon;

    int n() const { return quiver.n(); }
    int m() const { return quiver.m(); }
    int s(int a) const { return quiver.s(a); }
    int t(int a) const { return quiver.t(a); }
    bool in_I(int a, int b) const { return relations.count({a, b}) != 0; }
};

inline std::string vertex_name(int v) { return std::to_string(v + 1); }

namespace detail {

// arrow b may be followed by arrow a when s(a) = t(b) and ab is not in I
inline bool composable(const Quiver& q, const std::set<std::pair<int, int>>& rel, int a, int b)
{
    return q.s(a) == q.t(b) && rel.count({a, b}) == 0;
}

inline bool has_infinite_paths(const Quiver& q, const std::set<std::pair<int, int>>& rel)
{
    int m = q.m();
    std::vector<int> state(m, 0);
    std::vector<std::pair<int, int>> stack;
    for (int root = 0; root < m; ++root) {
        if (state[root]) continue;
        stack.push_back({root, 0});
        state[root] = 1;
        while (!stack.empty()) {
            auto& [b, next] = stack.back();
            if (next == m) {
                state[b] = 2;
                stack.pop_back();
                continue;
            }
            int a = next++;
            if (!composable(q, rel, a, b)) continue;
            if (state[a] == 1) return true;
            if (state[a] == 0) {
                state[a] = 1;
                stack.push_back({a, 0});
            }
        }
    }
    return false;
}

}  // namespace detail

/// Sign maps with the three compatibility rules; free choices are +1 in arrow order.
inline std::pair<std::vector<int>, std::vector<int>> compute_sign_maps(
    const Quiver& q, const std::set<std::pair<int, int>>& rel)
{
    int m = q.m();
    // variable k < m is sigma(k), variable m + k is epsilon(k)
    std::vector<std::vector<std::pair<int, int>>> adj(2 * m);
    auto link = [&](int x, int y, int parity) {
        adj[x].push_back({y, parity});
        adj[y].push_back({x, parity});
    };
    for (int a = 0; a < m; ++a)
        for (int b = a + 1; b < m; ++b) {
            if (q.s(a) == q.s(b)) link(a, b, -1);
            if (q.t(a) == q.t(b)) link(m + a, m + b, -1);
        }
    for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b)
            if (detail::composable(q, rel, a, b)) link(a, m + b, -1);
    std::vector<int> val(2 * m, 0);
    for (int k = 0; k < m; ++k)
        for (int root : {k, m + k}) {
            if (val[root]) continue;
            val[root] = 1;
            std::vector<int> queue{root};
            for (std::size_t h = 0; h < queue.size(); ++h) {
                int x = queue[h];
                for (auto [y, p] : adj[x]) {
                    int want = val[x] * p;
                    if (val[y] == 0) {
                        val[y] = want;
                        queue.push_back(y);
                    } else if (val[y] != want) {
                        throw Error("InconsistentSigns", "sign constraints have no solution");
                    }
                }
            }
        }
    return {std::vector<int>(val.begin(), val.begin() + m),
            std::vector<int>(val.begin() + m, val.end())};
}

inline GentleAlgebra compute_sign_maps(GentleAlgebra A)
{
    std::tie(A.sigma, A.epsilon) = compute_sign_maps(A.quiver, A.relations);
    return A;
}

/// Checks axioms (i)-(iv) and finite dimensionality, then attaches sign maps.
inline GentleAlgebra validate_gentle(const Quiver& q, const std::vector<std::pair<int, int>>& rels)
{
    std::set<std::pair<int, int>> rel;
    for (auto [a, b] : rels) {
        if (a < 0 || a >= q.m() || b < 0 || b >= q.m())
            throw Error("UnknownArrow", "relation references a missing arrow");
        if (q.s(a) != q.t(b))
            throw Error("NonComposableRelation",
                        q.arrow(a).id + q.arrow(b).id + " is not a path");
        rel.insert({a, b});
    }
    for (int v = 0; v < q.n(); ++v) {
        if (q.out(v).size() > 2)
            throw Error("NotGentle", "axiom (i): more than two arrows start at vertex " + vertex_name(v));
        if (q.in(v).size() > 2)
            throw Error("NotGentle", "axiom (i): more than two arrows end at vertex " + vertex_name(v));
    }
    for (int b = 0; b < q.m(); ++b) {
        int inI = 0, outI = 0;
        for (int a : q.out(q.t(b))) (rel.count({a, b}) ? inI : outI)++;
        if (inI > 1 || outI > 1)
            throw Error("NotGentle", "axiom (iii) fails after arrow " + q.arrow(b).id);
    }
    for (int a = 0; a < q.m(); ++a) {
        int inI = 0, outI = 0;
        for (int b : q.in(q.s(a))) (rel.count({a, b}) ? inI : outI)++;
        if (inI > 1 || outI > 1)
            throw Error("NotGentle", "axiom (iv) fails before arrow " + q.arrow(a).id);
    }
    if (detail::has_infinite_paths(q, rel))
        throw Error("NotGentle", "algebra is infinite dimensional");
    GentleAlgebra A;
    A.quiver = q;
    A.relations = std::move(rel);
    return compute_sign_maps(std::move(A));
}

/// Checks the three sign rules; used by tests and internal assertions.
inline bool signs_valid(const GentleAlgebra& A)
{
    int m = A.m();
    if (static_cast<int>(A.sigma.size()) != m || static_cast<int>(A.epsilon.size()) != m) return false;
    for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b) {
            if (a != b && A.s(a) == A.s(b) && A.sigma[a] != -A.sigma[b]) return false;
            if (a != b && A.t(a) == A.t(b) && A.epsilon[a] != -A.epsilon[b]) return false;
            if (A.s(a) == A.t(b) && !A.in_I(a, b) && A.sigma[a] != -A.epsilon[b]) return false;
        }
    return true;
}

inline bool is_connected(const Quiver& q)
{
    std::vector<int> parent(q.n());
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (const auto& a : q.arrows()) parent[find(a.s)] = find(a.t);
    for (int v = 0; v < q.n(); ++v)
        if (find(v) != find(0)) return false;
    return true;
}

/// Conditions (v)-(vii): connected, no loops, every relation lies on a 3-cycle of relations.
inline bool is_jacobian(const GentleAlgebra& A)
{
    if (!is_connected(A.quiver)) return false;
    for (int a = 0; a < A.m(); ++a)
        if (A.s(a) == A.t(a)) return false;
    for (auto [a, b] : A.relations) {
        bool found = false;
        for (int c = 0; c < A.m() && !found; ++c)
            found = A.in_I(b, c) && A.in_I(c, a);
        if (!found) return false;
    }
    return true;
}

/// Reason string for a failed Jacobian check, empty when Jacobian.
inline std::string jacobian_failure(const GentleAlgebra& A)
{
    if (!is_connected(A.quiver)) return "not connected";
    for (int a = 0; a < A.m(); ++a)
        if (A.s(a) == A.t(a)) return "loop at " + vertex_name(A.s(a));
    for (auto [a, b] : A.relations) {
        bool found = false;
        for (int c = 0; c < A.m() && !found; ++c)
            found = A.in_I(b, c) && A.in_I(c, a);
        if (!found) return "relation " + A.quiver.arrow(a).id + A.quiver.arrow(b).id + " not on a 3-cycle";
    }
    return {};
}

enum class BlockType { C, Ctilde };

/// A rho-block together with its identification with the model C_m or C~_m.
/// Model vertex k maps to vertex_map[k]; model arrow k (k -> k+1, cyclically
/// for C~_m) maps to arrow_map[k].
struct RhoBlock {
    int id = 0;
    BlockType type = BlockType::C;
    int size = 1;
    std::vector<int> vertex_map;
    std::vector<int> arrow_map;

    std::string type_name() const
    {
        return (type == BlockType::C ? "C_" : "C~_") + std::to_string(size);
    }
    int model_arrows() const { return static_cast<int>(arrow_map.size()); }
    int model_s(int k) const { return k; }
    int model_t(int k) const { return (k + 1) % size; }
};

inline std::vector<RhoBlock> rho_blocks(const GentleAlgebra& A)
{
    int m = A.m();
    std::vector<int> succ(m, -1), pred(m, -1);
    for (auto [a, b] : A.relations) {
        if (succ[b] != -1 || pred[a] != -1)
            throw Error("UnclassifiableBlock", "arrow lies in two relations on one side");
        succ[b] = a;
        pred[a] = b;
    }
    std::vector<RhoBlock> blocks;
    std::vector<char> used(m, 0);
    std::vector<char> covered(A.n(), 0);
    auto emit = [&](std::vector<int> chain, bool cyclic) {
        RhoBlock B;
        B.id = static_cast<int>(blocks.size());
        B.type = cyclic ? BlockType::Ctilde : BlockType::C;
        B.arrow_map = chain;
        for (int a : chain) B.vertex_map.push_back(A.s(a));
        if (!cyclic) B.vertex_map.push_back(A.t(chain.back()));
        B.size = static_cast<int>(B.vertex_map.size());
        for (int v : B.vertex_map) covered[v] = 1;
        blocks.push_back(std::move(B));
    };
    for (int a = 0; a < m; ++a) {
        if (used[a] || pred[a] != -1) continue;
        std::vector<int> chain;
        for (int x = a; x != -1; x = succ[x]) {
            used[x] = 1;
            chain.push_back(x);
        }
        emit(chain, false);
    }
    for (int a = 0; a < m; ++a) {
        if (used[a]) continue;
        std::vector<int> chain;
        int x = a;
        do {
            if (x == -1) throw Error("UnclassifiableBlock", "broken relation cycle");
            used[x] = 1;
            chain.push_back(x);
            x = succ[x];
        } while (x != a);
        emit(chain, true);
    }
    for (int v = 0; v < A.n(); ++v)
        if (!covered[v]) {
            RhoBlock B;
            B.id = static_cast<int>(blocks.size());
            B.size = 1;
            B.vertex_map = {v};
            blocks.push_back(std::move(B));
        }
    return blocks;
}

inline std::vector<int> transport_dimvec(const RhoBlock& B, const std::vector<int>& d, int n)
{
    if (static_cast<int>(d.size()) != n) throw Error("LengthMismatch", "dimension vector length");
    std::vector<int> out;
    for (int v : B.vertex_map) out.push_back(d[v]);
    return out;
}

/// The model algebra C_m or C~_m of a block, with arrows named x1, x2, ...
inline GentleAlgebra model_algebra(const RhoBlock& B)
{
    std::vector<Arrow> arrows;
    for (int k = 0; k < B.model_arrows(); ++k)
        arrows.push_back({"x" + std::to_string(k + 1), B.model_s(k), B.model_t(k)});
    std::vector<std::pair<int, int>> rel;
    int k = B.model_arrows();
    for (int j = 0; j + 1 < k; ++j) rel.push_back({j + 1, j});
    if (B.type == BlockType::Ctilde) rel.push_back({0, k - 1});
    return validate_gentle(Quiver(B.size, arrows), rel);
}

}  // namespace gentle
