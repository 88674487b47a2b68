#pragma once

#include "io.hpp"
#include "schemes.hpp"

#include <array>
#include <map>
#include <numeric>

namespace gentle {

/// Edge code inside a triangle: internal arc k >= 0, boundary segment b as -1-b.
inline bool is_arc(int code) { return code >= 0; }
inline int boundary_index(int code) { return -1 - code; }

/// Triangulated unpunctured marked surface. Triangles list their sides in
/// counterclockwise order; corner c of a triangle lies between sides c and c+1.
class Triangulation {
public:
    std::vector<std::string> arc_ids;
    std::vector<std::string> boundary_ids;
    std::vector<std::array<int, 3>> triangles;
    std::map<std::string, std::string> arrow_names;  // "i>j" or "i>j#2" (arc ids) -> arrow id

    int n() const { return static_cast<int>(arc_ids.size()); }
    int triangle_count() const { return static_cast<int>(triangles.size()); }
    int marked_points() const { return points_; }
    int boundary_components() const { return components_; }
    int genus() const { return genus_; }

    /// (triangle, side position) pairs containing an internal arc.
    const std::vector<std::pair<int, int>>& arc_sides(int arc) const { return arc_sides_[arc]; }
    std::pair<int, int> boundary_side(int b) const { return boundary_side_[b]; }
    int point_of(int tri, int corner) const { return corner_point_[3 * tri + ((corner % 3) + 3) % 3]; }

    int pos(int tri, int code) const
    {
        for (int p = 0; p < 3; ++p)
            if (triangles[tri][p] == code) return p;
        return -1;
    }
    int side(int tri, int p) const { return triangles[tri][((p % 3) + 3) % 3]; }

    /// The triangle across an internal arc.
    int other(int arc, int tri) const
    {
        const auto& s = arc_sides_[arc];
        return s[0].first == tri ? s[1].first : s[0].first;
    }

    int arc_index(const std::string& id) const
    {
        for (int k = 0; k < n(); ++k)
            if (arc_ids[k] == id) return k;
        throw Error("UnknownArc", "no internal arc " + id);
    }

    std::string edge_name(int code) const
    {
        return is_arc(code) ? arc_ids[code] : boundary_ids[boundary_index(code)];
    }

    /// Checks incidences and the Euler count, then derives marked points and boundary components.
    void finalize()
    {
        if (n() == 0) throw Error("InvalidTriangulation", "no internal arcs");
        arc_sides_.assign(n(), {});
        boundary_side_.assign(boundary_ids.size(), {-1, -1});
        for (int t = 0; t < triangle_count(); ++t) {
            const auto& tr = triangles[t];
            if (tr[0] == tr[1] || tr[1] == tr[2] || tr[0] == tr[2])
                throw Error("InvalidTriangulation", "triangle " + std::to_string(t + 1) + " repeats a side");
            for (int p = 0; p < 3; ++p) {
                int c = tr[p];
                if (is_arc(c)) {
                    arc_sides_[c].push_back({t, p});
                } else {
                    if (boundary_side_[boundary_index(c)].first >= 0)
                        throw Error("InvalidTriangulation", "boundary segment " + edge_name(c) + " in two triangles");
                    boundary_side_[boundary_index(c)] = {t, p};
                }
            }
        }
        for (int k = 0; k < n(); ++k)
            if (arc_sides_[k].size() != 2)
                throw Error("InvalidTriangulation", "arc " + arc_ids[k] + " must lie in exactly 2 triangles");
        for (std::size_t b = 0; b < boundary_ids.size(); ++b)
            if (boundary_side_[b].first < 0)
                throw Error("InvalidTriangulation", "boundary segment " + boundary_ids[b] + " in no triangle");

        // corners glued across arcs
        std::vector<int> parent(3 * triangle_count());
        std::iota(parent.begin(), parent.end(), 0);
        auto find = [&](int x) {
            while (parent[x] != x) x = parent[x] = parent[parent[x]];
            return x;
        };
        auto unite = [&](int x, int y) { parent[find(x)] = find(y); };
        auto corner = [](int t, int c) { return 3 * t + ((c % 3) + 3) % 3; };
        for (int k = 0; k < n(); ++k) {
            auto [t1, p1] = arc_sides_[k][0];
            auto [t2, p2] = arc_sides_[k][1];
            unite(corner(t1, p1 - 1), corner(t2, p2));
            unite(corner(t1, p1), corner(t2, p2 - 1));
        }
        std::map<int, int> ids;
        corner_point_.assign(3 * triangle_count(), 0);
        for (int x = 0; x < 3 * triangle_count(); ++x) {
            int root = find(x);
            if (!ids.count(root)) ids[root] = static_cast<int>(ids.size());
            corner_point_[x] = ids[root];
        }
        points_ = static_cast<int>(ids.size());

        // boundary cycles: segment b runs from start(b) to end(b)
        int nb = static_cast<int>(boundary_ids.size());
        std::vector<int> start(nb), end(nb), next(nb, -1);
        std::vector<int> on_boundary(points_, 0);
        for (int b = 0; b < nb; ++b) {
            auto [t, p] = boundary_side_[b];
            start[b] = point_of(t, p - 1);
            end[b] = point_of(t, p);
            ++on_boundary[start[b]];
        }
        for (int v = 0; v < points_; ++v)
            if (on_boundary[v] != 1) throw Error("InvalidTriangulation", "marked point off the boundary or pinched");
        for (int b = 0; b < nb; ++b)
            for (int c = 0; c < nb; ++c)
                if (start[c] == end[b]) next[b] = c;
        std::vector<char> seen(nb, 0);
        components_ = 0;
        for (int b = 0; b < nb; ++b) {
            if (seen[b]) continue;
            ++components_;
            for (int c = b; !seen[c]; c = next[c]) seen[c] = 1;
        }
        // connectedness through arcs
        std::vector<int> tp(triangle_count());
        std::iota(tp.begin(), tp.end(), 0);
        std::function<int(int)> tf = [&](int x) { return tp[x] == x ? x : tp[x] = tf(tp[x]); };
        for (int k = 0; k < n(); ++k) tp[tf(arc_sides_[k][0].first)] = tf(arc_sides_[k][1].first);
        for (int t = 0; t < triangle_count(); ++t)
            if (tf(t) != tf(0)) throw Error("InvalidTriangulation", "surface is not connected");

        int V = points_, E = n() + nb, F = triangle_count();
        int two_g = 2 - components_ - V + E - F;
        if (two_g < 0 || two_g % 2) throw Error("InvalidTriangulation", "Euler characteristic inconsistent");
        genus_ = two_g / 2;
        if (n() != 6 * genus_ + 3 * components_ + points_ - 6)
            throw Error("InvalidTriangulation", "arc count differs from 6g+3b+|M|-6");
        boundary_start_ = start;
        boundary_end_ = end;
    }

    int boundary_start(int b) const { return boundary_start_[b]; }
    int boundary_end(int b) const { return boundary_end_[b]; }

private:
    std::vector<std::vector<std::pair<int, int>>> arc_sides_;
    std::vector<std::pair<int, int>> boundary_side_;
    std::vector<int> corner_point_;
    std::vector<int> boundary_start_, boundary_end_;
    int points_ = 0, components_ = 0, genus_ = 0;
};

namespace detail {

inline std::string id_string(const json& x)
{
    if (x.is_string()) return x.get<std::string>();
    if (x.is_number_integer()) return std::to_string(x.get<long>());
    throw Error("ParseError", "edge id must be a string or integer");
}

}  // namespace detail

/// {"internal_arcs": [...], "boundary_segments": [...], "triangles": [[e1,e2,e3], ...]}
/// with counterclockwise triples; optional "arrow_names": {"i>j": id}.
inline Triangulation triangulation_from_json(const json& j)
{
    Triangulation T;
    for (const auto& x : field<json>(j, "internal_arcs", "triangulation")) T.arc_ids.push_back(detail::id_string(x));
    for (const auto& x : field<json>(j, "boundary_segments", "triangulation"))
        T.boundary_ids.push_back(detail::id_string(x));
    std::map<std::string, int> code;
    for (int k = 0; k < T.n(); ++k)
        if (!code.emplace(T.arc_ids[k], k).second) throw Error("InvalidTriangulation", "duplicate edge id");
    for (std::size_t b = 0; b < T.boundary_ids.size(); ++b)
        if (!code.emplace(T.boundary_ids[b], -1 - static_cast<int>(b)).second)
            throw Error("InvalidTriangulation", "duplicate edge id");
    for (const auto& tr : field<json>(j, "triangles", "triangulation")) {
        if (!tr.is_array() || tr.size() != 3) throw Error("ParseError", "triangle must list 3 edges");
        std::array<int, 3> t{};
        for (int p = 0; p < 3; ++p) {
            auto id = detail::id_string(tr[p]);
            if (!code.count(id)) throw Error("InvalidTriangulation", "unknown edge " + id);
            t[p] = code[id];
        }
        T.triangles.push_back(t);
    }
    if (j.contains("arrow_names"))
        for (auto it = j.at("arrow_names").begin(); it != j.at("arrow_names").end(); ++it)
            T.arrow_names[it.key()] = it.value().get<std::string>();
    T.finalize();
    return T;
}

inline Triangulation load_triangulation(const std::string& path) { return triangulation_from_json(read_json_file(path)); }

/// Q_T with its arrows indexed by triangle corner: arrow_at[t][k] is the arrow
/// from side k+1 to side k of triangle t (clockwise), or -1.
struct SurfaceAlgebra {
    GentleAlgebra algebra;
    std::vector<std::array<int, 3>> arrow_at;
};

inline SurfaceAlgebra build_QT_full(const Triangulation& T)
{
    std::vector<Arrow> arrows;
    std::vector<std::array<int, 3>> at(T.triangle_count(), {-1, -1, -1});
    std::map<std::pair<int, int>, int> seen;
    for (int t = 0; t < T.triangle_count(); ++t)
        for (int k = 0; k < 3; ++k) {
            int to = T.side(t, k), from = T.side(t, k + 1);
            if (!is_arc(to) || !is_arc(from)) continue;
            int dup = seen[{from, to}]++;
            std::string key = T.arc_ids[from] + ">" + T.arc_ids[to];
            std::string id;

            if (dup) key += "#" + std::to_string(dup + 1);
            if (T.arrow_names.count(key)) id = T.arrow_names.at(key);
            else id = "x" + T.arc_ids[from] + "_" + T.arc_ids[to] + (dup ? "_" + std::to_string(dup + 1) : "");
            at[t][k] = static_cast<int>(arrows.size());
            arrows.push_back({id, from, to});
        }
    std::vector<std::pair<int, int>> rels;
    for (int t = 0; t < T.triangle_count(); ++t)
        if (at[t][0] >= 0 && at[t][1] >= 0 && at[t][2] >= 0)
            for (int k = 0; k < 3; ++k) rels.push_back({at[t][k], at[t][(k + 1) % 3]});
    return {validate_gentle(Quiver(T.n(), arrows), rels), at};
}

inline GentleAlgebra build_QT(const Triangulation& T) { return build_QT_full(T).algebra; }

// ------------------------------------------------------------------- curves

enum class CurveKind { Arc, Open, Loop };

/// A curve given by the arcs it crosses. tris[i] is the triangle the curve is in
/// just before crossing crossings[i]; open curves carry one more triangle (the last).
struct Curve {
    CurveKind kind = CurveKind::Open;
    int arc = -1;
    std::vector<int> crossings;
    std::vector<int> tris;

    int length() const { return static_cast<int>(crossings.size()); }
    friend bool operator==(const Curve&, const Curve&) = default;
    friend auto operator<=>(const Curve& x, const Curve& y)
    {
        if (x.kind != y.kind) return static_cast<int>(x.kind) <=> static_cast<int>(y.kind);
        if (x.arc != y.arc) return x.arc <=> y.arc;
        if (x.crossings != y.crossings) return x.crossings <=> y.crossings;
        return x.tris <=> y.tris;
    }
};

inline Curve arc_curve(int j) { return {CurveKind::Arc, j, {}, {}}; }

namespace detail {

inline bool walk(const Triangulation& T, const std::vector<int>& cr, int start, bool loop, std::vector<int>& tris)
{
    tris.clear();
    int cur = start;
    for (int j : cr) {
        if (T.pos(cur, j) < 0) return false;
        tris.push_back(cur);
        cur = T.other(j, cur);
    }
    if (loop) return cur == start;
    tris.push_back(cur);
    return true;
}

}  // namespace detail

/// Builds and checks a curve from its crossing sequence; start_triangle < 0 asks
/// for the unique consistent choice.
inline Curve validate_curve(const Triangulation& T, CurveKind kind, const std::vector<int>& crossings,
                            int start_triangle = -1)
{
    if (kind == CurveKind::Arc) throw Error("InconsistentSequence", "use arc_curve for arcs of T");
    int m = static_cast<int>(crossings.size());
    if (m == 0) throw Error("InconsistentSequence", "empty crossing sequence");
    for (int j : crossings)
        if (j < 0 || j >= T.n()) throw Error("InconsistentSequence", "unknown arc");
    bool loop = kind == CurveKind::Loop;
    for (int i = 0; i + 1 < m + (loop ? 1 : 0); ++i)
        if (crossings[i] == crossings[(i + 1) % m])
            throw Error("NotLocallyMinimal", "arc " + T.arc_ids[crossings[i]] + " crossed twice in a row");
    if (loop && m < 2) throw Error("InconsistentSequence", "a loop crosses at least two arcs");
    std::vector<int> cands;
    if (start_triangle >= 0) cands = {start_triangle};
    else
        for (auto [t, p] : T.arc_sides(crossings[0])) cands.push_back(t);
    Curve c{kind, -1, crossings, {}};
    std::vector<Curve> found;
    for (int s : cands) {
        std::vector<int> tris;
        if (detail::walk(T, crossings, s, loop, tris)) found.push_back({kind, -1, crossings, tris});
    }
    if (found.empty()) throw Error("InconsistentSequence", "consecutive arcs do not share the traversed triangle");
    if (found.size() > 1) {
        // a single crossing read from either side is the same arc
        bool same = !loop && m == 1;
        if (!same) throw Error("InconsistentSequence", "ambiguous sequence; give start_triangle");
    }
    c = found.front();
    if (loop) {
        for (int p = 1; p < m; ++p) {
            if (m % p) continue;
            bool periodic = true;
            for (int i = 0; i < m && periodic; ++i)
                periodic = crossings[i] == crossings[(i + p) % m] && c.tris[i] == c.tris[(i + p) % m];
            if (periodic) throw Error("NotPrimitive", "loop is a proper power");
        }
    }
    return c;
}

inline Curve reverse(const Curve& c)
{
    if (c.kind == CurveKind::Arc) return c;
    Curve r = c;
    int m = c.length();
    std::reverse(r.crossings.begin(), r.crossings.end());
    if (c.kind == CurveKind::Open) {
        std::reverse(r.tris.begin(), r.tris.end());
    } else {
        // before crossing j_i in reverse we sit in the triangle after j_i in forward order
        for (int i = 0; i < m; ++i) r.tris[i] = c.tris[(m - i) % m];
    }
    return r;
}

/// Representative fixed under reversal and (for loops) rotation.
inline Curve canonical_curve(const Curve& c)
{
    if (c.kind == CurveKind::Arc) return c;
    if (c.kind == CurveKind::Open) return std::min(c, reverse(c));
    Curve best = c;
    int m = c.length();
    for (const Curve& base : {c, reverse(c)})
        for (int r = 0; r < m; ++r) {
            Curve x = base;
            std::rotate(x.crossings.begin(), x.crossings.begin() + r, x.crossings.end());
            std::rotate(x.tris.begin(), x.tris.begin() + r, x.tris.end());
            best = std::min(best, x);
        }
    return best;
}

/// Curve JSON: {"arc": id} | {"open": [ids], "start_triangle": k} | {"loop": [ids], "start_triangle": k},
/// triangles numbered from 1.
inline Curve curve_from_json(const Triangulation& T, const json& j)
{
    if (j.contains("arc")) return arc_curve(T.arc_index(detail::id_string(j.at("arc"))));
    CurveKind kind;
    const json* seq;
    if (j.contains("open")) {
        kind = CurveKind::Open;
        seq = &j.at("open");
    } else if (j.contains("loop")) {
        kind = CurveKind::Loop;
        seq = &j.at("loop");
    } else {
        throw Error("ParseError", "curve needs \"arc\", \"open\" or \"loop\"");
    }
    std::vector<int> cr;
    for (const auto& x : *seq) cr.push_back(T.arc_index(detail::id_string(x)));
    int start = j.contains("start_triangle") ? j.at("start_triangle").get<int>() - 1 : -1;
    return validate_curve(T, kind, cr, start);
}

inline json curve_to_json(const Triangulation& T, const Curve& c)
{
    if (c.kind == CurveKind::Arc) return {{"arc", T.arc_ids[c.arc]}};
    json seq = json::array();
    for (int j : c.crossings) seq.push_back(T.arc_ids[j]);
    return {{c.kind == CurveKind::Open ? "open" : "loop", seq}, {"start_triangle", c.tris[0] + 1}};
}

inline std::string format_curve(const Triangulation& T, const Curve& c)
{
    if (c.kind == CurveKind::Arc) return "arc " + T.arc_ids[c.arc];
    std::string s = c.kind == CurveKind::Open ? "open(" : "loop(";
    for (int i = 0; i < c.length(); ++i) s += (i ? "," : "") + T.arc_ids[c.crossings[i]];
    return s + ")@" + std::to_string(c.tris[0] + 1);
}

// -------------------------------------------------------- curves and modules

namespace detail {

// letter between crossings x then y inside triangle t
inline Letter crossing_letter(const Triangulation& T, const SurfaceAlgebra& S, int t, int x, int y)
{
    int p = T.pos(t, x), q = T.pos(t, y);
    if ((p + 1) % 3 == q) return {S.arrow_at[t][p], false};  // arrow y -> x
    return {S.arrow_at[t][q], true};                          // arrow x -> y
}

inline std::vector<Letter> curve_letters(const Triangulation& T, const SurfaceAlgebra& S, const Curve& c)
{
    std::vector<Letter> w;
    int m = c.length();
    int pairs = c.kind == CurveKind::Loop ? m : m - 1;
    for (int i = 0; i < pairs; ++i) w.push_back(crossing_letter(T, S, c.tris[(i + 1) % (c.kind == CurveKind::Loop ? m : m + 1)], c.crossings[i], c.crossings[(i + 1) % m]));
    return w;
}

}  // namespace detail

struct NegativeSimple {
    int vertex = 0;
    friend bool operator==(const NegativeSimple&, const NegativeSimple&) = default;
};

using CurveModule = std::variant<StringWord, BandWord, NegativeSimple>;

/// String for an open curve, band for a loop, negative simple for an arc of T.
/// The words are read along the curve (not canonicalised).
inline CurveModule curve_to_module(const Triangulation& T, const SurfaceAlgebra& S, const Curve& c)
{
    if (c.kind == CurveKind::Arc) return NegativeSimple{c.arc};
    auto w = detail::curve_letters(T, S, c);
    if (c.kind == CurveKind::Open) {
        StringWord C{w, c.crossings[0], 1};
        check_string(S.algebra, C);
        return C;
    }
    BandWord B{w};
    check_band(S.algebra, B);
    return B;
}

inline Representation curve_representation(const Triangulation& T, const SurfaceAlgebra& S, const Curve& c,
                                           const Q& lambda = 1)
{
    auto m = curve_to_module(T, S, c);
    if (const auto* C = std::get_if<StringWord>(&m)) return string_module(S.algebra, *C);
    if (const auto* B = std::get_if<BandWord>(&m)) return band_module(S.algebra, *B, lambda);
    return zero_rep(S.algebra, std::vector<int>(T.n(), 0));
}

/// Type A / affine A quiver recording a curve: vertex i carries crossings[i];
/// each arrow is (from, to, Q_T arrow).
struct CoefficientQuiver {
    std::vector<int> labels;
    struct Edge {
        int from, to, arrow;
    };
    std::vector<Edge> edges;
    bool cyclic = false;
    int size() const { return static_cast<int>(labels.size()); }
};

inline CoefficientQuiver coefficient_quiver(const Triangulation& T, const SurfaceAlgebra& S, const Curve& c)
{
    if (c.kind == CurveKind::Arc) throw Error("NotACurve", "arcs of T have no coefficient quiver");
    CoefficientQuiver Q;
    Q.labels = c.crossings;
    Q.cyclic = c.kind == CurveKind::Loop;
    auto w = detail::curve_letters(T, S, c);
    int m = c.length();
    for (int i = 0; i < static_cast<int>(w.size()); ++i) {
        int x = i, y = (i + 1) % m;
        // direct letter: the arrow points from crossing i+1 to crossing i
        if (w[i].inv) Q.edges.push_back({x, y, w[i].arrow});
        else Q.edges.push_back({y, x, w[i].arrow});
    }
    return Q;
}

/// Coefficient quiver of a string or band word: basis vector b_j at vertex label,
/// an edge b_u -> b_v whenever an arrow sends b_u to b_v.
inline CoefficientQuiver word_coefficient_quiver(const GentleAlgebra& A, const std::vector<Letter>& w, bool cyclic,
                                                 int trivial_vertex = 0)
{
    CoefficientQuiver Q;
    Q.cyclic = cyclic;
    int m = static_cast<int>(w.size());
    if (!cyclic) {
        Q.labels.push_back(m == 0 ? trivial_vertex : ltgt(A, w[0]));
        for (const auto& c : w) Q.labels.push_back(lsrc(A, c));
    } else {
        for (const auto& c : w) Q.labels.push_back(ltgt(A, c));
    }
    int nv = static_cast<int>(Q.labels.size());
    for (int j = 0; j < m; ++j) {
        int x = j, y = (j + 1) % nv;
        if (w[j].inv) Q.edges.push_back({x, y, w[j].arrow});
        else Q.edges.push_back({y, x, w[j].arrow});
    }
    return Q;
}

// -------------------------------------------------- rotation and endpoint fans

enum class Turn { Forward, Backward };

namespace detail {

struct Fan {
    std::vector<int> arcs;  // crossed from the boundary segment towards the curve
    int boundary = -1;      // edge code of the boundary segment reached
    int tri = -1;           // triangle containing that boundary segment
    int corner = -1;        // corner of that triangle at the marked point
};

// Walk around the marked point at corner c of triangle t, away from the curve,
// until a boundary segment is reached.
inline Fan fan(const Triangulation& T, int t, int c, Turn dir)
{
    Fan f;
    std::vector<int> rev;
    for (int guard = 0; guard < 4 * T.triangle_count() + 8; ++guard) {
        int entry = dir == Turn::Forward ? c + 1 : c;
        int e = T.side(t, entry);
        if (!is_arc(e)) {
            f.boundary = e;
            f.tri = t;
            f.corner = ((c % 3) + 3) % 3;
            f.arcs.assign(rev.rbegin(), rev.rend());
            return f;
        }
        rev.push_back(e);
        int t2 = T.other(e, t);
        int p2 = T.pos(t2, e);
        c = dir == Turn::Forward ? p2 : p2 - 1;
        t = t2;
    }
    throw Error("InternalError", "fan does not reach the boundary");
}

inline int mod3(int x) { return ((x % 3) + 3) % 3; }

// Open curve given by start corner, crossings and end corner, with homotopy moves.
struct OpenPath {
    int start_tri, start_corner;
    std::vector<int> crossings;
    int end_tri, end_corner;
};

inline void reduce_start(const Triangulation& T, OpenPath& p)
{
    while (!p.crossings.empty()) {
        int s = T.pos(p.start_tri, p.crossings.front());
        int cc = p.start_corner;
        if (s != cc && s != mod3(cc + 1)) break;
        int e = p.crossings.front();
        int t2 = T.other(e, p.start_tri);
        int s2 = T.pos(t2, e);
        p.start_corner = s == cc ? mod3(s2 - 1) : s2;
        p.start_tri = t2;
        p.crossings.erase(p.crossings.begin());
    }
}

inline OpenPath reversed(const OpenPath& p)
{
    OpenPath r{p.end_tri, p.end_corner, p.crossings, p.start_tri, p.start_corner};
    std::reverse(r.crossings.begin(), r.crossings.end());
    return r;
}

inline void cancel_backtracks(std::vector<int>& cr)
{
    std::vector<int> st;
    for (int j : cr) {
        if (!st.empty() && st.back() == j) st.pop_back();
        else st.push_back(j);
    }
    cr = st;
}

inline OpenPath open_path(const Triangulation& T, const Curve& c)
{
    int t0 = c.tris.front(), tm = c.tris.back();
    return {t0, mod3(T.pos(t0, c.crossings.front()) + 1), c.crossings, tm,
            mod3(T.pos(tm, c.crossings.back()) + 1)};
}

inline Curve path_to_curve(const Triangulation& T, const OpenPath& p)
{
    if (p.crossings.empty()) {
        if (p.start_tri != p.end_tri || p.start_corner == p.end_corner)
            throw Error("InternalError", "degenerate rotated curve");
        // the side joining two corners c, d of a triangle is the one incident to both
        int c = p.start_corner, d = p.end_corner;
        int side = mod3(c + 1) == d ? d : c;
        int e = T.side(p.start_tri, side);
        if (!is_arc(e)) throw Error("BoundarySegment", "curve became the boundary segment " + T.edge_name(e));
        return arc_curve(e);
    }
    return validate_curve(T, CurveKind::Open, p.crossings, p.start_tri);
}

}  // namespace detail

/// Moves both endpoints to the neighbouring marked point on their boundary component.
inline Curve rotate_tau(const Triangulation& T, const Curve& c, Turn dir)
{
    if (c.kind != CurveKind::Open) throw Error("NotOpenCurve", "rotation needs an open curve");
    auto p = detail::open_path(T, c);
    auto fa = detail::fan(T, p.start_tri, p.start_corner, dir);
    auto fb = detail::fan(T, p.end_tri, p.end_corner, dir);
    // new endpoints: the far end of the boundary segment from the old marked point
    int bpa = T.pos(fa.tri, fa.boundary);
    int bpb = T.pos(fb.tri, fb.boundary);
    auto far_corner = [](int bpos, int near) { return detail::mod3(bpos) == detail::mod3(near) ? detail::mod3(bpos - 1) : detail::mod3(bpos); };
    detail::OpenPath q;
    q.start_tri = fa.tri;
    q.start_corner = far_corner(bpa, fa.corner);
    q.end_tri = fb.tri;
    q.end_corner = far_corner(bpb, fb.corner);
    q.crossings = fa.arcs;
    q.crossings.insert(q.crossings.end(), p.crossings.begin(), p.crossings.end());
    q.crossings.insert(q.crossings.end(), fb.arcs.rbegin(), fb.arcs.rend());
    detail::cancel_backtracks(q.crossings);
    detail::reduce_start(T, q);
    q = detail::reversed(q);
    detail::reduce_start(T, q);
    q = detail::reversed(q);
    return canonical_curve(detail::path_to_curve(T, q));
}

// ---------------------------------------------------------- shear coordinates

/// Rotation sense used for the half-turn of endpoints in shear coordinates.
inline constexpr Turn kShearTurn = Turn::Forward;

namespace detail {

// +1 if both neighbours' clockwise arrows point into the middle side, -1 if both point out
inline int shear_sign(const Triangulation& T, int tl, int left, int mid, int tr, int right)
{
    auto into = [&](int t, int nb) { return mod3(T.pos(t, nb) - 1) == T.pos(t, mid); };
    bool a = into(tl, left), b = into(tr, right);
    if (a && b) return 1;
    if (!a && !b) return -1;
    return 0;
}

}  // namespace detail

inline std::vector<int> shear_coordinates(const Triangulation& T, const Curve& c, Turn dir = kShearTurn)
{
    std::vector<int> s(T.n(), 0);
    if (c.kind == CurveKind::Arc) {
        s[c.arc] = 1;
        return s;
    }
    int m = c.length();
    if (c.kind == CurveKind::Loop) {
        for (int k = 0; k < m; ++k)
            s[c.crossings[k]] += detail::shear_sign(T, c.tris[k], c.crossings[(k + m - 1) % m], c.crossings[k],
                                                    c.tris[(k + 1) % m], c.crossings[(k + 1) % m]);
        return s;
    }
    // extend by the endpoint fans: seq[i] and seq[i+1] share triangle tri[i]
    auto p = detail::open_path(T, c);
    auto fa = detail::fan(T, p.start_tri, p.start_corner, dir);
    auto fb = detail::fan(T, p.end_tri, p.end_corner, dir);
    std::vector<int> seq{fa.boundary};
    std::vector<int> tri;
    int cur = fa.tri;
    for (int e : fa.arcs) {
        tri.push_back(cur);
        seq.push_back(e);
        cur = T.other(e, cur);
    }
    for (int e : c.crossings) {
        tri.push_back(cur);
        seq.push_back(e);
        cur = T.other(e, cur);
    }
    for (auto it = fb.arcs.rbegin(); it != fb.arcs.rend(); ++it) {
        tri.push_back(cur);
        seq.push_back(*it);
        cur = T.other(*it, cur);
    }
    tri.push_back(cur);
    seq.push_back(fb.boundary);
    for (std::size_t k = 1; k + 1 < seq.size(); ++k)
        s[seq[k]] += detail::shear_sign(T, tri[k - 1], seq[k - 1], seq[k], tri[k], seq[k + 1]);
    return s;
}

// ------------------------------------------------------------- laminations

struct Lamination {
    std::vector<std::pair<Curve, int>> entries;
};

/// Weighted sum of shear coordinates; the curves need not be compatible.
inline std::vector<int> shear_coordinates(const Triangulation& T, const std::vector<std::pair<Curve, int>>& entries)
{
    std::vector<int> s(T.n(), 0);
    for (const auto& [c, k] : entries) {
        auto x = shear_coordinates(T, c);
        for (int i = 0; i < T.n(); ++i) s[i] += k * x[i];
    }
    return s;
}

inline std::vector<int> shear_coordinates(const Triangulation& T, const Lamination& L)
{
    return shear_coordinates(T, L.entries);
}

/// Int(gamma, delta) = 0, decided through Hom(M, tau N) and Hom(N, tau M).
inline bool int_zero(const Triangulation& T, const SurfaceAlgebra& S, const Curve& x, const Curve& y)
{
    if (x.kind == CurveKind::Arc && y.kind == CurveKind::Arc) return true;
    if (x.kind == CurveKind::Arc || y.kind == CurveKind::Arc) {
        const Curve& a = x.kind == CurveKind::Arc ? x : y;
        const Curve& o = x.kind == CurveKind::Arc ? y : x;
        return std::find(o.crossings.begin(), o.crossings.end(), a.arc) == o.crossings.end();
    }
    bool same_loop = x.kind == CurveKind::Loop && canonical_curve(x) == canonical_curve(y);
    Representation M = curve_representation(T, S, x, 1);
    Representation N = curve_representation(T, S, y, same_loop ? 2 : 1);
    const GentleAlgebra& A = S.algebra;
    return hom_dim_oracle(A, M, tau_dtr(A, N)) == 0 && hom_dim_oracle(A, N, tau_dtr(A, M)) == 0;
}

/// Merges repeated curves and checks pairwise compatibility.
inline Lamination make_lamination(const Triangulation& T, const SurfaceAlgebra& S,
                                  const std::vector<std::pair<Curve, int>>& raw)
{
    std::map<Curve, int> acc;
    for (const auto& [c, k] : raw) {
        if (k < 1) throw Error("InvalidLamination", "multiplicities must be positive");
        acc[canonical_curve(c)] += k;
    }
    Lamination L;
    for (const auto& [c, k] : acc) L.entries.push_back({c, k});
    for (std::size_t i = 0; i < L.entries.size(); ++i)
        for (std::size_t j = i; j < L.entries.size(); ++j)
            if (!int_zero(T, S, L.entries[i].first, L.entries[j].first))
                throw Error("InvalidLamination", format_curve(T, L.entries[i].first) + " meets " +
                                                     format_curve(T, L.entries[j].first));
    return L;
}

/// Entries of [{"curve": {...}, "mult": k}, ...] without the compatibility check.
inline std::vector<std::pair<Curve, int>> curve_entries_from_json(const Triangulation& T, const json& j)
{
    if (!j.is_array()) throw Error("ParseError", "lamination must be a list");
    std::vector<std::pair<Curve, int>> raw;
    for (const auto& e : j) {
        int k = e.contains("mult") ? field<int>(e, "mult", "lamination entry") : 1;
        raw.push_back({curve_from_json(T, field<json>(e, "curve", "lamination entry")), k});
    }
    return raw;
}

inline Lamination lamination_from_json(const Triangulation& T, const SurfaceAlgebra& S, const json& j)
{
    return make_lamination(T, S, curve_entries_from_json(T, j));
}

inline json lamination_to_json(const Triangulation& T, const Lamination& L)
{
    json j = json::array();
    for (const auto& [c, k] : L.entries) j.push_back({{"curve", curve_to_json(T, c)}, {"mult", k}});
    return j;
}

struct DecoratedComponent {
    Component component;
    std::vector<int> v;
};

/// The decorated component attached to a lamination.
inline DecoratedComponent eta(const Triangulation& T, const SurfaceAlgebra& S, const Lamination& L)
{
    const GentleAlgebra& A = S.algebra;
    DecoratedComponent D{{std::vector<int>(T.n(), 0), RankFunction(A.m(), 0)}, std::vector<int>(T.n(), 0)};
    for (const auto& [c, k] : L.entries) {
        if (c.kind == CurveKind::Arc) {
            D.v[c.arc] += k;
            continue;
        }
        Representation M = curve_representation(T, S, c);
        auto r = rank_function_of(A, M);
        for (int i = 0; i < T.n(); ++i) D.component.d[i] += k * M.dims[i];
        for (int a = 0; a < A.m(); ++a) D.component.r[a] += k * r[a];
    }
    auto maximal = rank_functions(A, D.component.d, true);
    if (std::find(maximal.begin(), maximal.end(), D.component.r) == maximal.end())
        throw Error("InvalidLamination", "rank function of the lamination module is not maximal");
    if (!is_tau_reduced(A, D.component)) throw Error("InvalidLamination", "component is not tau-reduced");
    for (int i = 0; i < T.n(); ++i)
        if (D.v[i] && D.component.d[i]) throw Error("InvalidLamination", "decoration meets the module support");
    return D;
}

/// g-vector of a generic decorated module on the component.
inline std::vector<int> generic_g_vector(const GentleAlgebra& A, const DecoratedComponent& D, std::uint64_t seed = 0)
{
    return g_vector(A, DecoratedModule{generic_point(A, D.component, seed), D.v});
}

// ------------------------------------------------------------- enumeration

/// Every open curve with 1..max_cross crossings, canonical and sorted.
inline std::vector<Curve> enumerate_open_curves(const Triangulation& T, int max_cross)
{
    std::set<Curve> out;
    for (int t = 0; t < T.triangle_count(); ++t)
        for (int c = 0; c < 3; ++c) {
            int first = T.side(t, c + 2);  // opposite corner c
            if (!is_arc(first)) continue;
            std::vector<int> cr{first};
            std::function<void(int)> rec = [&](int cur) {
                // cur: triangle entered after the last crossing
                Curve x{CurveKind::Open, -1, cr, {}};
                std::vector<int> tris;
                detail::walk(T, cr, t, false, tris);
                x.tris = tris;
                out.insert(canonical_curve(x));
                if (static_cast<int>(cr.size()) == max_cross) return;
                for (int p = 0; p < 3; ++p) {
                    int e = T.side(cur, p);
                    if (!is_arc(e) || e == cr.back()) continue;
                    cr.push_back(e);
                    rec(T.other(e, cur));
                    cr.pop_back();
                }
            };
            rec(T.other(first, t));
        }
    return {out.begin(), out.end()};
}

/// Every primitive loop crossing 2..max_cross arcs, canonical and sorted.
inline std::vector<Curve> enumerate_loops(const Triangulation& T, int max_cross)
{
    std::set<Curve> out;
    for (int t0 = 0; t0 < T.triangle_count(); ++t0) {
        std::vector<int> cr, tris;
        std::function<void(int)> rec = [&](int cur) {
            if (static_cast<int>(cr.size()) >= 2 && cur == t0 && cr.back() != cr.front()) {
                try {
                    out.insert(canonical_curve(validate_curve(T, CurveKind::Loop, cr, t0)));
                } catch (const Error&) {
                }
            }
            if (static_cast<int>(cr.size()) == max_cross) return;
            for (int p = 0; p < 3; ++p) {
                int e = T.side(cur, p);
                if (!is_arc(e) || (!cr.empty() && e == cr.back())) continue;
                cr.push_back(e);
                rec(T.other(e, cur));
                cr.pop_back();
            }
        };
        rec(t0);
    }
    return {out.begin(), out.end()};
}

}  // namespace gentle
