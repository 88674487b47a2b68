#pragma once

#include "algebra.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <string>
#include <vector>

namespace gentle {

struct Letter {
    int arrow = 0;
    bool inv = false;

    Letter inverse() const { return {arrow, !inv}; }
    friend bool operator==(const Letter&, const Letter&) = default;
    friend auto operator<=>(const Letter& x, const Letter& y)
    {
        if (x.arrow != y.arrow) return x.arrow <=> y.arrow;
        return static_cast<int>(x.inv) <=> static_cast<int>(y.inv);
    }
};

inline int lsrc(const GentleAlgebra& A, Letter c) { return c.inv ? A.t(c.arrow) : A.s(c.arrow); }
inline int ltgt(const GentleAlgebra& A, Letter c) { return c.inv ? A.s(c.arrow) : A.t(c.arrow); }
inline int lsigma(const GentleAlgebra& A, Letter c) { return c.inv ? A.epsilon[c.arrow] : A.sigma[c.arrow]; }
inline int lepsilon(const GentleAlgebra& A, Letter c) { return c.inv ? A.sigma[c.arrow] : A.epsilon[c.arrow]; }

/// c followed (on the right) by d is allowed inside a string.
inline bool letters_compose(const GentleAlgebra& A, Letter c, Letter d)
{
    return lsrc(A, c) == ltgt(A, d) && lsigma(A, c) == -lepsilon(A, d);
}

/// String c_1 ... c_m; when empty it is 1_{vertex, sign}.
struct StringWord {
    std::vector<Letter> letters;
    int vertex = 0;
    int sign = 1;

    int length() const { return static_cast<int>(letters.size()); }
    bool trivial() const { return letters.empty(); }
    friend bool operator==(const StringWord& x, const StringWord& y)
    {
        if (x.letters.empty() || y.letters.empty())
            return x.letters.empty() && y.letters.empty() && x.vertex == y.vertex && x.sign == y.sign;
        return x.letters == y.letters;
    }
    friend bool operator<(const StringWord& x, const StringWord& y)
    {
        if (x.letters.size() != y.letters.size()) return x.letters.size() < y.letters.size();
        if (x.letters.empty()) return std::pair(x.vertex, x.sign) < std::pair(y.vertex, y.sign);
        return x.letters < y.letters;
    }
};

struct BandWord {
    std::vector<Letter> letters;

    int length() const { return static_cast<int>(letters.size()); }
    friend bool operator==(const BandWord&, const BandWord&) = default;
    friend bool operator<(const BandWord& x, const BandWord& y)
    {
        if (x.letters.size() != y.letters.size()) return x.letters.size() < y.letters.size();
        return x.letters < y.letters;
    }
};

inline std::vector<Letter> inverse_letters(const std::vector<Letter>& w)
{
    std::vector<Letter> r;
    r.reserve(w.size());
    for (auto it = w.rbegin(); it != w.rend(); ++it) r.push_back(it->inverse());
    return r;
}

inline int string_source(const GentleAlgebra& A, const StringWord& C)
{
    return C.trivial() ? C.vertex : lsrc(A, C.letters.back());
}
inline int string_target(const GentleAlgebra& A, const StringWord& C)
{
    return C.trivial() ? C.vertex : ltgt(A, C.letters.front());
}
inline int string_sigma(const GentleAlgebra& A, const StringWord& C)
{
    return C.trivial() ? -C.sign : lsigma(A, C.letters.back());
}
inline int string_epsilon(const GentleAlgebra& A, const StringWord& C)
{
    return C.trivial() ? C.sign : lepsilon(A, C.letters.front());
}

inline StringWord trivial_string(int vertex, int sign = 1) { return {{}, vertex, sign}; }

inline StringWord inverse(const StringWord& C)
{
    if (C.trivial()) return trivial_string(C.vertex, -C.sign);
    return {inverse_letters(C.letters), 0, 1};
}

inline bool is_string(const GentleAlgebra& A, const std::vector<Letter>& w)
{
    for (const auto& c : w)
        if (c.arrow < 0 || c.arrow >= A.m()) return false;
    for (std::size_t i = 0; i + 1 < w.size(); ++i)
        if (!letters_compose(A, w[i], w[i + 1])) return false;
    return true;
}

inline void check_string(const GentleAlgebra& A, const StringWord& C)
{
    if (C.trivial()) {
        if (C.vertex < 0 || C.vertex >= A.n() || (C.sign != 1 && C.sign != -1))
            throw Error("InvalidString", "bad trivial string");
        return;
    }
    if (!is_string(A, C.letters)) throw Error("InvalidString", "letters do not form a string");
}

inline StringWord canonical_string(const GentleAlgebra& A, const StringWord& C)
{
    check_string(A, C);
    if (C.trivial()) return trivial_string(C.vertex, 1);
    auto inv = inverse_letters(C.letters);
    return {std::min(C.letters, inv), 0, 1};
}

/// Rotation-and-inversion minimal representative of a cyclic word (no validation).
inline std::vector<Letter> min_rotation(const std::vector<Letter>& w)
{
    std::vector<Letter> best = w;
    int m = static_cast<int>(w.size());
    const auto inv = inverse_letters(w);
    for (const auto* src : {&w, &inv})
        for (int r = 0; r < m; ++r) {
            std::vector<Letter> cand(src->begin() + r, src->end());
            cand.insert(cand.end(), src->begin(), src->begin() + r);
            if (cand < best) best = std::move(cand);
        }
    return best;
}

inline bool is_primitive(const std::vector<Letter>& w)
{
    int m = static_cast<int>(w.size());
    for (int p = 1; p < m; ++p) {
        if (m % p) continue;
        bool periodic = true;
        for (int i = p; i < m && periodic; ++i) periodic = w[i] == w[i - p];
        if (periodic) return false;
    }
    return true;
}

/// Cyclically composable: every power of w is a string.
inline bool is_band_shape(const GentleAlgebra& A, const std::vector<Letter>& w)
{
    if (w.size() < 2 || !is_string(A, w)) return false;
    return letters_compose(A, w.back(), w.front());
}

inline void check_band(const GentleAlgebra& A, const BandWord& B)
{
    if (!is_band_shape(A, B.letters)) throw Error("InvalidBand", "letters do not form a band");
    if (!is_primitive(B.letters)) throw Error("NotPrimitive", "band is a proper power");
}

inline BandWord canonical_band(const GentleAlgebra& A, const BandWord& B)
{
    check_band(A, B);
    return {min_rotation(B.letters)};
}

/// Letters that may follow c on the right inside a string.
inline std::vector<Letter> right_extensions(const GentleAlgebra& A, Letter c)
{
    std::vector<Letter> r;
    int v = lsrc(A, c);
    for (int a = 0; a < A.m(); ++a) {
        if (A.t(a) == v && letters_compose(A, c, Letter{a, false})) r.push_back({a, false});
        if (A.s(a) == v && letters_compose(A, c, Letter{a, true})) r.push_back({a, true});
    }
    return r;
}

/// Every string up to max_len, one canonical representative per class, sorted.
inline std::vector<StringWord> enumerate_strings(const GentleAlgebra& A, int max_len)
{
    std::vector<StringWord> out;
    for (int v = 0; v < A.n(); ++v) out.push_back(trivial_string(v));
    std::vector<std::vector<Letter>> ext(2 * A.m());
    for (int a = 0; a < A.m(); ++a)
        for (bool inv : {false, true}) ext[2 * a + inv] = right_extensions(A, {a, inv});
    std::vector<Letter> cur;
    auto rec = [&](auto&& self) -> void {
        auto inv = inverse_letters(cur);
        if (cur < inv) out.push_back({cur, 0, 1});
        if (static_cast<int>(cur.size()) == max_len) return;
        Letter last = cur.back();
        for (Letter d : ext[2 * last.arrow + last.inv]) {
            cur.push_back(d);
            self(self);
            cur.pop_back();
        }
    };
    if (max_len >= 1)
        for (int a = 0; a < A.m(); ++a)
            for (bool inv : {false, true}) {
                cur = {{a, inv}};
                rec(rec);
            }
    std::sort(out.begin(), out.end());
    return out;
}

/// Every band up to max_len, one canonical representative per class, sorted.
inline std::vector<BandWord> enumerate_bands(const GentleAlgebra& A, int max_len)
{
    std::vector<BandWord> out;
    std::vector<std::vector<Letter>> ext(2 * A.m());
    for (int a = 0; a < A.m(); ++a)
        for (bool inv : {false, true}) ext[2 * a + inv] = right_extensions(A, {a, inv});
    std::vector<Letter> cur;
    auto rec = [&](auto&& self) -> void {
        if (cur.size() >= 2 && letters_compose(A, cur.back(), cur.front()) && is_primitive(cur) &&
            min_rotation(cur) == cur)
            out.push_back({cur});
        if (static_cast<int>(cur.size()) == max_len) return;
        Letter last = cur.back();
        for (Letter d : ext[2 * last.arrow + last.inv]) {
            if (d < cur.front()) continue;  // canonical form starts with its least letter
            cur.push_back(d);
            self(self);
            cur.pop_back();
        }
    };
    for (int a = 0; a < A.m(); ++a)
        for (bool inv : {false, true}) {
            cur = {{a, inv}};
            rec(rec);
        }
    std::sort(out.begin(), out.end());
    return out;
}

// ---- text syntax ----

inline std::string format_letters(const GentleAlgebra& A, const std::vector<Letter>& w)
{
    std::string s;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (i) s += ',';
        s += A.quiver.arrow(w[i].arrow).id;
        if (w[i].inv) s += '-';
    }
    return s;
}

inline std::string format_string(const GentleAlgebra& A, const StringWord& C)
{
    if (C.trivial()) return "1@" + vertex_name(C.vertex);
    return format_letters(A, C.letters);
}

inline std::string format_band(const GentleAlgebra& A, const BandWord& B)
{
    return format_letters(A, B.letters);
}

inline std::vector<Letter> parse_letters(const GentleAlgebra& A, const std::string& text)
{
    std::vector<Letter> w;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        tok.erase(std::remove_if(tok.begin(), tok.end(), [](unsigned char ch) { return std::isspace(ch); }),
                  tok.end());
        if (tok.empty()) throw Error("ParseError", "empty letter in \"" + text + "\"");
        bool inv = tok.back() == '-';
        if (inv) tok.pop_back();
        w.push_back({A.quiver.index(tok), inv});
    }
    return w;
}

inline StringWord parse_string(const GentleAlgebra& A, const std::string& text)
{
    StringWord C;
    if (text.rfind("1@", 0) == 0) {
        int v = std::stoi(text.substr(2)) - 1;
        C = trivial_string(v);
    } else {
        C.letters = parse_letters(A, text);
    }
    check_string(A, C);
    return C;
}

inline BandWord parse_band(const GentleAlgebra& A, const std::string& text)
{
    BandWord B{parse_letters(A, text)};
    check_band(A, B);
    return B;
}

}  // namespace gentle
