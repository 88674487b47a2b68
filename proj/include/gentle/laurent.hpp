#pragma once

#include "linalg.hpp"

#include <map>
#include <string>
#include <vector>

namespace gentle {

using Z = mpz_class;

/// Sparse Laurent polynomial in x_1..x_n with polynomial dependence on y_1..y_n.
/// Terms are keyed by (y exponents, x exponents); zero coefficients are never stored.
class LaurentPoly {
public:
    using Key = std::pair<std::vector<int>, std::vector<int>>;  // (y, x)

    LaurentPoly() = default;
    explicit LaurentPoly(int n) : n_(n) {}

    static LaurentPoly monomial(std::vector<int> x, std::vector<int> y, const Z& c = 1)
    {
        LaurentPoly p(static_cast<int>(x.size()));
        if (y.size() != x.size()) throw Error("DimensionMismatch", "x and y exponents differ in length");
        p.add_term({std::move(y), std::move(x)}, c);
        return p;
    }
    static LaurentPoly one(int n) { return monomial(std::vector<int>(n, 0), std::vector<int>(n, 0)); }
    static LaurentPoly x(int n, int j)
    {
        std::vector<int> e(n, 0);
        e[j] = 1;
        return monomial(e, std::vector<int>(n, 0));
    }

    int n() const { return n_; }
    const std::map<Key, Z>& terms() const { return t_; }
    std::size_t size() const { return t_.size(); }
    bool is_zero() const { return t_.empty(); }

    void add_term(const Key& k, const Z& c)
    {
        if (c == 0) return;
        auto [it, fresh] = t_.emplace(k, c);
        if (!fresh) {
            it->second += c;
            if (it->second == 0) t_.erase(it);
        }
    }

    friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b)
    {
        a.check(b);
        for (const auto& [k, c] : b.t_) a.add_term(k, c);
        return a;
    }
    friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b)
    {
        a.check(b);
        for (const auto& [k, c] : b.t_) a.add_term(k, -c);
        return a;
    }
    friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b)
    {
        a.check(b);
        LaurentPoly r(a.n_);
        for (const auto& [ka, ca] : a.t_)
            for (const auto& [kb, cb] : b.t_) {
                Key k{ka.first, ka.second};
                for (int i = 0; i < a.n_; ++i) {
                    k.first[i] += kb.first[i];
                    k.second[i] += kb.second[i];
                }
                r.add_term(k, ca * cb);
            }
        return r;
    }
    friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) { return a.n_ == b.n_ && a.t_ == b.t_; }

    LaurentPoly pow(int e) const
    {
        if (e < 0) throw Error("NegativePower", "only monomials can be inverted");
        LaurentPoly r = one(n_), base = *this;
        for (; e; e >>= 1, base = base * base)
            if (e & 1) r = r * base;
        return r;
    }

    /// Substitutes y_i = values[i] and collects.
    LaurentPoly specialize(const std::vector<Z>& values) const
    {
        if (static_cast<int>(values.size()) != n_) throw Error("DimensionMismatch", "one value per y variable");
        LaurentPoly r(n_);
        for (const auto& [k, c] : t_) {
            Z f = c;
            for (int i = 0; i < n_; ++i) {
                Z p;
                mpz_pow_ui(p.get_mpz_t(), values[i].get_mpz_t(), static_cast<unsigned long>(k.first[i]));
                f *= p;
            }
            r.add_term({std::vector<int>(n_, 0), k.second}, f);
        }
        return r;
    }

    Z coefficient_sum() const
    {
        Z s = 0;
        for (const auto& [k, c] : t_) s += c;
        return s;
    }

    /// "c*x1^a1*...*y1^b1*..." joined by " + ", in term order.
    std::string str() const
    {
        if (t_.empty()) return "0";
        std::string out;
        for (const auto& [k, c] : t_) {
            std::string mono;
            auto put = [&](const char* var, int i, int e) {
                if (e == 0) return;
                if (!mono.empty()) mono += "*";
                mono += var + std::to_string(i + 1);
                if (e != 1) mono += "^" + std::to_string(e);
            };
            for (int i = 0; i < n_; ++i) put("x", i, k.second[i]);
            for (int i = 0; i < n_; ++i) put("y", i, k.first[i]);
            Z a = abs(c);
            std::string term;
            if (mono.empty()) term = a.get_str();
            else if (a == 1) term = mono;
            else term = a.get_str() + "*" + mono;
            if (out.empty()) out = (c < 0 ? "-" : "") + term;
            else out += (c < 0 ? " - " : " + ") + term;
        }
        return out;
    }

private:
    void check(const LaurentPoly& b) const
    {
        if (n_ != b.n_) throw Error("DimensionMismatch", "Laurent polynomials in different variable sets");
    }
    int n_ = 0;
    std::map<Key, Z> t_;
};

}  // namespace gentle
