#pragma once

#include "linalg.hpp"

#include <string>
#include <utility>
#include <vector>

namespace gentle {

/// Univariate polynomial over Q, coefficients from degree 0 upwards, no trailing zeros.
class UPoly {
public:
    UPoly() = default;
    explicit UPoly(std::vector<Q> c) : c_(std::move(c)) { trim(); }
    static UPoly constant(const Q& x) { return UPoly(std::vector<Q>{x}); }
    static UPoly t() { return UPoly(std::vector<Q>{0, 1}); }

    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    const Q& lead() const { return c_.back(); }
    const std::vector<Q>& coeffs() const { return c_; }
    Q coeff(int i) const { return i < static_cast<int>(c_.size()) ? c_[i] : Q(0); }

    friend UPoly operator+(const UPoly& x, const UPoly& y)
    {
        std::vector<Q> r(std::max(x.c_.size(), y.c_.size()));
        for (std::size_t i = 0; i < r.size(); ++i) r[i] = x.coeff(static_cast<int>(i)) + y.coeff(static_cast<int>(i));
        return UPoly(std::move(r));
    }
    friend UPoly operator-(const UPoly& x, const UPoly& y)
    {
        std::vector<Q> r(std::max(x.c_.size(), y.c_.size()));
        for (std::size_t i = 0; i < r.size(); ++i) r[i] = x.coeff(static_cast<int>(i)) - y.coeff(static_cast<int>(i));
        return UPoly(std::move(r));
    }
    friend UPoly operator*(const UPoly& x, const UPoly& y)
    {
        if (x.is_zero() || y.is_zero()) return {};
        std::vector<Q> r(x.c_.size() + y.c_.size() - 1);
        for (std::size_t i = 0; i < x.c_.size(); ++i)
            for (std::size_t j = 0; j < y.c_.size(); ++j) r[i + j] += x.c_[i] * y.c_[j];
        return UPoly(std::move(r));
    }
    friend bool operator==(const UPoly&, const UPoly&) = default;

    /// Quotient and remainder by a nonzero divisor.
    std::pair<UPoly, UPoly> divmod(const UPoly& d) const
    {
        if (d.is_zero()) throw Error("DivisionByZero", "polynomial division");
        std::vector<Q> rem = c_;
        std::vector<Q> quo(std::max(0, degree() - d.degree() + 1));
        for (int k = degree() - d.degree(); k >= 0; --k) {
            Q f = rem[k + d.degree()] / d.lead();
            quo[k] = f;
            if (sgn(f) == 0) continue;
            for (int i = 0; i <= d.degree(); ++i) rem[k + i] -= f * d.c_[i];
        }
        return {UPoly(std::move(quo)), UPoly(std::move(rem))};
    }

    UPoly monic() const
    {
        if (is_zero()) return {};
        std::vector<Q> r = c_;
        Q l = lead();
        for (auto& x : r) x /= l;
        return UPoly(std::move(r));
    }

    std::string str(const std::string& var = "t") const
    {
        if (is_zero()) return "0";
        std::string s;
        for (int i = degree(); i >= 0; --i) {
            if (sgn(c_[i]) == 0) continue;
            Q a = abs(c_[i]);
            if (!s.empty()) s += sgn(c_[i]) < 0 ? " - " : " + ";
            else if (sgn(c_[i]) < 0) s += "-";
            bool one = a == 1;
            if (i == 0 || !one) s += a.get_str();
            if (i > 0) {
                if (!one) s += "*";
                s += var;
                if (i > 1) s += "^" + std::to_string(i);
            }
        }
        return s;
    }

private:
    void trim()
    {
        while (!c_.empty() && sgn(c_.back()) == 0) c_.pop_back();
    }
    std::vector<Q> c_;
};

/// Companion matrix of a monic polynomial of positive degree.
inline Matrix companion(const UPoly& p)
{
    UPoly m = p.monic();
    int d = m.degree();
    Matrix c(d, d);
    for (int i = 1; i < d; ++i) c(i, i - 1) = 1;
    for (int i = 0; i < d; ++i) c(i, d - 1) = -m.coeff(i);
    return c;
}

namespace detail {

// positive divisors of |n| by trial division; empty when |n| is too large to factor
inline std::vector<Z> divisors(Z n)
{
    n = abs(n);
    if (n == 0 || n > Z("1000000000000")) return {};
    std::vector<Z> small, large;
    for (Z d = 1; d * d <= n; ++d)
        if (n % d == 0) {
            small.push_back(d);
            if (d * d != n) large.push_back(n / d);
        }
    small.insert(small.end(), large.rbegin(), large.rend());
    return small;
}

}  // namespace detail

/// Rational roots of p with multiplicities, in increasing order. Roots are only
/// searched when the integer content-free coefficients at both ends are below 10^12.
inline std::vector<std::pair<Q, int>> rational_roots(UPoly p)
{
    std::vector<std::pair<Q, int>> out;
    if (p.degree() < 1) return out;
    auto strip = [&](const Q& r) {
        int k = 0;
        UPoly lin(std::vector<Q>{-r, 1});
        for (;;) {
            auto [q, rem] = p.divmod(lin);
            if (!rem.is_zero()) break;
            p = q;
            ++k;
        }
        if (k) out.push_back({r, k});
    };
    strip(Q(0));
    if (p.degree() < 1) return out;
    Z den = 1;
    for (const auto& c : p.coeffs()) den = lcm(den, Z(c.get_den()));
    Z a0 = Z(p.coeff(0) * den), an = Z(p.lead() * den);
    std::vector<Q> cands;
    auto dp = detail::divisors(a0), dq = detail::divisors(an);
    for (const auto& x : dp)
        for (const auto& y : dq) {
            Q r(x, y);
            r.canonicalize();
            cands.push_back(r);
            cands.push_back(-r);
        }
    std::sort(cands.begin(), cands.end());
    cands.erase(std::unique(cands.begin(), cands.end()), cands.end());
    for (const auto& r : cands) {
        if (p.degree() < 1) break;
        strip(r);
    }
    std::sort(out.begin(), out.end());
    return out;
}

/// Splits a monic p into coprime factors (t - r)^k for its rational roots r and one
/// cofactor without rational roots (omitted when constant).
inline std::vector<UPoly> primary_split(const UPoly& p)
{
    std::vector<UPoly> out;
    UPoly rest = p.monic();
    for (const auto& [r, k] : rational_roots(rest)) {
        UPoly f = UPoly::constant(1);
        for (int i = 0; i < k; ++i) f = f * UPoly(std::vector<Q>{-r, 1});
        rest = rest.divmod(f).first;
        out.push_back(f);
    }
    if (rest.degree() >= 1) out.push_back(rest.monic());
    return out;
}

/// Nonzero invariant factors (monic, in divisibility order) of a polynomial matrix.
inline std::vector<UPoly> invariant_factors(std::vector<std::vector<UPoly>> a)
{
    int rows = static_cast<int>(a.size());
    int cols = rows ? static_cast<int>(a[0].size()) : 0;
    std::vector<UPoly> diag;
    for (int k = 0; k < std::min(rows, cols); ++k) {
        for (;;) {
            int pi = -1, pj = -1, best = -1;
            for (int i = k; i < rows; ++i)
                for (int j = k; j < cols; ++j)
                    if (!a[i][j].is_zero() && (best < 0 || a[i][j].degree() < best)) {
                        best = a[i][j].degree();
                        pi = i;
                        pj = j;
                    }
            if (pi < 0) return diag;
            std::swap(a[k], a[pi]);
            for (int i = 0; i < rows; ++i) std::swap(a[i][k], a[i][pj]);
            bool clean = true;
            for (int i = k + 1; i < rows; ++i) {
                if (a[i][k].is_zero()) continue;
                auto [q, r] = a[i][k].divmod(a[k][k]);
                for (int j = k; j < cols; ++j) a[i][j] = a[i][j] - q * a[k][j];
                if (!r.is_zero()) clean = false;
            }
            for (int j = k + 1; j < cols; ++j) {
                if (a[k][j].is_zero()) continue;
                auto [q, r] = a[k][j].divmod(a[k][k]);
                for (int i = k; i < rows; ++i) a[i][j] = a[i][j] - q * a[i][k];
                if (!r.is_zero()) clean = false;
            }
            if (!clean) continue;
            int bad = -1;
            for (int i = k + 1; i < rows && bad < 0; ++i)
                for (int j = k + 1; j < cols && bad < 0; ++j)
                    if (!a[i][j].divmod(a[k][k]).second.is_zero()) bad = i;
            if (bad < 0) break;
            for (int j = k; j < cols; ++j) a[k][j] = a[k][j] + a[bad][j];
        }
        diag.push_back(a[k][k].monic());
    }
    return diag;
}

}  // namespace gentle
