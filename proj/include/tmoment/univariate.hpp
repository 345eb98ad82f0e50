#pragma once

#include "tmoment/polynomial.hpp"
#include "tmoment/scalar.hpp"

#include <stdexcept>
#include <utility>
#include <vector>

namespace tmoment::uni {

inline bool is_zero_value(const mpq_class& q) { return sgn(q) == 0; }
inline bool is_zero_value(const Surd& s) { return s.is_zero(); }

// Dense univariate polynomial over a field, coefficients low to high with no
// trailing zeros.
template <class F>
class UniPoly {
public:
    UniPoly() = default;
    explicit UniPoly(std::vector<F> coefficients) : c_(std::move(coefficients)) { trim(); }
    static UniPoly constant(const F& v) { return UniPoly(std::vector<F>{v}); }
    static UniPoly identity() { return UniPoly(std::vector<F>{F(0), F(1)}); }

    bool is_zero() const { return c_.empty(); }
    std::size_t degree() const
    {
        if (c_.empty()) throw std::logic_error("UniPoly: degree of the zero polynomial");
        return c_.size() - 1;
    }
    const std::vector<F>& coefficients() const { return c_; }
    F coefficient(std::size_t k) const { return k < c_.size() ? c_[k] : F(0); }
    const F& lead() const { return c_.back(); }

    F operator()(const F& x) const
    {
        F acc(0);
        for (std::size_t k = c_.size(); k-- > 0;) {
            F t = acc * x;
            acc = t + c_[k];
        }
        return acc;
    }

    UniPoly derivative() const
    {
        std::vector<F> d;
        for (std::size_t k = 1; k < c_.size(); ++k) {
            F t = c_[k] * F(static_cast<long>(k));
            d.push_back(t);
        }
        return UniPoly(std::move(d));
    }

    UniPoly monic() const
    {
        if (c_.empty()) return *this;
        std::vector<F> m;
        for (const F& v : c_) {
            F t = v / c_.back();
            m.push_back(t);
        }
        return UniPoly(std::move(m));
    }

    UniPoly scaled(const F& s) const
    {
        std::vector<F> m;
        for (const F& v : c_) {
            F t = v * s;
            m.push_back(t);
        }
        return UniPoly(std::move(m));
    }

    friend UniPoly operator+(const UniPoly& a, const UniPoly& b)
    {
        std::vector<F> r(std::max(a.c_.size(), b.c_.size()), F(0));
        for (std::size_t k = 0; k < a.c_.size(); ++k) r[k] = a.c_[k];
        for (std::size_t k = 0; k < b.c_.size(); ++k) {
            F t = r[k] + b.c_[k];
            r[k] = t;
        }
        return UniPoly(std::move(r));
    }
    friend UniPoly operator-(const UniPoly& a, const UniPoly& b) { return a + b.scaled(F(-1)); }
    friend UniPoly operator*(const UniPoly& a, const UniPoly& b)
    {
        if (a.is_zero() || b.is_zero()) return UniPoly();
        std::vector<F> r(a.c_.size() + b.c_.size() - 1, F(0));
        for (std::size_t i = 0; i < a.c_.size(); ++i)
            for (std::size_t j = 0; j < b.c_.size(); ++j) {
                F t = a.c_[i] * b.c_[j];
                F s = r[i + j] + t;
                r[i + j] = s;
            }
        return UniPoly(std::move(r));
    }
    friend bool operator==(const UniPoly& a, const UniPoly& b) { return a.c_ == b.c_; }

    // Quotient and remainder of Euclidean division by a nonzero divisor.
    friend std::pair<UniPoly, UniPoly> divmod(const UniPoly& a, const UniPoly& b)
    {
        if (b.is_zero()) throw std::domain_error("UniPoly: division by zero polynomial");
        std::vector<F> r = a.c_;
        if (r.size() < b.c_.size()) return {UniPoly(), a};
        std::vector<F> q(r.size() - b.c_.size() + 1, F(0));
        for (std::size_t k = q.size(); k-- > 0;) {
            F f = r[k + b.c_.size() - 1] / b.c_.back();
            q[k] = f;
            if (is_zero_value(f)) continue;
            for (std::size_t j = 0; j < b.c_.size(); ++j) {
                F t = f * b.c_[j];
                F s = r[k + j] - t;
                r[k + j] = s;
            }
        }
        r.resize(b.c_.size() - 1);
        return {UniPoly(std::move(q)), UniPoly(std::move(r))};
    }

private:
    void trim()
    {
        while (!c_.empty() && is_zero_value(c_.back())) c_.pop_back();
    }
    std::vector<F> c_;
};

// Monic gcd; gcd(0, 0) is 0.
template <class F>
UniPoly<F> gcd(UniPoly<F> a, UniPoly<F> b)
{
    while (!b.is_zero()) {
        auto r = divmod(a, b).second;
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

using QPoly = UniPoly<mpq_class>;
using SurdPoly = UniPoly<Surd>;

QPoly squarefree_part(const QPoly& p);
int sign_at(const QPoly& p, const mpq_class& x);

// Simplest rational (smallest denominator, then numerator) in [lo, hi].
mpq_class simplest_rational(const mpq_class& lo, const mpq_class& hi);

struct IsolatedRoot {
    mpq_class lo;
    mpq_class hi;  // lo == hi marks a root found exactly
};

// Disjoint isolating intervals for the distinct real roots, ascending, each
// refined to width at most `width`.
std::vector<IsolatedRoot> isolate_real_roots(const QPoly& p, const mpq_class& width);

struct RealRoot {
    Scalar value;  // exact when a linear or quadratic rational factor was certified
    mpq_class lo;
    mpq_class hi;
};

// Distinct real roots of a nonzero polynomial, ascending.
std::vector<RealRoot> real_roots(const QPoly& p, bool reconstruct_exact = true);

// Polynomial in a main variable whose coefficients are polynomials in the
// other variable of a bivariate polynomial.
class BiPoly {
public:
    BiPoly() = default;
    explicit BiPoly(std::vector<QPoly> c);
    // main_axis is the index (0 = x, 1 = y) of the main variable.
    static BiPoly from_polynomial(const Polynomial& p, int main_axis);
    Polynomial to_polynomial(int main_axis) const;

    bool is_zero() const { return c_.empty(); }
    std::size_t main_degree() const;
    std::size_t other_degree() const;
    std::size_t total_degree() const;
    const std::vector<QPoly>& coefficients() const { return c_; }

    // Specialise the other variable to a value.
    QPoly at(const mpq_class& t) const;
    SurdPoly at(const Surd& t) const;

private:
    std::vector<QPoly> c_;
};

struct ResultantResult {
    QPoly value;
    // All sampled Sylvester determinants were below 1e-9 of their Hadamard
    // bound; used to flag numerically singular float input.
    bool numerically_zero = false;
};

// Resultant with respect to the main variable, as a polynomial in the other.
ResultantResult resultant(const BiPoly& f, const BiPoly& g);

// gcd over Q[other][main], normalised so the leading coefficient is monic in
// the other variable.
BiPoly gcd(const BiPoly& f, const BiPoly& g);

}  // namespace tmoment::uni
