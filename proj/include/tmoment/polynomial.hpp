#pragma once

#include "tmoment/errors.hpp"
#include "tmoment/scalar.hpp"

#include <compare>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace tmoment {

using MultiIndex = std::vector<int>;
using Point = std::vector<Scalar>;

int total_degree(const MultiIndex& e);
MultiIndex operator+(const MultiIndex& a, const MultiIndex& b);

// Degree-lex: total degree first, then x1's exponent descending, then x2's...
// For d = 2 this gives 1, x, y, x^2, yx, y^2, x^3, yx^2, y^2x, y^3, ...
bool deglex_less(const MultiIndex& a, const MultiIndex& b);
struct DegLexLess {
    bool operator()(const MultiIndex& a, const MultiIndex& b) const { return deglex_less(a, b); }
};

// All exponents of total degree <= k, in degree-lex order.
std::vector<MultiIndex> monomial_basis(int d, int k);
std::size_t basis_size(int d, int k);

// Position of e inside monomial_basis(d, k) for any k >= |e|.
std::size_t deglex_position(const MultiIndex& e);

// Polynomial degree; the zero polynomial has degree minus infinity.
class Degree {
public:
    explicit Degree(int v) : v_(v), neg_inf_(false) {}
    static Degree minus_infinity() { return Degree(); }
    bool is_minus_infinity() const { return neg_inf_; }
    int value() const;
    friend bool operator==(const Degree&, const Degree&) = default;
    friend std::strong_ordering operator<=>(const Degree& a, const Degree& b);
    friend bool operator==(const Degree& a, int b) { return !a.neg_inf_ && a.v_ == b; }
    friend std::strong_ordering operator<=>(const Degree& a, int b) { return a <=> Degree(b); }
    friend Degree operator+(const Degree& a, const Degree& b);

private:
    Degree() : v_(0), neg_inf_(true) {}
    int v_;
    bool neg_inf_;
};

class Polynomial {
public:
    using Terms = std::map<MultiIndex, Scalar, DegLexLess>;

    explicit Polynomial(int dimension);
    static Polynomial constant(int d, const Scalar& c);
    static Polynomial monomial(int d, const MultiIndex& e, const Scalar& c = Scalar(1));
    static Polynomial variable(int d, int axis);

    int dimension() const { return d_; }
    Degree degree() const;
    bool is_zero() const { return terms_.empty(); }
    bool is_exact() const;
    bool has_rational_coefficients() const;
    const Terms& terms() const { return terms_; }
    Scalar coefficient(const MultiIndex& e) const;

    // Adds c * x^e, dropping the term if the result is zero.
    void add_term(const MultiIndex& e, const Scalar& c);

    Polynomial operator-() const;
    friend Polynomial operator+(const Polynomial& p, const Polynomial& q);
    friend Polynomial operator-(const Polynomial& p, const Polynomial& q);
    friend Polynomial operator*(const Polynomial& p, const Polynomial& q);
    friend Polynomial operator*(const Scalar& c, const Polynomial& p);
    friend bool operator==(const Polynomial& p, const Polynomial& q);

    Polynomial as_float() const;

    // Terms in ascending degree-lex order, e.g. "-2 + 4x + x^2 + y^2".
    std::string to_string(bool uppercase = false) const;

private:
    int d_;
    Terms terms_;
};

// Name of a monomial: "1", "x", "y^2x", "x1^2*x3".  Uppercase gives the
// column labels used for moment-matrix relations ("Y^2X").
std::string monomial_name(const MultiIndex& e, bool uppercase = false);

Scalar evaluate(const Polynomial& p, std::span<const Scalar> point);
Polynomial partial(const Polynomial& p, int axis);
// sum_k direction[k] * dp/dx_k evaluated at point.
Scalar directional_derivative(const Polynomial& p, std::span<const Scalar> point,
                              std::span<const Scalar> direction);
// sum_i |a_i| |point^i|, a scale for residual tests.
double evaluation_scale(const Polynomial& p, std::span<const Scalar> point);

struct CoefficientVector {
    int dimension = 0;
    int bound = 0;
    std::vector<Scalar> values;  // indexed by monomial_basis(dimension, bound)
};

CoefficientVector to_coefficients(const Polynomial& p, int bound);
Polynomial from_coefficients(const CoefficientVector& v);
Polynomial from_coefficients(int d, const std::vector<MultiIndex>& basis, std::span<const Scalar> values);

// Swaps the two variables of a bivariate polynomial.
Polynomial swap_variables(const Polynomial& p);

}  // namespace tmoment
