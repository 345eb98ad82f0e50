#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace tmoment {

// Exact real number q0 + sum q_k * sqrt(s_k), with rational q's and distinct
// squarefree radicands s_k > 1.  Closed under field operations.
class Surd {
public:
    struct Term {
        mpz_class radicand;
        mpq_class coefficient;
    };

    Surd() = default;
    Surd(long v) : rational_(v) {}
    Surd(const mpq_class& q) : rational_(q) { rational_.canonicalize(); }

    // sqrt(q) when q >= 0 and its squarefree part can be certified.
    static std::optional<Surd> sqrt(const mpq_class& q);
    // coefficient * sqrt(radicand) for a radicand already known squarefree.
    static Surd radical(const mpz_class& radicand, const mpq_class& coefficient = 1);

    const mpq_class& rational_part() const { return rational_; }
    const std::vector<Term>& radicals() const { return radicals_; }
    bool is_rational() const { return radicals_.empty(); }
    bool is_zero() const { return radicals_.empty() && sgn(rational_) == 0; }

    int sign() const;
    double to_double() const;
    Surd inverse() const;

    Surd operator-() const;
    friend Surd operator+(const Surd& a, const Surd& b);
    friend Surd operator-(const Surd& a, const Surd& b);
    friend Surd operator*(const Surd& a, const Surd& b);
    friend Surd operator/(const Surd& a, const Surd& b);
    friend bool operator==(const Surd& a, const Surd& b);

    std::string to_string() const;

private:
    static Surd from_terms(mpq_class rational, std::vector<Term> terms);

    mpq_class rational_ = 0;
    std::vector<Term> radicals_;  // sorted by radicand, nonzero coefficients
};

// A coefficient value: exact (Surd) or a binary64 approximation.  Any
// operation with a float operand yields a float.
class Scalar {
public:
    Scalar() : v_(Surd{}) {}
    Scalar(int v) : v_(Surd(static_cast<long>(v))) {}
    Scalar(long v) : v_(Surd(v)) {}
    Scalar(const mpq_class& q) : v_(Surd(q)) {}
    Scalar(Surd s) : v_(std::move(s)) {}

    static Scalar real(double v);
    static Scalar rational(long num, long den);

    // Accepts integers, "p/q", surd expressions such as "-1/2+1/2*sqrt(13)"
    // (exact), and decimal or scientific notation (float unless
    // exact_decimals is set, in which case the decimal is read exactly).
    static Scalar parse(std::string_view text, bool exact_decimals = false);

    bool is_exact() const { return std::holds_alternative<Surd>(v_); }
    bool is_rational() const { return is_exact() && exact().is_rational(); }
    const Surd& exact() const;
    const mpq_class& rational() const;
    double to_double() const;
    Scalar as_float() const { return real(to_double()); }
    // Exact rational equal to the binary value of a float; exact values are
    // returned unchanged.
    Scalar rationalized() const;

    int sign() const;
    bool is_zero() const;
    Scalar abs() const { return sign() < 0 ? -*this : *this; }

    Scalar operator-() const;
    friend Scalar operator+(const Scalar& a, const Scalar& b);
    friend Scalar operator-(const Scalar& a, const Scalar& b);
    friend Scalar operator*(const Scalar& a, const Scalar& b);
    friend Scalar operator/(const Scalar& a, const Scalar& b);
    Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
    Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
    Scalar& operator*=(const Scalar& o) { return *this = *this * o; }
    Scalar& operator/=(const Scalar& o) { return *this = *this / o; }

    // Exact comparison for exact pairs; bitwise value comparison otherwise.
    friend bool operator==(const Scalar& a, const Scalar& b);
    friend bool operator<(const Scalar& a, const Scalar& b) { return (a - b).sign() < 0; }

    std::string to_string() const;

private:
    std::variant<Surd, double> v_;
};

std::string format_double(double v);
mpq_class parse_rational(std::string_view text);      // throws std::invalid_argument
mpq_class decimal_to_rational(std::string_view text);  // exact reading of a decimal literal

// Squarefree decomposition m = k^2 * s; nullopt if the cofactor could not be
// certified within the trial-division budget.
std::optional<std::pair<mpz_class, mpz_class>> squarefree_split(const mpz_class& m);

}  // namespace tmoment
