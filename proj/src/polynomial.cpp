#include "tmoment/polynomial.hpp"

#include <cctype>
#include <cmath>
#include <stdexcept>

namespace tmoment {

int total_degree(const MultiIndex& e)
{
    int s = 0;
    for (int v : e) s += v;
    return s;
}

MultiIndex operator+(const MultiIndex& a, const MultiIndex& b)
{
    if (a.size() != b.size()) throw DimensionError("multi-index dimension mismatch");
    MultiIndex r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

bool deglex_less(const MultiIndex& a, const MultiIndex& b)
{
    const int da = total_degree(a), db = total_degree(b);
    if (da != db) return da < db;
    for (std::size_t i = 0; i < a.size() && i < b.size(); ++i)
        if (a[i] != b[i]) return a[i] > b[i];
    return a.size() < b.size();
}

namespace {

void append_degree(int d, int t, MultiIndex& prefix, std::vector<MultiIndex>& out)
{
    const int pos = static_cast<int>(prefix.size());
    if (pos == d - 1) {
        prefix.push_back(t);
        out.push_back(prefix);
        prefix.pop_back();
        return;
    }
    for (int a = t; a >= 0; --a) {
        prefix.push_back(a);
        append_degree(d, t - a, prefix, out);
        prefix.pop_back();
    }
}

std::size_t binomial(std::size_t n, std::size_t k)
{
    if (k > n) return 0;
    std::size_t r = 1;
    for (std::size_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

// Monomials of exact degree t in d variables.
std::size_t count_exact(int d, int t)
{
    if (d == 0) return t == 0 ? 1 : 0;
    return binomial(static_cast<std::size_t>(t + d - 1), static_cast<std::size_t>(d - 1));
}

std::size_t rank_within_degree(const MultiIndex& e, std::size_t from)
{
    const int d = static_cast<int>(e.size() - from);
    if (d <= 1) return 0;
    int t = 0;
    for (std::size_t i = from; i < e.size(); ++i) t += e[i];
    std::size_t r = 0;
    for (int a = t; a > e[from]; --a) r += count_exact(d - 1, t - a);
    return r + rank_within_degree(e, from + 1);
}

}  // namespace

std::vector<MultiIndex> monomial_basis(int d, int k)
{
    if (d < 1) throw std::invalid_argument("monomial_basis: dimension must be >= 1");
    if (k < 0) throw std::invalid_argument("monomial_basis: degree must be >= 0");
    std::vector<MultiIndex> out;
    out.reserve(basis_size(d, k));
    MultiIndex prefix;
    for (int t = 0; t <= k; ++t) append_degree(d, t, prefix, out);
    return out;
}

std::size_t basis_size(int d, int k)
{
    return binomial(static_cast<std::size_t>(k + d), static_cast<std::size_t>(d));
}

std::size_t deglex_position(const MultiIndex& e)
{
    const int d = static_cast<int>(e.size());
    const int t = total_degree(e);
    std::size_t below = t == 0 ? 0 : basis_size(d, t - 1);
    return below + rank_within_degree(e, 0);
}

int Degree::value() const
{
    if (neg_inf_) throw std::logic_error("degree of the zero polynomial has no integer value");
    return v_;
}

std::strong_ordering operator<=>(const Degree& a, const Degree& b)
{
    if (a.neg_inf_ || b.neg_inf_) return b.neg_inf_ <=> a.neg_inf_;
    return a.v_ <=> b.v_;
}

Degree operator+(const Degree& a, const Degree& b)
{
    if (a.neg_inf_ || b.neg_inf_) return Degree::minus_infinity();
    return Degree(a.v_ + b.v_);
}

Polynomial::Polynomial(int dimension) : d_(dimension)
{
    if (dimension < 1) throw std::invalid_argument("Polynomial: dimension must be >= 1");
}

Polynomial Polynomial::constant(int d, const Scalar& c)
{
    Polynomial p(d);
    p.add_term(MultiIndex(static_cast<std::size_t>(d), 0), c);
    return p;
}

Polynomial Polynomial::monomial(int d, const MultiIndex& e, const Scalar& c)
{
    Polynomial p(d);
    p.add_term(e, c);
    return p;
}

Polynomial Polynomial::variable(int d, int axis)
{
    MultiIndex e(static_cast<std::size_t>(d), 0);
    e.at(static_cast<std::size_t>(axis)) = 1;
    return monomial(d, e);
}

Degree Polynomial::degree() const
{
    if (terms_.empty()) return Degree::minus_infinity();
    return Degree(total_degree(terms_.rbegin()->first));
}

bool Polynomial::is_exact() const
{
    for (const auto& [e, c] : terms_)
        if (!c.is_exact()) return false;
    return true;
}

bool Polynomial::has_rational_coefficients() const
{
    for (const auto& [e, c] : terms_)
        if (!c.is_rational()) return false;
    return true;
}

Scalar Polynomial::coefficient(const MultiIndex& e) const
{
    auto it = terms_.find(e);
    return it == terms_.end() ? Scalar(0) : it->second;
}

void Polynomial::add_term(const MultiIndex& e, const Scalar& c)
{
    if (static_cast<int>(e.size()) != d_) throw DimensionError("add_term: dimension mismatch");
    for (int v : e)
        if (v < 0) throw std::invalid_argument("add_term: negative exponent");
    auto it = terms_.find(e);
    if (it == terms_.end()) {
        if (!c.is_zero()) terms_.emplace(e, c);
        return;
    }
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
}

Polynomial Polynomial::operator-() const
{
    Polynomial r(d_);
    for (const auto& [e, c] : terms_) r.terms_.emplace(e, -c);
    return r;
}

Polynomial operator+(const Polynomial& p, const Polynomial& q)
{
    if (p.d_ != q.d_) throw DimensionError("polynomial dimension mismatch");
    Polynomial r = p;
    for (const auto& [e, c] : q.terms_) r.add_term(e, c);
    return r;
}

Polynomial operator-(const Polynomial& p, const Polynomial& q) { return p + (-q); }

Polynomial operator*(const Polynomial& p, const Polynomial& q)
{
    if (p.d_ != q.d_) throw DimensionError("polynomial dimension mismatch");
    Polynomial r(p.d_);
    for (const auto& [e, c] : p.terms_)
        for (const auto& [f, k] : q.terms_) r.add_term(e + f, c * k);
    return r;
}

Polynomial operator*(const Scalar& c, const Polynomial& p)
{
    Polynomial r(p.d_);
    if (c.is_zero()) return r;
    for (const auto& [e, k] : p.terms_) r.add_term(e, c * k);
    return r;
}

bool operator==(const Polynomial& p, const Polynomial& q)
{
    if (p.d_ != q.d_ || p.terms_.size() != q.terms_.size()) return false;
    auto a = p.terms_.begin();
    auto b = q.terms_.begin();
    for (; a != p.terms_.end(); ++a, ++b)
        if (a->first != b->first || !(a->second == b->second)) return false;
    return true;
}

Polynomial Polynomial::as_float() const
{
    Polynomial r(d_);
    for (const auto& [e, c] : terms_) r.add_term(e, c.as_float());
    return r;
}

std::string monomial_name(const MultiIndex& e, bool uppercase)
{
    auto var = [&](const std::string& base, int power) {
        std::string name = base;
        if (uppercase)
            for (char& ch : name) ch = static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
        if (power > 1) name += "^" + std::to_string(power);
        return name;
    };
    std::string out;
    if (e.size() == 1) {
        if (e[0] > 0) out = var("x", e[0]);
    } else if (e.size() == 2) {
        if (e[1] > 0) out += var("y", e[1]);
        if (e[0] > 0) out += var("x", e[0]);
    } else {
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (e[i] == 0) continue;
            if (!out.empty()) out += "*";
            out += var("x" + std::to_string(i + 1), e[i]);
        }
    }
    return out.empty() ? "1" : out;
}

std::string Polynomial::to_string(bool uppercase) const
{
    if (terms_.empty()) return "0";
    std::string out;
    for (const auto& [e, c] : terms_) {
        const bool constant = total_degree(e) == 0;
        const bool simple_sign = c.is_rational() || !c.is_exact();
        const bool negative = simple_sign && c.sign() < 0;
        const Scalar mag = negative ? -c : c;
        std::string coef = mag.to_string();
        std::string term;
        if (constant) {
            term = coef;
        } else if (mag == Scalar(1)) {
            term = monomial_name(e, uppercase);
        } else if (c.is_rational() && c.rational().get_den() == 1) {
            term = coef + monomial_name(e, uppercase);
        } else if (simple_sign) {
            term = coef + "*" + monomial_name(e, uppercase);
        } else {
            term = "(" + coef + ")*" + monomial_name(e, uppercase);
        }
        if (out.empty()) out = negative ? "-" + term : term;
        else out += (negative ? " - " : " + ") + term;
    }
    return out;
}

Scalar evaluate(const Polynomial& p, std::span<const Scalar> point)
{
    if (static_cast<int>(point.size()) != p.dimension())
        throw DimensionError("evaluate: point dimension mismatch");
    Scalar sum(0);
    std::vector<std::vector<Scalar>> powers(point.size());
    for (const auto& [e, c] : p.terms()) {
        Scalar term = c;
        for (std::size_t k = 0; k < e.size(); ++k) {
            auto& pk = powers[k];
            if (pk.empty()) pk.push_back(Scalar(1));
            while (static_cast<int>(pk.size()) <= e[k]) pk.push_back(pk.back() * point[k]);
            if (e[k] > 0) term *= pk[static_cast<std::size_t>(e[k])];
        }
        sum += term;
    }
    return sum;
}

Polynomial partial(const Polynomial& p, int axis)
{
    if (axis < 0 || axis >= p.dimension()) throw std::invalid_argument("partial: axis out of range");
    Polynomial r(p.dimension());
    for (const auto& [e, c] : p.terms()) {
        const int k = e[static_cast<std::size_t>(axis)];
        if (k == 0) continue;
        MultiIndex f = e;
        f[static_cast<std::size_t>(axis)] -= 1;
        r.add_term(f, Scalar(k) * c);
    }
    return r;
}

Scalar directional_derivative(const Polynomial& p, std::span<const Scalar> point,
                              std::span<const Scalar> direction)
{
    if (static_cast<int>(direction.size()) != p.dimension())
        throw DimensionError("directional_derivative: direction dimension mismatch");
    Scalar sum(0);
    for (int k = 0; k < p.dimension(); ++k) {
        const Scalar& a = direction[static_cast<std::size_t>(k)];
        if (a.is_zero()) continue;
        sum += a * evaluate(partial(p, k), point);
    }
    return sum;
}

double evaluation_scale(const Polynomial& p, std::span<const Scalar> point)
{
    double s = 0;
    for (const auto& [e, c] : p.terms()) {
        double t = std::fabs(c.to_double());
        for (std::size_t k = 0; k < e.size(); ++k) t *= std::pow(std::fabs(point[k].to_double()), e[k]);
        s += t;
    }
    return s;
}

CoefficientVector to_coefficients(const Polynomial& p, int bound)
{
    if (p.degree() > bound) throw DegreeOverflow("to_coefficients: degree exceeds bound");
    CoefficientVector v;
    v.dimension = p.dimension();
    v.bound = bound;
    v.values.assign(basis_size(p.dimension(), bound), Scalar(0));
    for (const auto& [e, c] : p.terms()) v.values[deglex_position(e)] = c;
    return v;
}

Polynomial from_coefficients(const CoefficientVector& v)
{
    return from_coefficients(v.dimension, monomial_basis(v.dimension, v.bound), v.values);
}

Polynomial from_coefficients(int d, const std::vector<MultiIndex>& basis, std::span<const Scalar> values)
{
    if (basis.size() != values.size()) throw std::invalid_argument("from_coefficients: length mismatch");
    Polynomial p(d);
    for (std::size_t i = 0; i < basis.size(); ++i) p.add_term(basis[i], values[i]);
    return p;
}

Polynomial swap_variables(const Polynomial& p)
{
    if (p.dimension() != 2) throw std::invalid_argument("swap_variables: bivariate polynomial required");
    Polynomial r(2);
    for (const auto& [e, c] : p.terms()) r.add_term({e[1], e[0]}, c);
    return r;
}

}  // namespace tmoment
