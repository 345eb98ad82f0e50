#include "tmoment/scalar.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <map>
#include <stdexcept>

namespace tmoment {

namespace {

constexpr unsigned long kTrialDivisionLimit = 1000000;

std::vector<mpz_class> coprime_base(std::vector<mpz_class> values)
{
    std::sort(values.begin(), values.end());
    values.erase(std::unique(values.begin(), values.end()), values.end());
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t i = 0; i < values.size() && !changed; ++i) {
            for (std::size_t j = i + 1; j < values.size() && !changed; ++j) {
                mpz_class g = gcd(values[i], values[j]);
                if (g == 1) continue;
                mpz_class a = values[i] / g;
                mpz_class b = values[j] / g;
                values.erase(values.begin() + static_cast<std::ptrdiff_t>(j));
                values.erase(values.begin() + static_cast<std::ptrdiff_t>(i));
                for (const mpz_class& v : {g, a, b})
                    if (v != 1) values.push_back(v);
                std::sort(values.begin(), values.end());
                values.erase(std::unique(values.begin(), values.end()), values.end());
                changed = true;
            }
        }
    }
    return values;
}

std::vector<mpz_class> radicands_of(const Surd& s)
{
    std::vector<mpz_class> r;
    for (const auto& t : s.radicals()) r.push_back(t.radicand);
    return r;
}

// x = a + b*sqrt(p), where p divides no radicand of a or b.
std::pair<Surd, Surd> split_on(const Surd& x, const mpz_class& p)
{
    Surd a(x.rational_part());
    Surd b;
    for (const auto& t : x.radicals()) {
        if (mpz_divisible_p(t.radicand.get_mpz_t(), p.get_mpz_t())) {
            mpz_class rest = t.radicand / p;
            b = b + Surd::radical(rest, t.coefficient);
        } else {
            a = a + Surd::radical(t.radicand, t.coefficient);
        }
    }
    return {a, b};
}

}  // namespace

std::optional<std::pair<mpz_class, mpz_class>> squarefree_split(const mpz_class& m)
{
    if (m <= 0) throw std::invalid_argument("squarefree_split: non-positive argument");
    mpz_class rest = m;
    mpz_class square_root = 1;
    mpz_class free_part = 1;
    unsigned long p = 2;
    while (true) {
        mpz_class pz(p);
        if (pz * pz * pz > rest) break;
        if (p > kTrialDivisionLimit) return std::nullopt;
        int e = 0;
        while (mpz_divisible_ui_p(rest.get_mpz_t(), p)) {
            rest /= p;
            ++e;
        }
        for (int i = 0; i + 1 < e; i += 2) square_root *= p;
        if (e % 2 == 1) free_part *= p;
        p = (p == 2) ? 3 : p + 2;
    }
    // rest has at most two prime factors, all larger than the last trial prime.
    if (mpz_perfect_square_p(rest.get_mpz_t())) {
        mpz_class r;
        mpz_sqrt(r.get_mpz_t(), rest.get_mpz_t());
        square_root *= r;
    } else {
        free_part *= rest;
    }
    return std::make_pair(square_root, free_part);
}

std::optional<Surd> Surd::sqrt(const mpq_class& q)
{
    if (sgn(q) < 0) return std::nullopt;
    if (sgn(q) == 0) return Surd();
    mpz_class num = q.get_num() * q.get_den();
    auto split = squarefree_split(num);
    if (!split) return std::nullopt;
    mpq_class coef(split->first, q.get_den());
    coef.canonicalize();
    if (split->second == 1) return Surd(coef);
    return from_terms(0, {Term{split->second, coef}});
}

Surd Surd::radical(const mpz_class& radicand, const mpq_class& coefficient)
{
    return from_terms(0, {Term{radicand, coefficient}});
}

Surd Surd::from_terms(mpq_class rational, std::vector<Term> terms)
{
    std::sort(terms.begin(), terms.end(),
              [](const Term& a, const Term& b) { return a.radicand < b.radicand; });
    Surd out;
    out.rational_ = std::move(rational);
    for (auto& t : terms) {
        if (sgn(t.coefficient) == 0) continue;
        if (t.radicand == 1) {
            out.rational_ += t.coefficient;
            continue;
        }
        if (!out.radicals_.empty() && out.radicals_.back().radicand == t.radicand) {
            out.radicals_.back().coefficient += t.coefficient;
            if (sgn(out.radicals_.back().coefficient) == 0) out.radicals_.pop_back();
        } else {
            out.radicals_.push_back(std::move(t));
        }
    }
    return out;
}

Surd Surd::operator-() const
{
    Surd out = *this;
    out.rational_ = -out.rational_;
    for (auto& t : out.radicals_) t.coefficient = -t.coefficient;
    return out;
}

Surd operator+(const Surd& a, const Surd& b)
{
    if (a.radicals_.empty() && b.radicals_.empty()) return Surd(mpq_class(a.rational_ + b.rational_));
    std::vector<Surd::Term> terms = a.radicals_;
    terms.insert(terms.end(), b.radicals_.begin(), b.radicals_.end());
    return Surd::from_terms(a.rational_ + b.rational_, std::move(terms));
}

Surd operator-(const Surd& a, const Surd& b) { return a + (-b); }

Surd operator*(const Surd& a, const Surd& b)
{
    if (a.radicals_.empty() && b.radicals_.empty()) return Surd(mpq_class(a.rational_ * b.rational_));
    std::vector<Surd::Term> left{{1, a.rational_}};
    left.insert(left.end(), a.radicals_.begin(), a.radicals_.end());
    std::vector<Surd::Term> right{{1, b.rational_}};
    right.insert(right.end(), b.radicals_.begin(), b.radicals_.end());
    std::vector<Surd::Term> terms;
    for (const auto& s : left) {
        if (sgn(s.coefficient) == 0) continue;
        for (const auto& t : right) {
            if (sgn(t.coefficient) == 0) continue;
            mpz_class g = gcd(s.radicand, t.radicand);
            mpz_class r = (s.radicand / g) * (t.radicand / g);
            mpq_class c = s.coefficient * t.coefficient * mpq_class(g);
            terms.push_back({r, c});
        }
    }
    return Surd::from_terms(0, std::move(terms));
}

Surd Surd::inverse() const
{
    if (is_zero()) throw std::domain_error("Surd: division by zero");
    if (is_rational()) return Surd(mpq_class(1 / rational_));
    Surd numerator(1);
    Surd current = *this;
    for (const mpz_class& p : coprime_base(radicands_of(*this))) {
        auto [a, b] = split_on(current, p);
        if (b.is_zero()) continue;
        Surd conjugate = a - b * Surd::radical(p);
        numerator = numerator * conjugate;
        current = current * conjugate;
    }
    if (!current.is_rational()) throw std::logic_error("Surd::inverse: rationalisation failed");
    return numerator * Surd(mpq_class(1 / current.rational_));
}

Surd operator/(const Surd& a, const Surd& b)
{
    if (b.is_rational()) {
        if (sgn(b.rational_) == 0) throw std::domain_error("Surd: division by zero");
        if (a.is_rational()) return Surd(mpq_class(a.rational_ / b.rational_));
        return a * Surd(mpq_class(1 / b.rational_));
    }
    return a * b.inverse();
}

bool operator==(const Surd& a, const Surd& b)
{
    if (a.rational_ != b.rational_ || a.radicals_.size() != b.radicals_.size()) return false;
    for (std::size_t i = 0; i < a.radicals_.size(); ++i)
        if (a.radicals_[i].radicand != b.radicals_[i].radicand ||
            a.radicals_[i].coefficient != b.radicals_[i].coefficient)
            return false;
    return true;
}

int Surd::sign() const
{
    if (is_rational()) return sgn(rational_);
    const mpz_class p = coprime_base(radicands_of(*this)).front();
    auto [a, b] = split_on(*this, p);
    const int sa = a.sign();
    const int sb = b.sign();
    if (sa == 0) return sb;
    if (sb == 0 || sa == sb) return sa;
    const int d = (a * a - Surd(mpq_class(p)) * b * b).sign();
    return d > 0 ? sa : sb;
}

double Surd::to_double() const
{
    if (is_rational()) return rational_.get_d();
    mpf_class sum(rational_, 320);
    for (const auto& t : radicals_) {
        mpf_class r(t.radicand, 320);
        mpf_class root(0, 320);
        mpf_sqrt(root.get_mpf_t(), r.get_mpf_t());
        sum += mpf_class(t.coefficient, 320) * root;
    }
    return sum.get_d();
}

std::string Surd::to_string() const
{
    std::string out;
    if (sgn(rational_) != 0 || radicals_.empty()) out = rational_.get_str();
    for (const auto& t : radicals_) {
        std::string c = t.coefficient.get_str();
        std::string term;
        if (c == "1") term = "sqrt(" + t.radicand.get_str() + ")";
        else if (c == "-1") term = "-sqrt(" + t.radicand.get_str() + ")";
        else term = c + "*sqrt(" + t.radicand.get_str() + ")";
        if (!out.empty() && term[0] != '-') out += "+";
        out += term;
    }
    return out;
}

Scalar Scalar::real(double v)
{
    Scalar s;
    s.v_ = v;
    return s;
}

Scalar Scalar::rational(long num, long den)
{
    mpq_class q(num, den);
    q.canonicalize();
    return Scalar(q);
}

const Surd& Scalar::exact() const
{
    if (!is_exact()) throw std::logic_error("Scalar: exact value requested from a float");
    return std::get<Surd>(v_);
}

const mpq_class& Scalar::rational() const
{
    const Surd& s = exact();
    if (!s.is_rational()) throw std::logic_error("Scalar: rational value requested from an irrational");
    return s.rational_part();
}

Scalar Scalar::rationalized() const
{
    if (is_exact()) return *this;
    const double v = std::get<double>(v_);
    if (!std::isfinite(v)) throw std::domain_error("cannot rationalize a non-finite value");
    return Scalar(mpq_class(v));
}

double Scalar::to_double() const
{
    if (is_exact()) return std::get<Surd>(v_).to_double();
    return std::get<double>(v_);
}

int Scalar::sign() const
{
    if (is_exact()) return std::get<Surd>(v_).sign();
    double v = std::get<double>(v_);
    return (v > 0) - (v < 0);
}

bool Scalar::is_zero() const
{
    if (is_exact()) return std::get<Surd>(v_).is_zero();
    return std::get<double>(v_) == 0.0;
}

Scalar Scalar::operator-() const
{
    if (is_exact()) return Scalar(-std::get<Surd>(v_));
    return real(-std::get<double>(v_));
}

Scalar operator+(const Scalar& a, const Scalar& b)
{
    if (a.is_exact() && b.is_exact()) return Scalar(std::get<Surd>(a.v_) + std::get<Surd>(b.v_));
    return Scalar::real(a.to_double() + b.to_double());
}

Scalar operator-(const Scalar& a, const Scalar& b)
{
    if (a.is_exact() && b.is_exact()) return Scalar(std::get<Surd>(a.v_) - std::get<Surd>(b.v_));
    return Scalar::real(a.to_double() - b.to_double());
}

Scalar operator*(const Scalar& a, const Scalar& b)
{
    if (a.is_exact() && b.is_exact()) return Scalar(std::get<Surd>(a.v_) * std::get<Surd>(b.v_));
    return Scalar::real(a.to_double() * b.to_double());
}

Scalar operator/(const Scalar& a, const Scalar& b)
{
    if (a.is_exact() && b.is_exact()) return Scalar(std::get<Surd>(a.v_) / std::get<Surd>(b.v_));
    return Scalar::real(a.to_double() / b.to_double());
}

bool operator==(const Scalar& a, const Scalar& b)
{
    if (a.is_exact() && b.is_exact()) return std::get<Surd>(a.v_) == std::get<Surd>(b.v_);
    return a.to_double() == b.to_double();
}

std::string format_double(double v)
{
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

std::string Scalar::to_string() const
{
    if (is_exact()) return std::get<Surd>(v_).to_string();
    std::string t = format_double(std::get<double>(v_));
    if (t.find_first_of(".en") == std::string::npos) t += ".0";
    return t;
}

namespace {

std::string trim(std::string_view s)
{
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return std::string(s.substr(a, b - a));
}

bool is_integer_literal(const std::string& s)
{
    std::size_t i = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    return true;
}

mpz_class read_integer(const std::string& s)
{
    if (!is_integer_literal(s)) throw std::invalid_argument("not an integer: '" + s + "'");
    return mpz_class(s[0] == '+' ? s.substr(1) : s, 10);
}

Surd parse_surd_term(const std::string& term)
{
    std::string t = trim(term);
    int sign = 1;
    if (!t.empty() && (t[0] == '-' || t[0] == '+')) {
        if (t[0] == '-') sign = -1;
        t = trim(t.substr(1));
    }
    mpq_class coef = 1;
    std::size_t pos = t.find("sqrt(");
    if (pos == std::string::npos) return Surd(mpq_class(sign * parse_rational(t)));
    std::string head = trim(t.substr(0, pos));
    if (!head.empty()) {
        if (head.back() != '*') throw std::invalid_argument("malformed surd term: '" + term + "'");
        coef = parse_rational(trim(head.substr(0, head.size() - 1)));
    }
    std::size_t close = t.find(')', pos);
    if (close == std::string::npos || trim(t.substr(close + 1)) != "")
        throw std::invalid_argument("malformed surd term: '" + term + "'");
    mpz_class radicand = read_integer(trim(t.substr(pos + 5, close - pos - 5)));
    auto root = Surd::sqrt(mpq_class(radicand));
    if (!root) throw std::invalid_argument("cannot take sqrt in '" + term + "'");
    return Surd(mpq_class(sign * coef)) * *root;
}

}  // namespace

mpq_class parse_rational(std::string_view text)
{
    std::string s = trim(text);
    std::size_t slash = s.find('/');
    if (slash == std::string::npos) return mpq_class(read_integer(s));
    mpz_class num = read_integer(trim(s.substr(0, slash)));
    mpz_class den = read_integer(trim(s.substr(slash + 1)));
    if (den == 0) throw std::invalid_argument("zero denominator in '" + s + "'");
    mpq_class q(num, den);
    q.canonicalize();
    return q;
}

mpq_class decimal_to_rational(std::string_view text)
{
    std::string s = trim(text);
    std::size_t i = 0;
    bool negative = false;
    if (i < s.size() && (s[i] == '-' || s[i] == '+')) negative = s[i++] == '-';
    std::string digits;
    long scale = 0;
    bool seen_point = false, seen_digit = false;
    for (; i < s.size(); ++i) {
        char c = s[i];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            digits += c;
            seen_digit = true;
            if (seen_point) ++scale;
        } else if (c == '.' && !seen_point) {
            seen_point = true;
        } else {
            break;
        }
    }
    if (!seen_digit) throw std::invalid_argument("not a number: '" + s + "'");
    long exponent = 0;
    if (i < s.size()) {
        if (s[i] != 'e' && s[i] != 'E') throw std::invalid_argument("not a number: '" + s + "'");
        std::string e = s.substr(i + 1);
        if (!is_integer_literal(e)) throw std::invalid_argument("not a number: '" + s + "'");
        exponent = std::stol(e);
    }
    mpz_class num(digits, 10);
    if (negative) num = -num;
    long shift = exponent - scale;
    mpz_class power;
    mpz_ui_pow_ui(power.get_mpz_t(), 10, static_cast<unsigned long>(std::labs(shift)));
    mpq_class q = shift >= 0 ? mpq_class(num * power) : mpq_class(num, power);
    q.canonicalize();
    return q;
}

Scalar Scalar::parse(std::string_view text, bool exact_decimals)
{
    std::string s = trim(text);
    if (s.empty()) throw std::invalid_argument("empty number");
    if (s.find("sqrt") != std::string::npos) {
        Surd total;
        std::size_t start = 0;
        for (std::size_t i = 1; i <= s.size(); ++i) {
            if (i == s.size() || ((s[i] == '+' || s[i] == '-') && s[i - 1] != '*' && s[i - 1] != '(')) {
                total = total + parse_surd_term(s.substr(start, i - start));
                start = i;
            }
        }
        return Scalar(total);
    }
    bool rational_form = true;
    for (char c : s)
        if (!(std::isdigit(static_cast<unsigned char>(c)) || c == '/' || c == '-' || c == '+' || c == ' '))
            rational_form = false;
    if (rational_form) return Scalar(parse_rational(s));
    if (exact_decimals) return Scalar(decimal_to_rational(s));
    double v = 0;
    auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size() || !std::isfinite(v))
        throw std::invalid_argument("not a number: '" + s + "'");
    return real(v);
}

}  // namespace tmoment
