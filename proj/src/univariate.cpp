#include "tmoment/univariate.hpp"

#include <algorithm>
#include <cmath>

namespace tmoment::uni {

QPoly squarefree_part(const QPoly& p)
{
    if (p.is_zero() || p.degree() == 0) return p.monic();
    QPoly g = gcd(p, p.derivative());
    return divmod(p, g).first.monic();
}

int sign_at(const QPoly& p, const mpq_class& x) { return sgn(p(x)); }

mpq_class simplest_rational(const mpq_class& lo, const mpq_class& hi)
{
    if (lo > hi) return simplest_rational(hi, lo);
    if (sgn(lo) <= 0 && sgn(hi) >= 0) return mpq_class(0);
    if (sgn(hi) < 0) {
        mpq_class r = simplest_rational(-hi, -lo);
        return mpq_class(-r);
    }
    mpz_class fl;
    mpz_fdiv_q(fl.get_mpz_t(), lo.get_num_mpz_t(), lo.get_den_mpz_t());
    if (mpq_class(fl) == lo) return lo;
    if (mpq_class(fl + 1) <= hi) return mpq_class(fl + 1);
    mpq_class a = 1 / (hi - fl);
    mpq_class b = 1 / (lo - fl);
    mpq_class inner = simplest_rational(a, b);
    mpq_class r = mpq_class(fl) + 1 / inner;
    return r;
}

namespace {

std::vector<QPoly> sturm_sequence(const QPoly& p)
{
    std::vector<QPoly> seq{p, p.derivative()};
    while (!seq.back().is_zero() && seq.back().degree() > 0) {
        QPoly r = divmod(seq[seq.size() - 2], seq.back()).second;
        if (r.is_zero()) break;
        mpq_class scale = abs(r.lead());
        mpq_class f = -1 / scale;
        seq.push_back(r.scaled(f));
    }
    return seq;
}

int variations(const std::vector<QPoly>& seq, const mpq_class& x)
{
    int count = 0, last = 0;
    for (const QPoly& q : seq) {
        int s = sign_at(q, x);
        if (s == 0) continue;
        if (last != 0 && s != last) ++count;
        last = s;
    }
    return count;
}

struct Isolator {
    const QPoly& p;
    const std::vector<QPoly>& seq;
    const mpq_class& width;
    std::vector<IsolatedRoot> out;

    void refine(mpq_class a, mpq_class b)
    {
        const int sb = sign_at(p, b);
        while (b - a > width) {
            mpq_class m = (a + b) / 2;
            int s = sign_at(p, m);
            if (s == 0) {
                out.push_back({m, m});
                return;
            }
            if (s == sb) b = m;
            else a = m;
        }
        out.push_back({a, b});
    }

    // Roots in (a, b]; va and vb are the Sturm variation counts.
    void run(const mpq_class& a, const mpq_class& b, int va, int vb)
    {
        const int count = va - vb;
        if (count <= 0) return;
        if (count == 1) {
            if (sign_at(p, b) == 0) out.push_back({b, b});
            else refine(a, b);
            return;
        }
        mpq_class m = (a + b) / 2;
        int vm = variations(seq, m);
        run(a, m, va, vm);
        run(m, b, vm, vb);
    }
};

mpq_class cauchy_bound(const QPoly& p)
{
    mpq_class m = 0;
    const auto& c = p.coefficients();
    for (std::size_t k = 0; k + 1 < c.size(); ++k) {
        mpq_class r = abs(c[k] / c.back());
        if (r > m) m = r;
    }
    mpq_class b = 1;
    while (b <= m + 1) b *= 2;
    return b;
}

bool surd_in(const Surd& v, const mpq_class& lo, const mpq_class& hi)
{
    return (v - Surd(lo)).sign() >= 0 && (Surd(hi) - v).sign() >= 0;
}

}  // namespace

std::vector<IsolatedRoot> isolate_real_roots(const QPoly& p, const mpq_class& width)
{
    if (p.is_zero()) throw std::invalid_argument("isolate_real_roots: zero polynomial");
    QPoly s = squarefree_part(p);
    if (s.degree() == 0) return {};
    std::vector<QPoly> seq = sturm_sequence(s);
    mpq_class bound = cauchy_bound(s);
    mpq_class lo = -bound;
    Isolator iso{s, seq, width, {}};
    iso.run(lo, bound, variations(seq, lo), variations(seq, bound));
    return iso.out;
}

std::vector<RealRoot> real_roots(const QPoly& p, bool reconstruct_exact)
{
    if (p.is_zero()) throw std::invalid_argument("real_roots: zero polynomial");
    QPoly s = squarefree_part(p);
    if (s.degree() == 0) return {};
    mpq_class width(1);
    mpz_class den;
    mpz_ui_pow_ui(den.get_mpz_t(), 2, 120);
    width /= den;
    std::vector<IsolatedRoot> iso = isolate_real_roots(s, width);
    std::vector<RealRoot> roots;
    std::vector<char> done(iso.size(), 0);
    for (const auto& r : iso) {
        mpq_class mid = (r.lo + r.hi) / 2;
        roots.push_back({Scalar::real(mid.get_d()), r.lo, r.hi});
    }
    if (!reconstruct_exact) return roots;
    for (std::size_t i = 0; i < iso.size(); ++i) {
        mpq_class q = iso[i].lo == iso[i].hi ? iso[i].lo : simplest_rational(iso[i].lo, iso[i].hi);
        if (sign_at(s, q) == 0) {
            roots[i].value = Scalar(q);
            done[i] = 1;
        }
    }
    for (std::size_t i = 0; i < iso.size(); ++i) {
        if (done[i]) continue;
        for (std::size_t j = i + 1; j < iso.size() && !done[i]; ++j) {
            if (done[j]) continue;
            mpq_class slo = iso[i].lo + iso[j].lo, shi = iso[i].hi + iso[j].hi;
            std::vector<mpq_class> prods{iso[i].lo * iso[j].lo, iso[i].lo * iso[j].hi,
                                         iso[i].hi * iso[j].lo, iso[i].hi * iso[j].hi};
            auto [pmin, pmax] = std::minmax_element(prods.begin(), prods.end());
            mpq_class sum = simplest_rational(slo, shi);
            mpq_class prod = simplest_rational(*pmin, *pmax);
            mpq_class msum = -sum;
            QPoly quad(std::vector<mpq_class>{prod, msum, mpq_class(1)});
            if (!divmod(s, quad).second.is_zero()) continue;
            mpq_class disc = sum * sum - 4 * prod;
            auto root = Surd::sqrt(disc);
            if (!root) continue;
            Surd small = (Surd(sum) - *root) / Surd(2);
            Surd big = (Surd(sum) + *root) / Surd(2);
            if (!surd_in(small, iso[i].lo, iso[i].hi) || !surd_in(big, iso[j].lo, iso[j].hi)) continue;
            roots[i].value = Scalar(small);
            roots[j].value = Scalar(big);
            done[i] = done[j] = 1;
        }
    }
    return roots;
}

BiPoly::BiPoly(std::vector<QPoly> c) : c_(std::move(c))
{
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

BiPoly BiPoly::from_polynomial(const Polynomial& p, int main_axis)
{
    if (p.dimension() != 2) throw std::invalid_argument("BiPoly: bivariate polynomial required");
    if (!p.has_rational_coefficients()) throw std::invalid_argument("BiPoly: rational coefficients required");
    const std::size_t other = main_axis == 0 ? 1 : 0;
    std::vector<std::vector<mpq_class>> dense;
    for (const auto& [e, c] : p.terms()) {
        const auto k = static_cast<std::size_t>(e[static_cast<std::size_t>(main_axis)]);
        const auto j = static_cast<std::size_t>(e[other]);
        if (dense.size() <= k) dense.resize(k + 1);
        if (dense[k].size() <= j) dense[k].resize(j + 1, mpq_class(0));
        dense[k][j] = c.rational();
    }
    std::vector<QPoly> cs;
    for (auto& row : dense) cs.emplace_back(std::move(row));
    return BiPoly(std::move(cs));
}

Polynomial BiPoly::to_polynomial(int main_axis) const
{
    Polynomial p(2);
    for (std::size_t k = 0; k < c_.size(); ++k) {
        const auto& cs = c_[k].coefficients();
        for (std::size_t j = 0; j < cs.size(); ++j) {
            MultiIndex e(2, 0);
            e[static_cast<std::size_t>(main_axis)] = static_cast<int>(k);
            e[main_axis == 0 ? 1 : 0] = static_cast<int>(j);
            p.add_term(e, Scalar(cs[j]));
        }
    }
    return p;
}

std::size_t BiPoly::main_degree() const
{
    if (c_.empty()) throw std::logic_error("BiPoly: degree of the zero polynomial");
    return c_.size() - 1;
}

std::size_t BiPoly::other_degree() const
{
    std::size_t d = 0;
    for (const auto& q : c_)
        if (!q.is_zero()) d = std::max(d, q.degree());
    return d;
}

std::size_t BiPoly::total_degree() const
{
    std::size_t d = 0;
    for (std::size_t k = 0; k < c_.size(); ++k)
        if (!c_[k].is_zero()) d = std::max(d, k + c_[k].degree());
    return d;
}

QPoly BiPoly::at(const mpq_class& t) const
{
    std::vector<mpq_class> v;
    for (const auto& q : c_) v.push_back(q(t));
    return QPoly(std::move(v));
}

SurdPoly BiPoly::at(const Surd& t) const
{
    std::vector<Surd> v;
    for (const auto& q : c_) {
        Surd acc;
        const auto& cs = q.coefficients();
        for (std::size_t k = cs.size(); k-- > 0;) acc = acc * t + Surd(cs[k]);
        v.push_back(acc);
    }
    return SurdPoly(std::move(v));
}

namespace {

mpq_class bareiss_det(std::vector<std::vector<mpq_class>> m)
{
    const std::size_t n = m.size();
    if (n == 0) return 1;
    mpq_class prev = 1;
    int sign = 1;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && sgn(m[p][c]) == 0) ++p;
        if (p == n) return 0;
        if (p != c) {
            std::swap(m[p], m[c]);
            sign = -sign;
        }
        for (std::size_t i = c + 1; i < n; ++i) {
            for (std::size_t j = c + 1; j < n; ++j) {
                mpq_class t = (m[c][c] * m[i][j] - m[i][c] * m[c][j]) / prev;
                m[i][j] = t;
            }
            m[i][c] = 0;
        }
        prev = m[c][c];
    }
    mpq_class d = m[n - 1][n - 1];
    return sign > 0 ? d : mpq_class(-d);
}

std::vector<std::vector<mpq_class>> sylvester(const QPoly& f, std::size_t m, const QPoly& g, std::size_t n)
{
    const std::size_t size = m + n;
    std::vector<std::vector<mpq_class>> s(size, std::vector<mpq_class>(size, mpq_class(0)));
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t k = 0; k <= m; ++k) s[r][r + (m - k)] = f.coefficient(k);
    for (std::size_t r = 0; r < m; ++r)
        for (std::size_t k = 0; k <= n; ++k) s[n + r][r + (n - k)] = g.coefficient(k);
    return s;
}

double log_hadamard(const std::vector<std::vector<mpq_class>>& s)
{
    double total = 0;
    for (const auto& row : s) {
        double norm2 = 0;
        for (const auto& v : row) norm2 += v.get_d() * v.get_d();
        if (norm2 == 0) return -INFINITY;
        total += 0.5 * std::log(norm2);
    }
    return total;
}

QPoly interpolate(const std::vector<mpq_class>& xs, std::vector<mpq_class> ys)
{
    const std::size_t n = xs.size();
    for (std::size_t k = 1; k < n; ++k)
        for (std::size_t i = n - 1; i >= k; --i) {
            mpq_class t = (ys[i] - ys[i - 1]) / (xs[i] - xs[i - k]);
            ys[i] = t;
            if (i == k) break;
        }
    QPoly acc;
    for (std::size_t k = n; k-- > 0;) {
        mpq_class mx = -xs[k];
        QPoly lin(std::vector<mpq_class>{mx, mpq_class(1)});
        acc = acc * lin + QPoly::constant(ys[k]);
    }
    return acc;
}

}  // namespace

ResultantResult resultant(const BiPoly& f, const BiPoly& g)
{
    ResultantResult out;
    if (f.is_zero() || g.is_zero()) {
        out.numerically_zero = true;
        return out;
    }
    const std::size_t m = f.main_degree(), n = g.main_degree();
    const std::size_t bound =
        std::min(m * g.other_degree() + n * f.other_degree(), f.total_degree() * g.total_degree());
    std::vector<mpq_class> xs, ys;
    bool all_small = true;
    for (std::size_t i = 0; xs.size() < bound + 1; ++i) {
        long t = (i % 2 == 0) ? static_cast<long>(i / 2) : -static_cast<long>((i + 1) / 2);
        mpq_class tq(t);
        auto s = sylvester(f.at(tq), m, g.at(tq), n);
        mpq_class det = bareiss_det(s);
        if (sgn(det) != 0) {
            double lh = log_hadamard(s);
            if (std::log(std::fabs(det.get_d())) > lh + std::log(1e-9)) all_small = false;
        }
        xs.push_back(tq);
        ys.push_back(det);
    }
    out.value = interpolate(xs, ys);
    out.numerically_zero = all_small;
    return out;
}

namespace {

QPoly content(const BiPoly& f)
{
    QPoly c;
    for (const auto& q : f.coefficients()) c = gcd(c, q);
    return c.monic();
}

BiPoly divide_by(const BiPoly& f, const QPoly& c)
{
    std::vector<QPoly> out;
    for (const auto& q : f.coefficients()) out.push_back(divmod(q, c).first);
    return BiPoly(std::move(out));
}

BiPoly primitive_part(const BiPoly& f)
{
    if (f.is_zero()) return f;
    return divide_by(f, content(f));
}

BiPoly pseudo_remainder(const BiPoly& a, const BiPoly& b)
{
    std::vector<QPoly> r = a.coefficients();
    const auto& bc = b.coefficients();
    const std::size_t db = bc.size() - 1;
    const QPoly lb = bc.back();
    while (!r.empty() && r.size() - 1 >= db) {
        const std::size_t k = r.size() - 1 - db;
        const QPoly lr = r.back();
        for (auto& q : r) q = q * lb;
        for (std::size_t j = 0; j < bc.size(); ++j) r[k + j] = r[k + j] - lr * bc[j];
        while (!r.empty() && r.back().is_zero()) r.pop_back();
    }
    return BiPoly(std::move(r));
}

}  // namespace

BiPoly gcd(const BiPoly& f, const BiPoly& g)
{
    if (f.is_zero() && g.is_zero()) return f;
    QPoly c = gcd(content(f), content(g));
    if (f.is_zero() || g.is_zero()) {
        const BiPoly& h = f.is_zero() ? g : f;
        BiPoly p = primitive_part(h);
        QPoly lead = p.coefficients().back();
        mpq_class norm = 1 / lead.lead();
        std::vector<QPoly> cs;
        for (const auto& q : p.coefficients()) cs.push_back((q * c).scaled(norm));
        return BiPoly(std::move(cs));
    }
    BiPoly a = primitive_part(f), b = primitive_part(g);
    if (a.main_degree() < b.main_degree()) std::swap(a, b);
    while (!b.is_zero()) {
        BiPoly r = pseudo_remainder(a, b);
        a = b;
        b = r.is_zero() ? r : primitive_part(r);
    }
    a = a.main_degree() == 0 ? BiPoly({QPoly::constant(1)}) : primitive_part(a);
    std::vector<QPoly> cs;
    mpq_class norm = 1 / (a.coefficients().back() * c).lead();
    for (const auto& q : a.coefficients()) cs.push_back((q * c).scaled(norm));
    return BiPoly(std::move(cs));
}

}  // namespace tmoment::uni
