#include "tmoment/variety.hpp"

#include "tmoment/errors.hpp"
#include "tmoment/univariate.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

namespace tmoment {

using uni::BiPoly;
using uni::QPoly;
using uni::SurdPoly;

std::string to_string(VarietyKind k)
{
    switch (k) {
    case VarietyKind::Finite: return "Finite";
    case VarietyKind::Infinite: return "Infinite";
    case VarietyKind::Unknown: return "Unknown";
    }
    return "Unknown";
}

bool VarietyReport::exact() const
{
    for (const auto& w : points)
        for (const auto& c : w)
            if (!c.is_exact()) return false;
    return true;
}

bool vanishes_at(const Polynomial& p, const Point& w, const TolerancePolicy& pol)
{
    Scalar v = evaluate(p, w);
    if (v.is_exact()) return v.is_zero();
    return std::fabs(v.to_double()) <= pol.residual * (1.0 + evaluation_scale(p, w));
}

std::string format_point(const Point& w)
{
    std::string s = "(";
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (i) s += ", ";
        s += w[i].to_string();
    }
    return s + ")";
}

namespace {

Polynomial rational_copy(const Polynomial& p)
{
    Polynomial r(p.dimension());
    for (const auto& [e, c] : p.terms())
        r.add_term(e, c.is_rational() ? c : Scalar(mpq_class(c.to_double())));
    return r;
}

QPoly float_to_qpoly(const std::vector<double>& c)
{
    std::vector<mpq_class> q;
    for (double v : c) q.emplace_back(v);
    return QPoly(std::move(q));
}

bool same_point(const Point& a, const Point& b, const TolerancePolicy& pol)
{
    bool exact = true;
    for (std::size_t i = 0; i < a.size(); ++i) exact = exact && a[i].is_exact() && b[i].is_exact();
    if (exact) {
        for (std::size_t i = 0; i < a.size(); ++i)
            if (!(a[i] == b[i])) return false;
        return true;
    }
    double scale = 1, dist = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        scale = std::max(scale, std::fabs(a[i].to_double()));
        dist = std::max(dist, std::fabs(a[i].to_double() - b[i].to_double()));
    }
    return dist <= pol.merge * scale;
}

bool point_exact(const Point& w)
{
    for (const auto& c : w)
        if (!c.is_exact()) return false;
    return true;
}

void add_point(std::vector<Point>& pts, Point w, const TolerancePolicy& pol, std::vector<std::string>& notes)
{
    for (auto& existing : pts)
        if (same_point(existing, w, pol)) {
            if (point_exact(existing) && point_exact(w)) return;
            if (!point_exact(existing)) existing = w;
            notes.push_back("merged nearby points at " + format_point(w));
            return;
        }
    pts.push_back(std::move(w));
}

// Certifies an infinite real zero set: p vanishes on a whole vertical line, or
// takes both signs (a finite set cannot separate the plane).
bool zero_set_is_infinite(const Polynomial& p)
{
    BiPoly b = BiPoly::from_polynomial(p, 1);
    int seen = 0;
    const long samples[][2] = {{0, 1}, {1, 1}, {-1, 1}, {2, 1}, {-2, 1}, {1, 2}, {-1, 2},
                               {3, 1}, {-3, 1}, {1, 3}, {-1, 3}, {5, 2}, {-5, 2}};
    for (const auto& s : samples) {
        mpq_class t(s[0], s[1]);
        QPoly q = b.at(t);
        if (q.is_zero()) return true;
        std::vector<mpq_class> probes;
        if (q.degree() == 0) {
            probes.push_back(0);
        } else {
            mpq_class w(1, 1024);
            auto iso = uni::isolate_real_roots(q, w);
            if (iso.empty()) {
                probes.push_back(0);
            } else {
                probes.push_back(iso.front().lo - 1);
                for (std::size_t k = 0; k + 1 < iso.size(); ++k) probes.push_back((iso[k].hi + iso[k + 1].lo) / 2);
                probes.push_back(iso.back().hi + 1);
            }
        }
        for (const auto& y : probes) {
            int sg = sgn(q(y));
            if (sg > 0) seen |= 1;
            if (sg < 0) seen |= 2;
        }
        if (seen == 3) return true;
    }
    return false;
}

bool satisfies_all(const std::vector<Polynomial>& polys, const Point& w, const TolerancePolicy& pol)
{
    for (const auto& p : polys)
        if (!vanishes_at(p, w, pol)) return false;
    return true;
}

std::vector<Scalar> float_roots(const QPoly& q)
{
    std::vector<Scalar> out;
    if (q.is_zero() || q.degree() == 0) return out;
    for (const auto& r : uni::real_roots(q, false)) out.push_back(r.value);
    return out;
}

std::vector<Scalar> roots_of(const SurdPoly& g)
{
    std::vector<Scalar> out;
    if (g.is_zero() || g.degree() == 0) return out;
    const auto& c = g.coefficients();
    bool rational = true;
    for (const auto& v : c) rational = rational && v.is_rational();
    if (rational) {
        std::vector<mpq_class> q;
        for (const auto& v : c) q.push_back(v.rational_part());
        for (const auto& r : uni::real_roots(QPoly(std::move(q)), true)) out.push_back(r.value);
        return out;
    }
    if (g.degree() == 1) {
        out.emplace_back(-c[0] / c[1]);
        return out;
    }
    if (g.degree() == 2) {
        Surd disc = c[1] * c[1] - Surd(4) * c[0] * c[2];
        const int s = disc.sign();
        if (s < 0) return out;
        Surd two_a = Surd(2) * c[2];
        if (s == 0) {
            out.emplace_back(-c[1] / two_a);
            return out;
        }
        if (disc.is_rational()) {
            if (auto root = Surd::sqrt(disc.rational_part())) {
                Surd r1 = (-c[1] - *root) / two_a, r2 = (-c[1] + *root) / two_a;
                if ((r2 - r1).sign() < 0) std::swap(r1, r2);
                out.emplace_back(r1);
                out.emplace_back(r2);
                return out;
            }
        }
    }
    std::vector<double> d;
    for (const auto& v : c) d.push_back(v.to_double());
    return float_roots(float_to_qpoly(d));
}

// Points on the lines x = root of r, using the bivariate relations.
std::vector<Point> points_over_roots(const QPoly& r, const std::vector<Polynomial>& polys, std::size_t i,
                                     std::size_t j, bool exact, const TolerancePolicy& pol,
                                     std::vector<std::string>& notes)
{
    std::vector<BiPoly> bp;
    for (const auto& p : polys) bp.push_back(BiPoly::from_polynomial(p, 1));
    std::vector<Point> pts;
    if (r.degree() == 0) return pts;
    for (const auto& root : uni::real_roots(r, exact)) {
        if (root.value.is_exact()) {
            const Surd& x0 = root.value.exact();
            SurdPoly g;
            for (const auto& b : bp) g = uni::gcd(g, b.at(x0));
            for (const Scalar& y : roots_of(g)) {
                Point w{root.value, y};
                if (satisfies_all(polys, w, pol)) add_point(pts, std::move(w), pol, notes);
            }
            continue;
        }
        const double xd = root.value.to_double();
        const mpq_class xq(xd);
        std::vector<Scalar> ys;
        for (std::size_t k : {i, j}) {
            auto more = float_roots(bp[k].at(xq));
            ys.insert(ys.end(), more.begin(), more.end());
        }
        for (const Scalar& y : ys) {
            Point w{Scalar::real(xd), y.as_float()};
            if (satisfies_all(polys, w, pol)) add_point(pts, std::move(w), pol, notes);
        }
    }
    return pts;
}

Point swapped(const Point& w) { return Point{w[1], w[0]}; }

struct PairAttempt {
    bool ok = false;
    std::vector<Point> points;
};

PairAttempt try_pair(const std::vector<Polynomial>& polys, const Polynomial& f, const Polynomial& g, bool exact,
                     const TolerancePolicy& pol, std::vector<std::string>& notes)
{
    PairAttempt out;
    auto usable = [&](const BiPoly& a, const BiPoly& b, const uni::ResultantResult& res) {
        if (a.is_zero() || b.is_zero()) return false;
        if (a.main_degree() == 0 && b.main_degree() == 0) return false;
        if (res.value.is_zero()) return false;
        if (!exact && res.numerically_zero) return false;
        return true;
    };
    BiPoly fy = BiPoly::from_polynomial(f, 1), gy = BiPoly::from_polynomial(g, 1);
    BiPoly fx = BiPoly::from_polynomial(f, 0), gx = BiPoly::from_polynomial(g, 0);
    auto rx = uni::resultant(fy, gy);  // in x
    auto ry = uni::resultant(fx, gx);  // in y
    const bool okx = usable(fy, gy, rx), oky = usable(fx, gx, ry);
    if (!okx && !oky) return out;
    bool keep_x = okx && (!oky || rx.value.degree() <= ry.value.degree());
    std::vector<Polynomial> work = polys;
    work.push_back(f);
    work.push_back(g);
    const std::size_t i = work.size() - 2, j = work.size() - 1;
    out.ok = true;
    if (keep_x) {
        out.points = points_over_roots(rx.value, work, i, j, exact, pol, notes);
        return out;
    }
    for (auto& p : work) p = swap_variables(p);
    for (auto& w : points_over_roots(ry.value, work, i, j, exact, pol, notes)) out.points.push_back(swapped(w));
    return out;
}

void sort_points(std::vector<Point>& pts)
{
    std::stable_sort(pts.begin(), pts.end(), [](const Point& a, const Point& b) {
        for (std::size_t k = 0; k < a.size(); ++k) {
            if (a[k] == b[k]) continue;
            return a[k].to_double() < b[k].to_double();
        }
        return false;
    });
}

// p / g when g divides p exactly.
std::optional<Polynomial> exact_quotient(Polynomial p, const Polynomial& g)
{
    const auto& [ge, gc] = *g.terms().rbegin();
    Polynomial q(p.dimension());
    while (!p.is_zero()) {
        const auto& [pe, pc] = *p.terms().rbegin();
        MultiIndex e(pe.size());
        for (std::size_t k = 0; k < e.size(); ++k) {
            e[k] = pe[k] - ge[k];
            if (e[k] < 0) return std::nullopt;
        }
        Polynomial t(p.dimension());
        t.add_term(e, pc / gc);
        q = q + t;
        p = p - t * g;
    }
    return q;
}

VarietyReport bivariate(const std::vector<Polynomial>& kernel, const TolerancePolicy& pol, int depth);

// Real zeros of one rational polynomial G.  Between consecutive critical
// abscissae (roots of lc_y(G) * disc_y(G)) the number of real zeros on a
// vertical line is constant, so one sample line per interval decides whether
// G has a curve of zeros.  Otherwise every real zero is isolated, hence
// singular, and lies in V(G, G_x, G_y).
VarietyReport curve_zeros(const Polynomial& G, const TolerancePolicy& pol, int depth)
{
    VarietyReport rep;
    rep.dimension = 2;
    auto infinite = [&](std::string why) {
        rep.kind = VarietyKind::Infinite;
        rep.witness = G;
        rep.reason = std::move(why);
        return rep;
    };
    if (zero_set_is_infinite(G)) return infinite("a relation factor changes sign, so its zero set is a curve");
    BiPoly b = BiPoly::from_polynomial(G, 1);
    QPoly cont;
    for (const auto& c : b.coefficients()) cont = uni::gcd(cont, c);
    if (!cont.is_zero() && cont.degree() > 0 && !uni::isolate_real_roots(cont, mpq_class(1)).empty())
        return infinite("a relation factor vanishes on a vertical line");
    if (b.main_degree() == 0) {
        rep.kind = VarietyKind::Finite;
        return rep;
    }
    std::vector<QPoly> dc;
    for (std::size_t k = 1; k < b.coefficients().size(); ++k)
        dc.push_back(b.coefficients()[k].scaled(mpq_class(static_cast<long>(k))));
    auto disc = uni::resultant(b, BiPoly(std::move(dc)));
    if (disc.value.is_zero()) {
        rep.kind = VarietyKind::Unknown;
        rep.reason = "a relation factor is not squarefree";
        return rep;
    }
    QPoly crit = disc.value * b.coefficients().back();
    std::vector<mpq_class> samples;
    if (crit.degree() == 0) {
        samples.push_back(0);
    } else {
        auto iso = uni::isolate_real_roots(crit, mpq_class(1, 1024));
        if (iso.empty()) {
            samples.push_back(0);
        } else {
            samples.push_back(iso.front().lo - 1);
            for (std::size_t k = 0; k + 1 < iso.size(); ++k) samples.push_back((iso[k].hi + iso[k + 1].lo) / 2);
            samples.push_back(iso.back().hi + 1);
        }
    }
    for (const auto& t : samples) {
        QPoly q = b.at(t);
        if (q.is_zero() || (q.degree() > 0 && !uni::isolate_real_roots(q, mpq_class(1)).empty()))
            return infinite("a relation factor has a branch of real zeros");
    }
    VarietyReport sing = bivariate({G, partial(G, 0), partial(G, 1)}, pol, depth + 1);
    if (sing.kind != VarietyKind::Finite) return sing;
    rep.kind = VarietyKind::Finite;
    for (auto& w : sing.points)
        if (vanishes_at(G, w, pol)) rep.points.push_back(std::move(w));
    rep.notes.push_back("zeros of " + G.to_string() + " are isolated singular points");
    return rep;
}

VarietyReport bivariate(const std::vector<Polynomial>& kernel, const TolerancePolicy& pol, int depth)
{
    VarietyReport rep;
    rep.dimension = 2;
    bool exact = true;
    std::vector<Polynomial> polys;
    for (const auto& p : kernel) {
        exact = exact && p.has_rational_coefficients();
        polys.push_back(rational_copy(p));
    }
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t a = 0; a < polys.size(); ++a)
        for (std::size_t b = a + 1; b < polys.size(); ++b) pairs.emplace_back(a, b);
    std::stable_sort(pairs.begin(), pairs.end(), [&](const auto& u, const auto& v) {
        return polys[u.first].degree().value() + polys[u.second].degree().value() <
               polys[v.first].degree().value() + polys[v.second].degree().value();
    });
    auto finish = [&](PairAttempt& a) {
        rep.kind = VarietyKind::Finite;
        rep.points = std::move(a.points);
        if (!exact) {
            for (auto& w : rep.points)
                for (auto& c : w) c = c.as_float();
        }
        sort_points(rep.points);
        return rep;
    };
    for (const auto& [a, b] : pairs) {
        PairAttempt att = try_pair(polys, polys[a], polys[b], exact, pol, rep.notes);
        if (att.ok) return finish(att);
    }
    auto unknown = [&](std::string why) {
        rep.kind = VarietyKind::Unknown;
        rep.reason = std::move(why);
        return rep;
    };
    if (!exact) return unknown(polys.size() == 1 ? "a single float relation"
                                                 : "float relations appear to share a common factor");
    Polynomial common = polys[0];
    if (polys.size() > 1) {
        BiPoly g;
        for (const auto& p : polys) g = uni::gcd(g, BiPoly::from_polynomial(p, 1));
        if (!g.is_zero() && (g.main_degree() > 0 || g.other_degree() > 0)) common = g.to_polynomial(1);
        else common = Polynomial(2);
    }
    if (!common.is_zero()) {
        if (depth > 4) return unknown("common factors nested too deeply");
        VarietyReport curve = curve_zeros(common, pol, depth);
        if (curve.kind != VarietyKind::Finite) return curve;
        std::vector<Point> pts = std::move(curve.points);
        if (polys.size() > 1) {
            std::vector<Polynomial> rest;
            for (const auto& p : polys) {
                auto q = exact_quotient(p, common);
                if (!q) return unknown("common factor does not divide a relation");
                if (q->degree() == 0) {
                    rest.clear();
                    break;
                }
                rest.push_back(std::move(*q));
            }
            if (!rest.empty()) {
                VarietyReport more = bivariate(rest, pol, depth + 1);
                if (more.kind != VarietyKind::Finite) return more;
                for (auto& w : more.points) add_point(pts, std::move(w), pol, rep.notes);
            }
        }
        rep.kind = VarietyKind::Finite;
        rep.points = std::move(pts);
        sort_points(rep.points);
        return rep;
    }
    for (int t = 1; t <= 3; ++t) {
        Polynomial combo(2);
        for (std::size_t k = 1; k < polys.size(); ++k) {
            long c = 1;
            for (int e = 0; e < t; ++e) c *= static_cast<long>(k + 1);
            combo = combo + Scalar(c) * polys[k];
        }
        PairAttempt att = try_pair(polys, polys[0], combo, exact, pol, rep.notes);
        if (att.ok) return finish(att);
    }
    rep.kind = VarietyKind::Unknown;
    rep.reason = "no pair of relations with a nonvanishing resultant";
    return rep;
}

VarietyReport univariate(const std::vector<Polynomial>& kernel, const TolerancePolicy& pol)
{
    VarietyReport rep;
    rep.dimension = 1;
    bool exact = true;
    for (const auto& p : kernel) exact = exact && p.has_rational_coefficients();
    auto to_q = [](const Polynomial& p) {
        std::vector<mpq_class> c(static_cast<std::size_t>(p.degree().value()) + 1, mpq_class(0));
        for (const auto& [e, v] : p.terms())
            c[static_cast<std::size_t>(e[0])] = v.is_rational() ? v.rational() : mpq_class(v.to_double());
        return QPoly(std::move(c));
    };
    rep.kind = VarietyKind::Finite;
    if (exact) {
        QPoly g;
        for (const auto& p : kernel) g = uni::gcd(g, to_q(p));
        if (g.degree() == 0) return rep;
        for (const auto& r : uni::real_roots(g, true)) rep.points.push_back(Point{r.value});
        return rep;
    }
    std::size_t lowest = 0;
    for (std::size_t k = 1; k < kernel.size(); ++k)
        if (kernel[k].degree() < kernel[lowest].degree()) lowest = k;
    for (const Scalar& r : float_roots(to_q(kernel[lowest]))) {
        Point w{r.as_float()};
        if (satisfies_all(kernel, w, pol)) add_point(rep.points, std::move(w), pol, rep.notes);
    }
    sort_points(rep.points);
    return rep;
}

Point rationalized_point(const Point& w)
{
    Point r;
    for (const auto& c : w) r.push_back(c.rationalized());
    return r;
}

using Big = mpf_class;
constexpr unsigned big_bits = 320;

Big big_eval(const Polynomial& p, const std::vector<Big>& w)
{
    Big sum(0, big_bits);
    for (const auto& [e, c] : p.terms()) {
        Big t(c.rational(), big_bits);
        for (std::size_t k = 0; k < e.size(); ++k)
            for (int j = 0; j < e[k]; ++j) t *= w[k];
        sum += t;
    }
    return sum;
}

}  // namespace

Point refine_point(const Point& w, const std::vector<Polynomial>& relations)
{
    Point fallback = rationalized_point(w);
    const std::size_t d = w.size();
    if (d > 2 || relations.empty()) return fallback;
    for (const auto& p : relations)
        if (!p.has_rational_coefficients()) return fallback;
    std::vector<Big> x;
    for (const auto& c : w) x.emplace_back(c.to_double(), big_bits);

    if (d == 1) {
        const Polynomial* best = nullptr;
        double best_slope = 0;
        for (const auto& p : relations) {
            const double s = std::fabs(evaluate(partial(p, 0), w).to_double()) /
                             (1.0 + evaluation_scale(p, w));
            if (s > best_slope) best_slope = s, best = &p;
        }
        if (!best || best_slope < 1e-12) return fallback;
        const Polynomial dp = partial(*best, 0);
        for (int it = 0; it < 12; ++it) x[0] -= big_eval(*best, x) / big_eval(dp, x);
    } else {
        const Polynomial *f = nullptr, *g = nullptr;
        double best_det = 0;
        for (std::size_t a = 0; a < relations.size(); ++a)
            for (std::size_t b = a + 1; b < relations.size(); ++b) {
                const Polynomial& p = relations[a];
                const Polynomial& q = relations[b];
                const double det = evaluate(partial(p, 0), w).to_double() * evaluate(partial(q, 1), w).to_double() -
                                   evaluate(partial(p, 1), w).to_double() * evaluate(partial(q, 0), w).to_double();
                const double rel = std::fabs(det) / ((1.0 + evaluation_scale(p, w)) * (1.0 + evaluation_scale(q, w)));
                if (rel > best_det) best_det = rel, f = &p, g = &q;
            }
        if (!f || best_det < 1e-14) return fallback;
        const Polynomial fx = partial(*f, 0), fy = partial(*f, 1), gx = partial(*g, 0), gy = partial(*g, 1);
        for (int it = 0; it < 12; ++it) {
            const Big a = big_eval(fx, x), b = big_eval(fy, x), c = big_eval(gx, x), e = big_eval(gy, x);
            const Big fv = big_eval(*f, x), gv = big_eval(*g, x);
            const Big det = a * e - b * c;
            if (det == 0) return fallback;
            x[0] -= (e * fv - b * gv) / det;
            x[1] -= (a * gv - c * fv) / det;
        }
    }
    Point out;
    for (std::size_t k = 0; k < d; ++k) {
        const double orig = w[k].to_double();
        if (std::fabs(x[k].get_d() - orig) > 1e-6 * (1.0 + std::fabs(orig))) return fallback;
        out.push_back(Scalar(mpq_class(x[k])));
    }
    return out;
}

VarietyReport compute_variety(const std::vector<Polynomial>& kernel, int d, const TolerancePolicy& pol)
{
    for (const auto& p : kernel)
        if (p.dimension() != d) throw DimensionError("compute_variety: relation of wrong dimension");
    std::vector<Polynomial> relations;
    for (const auto& p : kernel)
        if (!p.is_zero()) relations.push_back(p);
    VarietyReport rep;
    rep.dimension = d;
    if (relations.empty()) {
        rep.kind = VarietyKind::Infinite;
        rep.reason = "no relations: the variety is the whole space";
        return rep;
    }
    for (const auto& p : relations)
        if (p.degree() == 0) {
            rep.kind = VarietyKind::Finite;
            rep.reason = "a nonzero constant relation";
            return rep;
        }
    if (d == 1) {
        rep = univariate(relations, pol);
        rep.relations = relations;
        return rep;
    }
    if (d == 2) {
        rep = bivariate(relations, pol, 0);
        rep.relations = relations;
        return rep;
    }
    throw Unsupported("variety computation for d >= 3 requires supplied points");
}

VarietyReport validate_points(const std::vector<Polynomial>& kernel, int d, std::vector<Point> points,
                              const TolerancePolicy& pol)
{
    VarietyReport rep;
    rep.dimension = d;
    for (std::size_t i = 0; i < points.size(); ++i) {
        if (static_cast<int>(points[i].size()) != d) throw DimensionError("supplied point of wrong dimension");
        for (const auto& p : kernel)
            if (!vanishes_at(p, points[i], pol)) {
                rep.kind = VarietyKind::Unknown;
                rep.reason = "supplied point " + format_point(points[i]) + " does not satisfy " + p.to_string();
                return rep;
            }
    }
    rep.kind = VarietyKind::Finite;
    rep.points = std::move(points);
    rep.relations = kernel;
    rep.notes.push_back("points supplied by the caller");
    return rep;
}

EvalMatrix build_W(const std::vector<Point>& V, int d, int k)
{
    EvalMatrix w;
    w.columns = monomial_basis(d, k);
    w.values = ScalarMatrix(V.size(), w.columns.size());
    for (std::size_t r = 0; r < V.size(); ++r) {
        if (static_cast<int>(V[r].size()) != d) throw DimensionError("build_W: point of wrong dimension");
        for (std::size_t c = 0; c < w.columns.size(); ++c)
            w.values(r, c) = evaluate(Polynomial::monomial(d, w.columns[c]), V[r]);
    }
    return w;
}

std::size_t hilbert_function(const std::vector<Point>& V, int d, int k, const TolerancePolicy& pol)
{
    return rank(build_W(V, d, k).values, pol.rank);
}

InjectivityVerdict injectivity_check(const MomentMatrix& m, const KernelReport& k, const std::vector<Point>& V,
                                     const TolerancePolicy& pol)
{
    InjectivityVerdict out;
    out.rank_moment = k.rank;
    EvalMatrix w = build_W(V, m.dimension(), m.order());
    Echelon e = row_echelon(w.values, pol.rank);
    out.rank_evaluation = e.rank();
    if (out.rank_evaluation == out.rank_moment) return out;
    out.status = InjectivityStatus::NotInjective;
    for (const auto& v : kernel_basis(e)) {
        Polynomial p = from_coefficients(m.dimension(), w.columns, v);
        if (!annihilates(m, p, pol)) {
            out.witness = p;
            break;
        }
    }
    return out;
}

VandermondeReport vandermonde_VB(const std::vector<Polynomial>& basis, const std::vector<Point>& V,
                                 const TolerancePolicy& pol)
{
    if (basis.size() != V.size()) throw DimensionError("vandermonde_VB: basis and point counts differ");
    VandermondeReport out;
    out.matrix = ScalarMatrix(basis.size(), V.size());
    for (std::size_t i = 0; i < basis.size(); ++i)
        for (std::size_t j = 0; j < V.size(); ++j) out.matrix(i, j) = evaluate(basis[i], V[j]);
    out.determinant = determinant(out.matrix);
    if (is_exact(out.matrix)) out.invertible = !out.determinant.is_zero();
    else out.invertible = rank(out.matrix, pol.rank) == basis.size();
    return out;
}

}  // namespace tmoment
