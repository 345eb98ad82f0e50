#include "tmoment/consistency.hpp"

#include "tmoment/errors.hpp"
#include "tmoment/univariate.hpp"

#include <cmath>

namespace tmoment {

std::string to_string(ConsistencyStatus s)
{
    switch (s) {
    case ConsistencyStatus::Consistent: return "Consistent";
    case ConsistencyStatus::Inconsistent: return "Inconsistent";
    case ConsistencyStatus::Unknown: return "Unknown";
    }
    return "Unknown";
}

std::string to_string(ReducedStatus s)
{
    switch (s) {
    case ReducedStatus::MeasureExists: return "MeasureExists";
    case ReducedStatus::NoMeasure: return "NoMeasure";
    case ReducedStatus::NotApplicable: return "NotApplicable";
    }
    return "NotApplicable";
}

bool functional_vanishes(const Multisequence& beta, const Polynomial& p, const TolerancePolicy& pol)
{
    Scalar v = riesz(beta, p);
    if (v.is_exact()) return v.is_zero();
    return std::fabs(v.to_double()) <= pol.residual * (1.0 + riesz_scale(beta, p));
}

ConsistencyVerdict consistency_check(const Multisequence& beta, const VarietyReport& V, const TolerancePolicy& pol)
{
    ConsistencyVerdict out;
    if (V.kind == VarietyKind::Unknown) {
        out.reason = "variety unknown: " + V.reason;
        return out;
    }
    if (V.kind == VarietyKind::Infinite) {
        if (!V.witness) {
            out.status = ConsistencyStatus::Consistent;
            out.reason = "no nonzero polynomial vanishes on the whole space";
        } else {
            out.reason = "infinite variety: vanishing ideal not computed";
        }
        return out;
    }
    const int d = beta.dimension();
    // Float points are replaced by refined rationals so the kernel of W is
    // computed exactly; only the final comparison uses the tolerance.
    std::vector<Point> pts;
    bool approximate = false;
    for (const auto& w : V.points) {
        bool exact = true;
        for (const auto& c : w) exact = exact && c.is_exact();
        approximate = approximate || !exact;
        pts.push_back(exact ? w : refine_point(w, V.relations));
    }
    auto vanishes = [&](const Polynomial& p) {
        if (!approximate) return functional_vanishes(beta, p, pol);
        return std::fabs(riesz(beta, p).to_double()) <= pol.residual * (1.0 + riesz_scale(beta, p));
    };
    EvalMatrix w = build_W(pts, d, beta.degree());
    Echelon e = row_echelon(w.values, pol.rank);
    for (const auto& v : kernel_basis(e)) {
        Polynomial p = from_coefficients(d, w.columns, v);
        out.checked.push_back(p);
        if (!out.witness && !vanishes(p)) {
            out.witness = p;
            out.witness_value = riesz(beta, p);
        }
    }
    out.status = out.witness ? ConsistencyStatus::Inconsistent : ConsistencyStatus::Consistent;
    return out;
}

SignedRepresentation signed_representation(const Multisequence& beta, const std::vector<Point>& V,
                                           const TolerancePolicy& pol)
{
    const int d = beta.dimension();
    EvalMatrix w = build_W(V, d, beta.degree());
    Echelon rows = row_echelon(w.values.transpose(), pol.rank);
    const std::vector<std::size_t>& sel = rows.pivot_columns;
    std::vector<std::size_t> all_cols(w.columns.size());
    for (std::size_t c = 0; c < all_cols.size(); ++c) all_cols[c] = c;
    ScalarMatrix a = w.values.submatrix(sel, all_cols);
    Echelon cols = row_echelon(a, pol.rank);
    ScalarMatrix square(sel.size(), sel.size());
    std::vector<Scalar> rhs;
    for (std::size_t r = 0; r < cols.pivot_columns.size(); ++r) {
        const std::size_t c = cols.pivot_columns[r];
        for (std::size_t i = 0; i < sel.size(); ++i) square(r, i) = a(i, c);
        rhs.push_back(beta[w.columns[c]]);
    }
    auto alpha = solve_square(square, rhs, pol.rank);
    if (!alpha) throw RepresentationError("evaluation system is singular");
    SignedRepresentation out;
    out.atoms = V;
    out.weights.assign(V.size(), Scalar(0));
    for (std::size_t i = 0; i < sel.size(); ++i) out.weights[sel[i]] = (*alpha)[i];
    for (std::size_t c = 0; c < w.columns.size(); ++c) {
        Scalar s(0);
        for (std::size_t i = 0; i < sel.size(); ++i) s += (*alpha)[i] * a(i, c);
        Scalar diff = s - beta[w.columns[c]];
        const bool ok = diff.is_exact() ? diff.is_zero()
                                        : std::fabs(diff.to_double()) <=
                                              pol.residual * (1.0 + std::fabs(beta[w.columns[c]].to_double()));
        if (!ok)
            throw RepresentationError("no combination of point evaluations matches the moment of " +
                                      monomial_name(w.columns[c]));
    }
    return out;
}

std::vector<Polynomial> cubic_curve_basis()
{
    std::vector<Polynomial> b;
    for (const MultiIndex& e : std::vector<MultiIndex>{{0, 0}, {1, 0}, {0, 1}, {2, 0}, {1, 1}, {0, 2}, {2, 1}, {1, 2}})
        b.push_back(Polynomial::monomial(2, e));
    return b;
}

Polynomial interpolation_remainder(const std::vector<Point>& V, const std::vector<Polynomial>& basis,
                                   const Polynomial& target, const TolerancePolicy& pol)
{
    if (V.size() != basis.size()) throw DimensionError("interpolation needs as many points as basis elements");
    const std::size_t m = V.size();
    ScalarMatrix a(m, m);
    std::vector<Scalar> rhs;
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < m; ++j) a(i, j) = evaluate(basis[j], V[i]);
        rhs.push_back(evaluate(target, V[i]));
    }
    auto alpha = solve_square(a, rhs, pol.rank);
    if (!alpha) throw ScenarioError("basis is not unisolvent on the given points");
    Polynomial r = target;
    for (std::size_t j = 0; j < m; ++j) r = r - (*alpha)[j] * basis[j];
    return r;
}

Polynomial compute_h(const std::vector<Point>& V, const TolerancePolicy& pol)
{
    if (V.size() != 8) throw ScenarioError("compute_h needs exactly eight points");
    for (const auto& w : V)
        if (w.size() != 2) throw DimensionError("compute_h needs planar points");
    return interpolation_remainder(V, cubic_curve_basis(), Polynomial::monomial(2, {2, 2}), pol);
}

namespace {

Polynomial cubic_relation() { return Polynomial::monomial(2, {3, 0}) - Polynomial::monomial(2, {0, 1}); }

ScalarMatrix basis_compression(const Multisequence& beta, const std::vector<Polynomial>& basis)
{
    ScalarMatrix j(basis.size(), basis.size());
    for (std::size_t r = 0; r < basis.size(); ++r)
        for (std::size_t c = 0; c < basis.size(); ++c) {
            const MultiIndex& a = basis[r].terms().begin()->first;
            const MultiIndex& b = basis[c].terms().begin()->first;
            j(r, c) = beta[a + b];
        }
    return j;
}

}  // namespace

Polynomial compute_k_from_extension(const Multisequence& beta, const TolerancePolicy& pol)
{
    if (beta.dimension() != 2 || beta.degree() != 6) throw ScenarioError("needs planar moments of degree 6");
    MomentMatrix m = build_moment_matrix(beta);
    if (!annihilates(m, cubic_relation(), pol)) throw ScenarioError("Y = X^3 is not a relation of M(3)");
    const auto basis = cubic_curve_basis();
    ScalarMatrix j = basis_compression(beta, basis);
    // Column y^2x^2 compressed to the rows of the basis; the two degree-7
    // entries are reduced with x^3 = y.
    std::vector<Scalar> v{beta[{2, 2}], beta[{3, 2}], beta[{2, 3}], beta[{4, 2}],
                          beta[{3, 3}], beta[{2, 4}], beta[{1, 4}], beta[{0, 5}]};
    auto alpha = solve_square(j, v, pol.rank);
    if (!alpha) throw ScenarioError("the compression of M(3) to the basis is singular");
    Polynomial k = Polynomial::monomial(2, {2, 2});
    for (std::size_t i = 0; i < basis.size(); ++i) k = k - (*alpha)[i] * basis[i];
    return k;
}

ReducedTestVerdict reduced_consistency_test(const Multisequence& beta, const TolerancePolicy& pol)
{
    ReducedTestVerdict out;
    auto not_applicable = [&](const std::string& why) {
        out.status = ReducedStatus::NotApplicable;
        out.reason = why;
        return out;
    };
    if (beta.dimension() != 2 || beta.degree() != 6) return not_applicable("needs planar moments of degree 6");
    MomentMatrix m3 = build_moment_matrix(beta);
    if (!psd_check(m3, pol).psd) return not_applicable("M(3) is not positive semidefinite");
    MomentMatrix m2 = m3.compression(2);
    if (rank(m2.entries(), pol.rank) != m2.size()) return not_applicable("M(2) is not positive definite");
    KernelReport k3 = rank_kernel(m3, pol);
    if (k3.rank != 8) return not_applicable("rank M(3) is " + std::to_string(k3.rank) + ", not 8");
    if (!annihilates(m3, cubic_relation(), pol)) return not_applicable("Y = X^3 is not a relation of M(3)");
    VarietyReport v = compute_variety(k3.kernel, 2, pol);
    if (v.kind != VarietyKind::Finite || v.card() != 8)
        return not_applicable("the variety is not a set of eight points");
    try {
        out.h = compute_h(v.points, pol);
    } catch (const ScenarioError& e) {
        return not_applicable(e.what());
    }
    out.lambda_h = riesz(beta, *out.h);
    try {
        out.k = compute_k_from_extension(beta, pol);
        Polynomial diff = *out.k - *out.h;
        bool match = true;
        for (const auto& [e, c] : diff.terms())
            if (c.is_exact() ? !c.is_zero() : std::fabs(c.to_double()) > pol.residual * (1.0 + std::fabs(out.h->coefficient(e).to_double())))
                match = false;
        out.k_matches_h = match;
    } catch (const ScenarioError&) {
        out.k_matches_h = false;
    }
    out.status = functional_vanishes(beta, *out.h, pol) ? ReducedStatus::MeasureExists : ReducedStatus::NoMeasure;
    out.reason = "Lambda(h) = " + out.lambda_h.to_string();
    return out;
}

namespace {

Polynomial leading_form(const Polynomial& p)
{
    Polynomial r(p.dimension());
    const int deg = p.degree().value();
    for (const auto& [e, c] : p.terms())
        if (total_degree(e) == deg) r.add_term(e, c);
    return r;
}

// Leading forms share a real projective zero.
bool share_real_direction(const Polynomial& a, const Polynomial& b)
{
    const int da = a.degree().value(), db = b.degree().value();
    if (a.coefficient({da, 0}).is_zero() && b.coefficient({db, 0}).is_zero()) return true;
    auto dehomogenise = [](const Polynomial& f) {
        std::vector<mpq_class> c;
        for (const auto& [e, v] : f.terms()) {
            const auto k = static_cast<std::size_t>(e[0]);
            if (c.size() <= k) c.resize(k + 1, mpq_class(0));
            c[k] = v.rational();
        }
        return uni::QPoly(std::move(c));
    };
    uni::QPoly g = uni::gcd(dehomogenise(a), dehomogenise(b));
    if (g.is_zero()) return true;
    if (g.degree() == 0) return false;
    return !uni::real_roots(g, false).empty();
}

}  // namespace

CertificateVerdict simple_zero_certificate(const Polynomial& r1, const Polynomial& r2, const std::vector<Point>& V,
                                           const TolerancePolicy& pol)
{
    CertificateVerdict out;
    if (r1.dimension() != 2 || r2.dimension() != 2) throw DimensionError("certificate needs planar relations");
    if (r1.is_zero() || r2.is_zero()) {
        out.failures.push_back("a relation is zero");
        return out;
    }
    const int d1 = r1.degree().value(), d2 = r2.degree().value();
    if (!r1.has_rational_coefficients() || !r2.has_rational_coefficients()) {
        out.failures.push_back("leading-form test needs exact rational relations");
    } else if (share_real_direction(leading_form(r1), leading_form(r2))) {
        out.failures.push_back("leading forms share a real zero other than the origin");
    }
    if (static_cast<long>(V.size()) != static_cast<long>(d1) * d2)
        out.failures.push_back("card V = " + std::to_string(V.size()) + " differs from deg r1 * deg r2 = " +
                               std::to_string(d1 * d2));
    const Polynomial r1x = partial(r1, 0), r1y = partial(r1, 1), r2x = partial(r2, 0), r2y = partial(r2, 1);
    for (const auto& w : V) {
        Scalar a = evaluate(r1x, w), b = evaluate(r1y, w), c = evaluate(r2x, w), e = evaluate(r2y, w);
        Scalar det = a * e - b * c;
        bool singular;
        if (det.is_exact()) {
            singular = det.is_zero();
        } else {
            double scale = std::hypot(a.to_double(), b.to_double()) * std::hypot(c.to_double(), e.to_double());
            singular = std::fabs(det.to_double()) <= pol.residual * scale;
        }
        if (singular) out.failures.push_back("Jacobian rank 1 at " + format_point(w));
    }
    out.certified = out.failures.empty();
    return out;
}

}  // namespace tmoment
