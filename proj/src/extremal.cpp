#include "tmoment/extremal.hpp"

#include "tmoment/consistency.hpp"
#include "tmoment/errors.hpp"

#include <cmath>

namespace tmoment {

void AtomicMeasure::validate() const
{
    if (atoms.size() != densities.size()) throw DimensionError("measure: atoms and densities differ in length");
    for (const auto& w : atoms)
        if (static_cast<int>(w.size()) != d) throw DimensionError("measure: atom of wrong dimension");
}

bool AtomicMeasure::is_exact() const
{
    for (const auto& r : densities)
        if (!r.is_exact()) return false;
    for (const auto& w : atoms)
        for (const auto& c : w)
            if (!c.is_exact()) return false;
    return true;
}

std::string to_string(SolveOutcome o)
{
    switch (o) {
    case SolveOutcome::Measure: return "Measure";
    case SolveOutcome::NotPSD: return "NotPSD";
    case SolveOutcome::Inconsistent: return "Inconsistent";
    case SolveOutcome::NotExtremal: return "NotExtremal";
    case SolveOutcome::SingularVB: return "SingularVB";
    case SolveOutcome::NonPositiveDensity: return "NonPositiveDensity";
    case SolveOutcome::Unknown: return "Unknown";
    }
    return "Unknown";
}

int SolveReport::exit_code() const
{
    switch (outcome) {
    case SolveOutcome::Measure: return 0;
    case SolveOutcome::NotPSD:
    case SolveOutcome::Inconsistent:
    case SolveOutcome::SingularVB:
    case SolveOutcome::NonPositiveDensity: return 2;
    case SolveOutcome::NotExtremal: return variety_card && rank > *variety_card ? 2 : 3;
    case SolveOutcome::Unknown: return 3;
    }
    return 3;
}

Scalar measure_moment(const AtomicMeasure& mu, const MultiIndex& i)
{
    const Polynomial m = Polynomial::monomial(mu.d, i);
    Scalar s(0);
    for (std::size_t k = 0; k < mu.atoms.size(); ++k) s += mu.densities[k] * evaluate(m, mu.atoms[k]);
    return s;
}

namespace {

Point rationalized(const Point& w)
{
    Point r;
    for (const auto& c : w) r.push_back(c.rationalized());
    return r;
}

bool points_exact(const std::vector<Point>& V)
{
    for (const auto& w : V)
        for (const auto& c : w)
            if (!c.is_exact()) return false;
    return true;
}

// Exact solve of V_B rho = Lambda(B) on the binary values of the data.
std::optional<std::vector<Scalar>> exact_densities(const Multisequence& beta, const std::vector<Polynomial>& basis,
                                                   const std::vector<Point>& Vq, const TolerancePolicy& pol)
{
    ScalarMatrix a(basis.size(), Vq.size());
    std::vector<Scalar> rhs;
    for (std::size_t i = 0; i < basis.size(); ++i) {
        for (std::size_t j = 0; j < Vq.size(); ++j) a(i, j) = evaluate(basis[i], Vq[j]);
        Scalar s(0);
        for (const auto& [e, c] : basis[i].terms()) s += c.rationalized() * beta[e].rationalized();
        rhs.push_back(s);
    }
    return solve_square(a, rhs, pol.rank);
}


}  // namespace

MeasureResidual verify_measure(const Multisequence& beta, const AtomicMeasure& mu, const TolerancePolicy&)
{
    mu.validate();
    if (mu.d != beta.dimension()) throw DimensionError("verify_measure: dimension mismatch");
    MeasureResidual out;
    out.exact = beta.is_exact() && mu.is_exact();
    std::vector<Point> atoms;
    std::vector<Scalar> rho;
    for (std::size_t k = 0; k < mu.atoms.size(); ++k) {
        atoms.push_back(rationalized(mu.atoms[k]));
        rho.push_back(mu.densities[k].rationalized());
    }
    out.worst = beta.indices().front();
    for (const auto& i : beta.indices()) {
        const Polynomial m = Polynomial::monomial(mu.d, i);
        Scalar fit(0);
        double scale = std::fabs(beta[i].to_double());
        for (std::size_t k = 0; k < atoms.size(); ++k) {
            const Scalar t = rho[k] * evaluate(m, atoms[k]);
            fit += t;
            scale += std::fabs(t.to_double());
        }
        const double v = std::fabs((beta[i].rationalized() - fit).to_double());
        if (v > out.max_residual) {
            out.max_residual = v;
            out.worst = i;
        }
        if (scale > 0) out.max_relative = std::max(out.max_relative, v / scale);
    }
    return out;
}

std::optional<std::vector<Scalar>> solve_densities(const Multisequence& beta, const std::vector<Polynomial>& basis,
                                                   const std::vector<Point>& V, const TolerancePolicy& pol)
{
    VandermondeReport vb = vandermonde_VB(basis, V, pol);
    if (!vb.invertible) return std::nullopt;
    std::vector<Point> Vq;
    for (const auto& w : V) Vq.push_back(rationalized(w));
    auto rho = exact_densities(beta, basis, Vq, pol);
    bool exact = beta.is_exact() && points_exact(V);
    for (const auto& b : basis)
        if (!b.is_exact()) exact = false;
    if (rho && !exact)
        for (auto& r : *rho) r = r.as_float();
    return rho;
}

namespace {

SolveReport fail(SolveReport r, SolveOutcome o, std::string reason)
{
    r.outcome = o;
    r.reason = std::move(reason);
    return r;
}

}  // namespace

SolveReport solve_extremal(const Multisequence& beta, const TolerancePolicy& pol,
                           const std::optional<std::vector<Point>>& points)
{
    SolveReport rep;
    rep.exact = beta.is_exact();
    const int d = beta.dimension();
    MomentMatrix m = build_moment_matrix(beta);

    PsdVerdict psd = psd_check(m, pol);
    if (!psd.psd) {
        rep.witness = psd.witness;
        rep.witness_value = psd.witness_value;
        return fail(rep, SolveOutcome::NotPSD, "M(n) is not positive semidefinite");
    }

    KernelReport k = rank_kernel(m, pol);
    rep.rank = k.rank;
    rep.basis = k.pivots;
    rep.kernel = k;

    VarietyReport v;
    try {
        v = points ? validate_points(k.kernel, d, *points, pol) : compute_variety(k.kernel, d, pol);
    } catch (const Unsupported& e) {
        return fail(rep, SolveOutcome::Unknown, e.what());
    }
    rep.variety = v;
    if (v.kind == VarietyKind::Unknown) return fail(rep, SolveOutcome::Unknown, "variety unknown: " + v.reason);
    if (v.kind == VarietyKind::Infinite)
        return fail(rep, SolveOutcome::NotExtremal, "the variety is infinite; try the extension search");
    rep.variety_card = v.card();
    if (k.rank > v.card())
        return fail(rep, SolveOutcome::NotExtremal,
                    "rank " + std::to_string(k.rank) + " exceeds card V = " + std::to_string(v.card()));
    if (k.rank < v.card())
        return fail(rep, SolveOutcome::NotExtremal,
                    "rank " + std::to_string(k.rank) + " below card V = " + std::to_string(v.card()) +
                        "; try the extension search");

    std::vector<Polynomial> basis;
    for (const auto& e : k.pivots) basis.push_back(Polynomial::monomial(d, e));
    VandermondeReport vb = vandermonde_VB(basis, v.points, pol);
    if (!vb.invertible) return fail(rep, SolveOutcome::SingularVB, "V_B is singular");
    std::vector<Point> Vq;
    for (const auto& w : v.points) {
        bool exact_point = true;
        for (const auto& c : w) exact_point = exact_point && c.is_exact();
        Vq.push_back(exact_point ? w : refine_point(w, k.kernel));
    }
    auto rho = exact_densities(beta, basis, Vq, pol);
    if (!rho) return fail(rep, SolveOutcome::SingularVB, "V_B is numerically singular");
    const bool exact = beta.is_exact() && points_exact(v.points);
    rep.exact = exact;

    double worst = 0;
    for (const auto& i : beta.indices()) {
        const Polynomial mono = Polynomial::monomial(d, i);
        Scalar fit(0);
        double scale = 1.0 + std::fabs(beta[i].to_double());
        std::vector<Scalar> values;
        for (std::size_t j = 0; j < Vq.size(); ++j) {
            values.push_back(evaluate(mono, Vq[j]));
            const Scalar t = (*rho)[j] * values.back();
            fit += t;
            scale += std::fabs(t.to_double());
        }
        const Scalar r = beta[i].rationalized() - fit;
        worst = std::max(worst, std::fabs(r.to_double()));
        const bool ok = exact ? r.is_zero() : std::fabs(r.to_double()) <= pol.residual * scale;
        if (ok) continue;
        rep.residual = worst;
        ScalarMatrix at(Vq.size(), basis.size());
        for (std::size_t j = 0; j < Vq.size(); ++j)
            for (std::size_t b = 0; b < basis.size(); ++b) at(j, b) = evaluate(basis[b], Vq[j]);
        auto alpha = solve_square(at, values, pol.rank);
        Polynomial w = mono;
        if (alpha)
            for (std::size_t b = 0; b < basis.size(); ++b)
                w = w - (exact ? (*alpha)[b] : (*alpha)[b].as_float()) * basis[b];
        rep.witness = w;
        rep.witness_value = riesz(beta, w);
        return fail(rep, SolveOutcome::Inconsistent,
                    "interpolation fails at the moment of " + monomial_name(i) +
                        "; the witness vanishes on V but Lambda does not annihilate it");
    }

    AtomicMeasure mu{d, v.points, *rho};
    if (!exact)
        for (auto& r : mu.densities) r = r.as_float();
    rep.residual = exact ? worst : verify_measure(beta, mu, pol).max_residual;

    for (std::size_t j = 0; j < mu.densities.size(); ++j)
        if (mu.densities[j].sign() <= 0)
            return fail(rep, SolveOutcome::NonPositiveDensity,
                        "density at " + format_point(mu.atoms[j]) + " is " + mu.densities[j].to_string());
    rep.measure = mu;
    rep.outcome = SolveOutcome::Measure;
    rep.reason = std::to_string(k.rank) + "-atomic representing measure";
    return rep;
}

}  // namespace tmoment
