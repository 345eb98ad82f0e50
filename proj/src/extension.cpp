#include "tmoment/extension.hpp"

#include "tmoment/errors.hpp"

#include <cmath>
#include <set>

namespace tmoment {

Scalar Derivation::operator()(const Polynomial& p) const { return directional_derivative(p, point, direction); }

MomentMatrix extend_via_measure(const AtomicMeasure& mu, int m)
{
    if (m < 1) throw DegreeOverflow("extend_via_measure needs m >= 1");
    mu.validate();
    std::vector<Scalar> values;
    for (const auto& i : monomial_basis(mu.d, 2 * m)) values.push_back(measure_moment(mu, i));
    return build_moment_matrix(Multisequence(mu.d, 2 * m, std::move(values)));
}

namespace {

bool near_zero(const Scalar& v, double scale, const TolerancePolicy& pol)
{
    return v.is_exact() ? v.is_zero() : std::fabs(v.to_double()) <= pol.residual * (1.0 + scale);
}

// One linear equation sum_e q_e beta_{r+e} = 0 over the moments up to 2n+2.
struct Equation {
    std::vector<std::pair<MultiIndex, Scalar>> terms;
};

bool entries_agree(const ScalarMatrix& a, const ScalarMatrix& b, const TolerancePolicy& pol)
{
    if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            if (!near_zero(a(i, j) - b(i, j), std::fabs(a(i, j).to_double()), pol)) return false;
    return true;
}

}  // namespace

ExtensionReport propagate_recursive_extension(const MomentMatrix& mn, const KernelReport& k, const TolerancePolicy& pol)
{
    ExtensionReport rep;
    const int n = mn.order();
    const int d = mn.dimension();
    const Multisequence& beta = mn.sequence();
    rep.order = n;
    rep.rank_n = k.rank;

    std::vector<Equation> eqs;
    for (const Polynomial& p : k.kernel) {
        if (p.is_zero()) continue;
        const int dp = p.degree().value();
        for (const MultiIndex& c : monomial_basis(d, n + 1 - dp)) {
            const Polynomial q = Polynomial::monomial(d, c) * p;
            for (const MultiIndex& r : monomial_basis(d, n + 1)) {
                Equation e;
                for (const auto& [ex, coef] : q.terms()) e.terms.emplace_back(r + ex, coef);
                eqs.push_back(std::move(e));
            }
        }
    }

    std::map<MultiIndex, Scalar, DegLexLess> value;
    auto known = [&](const MultiIndex& i) -> const Scalar* {
        if (total_degree(i) <= 2 * n) return &beta[i];
        auto it = value.find(i);
        return it == value.end() ? nullptr : &it->second;
    };

    bool progress = true;
    while (progress) {
        progress = false;
        for (const Equation& e : eqs) {
            const MultiIndex* unknown = nullptr;
            Scalar unknown_coef, rest(0);
            bool single = true;
            for (const auto& [i, c] : e.terms) {
                if (const Scalar* v = known(i)) {
                    rest += c * *v;
                } else if (!unknown || *unknown == i) {
                    unknown = &i;
                    unknown_coef += c;
                } else {
                    single = false;
                    break;
                }
            }
            if (!single || !unknown || unknown_coef.is_zero()) continue;
            if (!unknown_coef.is_exact() && std::fabs(unknown_coef.to_double()) <= pol.rank) continue;
            value.emplace(*unknown, -rest / unknown_coef);
            progress = true;
        }
    }

    std::set<MultiIndex, DegLexLess> conflicts;
    for (const Equation& e : eqs) {
        Scalar s(0);
        double scale = 0;
        bool complete = true;
        for (const auto& [i, c] : e.terms) {
            const Scalar* v = known(i);
            if (!v) {
                complete = false;
                break;
            }
            s += c * *v;
            scale += std::fabs(c.to_double() * v->to_double());
        }
        if (complete && !near_zero(s, scale, pol))
            for (const auto& [i, c] : e.terms) conflicts.insert(i);
    }
    rep.conflicts.assign(conflicts.begin(), conflicts.end());
    rep.well_defined = conflicts.empty();
    rep.determined = value;

    std::vector<Scalar> all;
    for (const MultiIndex& i : monomial_basis(d, 2 * n + 2)) {
        if (const Scalar* v = known(i)) all.push_back(*v);
        else rep.undetermined.push_back(i);
    }
    if (!rep.undetermined.empty()) return rep;

    rep.extended = Multisequence(d, 2 * n + 2, std::move(all));
    MomentMatrix m1 = build_moment_matrix(*rep.extended);
    const auto& basis = m1.basis();
    std::map<MultiIndex, Scalar, DegLexLess> by_sum;
    for (std::size_t i = 0; i < basis.size() && rep.hankel_ok; ++i)
        for (std::size_t j = 0; j < basis.size(); ++j) {
            const auto [it, fresh] = by_sum.emplace(basis[i] + basis[j], m1.entries()(i, j));
            if (!fresh && !(it->second == m1.entries()(i, j))) {
                rep.hankel_ok = false;
                break;
            }
        }
    if (!entries_agree(m1.compression(n).entries(), mn.entries(), pol)) rep.hankel_ok = false;
    rep.rank_n1 = rank(m1.entries(), pol.rank);
    rep.flat = rep.well_defined && *rep.rank_n1 == rep.rank_n;
    return rep;
}

FlatnessVerdict flat_extension_check(const MomentMatrix& mn, const MomentMatrix& mn1, const TolerancePolicy& pol)
{
    if (mn1.order() != mn.order() + 1 || mn1.dimension() != mn.dimension())
        throw DimensionError("flat_extension_check: orders do not match");
    if (!entries_agree(mn1.compression(mn.order()).entries(), mn.entries(), pol))
        throw DimensionError("flat_extension_check: M(n+1) does not extend M(n)");
    FlatnessVerdict out;
    out.rank_previous = rank(mn.entries(), pol.rank);
    out.rank = rank(mn1.entries(), pol.rank);
    out.flat = out.rank == out.rank_previous;
    return out;
}

std::string to_string(TightnessStatus s)
{
    switch (s) {
    case TightnessStatus::Tight: return "Tight";
    case TightnessStatus::NotTight: return "NotTight";
    case TightnessStatus::Inconclusive: return "Inconclusive";
    }
    return "Inconclusive";
}

TightnessVerdict tightness_check(const MomentMatrix& mn, const MomentMatrix& mn1, const KernelReport& k,
                                 const std::optional<Derivation>& witness, const TolerancePolicy& pol)
{
    if (mn1.order() != mn.order() + 1) throw DimensionError("tightness_check: orders do not match");
    const int n1 = mn1.order();
    const int d = mn.dimension();
    TightnessVerdict out;
    KernelReport k1 = rank_kernel(mn1, pol);
    out.dim_kernel = k1.kernel.size();

    std::vector<std::vector<Scalar>> rows;
    for (const Polynomial& p : k.kernel) {
        if (p.is_zero()) continue;
        for (const MultiIndex& c : monomial_basis(d, n1 - p.degree().value()))
            rows.push_back(to_coefficients(Polynomial::monomial(d, c) * p, n1).values);
    }
    if (!rows.empty()) {
        ScalarMatrix span(rows.size(), rows.front().size());
        for (std::size_t i = 0; i < rows.size(); ++i)
            for (std::size_t j = 0; j < rows[i].size(); ++j) span(i, j) = rows[i][j];
        out.lower_bound = rank(span, pol.rank);
    }

    if (out.lower_bound == out.dim_kernel) {
        out.status = TightnessStatus::Tight;
        out.reason = "monomial multiples of the relations span the new kernel";
        return out;
    }
    if (witness) {
        for (const Polynomial& p : k.kernel) {
            const double scale = evaluation_scale(p, witness->point);
            if (!near_zero((*witness)(p), scale, pol) || !near_zero(evaluate(p, witness->point), scale, pol)) {
                out.reason = "the derivation does not annihilate the relations of M(n)";
                return out;
            }
        }
        for (const Polynomial& q : k1.kernel) {
            if (near_zero((*witness)(q), evaluation_scale(q, witness->point), pol)) continue;
            out.status = TightnessStatus::NotTight;
            out.witness = q;
            out.derivation = witness;
            out.reason = "the witness lies in the new kernel but the derivation does not annihilate it";
            return out;
        }
        out.reason = "the derivation annihilates the new kernel";
        return out;
    }
    out.reason = "lower bound below dim N_{n+1}; no derivation witness supplied";
    return out;
}

std::string to_string(SearchStatus s)
{
    switch (s) {
    case SearchStatus::Flat: return "Flat";
    case SearchStatus::IllDefined: return "IllDefined";
    case SearchStatus::Undetermined: return "Undetermined";
    case SearchStatus::NotPSD: return "NotPSD";
    case SearchStatus::NotRecursive: return "NotRecursive";
    case SearchStatus::Exhausted: return "Exhausted";
    }
    return "Exhausted";
}

int SearchReport::exit_code() const
{
    switch (status) {
    case SearchStatus::Flat: return solve ? solve->exit_code() : 3;
    case SearchStatus::IllDefined:
    case SearchStatus::NotPSD:
    case SearchStatus::NotRecursive: return 2;
    case SearchStatus::Undetermined:
    case SearchStatus::Exhausted: return 3;
    }
    return 3;
}

SearchReport extension_search(const Multisequence& beta, int max_steps, const TolerancePolicy& pol)
{
    SearchReport out;
    Multisequence cur = beta;
    for (int step = 0; step < max_steps; ++step) {
        MomentMatrix m = build_moment_matrix(cur);
        PsdVerdict psd = psd_check(m, pol);
        if (!psd.psd) {
            out.status = SearchStatus::NotPSD;
            out.reason = "M(" + std::to_string(m.order()) + ") is not positive semidefinite";
            return out;
        }
        KernelReport k = rank_kernel(m, pol);
        if (!recursiveness_check(m, k, pol).recursive) {
            out.status = SearchStatus::NotRecursive;
            out.reason = "M(" + std::to_string(m.order()) + ") is not recursively generated";
            return out;
        }
        out.steps.push_back(propagate_recursive_extension(m, k, pol));
        const ExtensionReport& rep = out.steps.back();
        if (!rep.well_defined) {
            out.status = SearchStatus::IllDefined;
            out.reason = "derivations of M(" + std::to_string(m.order() + 1) + ") disagree";
            return out;
        }
        if (!rep.extended) {
            out.status = SearchStatus::Undetermined;
            out.reason = std::to_string(rep.undetermined.size()) + " moments of M(" +
                         std::to_string(m.order() + 1) + ") are not determined by the relations";
            return out;
        }
        cur = *rep.extended;
        if (!psd_check(build_moment_matrix(cur), pol).psd) {
            out.status = SearchStatus::NotPSD;
            out.reason = "the forced extension M(" + std::to_string(m.order() + 1) + ") is not positive semidefinite";
            return out;
        }
        if (rep.flat) {
            out.status = SearchStatus::Flat;
            out.flat_sequence = cur;
            out.reason = "M(" + std::to_string(m.order() + 1) + ") is a flat extension";
            out.solve = solve_extremal(cur, pol);
            if (out.solve->measure) out.residual = verify_measure(beta, *out.solve->measure, pol);
            return out;
        }
    }
    out.status = SearchStatus::Exhausted;
    out.reason = "no flat extension within " + std::to_string(max_steps) + " steps";
    return out;
}

}  // namespace tmoment
