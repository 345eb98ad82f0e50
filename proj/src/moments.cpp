#include "tmoment/moments.hpp"

#include "tmoment/errors.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <set>

namespace tmoment {

void TolerancePolicy::validate() const
{
    for (double v : {rank, residual, root, merge})
        if (!(v > 0) || !std::isfinite(v)) throw std::invalid_argument("tolerances must be positive and finite");
}

Multisequence::Multisequence(int d, int degree, std::vector<Scalar> values)
    : d_(d), degree_(degree), values_(std::move(values))
{
    if (d < 1) throw DimensionError("multisequence dimension must be >= 1");
    if (degree < 0 || degree % 2 != 0) throw DegreeOverflow("multisequence degree must be even and >= 0");
    indices_ = monomial_basis(d, degree);
    if (values_.size() != indices_.size())
        throw DimensionError("multisequence of degree " + std::to_string(degree) + " needs " +
                             std::to_string(indices_.size()) + " values, got " +
                             std::to_string(values_.size()));
}

const Scalar& Multisequence::operator[](const MultiIndex& i) const
{
    if (static_cast<int>(i.size()) != d_) throw DimensionError("moment index has wrong dimension");
    if (total_degree(i) > degree_)
        throw DegreeOverflow("moment of degree " + std::to_string(total_degree(i)) + " beyond degree " +
                             std::to_string(degree_));
    return values_[deglex_position(i)];
}

bool Multisequence::is_exact() const
{
    for (const auto& v : values_)
        if (!v.is_exact()) return false;
    return true;
}

Multisequence Multisequence::truncated(int degree) const
{
    if (degree > degree_) throw DegreeOverflow("cannot truncate to a larger degree");
    std::vector<Scalar> v(values_.begin(), values_.begin() + static_cast<std::ptrdiff_t>(basis_size(d_, degree)));
    return Multisequence(d_, degree, std::move(v));
}

Multisequence Multisequence::as_float() const
{
    std::vector<Scalar> v;
    for (const auto& s : values_) v.push_back(s.as_float());
    return Multisequence(d_, degree_, std::move(v));
}

bool operator==(const Multisequence& a, const Multisequence& b)
{
    if (a.dimension() != b.dimension() || a.degree() != b.degree()) return false;
    for (std::size_t i = 0; i < a.values().size(); ++i)
        if (!(a.values()[i] == b.values()[i])) return false;
    return true;
}

Scalar riesz(const Multisequence& beta, const Polynomial& p)
{
    if (p.dimension() != beta.dimension()) throw DimensionError("riesz: dimension mismatch");
    Scalar s(0);
    for (const auto& [e, c] : p.terms()) s += c * beta[e];
    return s;
}

double riesz_scale(const Multisequence& beta, const Polynomial& p)
{
    double s = 0;
    for (const auto& [e, c] : p.terms()) s += std::fabs(c.to_double()) * std::fabs(beta[e].to_double());
    return s;
}

MomentMatrix::MomentMatrix(std::shared_ptr<const Multisequence> beta, int n) : beta_(std::move(beta)), n_(n)
{
    if (n < 0 || 2 * n > beta_->degree())
        throw DegreeOverflow("moment matrix M(" + std::to_string(n) + ") needs moments of degree " +
                             std::to_string(2 * n));
    basis_ = monomial_basis(beta_->dimension(), n);
    entries_ = ScalarMatrix(basis_.size(), basis_.size());
    for (std::size_t i = 0; i < basis_.size(); ++i)
        for (std::size_t j = i; j < basis_.size(); ++j) {
            entries_(i, j) = (*beta_)[basis_[i] + basis_[j]];
            entries_(j, i) = entries_(i, j);
        }
}

MomentMatrix MomentMatrix::compression(int m) const
{
    if (m > n_) throw DegreeOverflow("compression to a larger order");
    return MomentMatrix(beta_, m);
}

std::vector<Scalar> MomentMatrix::apply(const Polynomial& p) const
{
    CoefficientVector v = to_coefficients(p, n_);
    return multiply(entries_, v.values);
}

MomentMatrix build_moment_matrix(const Multisequence& beta)
{
    return MomentMatrix(std::make_shared<const Multisequence>(beta), beta.degree() / 2);
}

MomentMatrix build_moment_matrix(const Multisequence& beta, int n)
{
    return MomentMatrix(std::make_shared<const Multisequence>(beta), n);
}

namespace {

Scalar quadratic_form(const ScalarMatrix& m, const std::vector<Scalar>& v)
{
    std::vector<Scalar> mv = multiply(m, v);
    Scalar s(0);
    for (std::size_t i = 0; i < v.size(); ++i) s += v[i] * mv[i];
    return s;
}

PsdVerdict exact_psd(const MomentMatrix& mm)
{
    const ScalarMatrix& m = mm.entries();
    const std::size_t n = m.rows();
    ScalarMatrix s = m;
    std::vector<std::vector<Scalar>> e(n, std::vector<Scalar>(n, Scalar(0)));
    for (std::size_t i = 0; i < n; ++i) e[i][i] = Scalar(1);
    std::vector<std::size_t> remaining(n);
    for (std::size_t i = 0; i < n; ++i) remaining[i] = i;

    auto verdict_for = [&](const std::vector<Scalar>& v) {
        PsdVerdict out;
        out.psd = false;
        out.witness = from_coefficients(mm.dimension(), mm.basis(), v);
        out.witness_value = quadratic_form(m, v);
        return out;
    };

    while (!remaining.empty()) {
        std::size_t best = 0;
        for (std::size_t t = 1; t < remaining.size(); ++t)
            if (s(remaining[best], remaining[best]) < s(remaining[t], remaining[t])) best = t;
        const std::size_t k = remaining[best];
        const Scalar pivot = s(k, k);
        if (pivot.sign() < 0) return verdict_for(e[k]);
        if (pivot.is_zero()) {
            for (std::size_t a = 0; a < remaining.size(); ++a)
                for (std::size_t b = a + 1; b < remaining.size(); ++b) {
                    const std::size_t i = remaining[a], j = remaining[b];
                    const Scalar off = s(i, j);
                    if (off.is_zero()) continue;
                    std::vector<Scalar> v(n);
                    const Scalar t = off.sign() > 0 ? Scalar(-1) : Scalar(1);
                    for (std::size_t c = 0; c < n; ++c) v[c] = e[i][c] + t * e[j][c];
                    return verdict_for(v);
                }
            break;
        }
        remaining.erase(remaining.begin() + static_cast<std::ptrdiff_t>(best));
        for (std::size_t i : remaining) {
            const Scalar f = s(i, k) / pivot;
            if (f.is_zero()) continue;
            for (std::size_t j : remaining) s(i, j) -= f * s(k, j);
            for (std::size_t c = 0; c < n; ++c) e[i][c] -= f * e[k][c];
        }
    }
    PsdVerdict out;
    out.psd = true;
    return out;
}

PsdVerdict float_psd(const MomentMatrix& mm, const TolerancePolicy& pol)
{
    const ScalarMatrix& m = mm.entries();
    const auto n = static_cast<Eigen::Index>(m.rows());
    Eigen::MatrixXd a(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j)
            a(i, j) = m(static_cast<std::size_t>(i), static_cast<std::size_t>(j)).to_double();
    PsdVerdict out;
    out.psd = true;
    if (n == 0) return out;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(a);
    const double lambda = solver.eigenvalues()(0);
    const double scale = max_abs(m);
    if (lambda >= -pol.rank * scale) return out;
    std::vector<Scalar> v;
    for (Eigen::Index i = 0; i < n; ++i) v.push_back(Scalar::real(solver.eigenvectors()(i, 0)));
    out.psd = false;
    out.witness = from_coefficients(mm.dimension(), mm.basis(), v);
    out.witness_value = quadratic_form(m, v);
    return out;
}

}  // namespace

PsdVerdict psd_check(const MomentMatrix& m, const TolerancePolicy& pol)
{
    if (is_exact(m.entries())) return exact_psd(m);
    return float_psd(m, pol);
}

KernelReport rank_kernel(const MomentMatrix& m, const TolerancePolicy& pol)
{
    Echelon e = row_echelon(m.entries(), pol.rank);
    KernelReport k;
    k.rank = e.rank();
    k.exact = e.exact;
    for (std::size_t c : e.pivot_columns) k.pivots.push_back(m.basis()[c]);
    for (std::size_t c : e.free_columns) k.free_monomials.push_back(m.basis()[c]);
    for (const auto& v : kernel_basis(e)) k.kernel.push_back(from_coefficients(m.dimension(), m.basis(), v));
    return k;
}

std::string format_relation(const Polynomial& p, const MultiIndex& free_monomial)
{
    Polynomial rhs = Polynomial::monomial(p.dimension(), free_monomial, p.coefficient(free_monomial)) - p;
    return monomial_name(free_monomial, true) + " = " + rhs.to_string(true);
}

bool annihilates(const MomentMatrix& m, const Polynomial& p, const TolerancePolicy& pol)
{
    CoefficientVector v = to_coefficients(p, m.order());
    std::vector<Scalar> mv = multiply(m.entries(), v.values);
    const bool exact = is_exact(m.entries()) && p.is_exact();
    for (std::size_t i = 0; i < mv.size(); ++i) {
        if (exact) {
            if (!mv[i].is_zero()) return false;
            continue;
        }
        double scale = 0;
        for (std::size_t j = 0; j < v.values.size(); ++j)
            scale += std::fabs(m.entries()(i, j).to_double()) * std::fabs(v.values[j].to_double());
        if (std::fabs(mv[i].to_double()) > pol.residual * (1.0 + scale)) return false;
    }
    return true;
}

RecursivenessVerdict recursiveness_check(const MomentMatrix& m, const KernelReport& k, const TolerancePolicy& pol)
{
    RecursivenessVerdict out;
    const int n = m.order();
    const int d = m.dimension();
    for (const Polynomial& p : k.kernel) {
        const int dp = p.degree().value();
        if (dp >= n) continue;
        for (const MultiIndex& mono : monomial_basis(d, n - dp)) {
            if (total_degree(mono) == 0) continue;
            Polynomial q = Polynomial::monomial(d, mono);
            Polynomial pq = q * p;
            if (annihilates(m, pq, pol)) continue;
            out.recursive = false;
            out.p = p;
            out.q = q;
            out.pq = pq;
            return out;
        }
    }
    return out;
}

FlatnessVerdict flatness_check(const MomentMatrix& m, const TolerancePolicy& pol)
{
    if (m.order() < 1) throw DegreeOverflow("flatness needs a moment matrix of order >= 1");
    FlatnessVerdict out;
    out.rank = rank(m.entries(), pol.rank);
    out.rank_previous = rank(m.compression(m.order() - 1).entries(), pol.rank);
    out.flat = out.rank == out.rank_previous;
    return out;
}

}  // namespace tmoment
