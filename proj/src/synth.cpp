#include "tmoment/synth.hpp"

#include "tmoment/errors.hpp"

#include <cmath>
#include <stdexcept>

namespace tmoment {

Multisequence beta_from_atoms(const std::vector<Point>& atoms, const std::vector<Scalar>& densities, int d, int degree)
{
    AtomicMeasure mu{d, atoms, densities};
    mu.validate();
    std::vector<Scalar> values;
    for (const auto& i : monomial_basis(d, degree)) values.push_back(measure_moment(mu, i));
    return Multisequence(d, degree, std::move(values));
}

Multisequence beta_from_functional(const SignedFunctional& f, int degree)
{
    Multisequence atomic = beta_from_atoms(f.atoms, f.weights, f.d, degree);
    if (!f.derivation) return atomic;
    const FunctionalDerivation& fd = *f.derivation;
    if (f.d != 2) throw DimensionError("a derivation term needs d = 2");
    if (fd.d.point.size() != 2 || fd.d.direction.size() != 2)
        throw DimensionError("derivation point and direction must be planar");
    std::vector<Scalar> values = atomic.values();
    const auto& idx = atomic.indices();
    for (std::size_t t = 0; t < idx.size(); ++t)
        values[t] += fd.a0 * fd.d(Polynomial::monomial(2, idx[t]));
    return Multisequence(2, degree, std::move(values));
}

Complex ComplexMomentData::at(int i, int j) const
{
    auto it = gamma.find({i, j});
    return it == gamma.end() ? Complex{Scalar(0), Scalar(0)} : it->second;
}

ComplexMomentData circle_family_gamma(int n, const Scalar& a)
{
    if (n < 1) throw std::invalid_argument("circle_family_gamma needs n >= 1");
    if (a.sign() <= 0 || (Scalar(1) - a).sign() <= 0) throw std::invalid_argument("circle_family_gamma needs 0 < a < 1");
    ComplexMomentData g;
    g.n = n;
    for (int i = 0; i <= n; ++i) g.gamma[{i, i}] = {Scalar(1), Scalar(0)};
    g.gamma[{0, 2 * n - 1}] = g.gamma[{2 * n - 1, 0}] = {a, Scalar(0)};
    g.gamma[{0, 2 * n}] = g.gamma[{2 * n, 0}] = {Scalar(1) - a * a, Scalar(0)};
    return g;
}

namespace {

bool negligible(const Scalar& v, const TolerancePolicy& pol)
{
    return v.is_exact() ? v.is_zero() : std::fabs(v.to_double()) <= pol.residual;
}

mpq_class binomial(int n, int k)
{
    mpz_class r;
    mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return mpq_class(r);
}

}  // namespace

Multisequence complex_to_real(const ComplexMomentData& g, const TolerancePolicy& pol)
{
    const int top = 2 * g.n;
    for (const auto& [ij, v] : g.gamma) {
        if (ij.first < 0 || ij.second < 0 || ij.first + ij.second > top)
            throw std::invalid_argument("complex moment index out of range");
        const Complex c = g.at(ij.second, ij.first);
        if (!negligible(c.re - v.re, pol) || !negligible(c.im + v.im, pol))
            throw std::invalid_argument("complex moments are not conjugate-symmetric");
    }
    std::vector<Scalar> values;
    for (const MultiIndex& e : monomial_basis(2, top)) {
        const int k = e[0], j = e[1];
        Scalar re(0), im(0);
        for (int a = 0; a <= k; ++a)
            for (int b = 0; b <= j; ++b) {
                mpq_class c = binomial(k, a) * binomial(j, b);
                if ((j - b) % 2) c = -c;
                const Complex gv = g.at((k - a) + (j - b), a + b);
                re += Scalar(c) * gv.re;
                im += Scalar(c) * gv.im;
            }
        // times (-i)^j / 2^(k+j)
        Scalar r, i;
        switch (j % 4) {
        case 0: r = re; i = im; break;
        case 1: r = im; i = -re; break;
        case 2: r = -re; i = -im; break;
        default: r = -im; i = re; break;
        }
        mpq_class scale(1);
        mpz_class two_pow;
        mpz_ui_pow_ui(two_pow.get_mpz_t(), 2, static_cast<unsigned long>(k + j));
        scale /= two_pow;
        if (!negligible(i, pol)) throw std::invalid_argument("complex moments give a non-real value");
        values.push_back(Scalar(scale) * r);
    }
    return Multisequence(2, top, std::move(values));
}

}  // namespace tmoment
