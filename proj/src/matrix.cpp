#include "tmoment/matrix.hpp"

#include <algorithm>
#include <cmath>

namespace tmoment {

bool is_exact(const ScalarMatrix& a)
{
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            if (!a(i, j).is_exact()) return false;
    return true;
}

ScalarMatrix operator*(const ScalarMatrix& a, const ScalarMatrix& b)
{
    if (a.cols() != b.rows()) throw std::invalid_argument("matrix product: shape mismatch");
    ScalarMatrix c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            if (a(i, k).is_zero()) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += a(i, k) * b(k, j);
        }
    return c;
}

std::vector<Scalar> multiply(const ScalarMatrix& a, std::span<const Scalar> v)
{
    if (a.cols() != v.size()) throw std::invalid_argument("matrix-vector product: shape mismatch");
    std::vector<Scalar> r(a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            if (!v[j].is_zero()) r[i] += a(i, j) * v[j];
    return r;
}

ScalarMatrix leading_block(const ScalarMatrix& a, std::size_t k)
{
    if (k > a.rows() || k > a.cols()) throw std::invalid_argument("leading_block: size too large");
    ScalarMatrix s(k, k);
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) s(i, j) = a(i, j);
    return s;
}

double max_abs(const ScalarMatrix& a)
{
    double m = 0;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) m = std::max(m, std::fabs(a(i, j).to_double()));
    return m;
}

namespace {

using LMatrix = Matrix<long double>;

LMatrix to_long_double(const ScalarMatrix& a)
{
    LMatrix m(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) m(i, j) = a(i, j).to_double();
    return m;
}

struct FloatEchelon {
    LMatrix reduced;
    std::vector<std::size_t> pivots;
    std::vector<std::size_t> free;
};

FloatEchelon float_echelon(LMatrix m, double tol)
{
    FloatEchelon out;
    std::vector<long double> scale(m.cols(), 0.0L);
    for (std::size_t j = 0; j < m.cols(); ++j)
        for (std::size_t i = 0; i < m.rows(); ++i) scale[j] = std::max(scale[j], std::fabs(m(i, j)));
    std::size_t r = 0;
    for (std::size_t c = 0; c < m.cols(); ++c) {
        std::size_t best = r;
        long double best_abs = 0;
        for (std::size_t i = r; i < m.rows(); ++i)
            if (std::fabs(m(i, c)) > best_abs) {
                best_abs = std::fabs(m(i, c));
                best = i;
            }
        if (r >= m.rows() || scale[c] == 0 || best_abs <= tol * scale[c]) {
            out.free.push_back(c);
            for (std::size_t i = r; i < m.rows(); ++i) m(i, c) = 0;
            continue;
        }
        m.swap_rows(r, best);
        for (std::size_t i = r + 1; i < m.rows(); ++i) {
            long double f = m(i, c) / m(r, c);
            m(i, c) = 0;
            if (f == 0) continue;
            for (std::size_t j = c + 1; j < m.cols(); ++j) m(i, j) -= f * m(r, j);
        }
        out.pivots.push_back(c);
        ++r;
    }
    out.reduced = std::move(m);
    return out;
}

}  // namespace

Echelon row_echelon(const ScalarMatrix& a, double rank_tol)
{
    Echelon out;
    out.exact = is_exact(a);
    if (!out.exact) {
        FloatEchelon f = float_echelon(to_long_double(a), rank_tol);
        out.reduced = ScalarMatrix(a.rows(), a.cols());
        for (std::size_t i = 0; i < a.rows(); ++i)
            for (std::size_t j = 0; j < a.cols(); ++j)
                out.reduced(i, j) = Scalar::real(static_cast<double>(f.reduced(i, j)));
        out.pivot_columns = std::move(f.pivots);
        out.free_columns = std::move(f.free);
        return out;
    }
    ScalarMatrix m = a;
    Scalar previous(1);
    std::size_t r = 0;
    for (std::size_t c = 0; c < m.cols(); ++c) {
        std::size_t p = r;
        while (p < m.rows() && m(p, c).is_zero()) ++p;
        if (p >= m.rows()) {
            out.free_columns.push_back(c);
            continue;
        }
        m.swap_rows(r, p);
        const Scalar pivot = m(r, c);
        for (std::size_t i = r + 1; i < m.rows(); ++i) {
            const Scalar lead = m(i, c);
            for (std::size_t j = c + 1; j < m.cols(); ++j)
                m(i, j) = (pivot * m(i, j) - lead * m(r, j)) / previous;
            m(i, c) = Scalar(0);
        }
        // Entries of skipped columns in rows below r stay zero.
        previous = pivot;
        out.pivot_columns.push_back(c);
        ++r;
    }
    out.reduced = std::move(m);
    return out;
}

std::vector<std::vector<Scalar>> kernel_basis(const Echelon& e)
{
    const ScalarMatrix& u = e.reduced;
    std::vector<std::vector<Scalar>> basis;
    const Scalar zero = e.exact ? Scalar(0) : Scalar::real(0.0);
    for (std::size_t f : e.free_columns) {
        std::vector<Scalar> x(u.cols(), zero);
        x[f] = e.exact ? Scalar(1) : Scalar::real(1.0);
        for (std::size_t k = e.pivot_columns.size(); k-- > 0;) {
            const std::size_t pc = e.pivot_columns[k];
            Scalar s = zero;
            for (std::size_t j = pc + 1; j < u.cols(); ++j)
                if (!x[j].is_zero() && !u(k, j).is_zero()) s += u(k, j) * x[j];
            x[pc] = -s / u(k, pc);
        }
        basis.push_back(std::move(x));
    }
    return basis;
}

std::size_t rank(const ScalarMatrix& a, double rank_tol) { return row_echelon(a, rank_tol).rank(); }

Scalar determinant(const ScalarMatrix& a)
{
    if (a.rows() != a.cols()) throw std::invalid_argument("determinant: square matrix required");
    const std::size_t n = a.rows();
    if (n == 0) return Scalar(1);
    if (!is_exact(a)) {
        LMatrix m = to_long_double(a);
        long double det = 1;
        for (std::size_t c = 0; c < n; ++c) {
            std::size_t best = c;
            for (std::size_t i = c + 1; i < n; ++i)
                if (std::fabs(m(i, c)) > std::fabs(m(best, c))) best = i;
            if (m(best, c) == 0) return Scalar::real(0.0);
            if (best != c) {
                m.swap_rows(best, c);
                det = -det;
            }
            det *= m(c, c);
            for (std::size_t i = c + 1; i < n; ++i) {
                long double f = m(i, c) / m(c, c);
                for (std::size_t j = c + 1; j < n; ++j) m(i, j) -= f * m(c, j);
            }
        }
        return Scalar::real(static_cast<double>(det));
    }
    ScalarMatrix m = a;
    Scalar previous(1);
    int sign = 1;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && m(p, c).is_zero()) ++p;
        if (p == n) return Scalar(0);
        if (p != c) {
            m.swap_rows(p, c);
            sign = -sign;
        }
        for (std::size_t i = c + 1; i < n; ++i) {
            for (std::size_t j = c + 1; j < n; ++j) m(i, j) = (m(c, c) * m(i, j) - m(i, c) * m(c, j)) / previous;
            m(i, c) = Scalar(0);
        }
        previous = m(c, c);
    }
    return sign > 0 ? m(n - 1, n - 1) : -m(n - 1, n - 1);
}

std::optional<std::vector<Scalar>> solve_square(const ScalarMatrix& a, std::span<const Scalar> b,
                                                double rank_tol)
{
    const std::size_t n = a.rows();
    if (a.cols() != n || b.size() != n) throw std::invalid_argument("solve_square: shape mismatch");
    bool exact = is_exact(a);
    for (const Scalar& v : b) exact = exact && v.is_exact();
    ScalarMatrix m(n, n + 1);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) m(i, j) = exact ? a(i, j) : a(i, j).as_float();
        m(i, n) = exact ? b[i] : b[i].as_float();
    }
    if (!exact) {
        LMatrix l = to_long_double(m);
        std::vector<long double> scale(n, 0.0L);
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t i = 0; i < n; ++i) scale[j] = std::max(scale[j], std::fabs(l(i, j)));
        for (std::size_t c = 0; c < n; ++c) {
            std::size_t best = c;
            for (std::size_t i = c + 1; i < n; ++i)
                if (std::fabs(l(i, c)) > std::fabs(l(best, c))) best = i;
            if (scale[c] == 0 || std::fabs(l(best, c)) <= rank_tol * scale[c]) return std::nullopt;
            l.swap_rows(best, c);
            for (std::size_t i = c + 1; i < n; ++i) {
                long double f = l(i, c) / l(c, c);
                for (std::size_t j = c; j <= n; ++j) l(i, j) -= f * l(c, j);
            }
        }
        std::vector<long double> x(n);
        for (std::size_t k = n; k-- > 0;) {
            long double s = l(k, n);
            for (std::size_t j = k + 1; j < n; ++j) s -= l(k, j) * x[j];
            x[k] = s / l(k, k);
        }
        std::vector<Scalar> out;
        for (long double v : x) out.push_back(Scalar::real(static_cast<double>(v)));
        return out;
    }
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && m(p, c).is_zero()) ++p;
        if (p == n) return std::nullopt;
        m.swap_rows(p, c);
        const Scalar inv = Scalar(1) / m(c, c);
        for (std::size_t j = c; j <= n; ++j) m(c, j) *= inv;
        for (std::size_t i = 0; i < n; ++i) {
            if (i == c || m(i, c).is_zero()) continue;
            const Scalar f = m(i, c);
            for (std::size_t j = c; j <= n; ++j) m(i, j) -= f * m(c, j);
        }
    }
    std::vector<Scalar> out;
    for (std::size_t i = 0; i < n; ++i) out.push_back(m(i, n));
    return out;
}

}  // namespace tmoment
