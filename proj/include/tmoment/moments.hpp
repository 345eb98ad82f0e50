#pragma once

#include "tmoment/matrix.hpp"
#include "tmoment/polynomial.hpp"

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace tmoment {

// Thresholds for every float-mode zero decision.  Exact inputs never consult
// them.
struct TolerancePolicy {
    double rank = 1e-10;      // relative pivot threshold
    double residual = 1e-7;   // relative residual for polynomial and moment checks
    double root = 1e-12;      // target width of isolated roots
    double merge = 1e-8;      // distance under which float points coincide
    void validate() const;
};

// Truncated multisequence beta_i, |i| <= degree, stored in degree-lex order.
class Multisequence {
public:
    Multisequence(int d, int degree, std::vector<Scalar> values);

    int dimension() const { return d_; }
    int degree() const { return degree_; }
    const std::vector<MultiIndex>& indices() const { return indices_; }
    const std::vector<Scalar>& values() const { return values_; }
    const Scalar& operator[](const MultiIndex& i) const;
    bool is_exact() const;

    Multisequence truncated(int degree) const;
    Multisequence as_float() const;

private:
    int d_;
    int degree_;
    std::vector<MultiIndex> indices_;
    std::vector<Scalar> values_;
};

bool operator==(const Multisequence& a, const Multisequence& b);

// Riesz functional: Lambda(sum a_i x^i) = sum a_i beta_i.
Scalar riesz(const Multisequence& beta, const Polynomial& p);
// sum_i |a_i| |beta_i|, the scale used when Lambda(p) is tested for zero.
double riesz_scale(const Multisequence& beta, const Polynomial& p);

class MomentMatrix {
public:
    MomentMatrix(std::shared_ptr<const Multisequence> beta, int n);

    const Multisequence& sequence() const { return *beta_; }
    std::shared_ptr<const Multisequence> sequence_ptr() const { return beta_; }
    int order() const { return n_; }
    int dimension() const { return beta_->dimension(); }
    const std::vector<MultiIndex>& basis() const { return basis_; }
    const ScalarMatrix& entries() const { return entries_; }
    std::size_t size() const { return basis_.size(); }
    bool is_exact() const { return beta_->is_exact(); }

    // M(m) for m <= n, the leading principal block.
    MomentMatrix compression(int m) const;
    // M * coefficient vector of p (p must have degree <= n).
    std::vector<Scalar> apply(const Polynomial& p) const;

private:
    std::shared_ptr<const Multisequence> beta_;
    int n_;
    std::vector<MultiIndex> basis_;
    ScalarMatrix entries_;
};

// Full moment matrix M(n), n = degree / 2; the degree must be even.
MomentMatrix build_moment_matrix(const Multisequence& beta);
MomentMatrix build_moment_matrix(const Multisequence& beta, int n);

struct PsdVerdict {
    bool psd = false;
    std::optional<Polynomial> witness;  // Lambda(witness^2) < 0
    Scalar witness_value;
};

PsdVerdict psd_check(const MomentMatrix& m, const TolerancePolicy& pol = {});

struct KernelReport {
    std::size_t rank = 0;
    std::vector<Polynomial> kernel;         // one per free column, unit coefficient there
    std::vector<MultiIndex> pivots;         // column basis B, degree-lex
    std::vector<MultiIndex> free_monomials; // leading monomial of each kernel element
    bool exact = true;
};

KernelReport rank_kernel(const MomentMatrix& m, const TolerancePolicy& pol = {});

// "Y^2 = 2 - 4X - X^2" for a kernel element with free monomial y^2.
std::string format_relation(const Polynomial& p, const MultiIndex& free_monomial);

// Zero test for M * p-hat: exact, or within pol.residual of the entry scale.
bool annihilates(const MomentMatrix& m, const Polynomial& p, const TolerancePolicy& pol);

struct RecursivenessVerdict {
    bool recursive = true;
    std::optional<Polynomial> p, q, pq;
};

RecursivenessVerdict recursiveness_check(const MomentMatrix& m, const KernelReport& k,
                                         const TolerancePolicy& pol = {});

struct FlatnessVerdict {
    bool flat = false;
    std::size_t rank = 0;
    std::size_t rank_previous = 0;
};

FlatnessVerdict flatness_check(const MomentMatrix& m, const TolerancePolicy& pol = {});

}  // namespace tmoment
