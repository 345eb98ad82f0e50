#pragma once

#include "tmoment/moments.hpp"
#include "tmoment/variety.hpp"

#include <optional>
#include <string>
#include <vector>

namespace tmoment {

enum class ConsistencyStatus { Consistent, Inconsistent, Unknown };

std::string to_string(ConsistencyStatus s);

struct ConsistencyVerdict {
    ConsistencyStatus status = ConsistencyStatus::Unknown;
    std::optional<Polynomial> witness;  // vanishes on V with Lambda(witness) != 0
    Scalar witness_value;
    std::vector<Polynomial> checked;    // basis of polynomials of degree <= 2n vanishing on V
    std::string reason;
};

// Lambda(p) == 0 for every p of degree <= degree(beta) that vanishes on V.
ConsistencyVerdict consistency_check(const Multisequence& beta, const VarietyReport& V,
                                     const TolerancePolicy& pol = {});

struct SignedRepresentation {
    std::vector<Point> atoms;
    std::vector<Scalar> weights;
};

// Weights alpha with Lambda(p) = sum alpha_i p(w_i) for deg p <= degree(beta).
// Throws RepresentationError when no such weights exist.
SignedRepresentation signed_representation(const Multisequence& beta, const std::vector<Point>& V,
                                           const TolerancePolicy& pol = {});

// The basis {1, x, y, x^2, yx, y^2, yx^2, y^2x} used by the cubic-curve tests.
std::vector<Polynomial> cubic_curve_basis();

// target - sum alpha_i b_i where the combination interpolates target on V.
Polynomial interpolation_remainder(const std::vector<Point>& V, const std::vector<Polynomial>& basis,
                                   const Polynomial& target, const TolerancePolicy& pol = {});

// The degree-4 polynomial y^2x^2 - sum alpha_i b_i vanishing on the eight
// points of V.
Polynomial compute_h(const std::vector<Point>& V, const TolerancePolicy& pol = {});

// The analogous polynomial built from the moments alone, using the
// relation Y = X^3 to supply the two degree-7 moments.
Polynomial compute_k_from_extension(const Multisequence& beta, const TolerancePolicy& pol = {});

enum class ReducedStatus { MeasureExists, NoMeasure, NotApplicable };

std::string to_string(ReducedStatus s);

struct ReducedTestVerdict {
    ReducedStatus status = ReducedStatus::NotApplicable;
    std::optional<Polynomial> h;
    Scalar lambda_h;
    std::optional<Polynomial> k;
    bool k_matches_h = false;
    std::string reason;
};

// For degree-6 data with M(2) > 0, rank M(3) = 8, Y = X^3 in the kernel and
// an eight-point variety: a measure exists iff Lambda(h) = 0.
ReducedTestVerdict reduced_consistency_test(const Multisequence& beta, const TolerancePolicy& pol = {});

struct CertificateVerdict {
    bool certified = false;
    std::vector<std::string> failures;
};

// Sufficient condition for consistency from two relations r1, r2: their
// leading forms share no real zero except the origin, card V equals
// deg r1 * deg r2, and the Jacobian has rank 2 at every point of V.
CertificateVerdict simple_zero_certificate(const Polynomial& r1, const Polynomial& r2, const std::vector<Point>& V,
                                           const TolerancePolicy& pol = {});

// Lambda(p) is zero exactly, or within pol.residual * (1 + sum |a_i beta_i|).
bool functional_vanishes(const Multisequence& beta, const Polynomial& p, const TolerancePolicy& pol);

}  // namespace tmoment
