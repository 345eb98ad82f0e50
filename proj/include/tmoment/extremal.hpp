#pragma once

#include "tmoment/moments.hpp"
#include "tmoment/variety.hpp"

#include <optional>
#include <string>
#include <vector>

namespace tmoment {

struct AtomicMeasure {
    int d = 2;
    std::vector<Point> atoms;
    std::vector<Scalar> densities;

    // Throws DimensionError on mismatched lengths or point sizes.
    void validate() const;
    bool is_exact() const;
};

enum class SolveOutcome { Measure, NotPSD, Inconsistent, NotExtremal, SingularVB, NonPositiveDensity, Unknown };

std::string to_string(SolveOutcome o);

struct SolveReport {
    SolveOutcome outcome = SolveOutcome::Unknown;
    std::optional<AtomicMeasure> measure;
    std::optional<Polynomial> witness;  // NotPSD: Lambda(w^2) < 0; Inconsistent: w|V = 0, Lambda(w) != 0
    Scalar witness_value;
    std::string reason;

    std::size_t rank = 0;
    std::optional<std::size_t> variety_card;  // empty when V is infinite or unknown
    std::vector<MultiIndex> basis;
    std::optional<double> residual;           // max interpolation residual over all moments
    bool exact = true;

    std::optional<KernelReport> kernel;
    std::optional<VarietyReport> variety;

    int exit_code() const;
};

// Unique rank M(n)-atomic measure of an extremal sequence, or the first
// failing stage.  Supplied points replace the computed variety.
SolveReport solve_extremal(const Multisequence& beta, const TolerancePolicy& pol = {},
                           const std::optional<std::vector<Point>>& points = std::nullopt);

// rho = V_B^{-1} (Lambda(b_1), ..., Lambda(b_r)); nullopt when V_B is singular.
// Float data is solved exactly from its binary values and rounded at the end.
std::optional<std::vector<Scalar>> solve_densities(const Multisequence& beta, const std::vector<Polynomial>& basis,
                                                   const std::vector<Point>& V, const TolerancePolicy& pol = {});

struct MeasureResidual {
    double max_residual = 0;
    double max_relative = 0;  // |r_i| / (|beta_i| + sum |rho_k w_k^i|)
    MultiIndex worst;
    bool exact = true;        // inputs were exact, so the residual is exact
};

// max over |i| <= degree(beta) of |beta_i - sum rho_k w_k^i|.  Float inputs
// are summed exactly from their binary values, so no rounding error is added.
MeasureResidual verify_measure(const Multisequence& beta, const AtomicMeasure& mu, const TolerancePolicy& pol = {});

// Moment sum_k rho_k w_k^i.
Scalar measure_moment(const AtomicMeasure& mu, const MultiIndex& i);

}  // namespace tmoment
