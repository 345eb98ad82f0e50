#pragma once

#include "tmoment/moments.hpp"

#include <optional>
#include <string>
#include <vector>

namespace tmoment {

enum class VarietyKind { Finite, Infinite, Unknown };

std::string to_string(VarietyKind k);

struct VarietyReport {
    VarietyKind kind = VarietyKind::Unknown;
    int dimension = 2;
    std::vector<Point> points;          // Finite: distinct real common zeros
    std::optional<Polynomial> witness;  // Infinite: common factor of all relations
    std::string reason;
    std::vector<std::string> notes;
    std::vector<Polynomial> relations;  // the polynomials V was computed from

    std::size_t card() const { return points.size(); }
    bool exact() const;
};

// Real common zeros of the kernel polynomials.  Supported for d = 1 and d = 2;
// larger d throws Unsupported (supply the points instead).
VarietyReport compute_variety(const std::vector<Polynomial>& kernel, int d, const TolerancePolicy& pol = {});

// Accepts user-supplied points after checking each one against every relation.
VarietyReport validate_points(const std::vector<Polynomial>& kernel, int d, std::vector<Point> points,
                              const TolerancePolicy& pol = {});

// p(w) == 0 exactly, or |p(w)| <= pol.residual * (1 + sum |a_i w^i|).
bool vanishes_at(const Polynomial& p, const Point& w, const TolerancePolicy& pol);

// Newton steps in 320-bit arithmetic on the best-conditioned pair of rational
// relations, returned as exact rationals.  Falls back to the binary value of w.
Point refine_point(const Point& w, const std::vector<Polynomial>& relations);

// Rows are points, columns the monomials of degree <= k.
struct EvalMatrix {
    ScalarMatrix values;
    std::vector<MultiIndex> columns;
};

EvalMatrix build_W(const std::vector<Point>& V, int d, int k);
std::size_t hilbert_function(const std::vector<Point>& V, int d, int k, const TolerancePolicy& pol = {});

enum class InjectivityStatus { Injective, NotInjective };

struct InjectivityVerdict {
    InjectivityStatus status = InjectivityStatus::Injective;
    std::size_t rank_moment = 0;
    std::size_t rank_evaluation = 0;
    std::optional<Polynomial> witness;  // vanishes on V but p(X) != 0 in the column space
};

InjectivityVerdict injectivity_check(const MomentMatrix& m, const KernelReport& k, const std::vector<Point>& V,
                                     const TolerancePolicy& pol = {});

// V_B with entries p_i(w_j): rows are basis polynomials, columns points.
struct VandermondeReport {
    ScalarMatrix matrix;
    bool invertible = false;
    Scalar determinant;
};

VandermondeReport vandermonde_VB(const std::vector<Polynomial>& basis, const std::vector<Point>& V,
                                 const TolerancePolicy& pol = {});

std::string format_point(const Point& w);

}  // namespace tmoment
