#pragma once

#include "tmoment/extension.hpp"
#include "tmoment/moments.hpp"

#include <map>
#include <optional>
#include <utility>
#include <vector>

namespace tmoment {

// beta_i = sum_k rho_k w_k^i for |i| <= degree.  Densities may have any sign.
Multisequence beta_from_atoms(const std::vector<Point>& atoms, const std::vector<Scalar>& densities, int d,
                              int degree);

struct FunctionalDerivation {
    Scalar a0;
    Derivation d;
};

// L(p) = a0 D(p) + sum_i weight_i p(atom_i).
struct SignedFunctional {
    int d = 2;
    std::vector<Point> atoms;
    std::vector<Scalar> weights;
    std::optional<FunctionalDerivation> derivation;
};

Multisequence beta_from_functional(const SignedFunctional& f, int degree);

// Exact complex number with real and imaginary parts in the scalar field.
struct Complex {
    Scalar re, im;
};

// gamma_{ij} = integral of zbar^i z^j, i + j <= 2n.
struct ComplexMomentData {
    int n = 0;
    std::map<std::pair<int, int>, Complex> gamma;

    Complex at(int i, int j) const;
};

// gamma_ii = 1 (i <= n), gamma_{0,2n-1} = gamma_{2n-1,0} = a,
// gamma_{0,2n} = gamma_{2n,0} = 1 - a^2, every other entry zero.  0 < a < 1.
ComplexMomentData circle_family_gamma(int n, const Scalar& a);

// Real planar moments beta_{kj} = Lambda_gamma(((z + zbar)/2)^k ((z - zbar)/2i)^j).
// Throws std::invalid_argument when gamma is not conjugate-symmetric.
Multisequence complex_to_real(const ComplexMomentData& gamma, const TolerancePolicy& pol = {});

}  // namespace tmoment
