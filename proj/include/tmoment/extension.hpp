#pragma once

#include "tmoment/extremal.hpp"
#include "tmoment/moments.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace tmoment {

// D(p) = sum_k direction[k] * dp/dx_k (point).
struct Derivation {
    Point point;
    std::vector<Scalar> direction;

    Scalar operator()(const Polynomial& p) const;
};

// M(m) of the moments of mu up to degree 2m.
MomentMatrix extend_via_measure(const AtomicMeasure& mu, int m);

struct ExtensionReport {
    int order = 0;                                          // n of the input M(n)
    std::map<MultiIndex, Scalar, DegLexLess> determined;    // new moments of degree 2n+1, 2n+2
    std::vector<MultiIndex> undetermined;
    std::vector<MultiIndex> conflicts;                      // moments with disagreeing derivations
    bool well_defined = true;
    std::optional<Multisequence> extended;                  // present when every new moment is determined
    bool hankel_ok = true;
    bool flat = false;
    std::size_t rank_n = 0;
    std::optional<std::size_t> rank_n1;
};

// Fills in M(n+1) from the relations p(X) = 0 of M(n), multiplied by
// monomials up to degree n+1.  Every equation touching a determined moment is
// rechecked, so well_defined means all derivation paths agree.
ExtensionReport propagate_recursive_extension(const MomentMatrix& mn, const KernelReport& k,
                                              const TolerancePolicy& pol = {});

// Throws DimensionError when the leading block of mn1 differs from mn.
FlatnessVerdict flat_extension_check(const MomentMatrix& mn, const MomentMatrix& mn1, const TolerancePolicy& pol = {});

enum class TightnessStatus { Tight, NotTight, Inconclusive };

std::string to_string(TightnessStatus s);

struct TightnessVerdict {
    TightnessStatus status = TightnessStatus::Inconclusive;
    std::size_t dim_kernel = 0;   // dim N_{n+1}
    std::size_t lower_bound = 0;  // dim span{m p : p in ker M(n), deg(m p) <= n+1}
    std::optional<Polynomial> witness;
    std::optional<Derivation> derivation;
    std::string reason;
};

TightnessVerdict tightness_check(const MomentMatrix& mn, const MomentMatrix& mn1, const KernelReport& k,
                                 const std::optional<Derivation>& witness = std::nullopt,
                                 const TolerancePolicy& pol = {});

enum class SearchStatus { Flat, IllDefined, Undetermined, NotPSD, NotRecursive, Exhausted };

std::string to_string(SearchStatus s);

struct SearchReport {
    SearchStatus status = SearchStatus::Exhausted;
    std::vector<ExtensionReport> steps;
    std::optional<Multisequence> flat_sequence;   // the flat M(n+j) moments
    std::optional<SolveReport> solve;             // solver run on the flat extension
    std::optional<MeasureResidual> residual;      // its measure against the input moments
    std::string reason;

    int exit_code() const;
};

SearchReport extension_search(const Multisequence& beta, int max_steps, const TolerancePolicy& pol = {});

}  // namespace tmoment
