#include <doctest.h>

#include "helpers.hpp"
#include "tmoment/consistency.hpp"
#include "tmoment/extension.hpp"
#include "tmoment/synth.hpp"

#include <algorithm>
#include <cmath>
#include <random>

using namespace tmoment;
using th::S;

namespace {

struct Instance {
    AtomicMeasure mu;
    Multisequence beta;
};

int order_for(std::size_t atoms) { return atoms <= 1 ? 1 : atoms <= 4 ? 2 : 3; }

Scalar random_rational(std::mt19937& rng, int lo, int hi, int max_den)
{
    std::uniform_int_distribution<int> num(lo * max_den, hi * max_den), den(1, max_den);
    return Scalar(mpq_class(num(rng), den(rng)));
}

Instance random_instance(std::mt19937& rng, std::size_t atoms)
{
    AtomicMeasure mu;
    while (mu.atoms.size() < atoms) {
        Point w{random_rational(rng, -4, 4, 2), random_rational(rng, -4, 4, 2)};
        if (std::find(mu.atoms.begin(), mu.atoms.end(), w) == mu.atoms.end()) mu.atoms.push_back(w);
    }
    std::uniform_int_distribution<int> num(1, 9), den(1, 4);
    for (std::size_t k = 0; k < atoms; ++k) mu.densities.emplace_back(mpq_class(num(rng), den(rng)));
    return {mu, beta_from_atoms(mu.atoms, mu.densities, 2, 2 * order_for(atoms))};
}

// Density of the atom of mu closest to w, or nullopt when none is within tol.
std::optional<Scalar> density_at(const AtomicMeasure& mu, const Point& w, double tol)
{
    for (std::size_t k = 0; k < mu.atoms.size(); ++k) {
        double dist = 0;
        for (std::size_t c = 0; c < w.size(); ++c)
            dist = std::max(dist, std::fabs(mu.atoms[k][c].to_double() - w[c].to_double()));
        if (dist <= tol) return mu.densities[k];
    }
    return std::nullopt;
}

bool same_measure(const AtomicMeasure& got, const AtomicMeasure& want, bool exact)
{
    if (got.atoms.size() != want.atoms.size()) return false;
    for (std::size_t k = 0; k < want.atoms.size(); ++k) {
        if (exact) {
            auto it = std::find(got.atoms.begin(), got.atoms.end(), want.atoms[k]);
            if (it == got.atoms.end()) return false;
            if (got.densities[static_cast<std::size_t>(it - got.atoms.begin())] != want.densities[k]) return false;
            continue;
        }
        auto rho = density_at(got, want.atoms[k], 1e-8);
        if (!rho) return false;
        const double a = rho->to_double(), b = want.densities[k].to_double();
        if (std::fabs(a - b) > 1e-9 * std::fabs(b)) return false;
    }
    return true;
}

std::vector<Instance> corpus()
{
    std::mt19937 rng(20240611);
    std::vector<Instance> out;
    for (int i = 0; i < 200; ++i) out.push_back(random_instance(rng, 1 + static_cast<std::size_t>(i % 6)));
    return out;
}

}  // namespace

TEST_CASE("measure round trip on random extremal instances")
{
    int computed = 0, supplied = 0, floats = 0;
    std::size_t index = 0;
    for (const Instance& in : corpus()) {
        ++index;
        CAPTURE(index);
        const SolveReport s = solve_extremal(in.beta, {}, in.mu.atoms);
        REQUIRE(s.outcome == SolveOutcome::Measure);
        CHECK(same_measure(*s.measure, in.mu, true));
        ++supplied;

        const SolveReport c = solve_extremal(in.beta);
        REQUIRE(c.variety);
        if (c.variety->kind == VarietyKind::Finite && c.variety->card() == in.mu.atoms.size()) {
            REQUIRE(c.outcome == SolveOutcome::Measure);
            CHECK(same_measure(*c.measure, in.mu, c.exact));
            ++computed;
        } else {
            // a degenerate configuration: the atoms still lie on the variety
            CHECK(c.outcome != SolveOutcome::Measure);
            CHECK(c.outcome != SolveOutcome::NotPSD);
        }

        if (index % 4 == 0) {
            const SolveReport f = solve_extremal(in.beta.as_float());
            if (f.outcome == SolveOutcome::Measure) {
                CHECK(same_measure(*f.measure, in.mu, false));
                CHECK(verify_measure(in.beta.as_float(), *f.measure).max_relative < 1e-9);
                ++floats;
            }
        }
    }
    CHECK(supplied == 200);
    CHECK(computed >= 180);
    CHECK(floats >= 40);
}

TEST_CASE("positive atomic data is psd, recursive and consistent")
{
    for (const Instance& in : corpus()) {
        const MomentMatrix m = build_moment_matrix(in.beta);
        const KernelReport k = rank_kernel(m);
        CHECK(psd_check(m).psd);
        CHECK(k.rank == std::min(in.mu.atoms.size(), m.size()));
        const VarietyReport v = validate_points(k.kernel, 2, in.mu.atoms);
        const ConsistencyVerdict c = consistency_check(in.beta, v);
        CHECK(c.status == ConsistencyStatus::Consistent);
        if (c.status == ConsistencyStatus::Consistent) CHECK(recursiveness_check(m, k).recursive);
        CHECK(injectivity_check(m, k, in.mu.atoms).status == InjectivityStatus::Injective);
    }
    // also on the fixture instances that admit a signed representation
    for (const char* name : {"circle_lines.moments.json", "cubic_curve.moments.json", "nine_atom.moments.json"}) {
        const Multisequence beta = th::moments(name);
        const MomentMatrix m = build_moment_matrix(beta);
        const KernelReport k = rank_kernel(m);
        const VarietyReport v = compute_variety(k.kernel, 2);
        if (consistency_check(beta, v).status == ConsistencyStatus::Consistent)
            CHECK(recursiveness_check(m, k).recursive);
    }
}

TEST_CASE("densities do not depend on the chosen basis")
{
    std::mt19937 rng(7);
    std::uniform_int_distribution<int> coef(-3, 3);
    int compared = 0;
    for (const Instance& in : corpus()) {
        const SolveReport s = solve_extremal(in.beta, {}, in.mu.atoms);
        REQUIRE(s.outcome == SolveOutcome::Measure);
        const int n = order_for(in.mu.atoms.size());
        const auto monomials = monomial_basis(2, n);
        std::vector<Polynomial> basis;
        for (const auto& b : s.basis) {
            Polynomial p(2);
            p.add_term(b, Scalar(1));
            for (const auto& e : monomials) p.add_term(e, Scalar(coef(rng)));
            basis.push_back(p);
        }
        const auto rho = solve_densities(in.beta, basis, s.measure->atoms);
        if (!rho) continue;
        ++compared;
        CHECK(*rho == s.measure->densities);
        const VandermondeReport vb = vandermonde_VB(basis, s.measure->atoms);
        CHECK(vb.invertible);
    }
    CHECK(compared >= 150);
}

TEST_CASE("propagated extensions have the Hankel property and agree with the measure")
{
    int full = 0;
    for (const Instance& in : corpus()) {
        const MomentMatrix m = build_moment_matrix(in.beta);
        const ExtensionReport e = propagate_recursive_extension(m, rank_kernel(m));
        CHECK(e.hankel_ok);
        CHECK(e.well_defined);
        for (const auto& [i, v] : e.determined) CHECK(v == measure_moment(in.mu, i));
        if (e.extended) {
            ++full;
            const MomentMatrix m1 = build_moment_matrix(*e.extended);
            for (std::size_t r = 0; r < m1.size(); ++r)
                for (std::size_t c = 0; c < m1.size(); ++c) {
                    MultiIndex sum{m1.basis()[r][0] + m1.basis()[c][0], m1.basis()[r][1] + m1.basis()[c][1]};
                    CHECK(m1.entries()(r, c) == (*e.extended)[sum]);
                }
            CHECK(e.flat == (rank_kernel(m1).rank == rank_kernel(m).rank));
        }
    }
    CHECK(full > 0);
}

TEST_CASE("perturbing one moment never yields a second measure for the original data")
{
    std::mt19937 rng(99);
    const auto all = corpus();
    for (std::size_t t = 0; t < 60; ++t) {
        const Instance& in = all[t];
        const auto& idx = in.beta.indices();
        std::uniform_int_distribution<std::size_t> pick(0, idx.size() - 1);
        const std::size_t j = pick(rng);
        Scalar delta = random_rational(rng, -2, 2, 5);
        if (delta.is_zero()) delta = S("1/7");
        std::vector<Scalar> vals = in.beta.values();
        vals[j] += delta;
        const Multisequence moved(2, in.beta.degree(), vals);
        const SolveReport s = solve_extremal(moved);
        if (s.outcome != SolveOutcome::Measure) continue;
        // any measure found represents the perturbed data, not the original
        CHECK(verify_measure(moved, *s.measure).max_residual == 0.0);
        CHECK(verify_measure(in.beta, *s.measure).max_residual > 0.0);
    }
}

TEST_CASE("functional moments are linear")
{
    std::mt19937 rng(3);
    for (int t = 0; t < 30; ++t) {
        SignedFunctional f, g, sum;
        Point w{random_rational(rng, -2, 2, 3), random_rational(rng, -2, 2, 3)};
        Derivation d{w, {random_rational(rng, -2, 2, 3), random_rational(rng, -2, 2, 3)}};
        for (int k = 0; k < 3; ++k) {
            Point a{random_rational(rng, -3, 3, 2), random_rational(rng, -3, 3, 2)};
            const Scalar u = random_rational(rng, -3, 3, 4), v = random_rational(rng, -3, 3, 4);
            f.atoms.push_back(a);
            g.atoms.push_back(a);
            sum.atoms.push_back(a);
            f.weights.push_back(u);
            g.weights.push_back(v);
            sum.weights.push_back(u + v);
        }
        const Scalar a0 = random_rational(rng, -2, 2, 3), b0 = random_rational(rng, -2, 2, 3);
        f.derivation = FunctionalDerivation{a0, d};
        g.derivation = FunctionalDerivation{b0, d};
        sum.derivation = FunctionalDerivation{a0 + b0, d};
        const Multisequence bf = beta_from_functional(f, 4), bg = beta_from_functional(g, 4),
                            bs = beta_from_functional(sum, 4);
        for (const auto& i : bs.indices()) CHECK(bs[i] == bf[i] + bg[i]);
    }
}

TEST_CASE("moment matrices of a measure become flat once the rank reaches the atom count")
{
    std::mt19937 rng(11);
    for (int t = 0; t < 20; ++t) {
        const Instance in = random_instance(rng, 1 + static_cast<std::size_t>(t % 5));
        int m = 1;
        while (rank_kernel(extend_via_measure(in.mu, m)).rank < in.mu.atoms.size()) ++m;
        CHECK(flat_extension_check(extend_via_measure(in.mu, m), extend_via_measure(in.mu, m + 1)).flat);
        for (int k = 1; k < m + 2; ++k)
            CHECK(hilbert_function(in.mu.atoms, 2, k) <= hilbert_function(in.mu.atoms, 2, k + 1));
        CHECK(hilbert_function(in.mu.atoms, 2, m + 2) == in.mu.atoms.size());
    }
}

TEST_CASE("tightness verdicts are mutually exclusive")
{
    std::mt19937 rng(5);
    for (int t = 0; t < 20; ++t) {
        const Instance in = random_instance(rng, 3 + static_cast<std::size_t>(t % 3));
        const int n = order_for(in.mu.atoms.size());
        const MomentMatrix mn = extend_via_measure(in.mu, n), mn1 = extend_via_measure(in.mu, n + 1);
        const KernelReport k = rank_kernel(mn);
        const Derivation d{in.mu.atoms[0], {Scalar(1), random_rational(rng, -2, 2, 3)}};
        const TightnessVerdict with = tightness_check(mn, mn1, k, d);
        const TightnessVerdict without = tightness_check(mn, mn1, k);
        if (with.status == TightnessStatus::NotTight) CHECK(without.status != TightnessStatus::Tight);
        if (without.status == TightnessStatus::Tight) CHECK(with.status == TightnessStatus::Tight);
        CHECK(with.lower_bound <= with.dim_kernel);
    }
}
