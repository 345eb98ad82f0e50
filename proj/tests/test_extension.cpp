#include <doctest.h>

#include "helpers.hpp"
#include "tmoment/extension.hpp"
#include "tmoment/io.hpp"
#include "tmoment/synth.hpp"

#include <algorithm>

using namespace tmoment;
using th::P;
using th::S;

namespace {

AtomicMeasure cubic_measure() { return read_measure(load_json(th::fixture("cubic_curve.measure.json"))); }

Derivation cubic_derivation() { return Derivation{{S("1/2"), S("1/8")}, {S("1"), S("3/4")}}; }

AtomicMeasure on_cubic(const std::vector<const char*>& xs)
{
    AtomicMeasure mu;
    for (const char* x : xs) {
        const Scalar t = S(x);
        mu.atoms.push_back({t, t * t * t});
        mu.densities.push_back(S("1"));
    }
    return mu;
}

}  // namespace

TEST_CASE("nine-atom chain: M(4) is determined but not flat, M(5) is flat")
{
    const Multisequence beta = th::moments("nine_atom.moments.json");
    const MomentMatrix m3 = build_moment_matrix(beta);
    const KernelReport k3 = rank_kernel(m3);
    CHECK(k3.rank == 8);
    const ExtensionReport e4 = propagate_recursive_extension(m3, k3);
    CHECK(e4.undetermined.empty());
    CHECK(e4.well_defined);
    CHECK(e4.hankel_ok);
    REQUIRE(e4.extended);
    REQUIRE(e4.rank_n1);
    CHECK(*e4.rank_n1 == 9);
    CHECK_FALSE(e4.flat);

    const MomentMatrix m4 = build_moment_matrix(*e4.extended);
    const ExtensionReport e5 = propagate_recursive_extension(m4, rank_kernel(m4));
    CHECK(e5.well_defined);
    CHECK(e5.hankel_ok);
    REQUIRE(e5.extended);
    CHECK(e5.flat);
    CHECK(flat_extension_check(m4, build_moment_matrix(*e5.extended)).flat);
    CHECK_FALSE(flat_extension_check(m3, m4).flat);

    const SearchReport s = extension_search(beta, 4);
    REQUIRE(s.status == SearchStatus::Flat);
    CHECK(s.steps.size() == 2);
    REQUIRE(s.solve);
    CHECK(s.solve->outcome == SolveOutcome::Measure);
    CHECK(s.solve->measure->atoms.size() == 9);
    REQUIRE(s.residual);
    CHECK(s.residual->max_relative < 1e-8);
    CHECK(s.exit_code() == 0);
}

TEST_CASE("four-atom data has a flat extension at the next order")
{
    const Multisequence beta = th::moments("circle_lines.moments.json");
    const SearchReport s = extension_search(beta, 3);
    REQUIRE(s.status == SearchStatus::Flat);
    CHECK(s.steps.size() == 1);
    CHECK(s.flat_sequence->degree() == 6);
    CHECK(s.residual->max_residual == 0.0);

    const SolveReport r = solve_extremal(beta);
    const MomentMatrix m2 = build_moment_matrix(beta);
    CHECK(flat_extension_check(m2, extend_via_measure(*r.measure, 3)).flat);
}

TEST_CASE("extension from a measure")
{
    const AtomicMeasure mu = cubic_measure();
    const MomentMatrix m3 = extend_via_measure(mu, 3), m4 = extend_via_measure(mu, 4);
    const FlatnessVerdict f = flat_extension_check(m3, m4);
    CHECK(f.flat);
    CHECK(f.rank == 8);
    CHECK(f.rank_previous == 8);

    AtomicMeasure one;
    one.atoms = {{S("2"), S("-3")}};
    one.densities = {S("5")};
    for (int m = 1; m <= 3; ++m) CHECK(rank_kernel(extend_via_measure(one, m)).rank == 1);

    const Multisequence beta = th::moments("nine_atom.moments.json");
    const SearchReport s = extension_search(beta, 4);
    REQUIRE(s.solve);
    CHECK(rank_kernel(extend_via_measure(*s.solve->measure, 4)).rank == 9);
}

TEST_CASE("flat_extension_check rejects a matrix that does not extend the first")
{
    const MomentMatrix a = extend_via_measure(cubic_measure(), 4);
    const MomentMatrix b = extend_via_measure(on_cubic({"-2", "-1", "0", "1", "2", "3", "1/2", "-1/2"}), 4);
    CHECK_THROWS_AS(flat_extension_check(a.compression(3), b), DimensionError);
}

TEST_CASE("single cubic relation leaves moments undetermined")
{
    const AtomicMeasure mu = on_cubic({"-2", "-1", "-1/2", "0", "1/3", "1/2", "1", "3/2", "2", "3"});
    const MomentMatrix m3 = extend_via_measure(mu, 3);
    const KernelReport k = rank_kernel(m3);
    REQUIRE(k.kernel.size() == 1);
    CHECK(k.kernel[0] == P({{{3, 0}, "1"}, {{0, 1}, "-1"}}));
    const ExtensionReport e = propagate_recursive_extension(m3, k);
    CHECK_FALSE(e.undetermined.empty());
    CHECK_FALSE(e.extended);
    CHECK(e.well_defined);
    // every determined moment agrees with the measure
    for (const auto& [i, v] : e.determined) CHECK(v == measure_moment(mu, i));
    // y^8 has no relation reaching it, while y^4x^4 does
    CHECK(std::find(e.undetermined.begin(), e.undetermined.end(), MultiIndex{0, 8}) != e.undetermined.end());
    CHECK(e.determined.count(MultiIndex{4, 4}) == 1);
    const SearchReport s = extension_search(m3.sequence(), 3);
    CHECK(s.status == SearchStatus::Undetermined);
    CHECK(s.exit_code() == 3);

    // no relations at all
    const Multisequence free_beta = beta_from_atoms(mu.atoms, mu.densities, 2, 4);
    const SearchReport f = extension_search(free_beta, 2);
    CHECK(f.status == SearchStatus::Undetermined);
}

TEST_CASE("tightness")
{
    const AtomicMeasure mu = cubic_measure();
    const MomentMatrix m3 = extend_via_measure(mu, 3), m4 = extend_via_measure(mu, 4);
    const KernelReport k3 = rank_kernel(m3);
    const TightnessVerdict t = tightness_check(m3, m4, k3, cubic_derivation());
    CHECK(t.status == TightnessStatus::NotTight);
    CHECK(t.dim_kernel == 7);
    CHECK(t.lower_bound < t.dim_kernel);
    REQUIRE(t.witness);
    const Polynomial h = P({{{2, 2}, "1"}, {{2, 1}, "-1"}, {{2, 0}, "-14"}, {{1, 2}, "1/2"}, {{1, 1}, "43/2"},
                            {{1, 0}, "6"}, {{0, 2}, "-17/2"}, {{0, 1}, "-11/2"}});
    CHECK(*t.witness == h);
    CHECK(cubic_derivation()(h) == S("-405/128"));
    CHECK(tightness_check(m3, m4, k3).status == TightnessStatus::Inconclusive);

    AtomicMeasure three;
    three.atoms = {{S("0"), S("0")}, {S("1"), S("2")}, {S("-1"), S("3")}};
    three.densities = {S("1"), S("2"), S("3")};
    const MomentMatrix a2 = extend_via_measure(three, 2), a3 = extend_via_measure(three, 3);
    const TightnessVerdict t3 = tightness_check(a2, a3, rank_kernel(a2));
    CHECK(t3.status == TightnessStatus::Tight);
    CHECK(t3.dim_kernel == 7);
    CHECK(t3.lower_bound == 7);

    const Multisequence circ = complex_to_real(circle_family_gamma(3, S("1/2")));
    const MomentMatrix c3 = build_moment_matrix(circ);
    const KernelReport kc = rank_kernel(c3);
    CHECK(kc.rank == 6);
    const ExtensionReport ec = propagate_recursive_extension(c3, kc);
    REQUIRE(ec.extended);
    CHECK(ec.flat);
    const TightnessVerdict tc = tightness_check(c3, build_moment_matrix(*ec.extended), kc);
    CHECK(tc.status == TightnessStatus::Tight);
    CHECK(tc.dim_kernel == 9);
    CHECK(tc.lower_bound == 9);
}
