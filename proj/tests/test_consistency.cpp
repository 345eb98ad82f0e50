#include <doctest.h>

#include "helpers.hpp"
#include "tmoment/consistency.hpp"

using namespace tmoment;
using th::P;
using th::S;

namespace {

VarietyReport variety_of(const Multisequence& beta)
{
    return compute_variety(rank_kernel(build_moment_matrix(beta)).kernel, beta.dimension());
}

Polynomial printed_h()
{
    return P({{{2, 2}, "1"}, {{2, 1}, "-1"}, {{2, 0}, "-14"}, {{1, 2}, "1/2"}, {{1, 1}, "43/2"},
              {{1, 0}, "6"}, {{0, 2}, "-17/2"}, {{0, 1}, "-11/2"}});
}

}  // namespace

TEST_CASE("four-point data is consistent with the expected ideal basis")
{
    const Multisequence beta = th::moments("circle_lines.moments.json");
    const ConsistencyVerdict c = consistency_check(beta, variety_of(beta));
    CHECK(c.status == ConsistencyStatus::Consistent);
    const std::vector<Polynomial> f{
        P({{{0, 1}, "1/2"}, {{1, 1}, "1"}}),
        P({{{0, 0}, "-2"}, {{1, 0}, "4"}, {{2, 0}, "1"}, {{0, 2}, "1"}}),
        P({{{0, 0}, "-1"}, {{2, 0}, "9/2"}, {{3, 0}, "1"}}),
        P({{{0, 1}, "-1/4"}, {{2, 1}, "1"}}),
        P({{{0, 0}, "1"}, {{1, 0}, "-2"}, {{2, 0}, "-1/2"}, {{1, 2}, "1"}}),
        P({{{0, 1}, "-15/4"}, {{0, 3}, "1"}}),
        P({{{0, 0}, "9/2"}, {{1, 0}, "-1"}, {{2, 0}, "-81/4"}, {{4, 0}, "1"}}),
        P({{{0, 1}, "1/8"}, {{3, 1}, "1"}}),
        P({{{0, 0}, "-1/2"}, {{1, 0}, "1"}, {{2, 0}, "1/4"}, {{2, 2}, "1"}}),
        P({{{0, 1}, "15/8"}, {{1, 3}, "1"}}),
        P({{{0, 0}, "-15/2"}, {{1, 0}, "15"}, {{2, 0}, "15/4"}, {{0, 4}, "1"}}),
    };
    CHECK(c.checked == f);
    for (const auto& p : f) CHECK(riesz(beta, p).is_zero());
}

TEST_CASE("derivation functional is inconsistent")
{
    const Multisequence beta = th::moments("cubic_functional_a8_8.moments.json");
    const VarietyReport v = variety_of(beta);
    REQUIRE(v.card() == 8);
    const ConsistencyVerdict c = consistency_check(beta, v);
    CHECK(c.status == ConsistencyStatus::Inconsistent);
    REQUIRE(c.witness);
    CHECK_FALSE(c.witness_value.is_zero());
    CHECK_THROWS_AS(signed_representation(beta, v.points), RepresentationError);
}

TEST_CASE("unknown and infinite varieties")
{
    const Multisequence beta = th::moments("hyperbola.moments.json");
    CHECK(consistency_check(beta, variety_of(beta)).status == ConsistencyStatus::Unknown);
    VarietyReport whole;
    whole.kind = VarietyKind::Infinite;
    CHECK(consistency_check(beta, whole).status == ConsistencyStatus::Consistent);
    CHECK(consistency_check(beta, VarietyReport{}).status == ConsistencyStatus::Unknown);
}

TEST_CASE("interpolation remainder on the eight cubic points")
{
    const Multisequence beta = th::moments("cubic_curve.moments.json");
    const VarietyReport v = variety_of(beta);
    REQUIRE(v.card() == 8);
    const Polynomial h = compute_h(v.points);
    CHECK(h == printed_h());
    for (const auto& w : v.points) CHECK(evaluate(h, w).is_zero());
    CHECK(directional_derivative(h, Point{S("1/2"), S("1/8")}, Point{S("1"), S("3/4")}) == S("-405/128"));
    CHECK_THROWS_AS(compute_h({v.points[0]}), ScenarioError);
    CHECK_THROWS_AS(interpolation_remainder(v.points, {Polynomial::constant(2, 1)}, h), DimensionError);
}

TEST_CASE("signed representation recovers the unit weights")
{
    const Multisequence beta = th::moments("cubic_curve.moments.json");
    const VarietyReport v = variety_of(beta);
    const SignedRepresentation r = signed_representation(beta, v.points);
    for (const auto& w : r.weights) CHECK(w == Scalar(1));
}

TEST_CASE("reduced test on both sides of the criterion")
{
    const ReducedTestVerdict no = reduced_consistency_test(th::moments("cubic_functional_a8_8.moments.json"));
    CHECK(no.status == ReducedStatus::NoMeasure);
    CHECK(no.lambda_h == S("-405/128"));
    REQUIRE(no.h);
    CHECK(*no.h == printed_h());

    const ReducedTestVerdict yes = reduced_consistency_test(th::moments("cubic_curve.moments.json"));
    CHECK(yes.status == ReducedStatus::MeasureExists);
    CHECK(yes.lambda_h.is_zero());
    CHECK(yes.k_matches_h);

    const ReducedTestVerdict na = reduced_consistency_test(th::moments("circle_lines.moments.json"));
    CHECK(na.status == ReducedStatus::NotApplicable);
    CHECK_THROWS_AS(compute_k_from_extension(th::moments("circle_lines.moments.json")), ScenarioError);
}

TEST_CASE("simple-zero certificate")
{
    const Multisequence nine = th::moments("nine_atom.moments.json");
    const KernelReport k = rank_kernel(build_moment_matrix(nine));
    REQUIRE(k.kernel.size() == 2);
    const VarietyReport v = compute_variety(k.kernel, 2);
    CHECK(v.card() == 9);
    const CertificateVerdict c = simple_zero_certificate(k.kernel[0], k.kernel[1], v.points);
    CHECK(c.certified);
    CHECK(consistency_check(nine, v).status == ConsistencyStatus::Consistent);

    const Multisequence cubic = th::moments("cubic_curve.moments.json");
    const KernelReport kc = rank_kernel(build_moment_matrix(cubic));
    REQUIRE(kc.kernel.size() == 2);
    const CertificateVerdict f = simple_zero_certificate(kc.kernel[0], kc.kernel[1], variety_of(cubic).points);
    CHECK_FALSE(f.certified);
    CHECK(f.failures.size() == 2);
}
