#include <doctest.h>

#include "helpers.hpp"
#include "tmoment/univariate.hpp"

using namespace tmoment;
using namespace tmoment::uni;

namespace {

QPoly Q(std::vector<long> c)
{
    std::vector<mpq_class> q;
    for (long v : c) q.emplace_back(v);
    return QPoly(q);
}

}  // namespace

TEST_CASE("exact reconstruction of rational and quadratic roots")
{
    // (x^2 + 4x - 2)(3x - 1)(x - 7)
    const QPoly p = Q({-2, 4, 1}) * Q({-1, 3}) * Q({-7, 1});
    const auto roots = real_roots(p);
    REQUIRE(roots.size() == 4);
    CHECK(roots[0].value == th::S("-2-sqrt(6)"));
    CHECK(roots[1].value == th::S("1/3"));
    CHECK(roots[2].value == th::S("-2+sqrt(6)"));
    CHECK(roots[3].value == th::S("7"));
    for (const auto& r : roots) CHECK(r.value.is_exact());
}

TEST_CASE("irreducible roots come back as isolated floats")
{
    // x^3 - 2 has one real root
    const auto roots = real_roots(Q({-2, 0, 0, 1}));
    REQUIRE(roots.size() == 1);
    CHECK_FALSE(roots[0].value.is_exact());
    CHECK(doctest::Approx(roots[0].value.to_double()).epsilon(1e-15) == std::cbrt(2.0));
    CHECK(roots[0].lo <= roots[0].hi);
    CHECK(real_roots(Q({1, 0, 1})).empty());
    CHECK(isolate_real_roots(Q({0, -1, 0, 1}), mpq_class(1, 1000)).size() == 3);
}

TEST_CASE("gcd and square-free part")
{
    const QPoly a = Q({-1, 1}) * Q({-1, 1}) * Q({2, 1});
    CHECK(squarefree_part(a) == Q({-1, 1}) * Q({2, 1}));
    CHECK(gcd(a, Q({-1, 1}) * Q({5, 1})) == Q({-1, 1}));
    CHECK(simplest_rational(mpq_class(3, 10), mpq_class(4, 10)) == mpq_class(1, 3));
}

TEST_CASE("bivariate resultant eliminates the main variable")
{
    // y - x^3 and y - x meet where x^3 = x
    const BiPoly f = BiPoly::from_polynomial(th::P({{{0, 1}, "1"}, {{3, 0}, "-1"}}), 1);
    const BiPoly g = BiPoly::from_polynomial(th::P({{{0, 1}, "1"}, {{1, 0}, "-1"}}), 1);
    const auto r = resultant(f, g);
    REQUIRE_FALSE(r.value.is_zero());
    std::vector<double> xs;
    for (const auto& root : real_roots(r.value)) xs.push_back(root.value.to_double());
    CHECK(xs == std::vector<double>{-1, 0, 1});
    CHECK(resultant(f, f).value.is_zero());
}
