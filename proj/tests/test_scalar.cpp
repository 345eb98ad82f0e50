#include <doctest.h>

#include "helpers.hpp"

using namespace tmoment;
using th::S;

TEST_CASE("surd arithmetic stays in the field")
{
    const Surd r2 = *Surd::sqrt(2), r3 = *Surd::sqrt(3);
    CHECK(r2 * r3 == *Surd::sqrt(6));
    CHECK(r2 * r2 == Surd(2));
    CHECK((Surd(1) + r2).inverse() == r2 - Surd(1));
    CHECK(((r2 + r3) * (r2 + r3).inverse()) == Surd(1));
    CHECK(*Surd::sqrt(mpq_class(15, 4)) == Surd::radical(15, mpq_class(1, 2)));
    CHECK_FALSE(Surd::sqrt(-1).has_value());
}

TEST_CASE("surd sign is exact near cancellation")
{
    // sqrt(2) + sqrt(3) - sqrt(10) = -0.0165...
    const Surd v = *Surd::sqrt(2) + *Surd::sqrt(3) - *Surd::sqrt(10);
    CHECK(v.sign() < 0);
    const Surd w = Surd(mpq_class(3, 10)) - Surd::radical(6, mpq_class(7, 60));
    CHECK(w.sign() > 0);
    CHECK(doctest::Approx(w.to_double()).epsilon(1e-15) == 0.3 - 7.0 / 60 * std::sqrt(6.0));
}

TEST_CASE("scalar parsing and printing round trip")
{
    CHECK(S("3/6").to_string() == "1/2");
    CHECK(S("-1/2+1/2*sqrt(13)").to_string() == "-1/2+1/2*sqrt(13)");
    CHECK(S("-5-2*sqrt(13)").is_exact());
    CHECK(S("2*sqrt(8)") == S("4*sqrt(2)"));
    CHECK_FALSE(S("0.25").is_exact());
    CHECK(Scalar::parse("0.25", true) == Scalar::rational(1, 4));
    CHECK(S("1e-3").to_double() == 1e-3);
    CHECK(Scalar::real(1.0).to_string() == "1.0");
    CHECK(S(Scalar::real(0.1).to_string().c_str()).to_double() == 0.1);
    CHECK_THROWS_AS(Scalar::parse("abc"), std::invalid_argument);
    CHECK_THROWS_AS(Scalar::parse("1/0"), std::invalid_argument);
}

TEST_CASE("float operands make float results")
{
    const Scalar a = S("1/3"), b = Scalar::real(0.5);
    CHECK((a + b).is_exact() == false);
    CHECK((a * a).is_exact());
    CHECK(doctest::Approx((a + b).to_double()) == 1.0 / 3 + 0.5);
    CHECK(Scalar::real(0.1).rationalized().is_rational());
    CHECK(Scalar::real(0.1).rationalized().to_double() == 0.1);
}

TEST_CASE("squarefree split")
{
    auto s = squarefree_split(mpz_class(72));
    REQUIRE(s);
    CHECK(s->first == 6);
    CHECK(s->second == 2);
}
