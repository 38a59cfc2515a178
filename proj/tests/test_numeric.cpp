#include "catch_amalgamated.hpp"

#include <random>

#include "econe/numeric.hpp"
#include "oracles.hpp"

using namespace econe;

namespace {

LatticeVector vec(std::initializer_list<long> xs)
{
    LatticeVector v(static_cast<Eigen::Index>(xs.size()));
    Eigen::Index i = 0;
    for (long x : xs)
        v(i++) = x;
    return v;
}

}   // namespace

TEST_CASE("rational parsing and formatting")
{
    CHECK(parse_rational("3/4") == Rational(3, 4));
    CHECK(parse_rational("-7") == Rational(-7));
    CHECK(parse_rational("6/8") == Rational(3, 4));
    CHECK_THROWS_AS(parse_rational("1/0"), std::invalid_argument);
    CHECK_THROWS_AS(parse_rational("abc"), std::invalid_argument);
    CHECK_THROWS_AS(parse_rational(""), std::invalid_argument);
    CHECK_THROWS_AS(parse_rational("1/2/3"), std::invalid_argument);

    CHECK_THROWS_AS(parse_rational("6/8", true), std::invalid_argument);
    CHECK_THROWS_AS(parse_rational("+1", true), std::invalid_argument);
    CHECK_THROWS_AS(parse_rational("01", true), std::invalid_argument);
    CHECK_THROWS_AS(parse_rational("3/1", true), std::invalid_argument);
    CHECK_THROWS_AS(parse_rational("-0", true), std::invalid_argument);
    CHECK(parse_rational("-3/4", true) == Rational(-3, 4));

    CHECK(format_rational(Rational(-6, 8)) == "-3/4");
    CHECK(format_rational(Rational(5)) == "5");
    CHECK(format_rational(Rational(0)) == "0");
}

TEST_CASE("format and parse round trip on random rationals")
{
    std::mt19937_64 rng(7);
    for (int k = 0; k < 500; ++k)
    {
        const Rational q = oracle::random_rational(rng, 1000) * oracle::random_rational(rng, 1000);
        CHECK(parse_rational(format_rational(q), true) == q);
    }
}

TEST_CASE("vector parsing")
{
    const RationalClass x = parse_rational_vector("1, -1/2,3");
    REQUIRE(x.size() == 3);
    CHECK(x(1) == Rational(-1, 2));
    CHECK(format_vector(x) == "1,-1/2,3");
    CHECK(format_vector(x, ' ') == "1 -1/2 3");
    CHECK_THROWS_AS(parse_integer_vector("1,1/2"), std::invalid_argument);
    CHECK(parse_integer_vector("4\n-5\n").size() == 2);
}

TEST_CASE("content and primitive part")
{
    CHECK(content(vec({6, -9, 15})) == 3);
    CHECK(content(vec({0, 0})) == 0);

    RationalClass x(3);
    x << Rational(1, 2), Rational(-3, 4), Rational(0);
    const auto pd = primitive_part(x);
    CHECK(pd.primitive == vec({2, -3, 0}));
    CHECK(pd.scale == Rational(4));
    CHECK_THROWS_AS(primitive_part(RationalClass::Zero(3)), std::invalid_argument);

    std::mt19937_64 rng(11);
    for (int k = 0; k < 200; ++k)
    {
        RationalClass y(5);
        for (int i = 0; i < 5; ++i)
            y(i) = oracle::random_rational(rng, 9);
        if (y.isZero())
            continue;
        const auto p = primitive_part(y);
        CHECK(oracle::gcd_of(p.primitive) == 1);
        CHECK(p.scale > 0);
        CHECK(RationalClass(to_rational(p.primitive) / p.scale) == y);
    }
}

TEST_CASE("floor and sup norm")
{
    CHECK(floor(Rational(7, 2)) == 3);
    CHECK(floor(Rational(-7, 2)) == -4);
    CHECK(floor_to_integer(Rational(-4)) == -4);
    RationalClass x(3);
    x << Rational(1, 3), Rational(-5, 4), Rational(1);
    CHECK(sup_norm(x) == Rational(5, 4));
}

TEST_CASE("extended gcd and bezout vectors")
{
    Integer s, t;
    CHECK(extended_gcd(Integer(240), Integer(46), s, t) == 2);
    CHECK(240 * s + 46 * t == 2);

    std::mt19937_64 rng(3);
    std::uniform_int_distribution<int> entry(-40, 40);
    for (int k = 0; k < 300; ++k)
    {
        LatticeVector w(6);
        for (int i = 0; i < 6; ++i)
            w(i) = entry(rng);
        if (w.isZero())
            continue;
        const LatticeVector c = bezout_vector(w);
        CHECK(c.dot(w) == oracle::gcd_of(w));
    }
}

TEST_CASE("determinant and inverse agree with oracles")
{
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<int> entry(-4, 4);
    for (int k = 0; k < 50; ++k)
    {
        IntMatrix m(6, 6);
        for (int i = 0; i < 6; ++i)
            for (int j = 0; j < 6; ++j)
                m(i, j) = entry(rng);
        const Integer d = determinant(m);
        CHECK(d == oracle::bareiss_det(m));
        if (d != 0)
        {
            const RationalMatrix inv = inverse(to_rational(m));
            CHECK(RationalMatrix(to_rational(m) * inv) == RationalMatrix::Identity(6, 6));
        }
        else
        {
            CHECK_THROWS(inverse(to_rational(m)));
        }
    }
}
