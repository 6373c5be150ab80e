#include <catch2/catch_amalgamated.hpp>

#include <hypermono/series.hpp>

#include <random>

using namespace hypermono;

namespace {

TruncatedSeries random_unit_series(std::mt19937& rng, const Int& modulus, std::size_t trunc)
{
    TruncatedSeries s(modulus, trunc);
    if (modulus == 0)
        s.set_coeff(0, (rng() % 2) ? 1 : -1);
    else
        s.set_coeff(0, 1 + int(rng() % (unsigned)(int(modulus) - 1)));
    for (std::size_t k = 1; k <= trunc; ++k)
        s.set_coeff(k, int(rng() % 21) - 10);
    return s;
}

}  // namespace

TEST_CASE("geometric series inversion")
{
    auto s = TruncatedSeries::one_plus_ax(3, 0, 3).inverse();
    CHECK(s.coeff(0) == 1);
    CHECK(s.coeff(1) == -3);
    CHECK(s.coeff(2) == 9);
    CHECK(s.coeff(3) == -27);
}

TEST_CASE("binomial quotient collapses to a lower power")
{
    auto num = TruncatedSeries::one_plus_ax(1, 0, 3).pow(5);
    auto den = TruncatedSeries::one_plus_ax(1, 0, 3);
    auto q = num * den.inverse();
    CHECK(q.coeff(0) == 1);
    CHECK(q.coeff(1) == 4);
    CHECK(q.coeff(2) == 6);
    CHECK(q.coeff(3) == 4);
}

TEST_CASE("negative binomial powers mod 2 match the periodicity oracle")
{
    /* (1+x)^16 = 1 mod 2 through degree 15, so (1+x)^-5 = (1+x)^11 there */
    auto inv5 = TruncatedSeries::binomial(-5, 1, 2, 4);
    auto oracle = TruncatedSeries::one_plus_ax(1, 2, 4).pow(11);
    CHECK(inv5 == oracle);
    /* and the direct inverse agrees with the generalized binomial */
    CHECK(TruncatedSeries::one_plus_ax(1, 2, 4).pow(5).inverse() == inv5);
}

TEST_CASE("series ring laws on random inputs")
{
    std::mt19937 rng(1234);
    for (Int modulus : {Int(0), Int(2), Int(3), Int(7)}) {
        for (int trial = 0; trial < 20; ++trial) {
            auto a = random_unit_series(rng, modulus, 8);
            auto b = random_unit_series(rng, modulus, 8);
            auto c = random_unit_series(rng, modulus, 8);
            CHECK((a * b) * c == a * (b * c));
            CHECK(a * b == b * a);
            CHECK(a * a.inverse() == TruncatedSeries::one(modulus, 8));
        }
    }
}

TEST_CASE("inversion requires a unit constant term")
{
    TruncatedSeries z(0, 4);
    z.set_coeff(0, 2);
    CHECK_THROWS_AS(z.inverse(), std::invalid_argument);

    TruncatedSeries m(6, 4);  /* modulus need not be prime for +,*; 2 is a zero divisor */
    m.set_coeff(0, 2);
    CHECK_THROWS_AS(m.inverse(), std::invalid_argument);
}

TEST_CASE("composition substitutes and respects products")
{
    std::mt19937 rng(5150);
    TruncatedSeries inner(0, 6);
    inner.set_coeff(1, 1);
    inner.set_coeff(2, -2);

    auto a = random_unit_series(rng, 0, 6);
    auto b = random_unit_series(rng, 0, 6);
    CHECK((a * b).compose(inner) == a.compose(inner) * b.compose(inner));

    /* substituting x itself is the identity */
    TruncatedSeries x(0, 6);
    x.set_coeff(1, 1);
    CHECK(a.compose(x) == a);

    TruncatedSeries bad(0, 6);
    bad.set_coeff(0, 1);
    CHECK_THROWS_AS(a.compose(bad), std::invalid_argument);
}

TEST_CASE("binomial series matches repeated multiplication for positive powers")
{
    for (int e : {1, 2, 5, 8}) {
        auto direct = TruncatedSeries::one_plus_ax(1, 0, 6).pow(e);
        CHECK(TruncatedSeries::binomial(e, 1, 0, 6) == direct);
    }
    /* square-variable version */
    auto sq = TruncatedSeries::binomial(3, 2, 0, 6);
    TruncatedSeries base(0, 6);
    base.set_coeff(0, 1);
    base.set_coeff(2, 1);
    CHECK(sq == base.pow(3));
}
