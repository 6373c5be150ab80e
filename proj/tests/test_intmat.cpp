#include <catch2/catch_amalgamated.hpp>

#include <hypermono/abelian.hpp>
#include <hypermono/intmat.hpp>

#include <random>

using namespace hypermono;

namespace {

/* exact determinant by cofactor expansion; fine for the 5x5 test sizes */
Int determinant(const IntMatrix& m)
{
    const std::size_t n = m.rows();
    REQUIRE(m.cols() == n);
    if (n == 0)
        return 1;
    if (n == 1)
        return m(0, 0);
    Int det = 0;
    for (std::size_t j = 0; j < n; ++j) {
        if (m(0, j) == 0)
            continue;
        IntMatrix minor(n - 1, n - 1);
        for (std::size_t i = 1; i < n; ++i)
            for (std::size_t k = 0, c = 0; k < n; ++k)
                if (k != j)
                    minor(i - 1, c++) = m(i, k);
        Int cof = m(0, j) * determinant(minor);
        det += (j % 2 == 0) ? cof : -cof;
    }
    return det;
}

IntMatrix random_matrix(std::mt19937& rng, std::size_t rows, std::size_t cols, int lo, int hi)
{
    IntMatrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j)
            m(i, j) = int(rng() % (unsigned)(hi - lo + 1)) + lo;
    return m;
}

}  // namespace

TEST_CASE("smith normal form: pinned small instances")
{
    SECTION("coprime diagonal combines")
    {
        IntMatrix m = IntMatrix::from_rows({{Int(2), Int(0)}, {Int(0), Int(3)}}, 2);
        auto s = smith_normal_form(m);
        REQUIRE(s.diag == std::vector<Int>{1, 6});
    }
    SECTION("identity is already diagonal")
    {
        auto s = smith_normal_form(IntMatrix::identity(3));
        REQUIRE(s.diag == std::vector<Int>{1, 1, 1});
    }
    SECTION("1x1")
    {
        for (int d : {1, 2, 7, 12}) {
            IntMatrix m(1, 1);
            m(0, 0) = d;
            REQUIRE(smith_normal_form(m).diag == std::vector<Int>{d});
        }
    }
    SECTION("zero matrix")
    {
        auto s = smith_normal_form(IntMatrix(2, 3));
        REQUIRE(s.diag == std::vector<Int>{0, 0});
        REQUIRE(s.rank == 0);
    }
}

TEST_CASE("smith normal form: transform and chain properties on random matrices")
{
    std::mt19937 rng(20260824);
    for (int trial = 0; trial < 40; ++trial) {
        IntMatrix m = random_matrix(rng, 5, 5, -9, 9);
        auto s = smith_normal_form(m);

        Int du = determinant(s.left), dv = determinant(s.right);
        CHECK((du == 1 || du == -1));
        CHECK((dv == 1 || dv == -1));

        IntMatrix prod = s.left * m * s.right;
        for (std::size_t i = 0; i < 5; ++i)
            for (std::size_t j = 0; j < 5; ++j)
                CHECK(prod(i, j) == (i == j ? s.diag[i] : Int(0)));

        for (std::size_t i = 0; i + 1 < s.diag.size(); ++i) {
            CHECK(s.diag[i] >= 0);
            if (s.diag[i + 1] != 0)
                CHECK((s.diag[i] != 0 && s.diag[i + 1] % s.diag[i] == 0));
        }
    }
}

TEST_CASE("smith normal form is deterministic")
{
    std::mt19937 rng(7);
    IntMatrix m = random_matrix(rng, 6, 4, -20, 20);
    auto s1 = smith_normal_form(m);
    auto s2 = smith_normal_form(m);
    REQUIRE(s1.diag == s2.diag);
    REQUIRE(s1.left == s2.left);
    REQUIRE(s1.right == s2.right);
}

TEST_CASE("cokernel invariant factors")
{
    SECTION("diagonal relations")
    {
        IntMatrix m = IntMatrix::from_rows({{Int(2), Int(0)}, {Int(0), Int(2)}}, 2);
        REQUIRE(cokernel_invariant_factors(m) == std::vector<Int>{2, 2});
    }
    SECTION("no relations leaves a free group")
    {
        IntMatrix m(0, 3);
        REQUIRE(cokernel_invariant_factors(m) == std::vector<Int>{0, 0, 0});
    }
    SECTION("sum/difference relations")
    {
        IntMatrix m = IntMatrix::from_rows({{Int(1), Int(1)}, {Int(1), Int(-1)}}, 2);
        REQUIRE(cokernel_invariant_factors(m) == std::vector<Int>{2});
    }
}

TEST_CASE("cokernel is presentation invariant under redundant rows")
{
    std::mt19937 rng(99);
    for (int trial = 0; trial < 25; ++trial) {
        IntMatrix m = random_matrix(rng, 3, 4, -6, 6);
        auto base = cokernel_invariant_factors(m);

        /* append an integer combination of the existing rows */
        int a = int(rng() % 7) - 3, b = int(rng() % 7) - 3, c = int(rng() % 7) - 3;
        IntMatrix ext(4, 4);
        for (std::size_t i = 0; i < 3; ++i)
            for (std::size_t j = 0; j < 4; ++j)
                ext(i, j) = m(i, j);
        for (std::size_t j = 0; j < 4; ++j)
            ext(3, j) = a * m(0, j) + b * m(1, j) + c * m(2, j);
        CHECK(cokernel_invariant_factors(ext) == base);
    }
}

TEST_CASE("integral lattice membership")
{
    std::vector<std::vector<Int>> full = {{1, 0}, {0, 1}};
    CHECK(lattice_contains(full, {7, 5}));

    std::vector<std::vector<Int>> twoz = {{2, 0}, {0, 2}};
    CHECK(lattice_contains(twoz, {4, -6}));
    CHECK_FALSE(lattice_contains(twoz, {3, 0}));

    CHECK(lattice_contains({}, {0, 0, 0}));
    CHECK_FALSE(lattice_contains({}, {0, 1, 0}));

    /* rank-deficient span */
    std::vector<std::vector<Int>> line = {{2, 4}};
    CHECK(lattice_contains(line, {6, 12}));
    CHECK_FALSE(lattice_contains(line, {6, 10}));
}

TEST_CASE("2-local lattice membership")
{
    std::vector<std::vector<Int>> gens = {{8, 6}, {0, 80}};

    SECTION("pinned verdicts")
    {
        CHECK(lattice_membership_2local(gens, {64, 0}));
        CHECK_FALSE(lattice_membership_2local(gens, {32, 0}));
        CHECK(lattice_membership_2local({{1, 0}, {0, 1}}, {7, 5}));
    }

    SECTION("odd multiples are genuinely needed")
    {
        /* 5*(64,0) = (320,0) = 40*(8,6) - 3*(0,80) lies in the span, but
         * (64,0) itself does not. */
        CHECK_FALSE(lattice_contains(gens, {64, 0}));
        CHECK(lattice_contains(gens, {320, 0}));
    }

    SECTION("an odd-index lattice becomes everything 2-locally")
    {
        std::vector<std::vector<Int>> odd_index = {{3, 0}, {0, 5}};
        std::mt19937 rng(4242);
        for (int trial = 0; trial < 50; ++trial) {
            std::vector<Int> t = {int(rng() % 19) - 9, int(rng() % 19) - 9};
            CHECK(lattice_membership_2local(odd_index, t));
        }
    }

    SECTION("agrees with integer membership when the index is a power of two")
    {
        std::vector<std::vector<Int>> two_index = {{2, 0}, {0, 4}};
        std::mt19937 rng(4243);
        for (int trial = 0; trial < 50; ++trial) {
            std::vector<Int> t = {int(rng() % 19) - 9, int(rng() % 19) - 9};
            CHECK(lattice_membership_2local(two_index, t) == lattice_contains(two_index, t));
        }
    }

    SECTION("monotone in the generating set")
    {
        std::vector<std::vector<Int>> bigger = gens;
        bigger.push_back({4, 3});
        std::mt19937 rng(31337);
        for (int trial = 0; trial < 50; ++trial) {
            std::vector<Int> t = {int(rng() % 41) - 20, int(rng() % 41) - 20};
            if (lattice_membership_2local(gens, t))
                CHECK(lattice_membership_2local(bigger, t));
        }
    }

    SECTION("dimension mismatch is rejected")
    {
        CHECK_THROWS_AS(lattice_membership_2local(gens, {1, 2, 3}), std::invalid_argument);
    }
}

TEST_CASE("left kernel basis spans the kernel")
{
    /* rows 0 and 1 sum to row 2 */
    IntMatrix m = IntMatrix::from_rows(
        {{Int(1), Int(2), Int(3)}, {Int(4), Int(5), Int(6)}, {Int(5), Int(7), Int(9)}}, 3);
    auto basis = left_kernel_basis(m);
    REQUIRE(basis.size() == 1);
    for (const auto& u : basis)
        for (std::size_t j = 0; j < 3; ++j) {
            Int acc = 0;
            for (std::size_t i = 0; i < 3; ++i)
                acc += u[i] * m(i, j);
            CHECK(acc == 0);
        }
}

TEST_CASE("abelian group presentations reduce to canonical invariant factors")
{
    SECTION("finite with free part")
    {
        IntMatrix rel = IntMatrix::from_rows({{Int(2), Int(0), Int(0)}}, 3);
        AbelianGroupPresentation g(3, rel);
        REQUIRE(g.invariant_factors() == std::vector<Int>{2, 0, 0});
        REQUIRE(g.free_rank() == 2);
        REQUIRE(!g.order().has_value());
        REQUIRE(g.to_string() == "Z/2 x Z^2");
    }
    SECTION("isomorphic presentations coincide")
    {
        IntMatrix r1 = IntMatrix::from_rows({{Int(4), Int(0)}, {Int(0), Int(6)}}, 2);
        IntMatrix r2 = IntMatrix::from_rows({{Int(4), Int(6)}, {Int(0), Int(6)}}, 2);
        AbelianGroupPresentation g1(2, r1), g2(2, r2);
        REQUIRE(g1.invariant_factors() == std::vector<Int>{2, 12});
        REQUIRE(g2.invariant_factors() == std::vector<Int>{2, 12});
    }
}

TEST_CASE("finite abelian groups canonicalize cyclic decompositions")
{
    auto g = FiniteAbelianGroup::from_cyclic_orders({4, 7});
    REQUIRE(g.invariant_factors() == std::vector<Int>{28});
    REQUIRE(g.is_cyclic());
    REQUIRE(g.order() == 28);
    REQUIRE(g.to_string() == "Z/28");

    auto h = FiniteAbelianGroup::from_cyclic_orders({2, 4, 3});
    REQUIRE(h.invariant_factors() == std::vector<Int>{2, 12});
    REQUIRE_FALSE(h.is_cyclic());

    REQUIRE(FiniteAbelianGroup::from_cyclic_orders({1, 1}).is_trivial());
    REQUIRE(FiniteAbelianGroup::trivial().order() == 1);
    REQUIRE(FiniteAbelianGroup::trivial().to_string() == "0");

    /* canonical form is unique: build the same group two ways */
    auto a = FiniteAbelianGroup::from_cyclic_orders({12, 2});
    auto b = FiniteAbelianGroup::from_cyclic_orders({4, 3, 2});
    REQUIRE(a == b);
}
