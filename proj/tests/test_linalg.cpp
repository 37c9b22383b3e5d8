#include "kt/linalg.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <random>

using namespace kt;

namespace {

Matrix random_matrix(std::mt19937& rng, std::size_t rows, std::size_t cols)
{
    std::uniform_int_distribution<int> num(-4, 4);
    std::uniform_int_distribution<int> den(1, 3);
    Matrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j)
            m.at(i, j) = Rational(num(rng), den(rng));
    return m;
}

} // namespace

TEST_CASE("rational parse/format round trips")
{
    CHECK(to_string(parse_rational("3/6")) == "1/2");
    CHECK(to_string(parse_rational("-14")) == "-14");
    CHECK(to_string(parse_rational("+2/4")) == "1/2");
    CHECK(parse_rational("1/3") + parse_rational("1/6") == Rational(1, 2));
    CHECK_THROWS_AS(parse_rational("1.5"), std::invalid_argument);
    CHECK_THROWS_AS(parse_rational("1/0"), std::invalid_argument);
    CHECK_THROWS_AS(parse_rational("a"), std::invalid_argument);
    CHECK_THROWS_AS(parse_rational(""), std::invalid_argument);
    CHECK_THROWS_AS(parse_rational("1/-2"), std::invalid_argument);
}

TEST_CASE("rref on simple matrices")
{
    const auto r = rref(Matrix::from_rows({{2, 0}, {0, 0}}));
    CHECK(r.rank == 1);
    CHECK(r.pivot_columns == std::vector<std::size_t>{0});
    CHECK(r.reduced.at(0, 0) == 1);

    // oscillator equations-of-motion matrix, modes -2..2, omega 1
    Matrix osc(5, 5);
    const int diag[5] = {3, 0, -1, 0, 3};
    for (std::size_t i = 0; i < 5; ++i)
        osc.at(i, i) = diag[i];
    CHECK(rank(osc) == 3);
}

TEST_CASE("rank of a factored product is the inner dimension")
{
    // Oracle: A = B·C with B 4×2, C 2×4 both full rank, multiplied by hand and
    // checked against rank-nullity.
    std::mt19937 rng(7);
    const Matrix b = random_matrix(rng, 4, 2);
    const Matrix c = random_matrix(rng, 2, 4);
    REQUIRE(rank(b) == 2);
    REQUIRE(rank(c) == 2);

    Matrix a(4, 4);
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j)
            for (std::size_t k = 0; k < 2; ++k)
                a.at(i, j) += b.at(i, k) * c.at(k, j);

    CHECK(rank(a) == 2);
    CHECK(kernel_basis(a).size() == 4 - 2);
}

TEST_CASE("rref is idempotent")
{
    std::mt19937 rng(21);
    for (int trial = 0; trial < 25; ++trial) {
        const Matrix m = random_matrix(rng, 3 + trial % 3, 4 + trial % 2);
        const Matrix once = rref(m).reduced;
        CHECK(rref(once).reduced == once);
    }
}

TEST_CASE("kernel bases")
{
    const auto k1 = kernel_basis(Matrix::from_rows({{1, 1}, {1, 1}}));
    REQUIRE(k1.size() == 1);
    CHECK(k1[0][0] == -k1[0][1]); // spans (1, -1)

    Matrix id3(3, 3);
    for (std::size_t i = 0; i < 3; ++i)
        id3.at(i, i) = 1;
    CHECK(kernel_basis(id3).empty());

    Matrix osc(5, 5);
    const int diag[5] = {3, 0, -1, 0, 3};
    for (std::size_t i = 0; i < 5; ++i)
        osc.at(i, i) = diag[i];
    const auto k2 = kernel_basis(osc);
    REQUIRE(k2.size() == 2);
    Vector e1(5), e3(5);
    e1[1] = 1;
    e3[3] = 1;
    CHECK(k2[0] == e1);
    CHECK(k2[1] == e3);
}

TEST_CASE("left kernel bases")
{
    Matrix osc(5, 5);
    const int diag[5] = {3, 0, -1, 0, 3};
    for (std::size_t i = 0; i < 5; ++i)
        osc.at(i, i) = diag[i];
    const auto lk = left_kernel_basis(osc);
    REQUIRE(lk.size() == 2); // the on-shell modes k = -1 and k = +1
    for (const Vector& r : lk)
        CHECK(is_zero(vec_mat(r, osc)));

    CHECK(left_kernel_basis(Matrix::from_rows({{1, 2}, {3, 4}})).empty());

    // Maxwell E-block at lightlike k = (1,0,0,1): entries -k_mu k^nu, rank 1.
    const int k_up[4] = {1, 0, 0, 1};
    const int k_dn[4] = {1, 0, 0, -1};
    Matrix em(4, 4);
    for (std::size_t nu = 0; nu < 4; ++nu)
        for (std::size_t mu = 0; mu < 4; ++mu)
            em.at(nu, mu) = -k_dn[mu] * k_up[nu];
    CHECK(rank(em) == 1);
    const auto lk_em = left_kernel_basis(em);
    REQUIRE(lk_em.size() == 3);
    for (const Vector& r : lk_em)
        CHECK(is_zero(vec_mat(r, em)));
}

TEST_CASE("in_span")
{
    CHECK(in_span({{Rational(1), Rational(0)}}, {Rational(3), Rational(0)}));
    CHECK(in_span({}, {Rational(0), Rational(0)}));
    CHECK_FALSE(in_span({}, {Rational(1), Rational(0)}));
    // (5,2) = 7/2·(1,1) + 3/2·(1,-1), solved by hand
    CHECK(in_span({{Rational(1), Rational(1)}, {Rational(1), Rational(-1)}},
                  {Rational(5), Rational(2)}));
    CHECK_FALSE(in_span({{Rational(1), Rational(1)}}, {Rational(1), Rational(2)}));
    CHECK_THROWS_AS(in_span({{Rational(1)}}, {Rational(1), Rational(0)}), std::invalid_argument);
}

TEST_CASE("rank-nullity and kernel exactness on random matrices")
{
    std::mt19937 rng(3);
    for (int trial = 0; trial < 30; ++trial) {
        const std::size_t rows = 1 + trial % 5;
        const std::size_t cols = 1 + (trial * 3) % 6;
        const Matrix m = random_matrix(rng, rows, cols);
        const std::size_t r = rank(m);
        const auto kernel = kernel_basis(m);
        CHECK(r + kernel.size() == cols);
        for (const Vector& v : kernel)
            CHECK(is_zero(mat_vec(m, v)));
        const auto left = left_kernel_basis(m);
        CHECK(r + left.size() == rows);
        for (const Vector& v : left)
            CHECK(is_zero(vec_mat(v, m)));
    }
}

TEST_CASE("row permutations preserve rank and row span")
{
    std::mt19937 rng(11);
    for (int trial = 0; trial < 10; ++trial) {
        const Matrix m = random_matrix(rng, 4, 5);
        Matrix p = m;
        p.swap_rows(0, 3);
        p.swap_rows(1, 2);
        CHECK(rank(p) == rank(m));

        std::vector<Vector> rows_m;
        for (std::size_t i = 0; i < m.rows(); ++i)
            rows_m.push_back(m.row(i));
        for (std::size_t i = 0; i < p.rows(); ++i)
            CHECK(in_span(rows_m, p.row(i)));
    }
}
