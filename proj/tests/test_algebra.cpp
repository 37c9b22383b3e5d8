#include "kt/algebra.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <random>

using namespace kt;

namespace {

// Five field modes and five antifield modes, the smallest oscillator table.
struct OscTable {
    GeneratorTable t;
    std::vector<GenId> phi;
    std::vector<GenId> phistar;

    OscTable()
    {
        for (int k = -2; k <= 2; ++k)
            phi.push_back(t.add("phi(" + std::to_string(k) + ")", 0, Parity::boson));
        for (int k = -2; k <= 2; ++k)
            phistar.push_back(t.add("phi*(" + std::to_string(k) + ")", 1, Parity::fermion));
    }

    GenId f(int k) const { return phi[static_cast<std::size_t>(k + 2)]; }
    GenId fs(int k) const { return phistar[static_cast<std::size_t>(k + 2)]; }
};

Polynomial random_homogeneous(const GeneratorTable& t, std::mt19937& rng, int n, int d)
{
    const auto basis = enumerate_basis(t, n, d);
    std::uniform_int_distribution<int> coeff(-3, 3);
    Polynomial p;
    for (const Monomial& m : basis)
        p.add_term(m, Rational(coeff(rng)));
    return p;
}

long long binomial(int n, int k)
{
    long long r = 1;
    for (int i = 1; i <= k; ++i)
        r = r * (n - k + i) / i;
    return r;
}

} // namespace

TEST_CASE("generator table invariants")
{
    GeneratorTable t;
    const GenId a = t.add("a", 0, Parity::boson);
    CHECK(t.gen(a).name == "a");
    CHECK(t.find("a") == a);
    CHECK_FALSE(t.find("b").has_value());
    CHECK_THROWS_AS(t.add("a", 1, Parity::fermion), std::invalid_argument);
    CHECK_THROWS_AS(t.add("w", 0, Parity::boson, 0), std::invalid_argument);
    CHECK_THROWS_AS(t.gen(99), std::out_of_range);
}

TEST_CASE("normalize")
{
    OscTable osc;
    const GenId fw = osc.fs(1);
    const GenId fmw = osc.fs(-1);

    // fermion squares to zero
    {
        const GenId ids[] = {fw, fw};
        CHECK(normalize(osc.t, ids).zero);
    }
    // one fermionic transposition flips the sign
    {
        const GenId ids[] = {fw, fmw}; // creation order is phi*(-1) < phi*(1)
        const auto n = normalize(osc.t, ids);
        CHECK_FALSE(n.zero);
        CHECK(n.sign == -1);
        CHECK(n.monomial.factors == std::vector<std::pair<GenId, int>>{{fmw, 1}, {fw, 1}});
    }
    // bosons commute freely
    {
        const GenId ids[] = {osc.f(1), osc.f(-1)};
        const GenId ids_rev[] = {osc.f(-1), osc.f(1)};
        const auto a = normalize(osc.t, ids);
        const auto b = normalize(osc.t, ids_rev);
        CHECK(a.sign == 1);
        CHECK(b.sign == 1);
        CHECK(a.monomial == b.monomial);
    }
    // stability: canonical input comes back unchanged with sign +1
    {
        const GenId ids[] = {osc.f(0), fmw, fw};
        const auto n = normalize(osc.t, ids);
        CHECK(n.sign == 1);
        const GenId again[] = {osc.f(0), fmw, fw};
        const auto n2 = normalize(osc.t, again);
        CHECK(n2.sign == 1);
        CHECK(n2.monomial == n.monomial);
    }
    {
        const GenId bad[] = {GenId{1000}};
        CHECK_THROWS_AS(normalize(osc.t, bad), std::out_of_range);
    }
}

TEST_CASE("multiply: binomial, anticommutation, nilpotency")
{
    OscTable osc;
    const Polynomial fw = Polynomial::term(Monomial::single(osc.f(1)), Rational(1));
    const Polynomial fmw = Polynomial::term(Monomial::single(osc.f(-1)), Rational(1));
    const Polynomial sw = Polynomial::term(Monomial::single(osc.fs(1)), Rational(1));
    const Polynomial smw = Polynomial::term(Monomial::single(osc.fs(-1)), Rational(1));

    // (phi(1) + phi(-1))^2 = phi(1)^2 + 2 phi(1)phi(-1) + phi(-1)^2
    const Polynomial sum = fw + fmw;
    const Polynomial square = multiply(osc.t, sum, sum);
    Polynomial expected;
    expected.add_term(Monomial::single(osc.f(1), 2), Rational(1));
    expected.add_term(Monomial::single(osc.f(-1), 2), Rational(1));
    {
        Monomial cross;
        cross.factors = {{osc.f(-1), 1}, {osc.f(1), 1}};
        expected.add_term(cross, Rational(2));
    }
    CHECK(square == expected);

    // phi*(1)·phi*(-1) + phi*(-1)·phi*(1) = 0
    CHECK((multiply(osc.t, sw, smw) + multiply(osc.t, smw, sw)).is_zero());

    // (1 + phi*(1))·(1 + phi*(1)) = 1 + 2 phi*(1)
    const Polynomial one_plus = Polynomial::constant(Rational(1)) + sw;
    const Polynomial sq = multiply(osc.t, one_plus, one_plus);
    Polynomial expected2 = Polynomial::constant(Rational(1));
    expected2.add_term(Monomial::single(osc.fs(1)), Rational(2));
    CHECK(sq == expected2);
}

TEST_CASE("multiply is supercommutative and associative on random homogeneous inputs")
{
    OscTable osc;
    std::mt19937 rng(5);
    for (int trial = 0; trial < 20; ++trial) {
        const int na = trial % 3;
        const int nb = (trial / 3) % 3;
        const Polynomial a = random_homogeneous(osc.t, rng, na, na + 1);
        const Polynomial b = random_homogeneous(osc.t, rng, nb, nb + 1);
        const Polynomial c = random_homogeneous(osc.t, rng, 1, 2);

        const int sign = (na % 2 == 1 && nb % 2 == 1) ? -1 : 1; // parity == antifield number here
        CHECK(multiply(osc.t, a, b) == multiply(osc.t, b, a) * Rational(sign));
        CHECK(multiply(osc.t, multiply(osc.t, a, b), c) ==
              multiply(osc.t, a, multiply(osc.t, b, c)));
    }
}

TEST_CASE("gradings are additive under multiplication")
{
    OscTable osc;
    Monomial m1;
    m1.factors = {{osc.f(0), 2}, {osc.fs(1), 1}};
    Monomial m2;
    m2.factors = {{osc.f(1), 1}, {osc.fs(-1), 1}};
    const auto merged = merge(osc.t, m1, m2);
    REQUIRE_FALSE(merged.zero);
    CHECK(antifield_number(osc.t, merged.monomial) ==
          antifield_number(osc.t, m1) + antifield_number(osc.t, m2));
    CHECK(weight(osc.t, merged.monomial) == weight(osc.t, m1) + weight(osc.t, m2));
    CHECK(parity(osc.t, merged.monomial) == Parity::boson);
    CHECK(parity(osc.t, m1) == Parity::fermion);
}

TEST_CASE("enumerate_basis counts and order")
{
    OscTable osc;

    // 15 = C(6,2) multisets of two field modes
    CHECK(enumerate_basis(osc.t, 0, 2).size() == static_cast<std::size_t>(binomial(6, 2)));

    // the 5 antifield singletons, in id order
    const auto b11 = enumerate_basis(osc.t, 1, 1);
    REQUIRE(b11.size() == 5);
    for (int k = -2; k <= 2; ++k)
        CHECK(b11[static_cast<std::size_t>(k + 2)] == Monomial::single(osc.fs(k)));

    // the 10 = C(5,2) distinct antifield pairs
    CHECK(enumerate_basis(osc.t, 2, 2).size() == static_cast<std::size_t>(binomial(5, 2)));

    // weight 0: only the unit monomial at antifield number 0
    const auto b00 = enumerate_basis(osc.t, 0, 0);
    REQUIRE(b00.size() == 1);
    CHECK(b00[0].is_one());
    CHECK(enumerate_basis(osc.t, 1, 0).empty());
}

TEST_CASE("enumerate_basis is closed and bidegree-correct")
{
    GeneratorTable t;
    const GenId c = t.add("c", -1, Parity::fermion);
    const GenId x = t.add("x", 0, Parity::boson);
    const GenId xs = t.add("x*", 1, Parity::fermion);
    const GenId th = t.add("th", 2, Parity::boson, 2); // weight 2

    std::mt19937 rng(17);
    std::uniform_int_distribution<int> exp(0, 2);
    for (int trial = 0; trial < 50; ++trial) {
        Monomial m;
        for (GenId g : {c, x, xs, th}) {
            int e = exp(rng);
            if (t.gen(g).parity == Parity::fermion && e > 1)
                e = 1;
            if (e > 0)
                m.factors.emplace_back(g, e);
        }
        const int n = antifield_number(t, m);
        const int d = weight(t, m);
        const auto basis = enumerate_basis(t, n, d);
        CHECK(std::find(basis.begin(), basis.end(), m) != basis.end());
        for (const Monomial& b : basis) {
            CHECK(antifield_number(t, b) == n);
            CHECK(weight(t, b) == d);
        }
        // no duplicates
        for (std::size_t i = 0; i + 1 < basis.size(); ++i)
            CHECK(basis[i] != basis[i + 1]);
    }
}

TEST_CASE("display form")
{
    OscTable osc;
    Monomial m;
    m.factors = {{osc.f(1), 2}, {osc.fs(-2), 1}};
    CHECK(to_string(osc.t, m) == "phi(1)^2·phi*(-2)");
    CHECK(to_string(osc.t, Monomial::one()) == "1");

    Polynomial p;
    p.add_term(Monomial::single(osc.f(1)), Rational(-3));
    p.add_term(Monomial::single(osc.f(2)), Rational(1, 2));
    p.add_term(Monomial::one(), Rational(1));
    CHECK(to_string(osc.t, p) == "1 - 3·phi(1) + 1/2·phi(2)");
    CHECK(to_string(osc.t, Polynomial()) == "0");
}
