#pragma once

#include "kt/complex.hpp"
#include "kt/linalg.hpp"

#include <array>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

// Builders for the concrete lattice systems: the frequency-lattice oscillator
// (with an optional ghost variant), free electromagnetism on an integer
// momentum box with metric (+,−,−,−), the 2D massless scalar in Taylor modes,
// and seeded random linear systems of prescribed corank.

namespace kt {
namespace models {

struct ModeRange {
    int lo = 0;
    int hi = 0;
};

inline std::string mode_name(std::string_view base, int k)
{
    return std::string(base) + "(" + std::to_string(k) + ")";
}

// Fields phi(k) and antifields phi*(k) per lattice mode, with
// δ phi*(k) = (k² − ω²)·phi(k). The ghost variant adds c(±ω) at antifield
// number −1 with δ phi(±ω) = c(±ω), and keeps the second-order theta(±ω).
inline Complex build_oscillator(ModeRange modes, int omega, bool with_ghosts = false)
{
    if (modes.lo > modes.hi)
        throw std::invalid_argument("oscillator: empty mode range");
    if (omega == 0)
        throw std::invalid_argument("oscillator: omega must be a nonzero lattice mode");
    if (omega < modes.lo || omega > modes.hi || -omega < modes.lo || -omega > modes.hi)
        throw std::invalid_argument("oscillator: both ±omega must lie in the mode range");

    GeneratorTable table;
    std::map<int, GenId> field;
    std::map<int, GenId> antifield;
    for (int k = modes.lo; k <= modes.hi; ++k)
        field[k] = table.add(mode_name("phi", k), 0, Parity::boson);
    for (int k = modes.lo; k <= modes.hi; ++k)
        antifield[k] = table.add(mode_name("phi*", k), 1, Parity::fermion);

    DifferentialRule rule;
    for (int k = modes.lo; k <= modes.hi; ++k) {
        const Rational coeff = Rational(k) * k - Rational(omega) * omega;
        if (coeff != 0)
            rule.set(antifield[k], Polynomial::term(Monomial::single(field[k]), coeff));
    }

    if (with_ghosts) {
        const int w = omega > 0 ? omega : -omega;
        std::map<int, GenId> ghost;
        for (int k : {-w, w})
            ghost[k] = table.add(mode_name("c", k), -1, Parity::fermion);
        for (int k : {-w, w})
            rule.set(field[k], Polynomial::term(Monomial::single(ghost[k]), Rational(1)));
        for (int k : {-w, w}) {
            const GenId theta = table.add(mode_name("theta", k), 2, Parity::boson);
            rule.set(theta, Polynomial::term(Monomial::single(antifield[k]), Rational(1)));
        }
    }
    return Complex(std::move(table), std::move(rule));
}

using Vec4 = std::array<int, 4>;

inline int minkowski_square(const Vec4& k)
{
    return k[0] * k[0] - k[1] * k[1] - k[2] * k[2] - k[3] * k[3];
}

inline Vec4 lower_index(const Vec4& k)
{
    return Vec4{k[0], -k[1], -k[2], -k[3]};
}

inline bool is_lightlike(const Vec4& k)
{
    return minkowski_square(k) == 0;
}

inline std::string momentum_suffix(const Vec4& k)
{
    std::string s = "(";
    for (int i = 0; i < 4; ++i) {
        if (i)
            s += ',';
        s += std::to_string(k[i]);
    }
    s += ')';
    return s;
}

// Two integer polarization vectors for a lightlike k ≠ 0: zero time component,
// spatial parts spanning the plane orthogonal to the spatial part of k. With j
// the first nonzero spatial component, the vectors are s_j·e_i − s_i·e_j for
// the two remaining axes i, in axis order.
inline std::pair<Vec4, Vec4> lightlike_transverse(const Vec4& k)
{
    if (k == Vec4{0, 0, 0, 0})
        throw std::invalid_argument("lightlike_transverse: k must be nonzero");
    if (!is_lightlike(k))
        throw std::invalid_argument("lightlike_transverse: k is not lightlike");

    const std::array<int, 3> s{k[1], k[2], k[3]};
    int j = 0;
    while (s[j] == 0)
        ++j; // s ≠ 0 because k ≠ 0 is lightlike

    std::array<Vec4, 2> eps{};
    int out = 0;
    for (int i = 0; i < 3; ++i) {
        if (i == j)
            continue;
        Vec4 v{0, 0, 0, 0};
        v[1 + i] = s[j];
        v[1 + j] = -s[i];
        eps[out++] = v;
    }
    return {eps[0], eps[1]};
}

namespace detail {

inline void add_maxwell_block(GeneratorTable& table, DifferentialRule& rule, const Vec4& k)
{
    const std::string suffix = momentum_suffix(k);
    const Vec4 kd = lower_index(k);
    const int k2 = minkowski_square(k);

    const GenId c = table.add("c" + suffix, -1, Parity::fermion);
    std::array<GenId, 4> a{};
    for (int mu = 0; mu < 4; ++mu)
        a[mu] = table.add("A_" + std::to_string(mu) + suffix, 0, Parity::boson);
    std::array<GenId, 4> astar{};
    for (int mu = 0; mu < 4; ++mu)
        astar[mu] = table.add("A*_" + std::to_string(mu) + suffix, 1, Parity::fermion);
    const GenId zeta = table.add("zeta" + suffix, 2, Parity::boson);

    // δ A_μ = k_μ c
    for (int mu = 0; mu < 4; ++mu)
        if (kd[mu] != 0)
            rule.set(a[mu], Polynomial::term(Monomial::single(c), Rational(kd[mu])));

    // δ A*_μ = k² A_μ − k_μ k^ν A_ν
    for (int mu = 0; mu < 4; ++mu) {
        Polynomial image;
        if (k2 != 0)
            image.add_term(Monomial::single(a[mu]), Rational(k2));
        for (int nu = 0; nu < 4; ++nu) {
            const long long coeff = -static_cast<long long>(kd[mu]) * k[nu];
            if (coeff != 0)
                image.add_term(Monomial::single(a[nu]), Rational(coeff));
        }
        if (!image.is_zero())
            rule.set(astar[mu], std::move(image));
    }

    // δ ζ = k^μ A*_μ
    {
        Polynomial image;
        for (int mu = 0; mu < 4; ++mu)
            if (k[mu] != 0)
                image.add_term(Monomial::single(astar[mu]), Rational(k[mu]));
        if (!image.is_zero())
            rule.set(zeta, std::move(image));
    }

    // δ θ_(i) = ε^μ_(i) A*_μ, lightlike k ≠ 0 only
    if (k2 == 0 && k != Vec4{0, 0, 0, 0}) {
        const auto [e1, e2] = lightlike_transverse(k);
        const std::array<Vec4, 2> eps{e1, e2};
        for (int i = 0; i < 2; ++i) {
            const GenId theta = table.add("theta_" + std::to_string(i + 1) + suffix, 2, Parity::boson);
            Polynomial image;
            for (int mu = 0; mu < 4; ++mu)
                if (eps[i][mu] != 0)
                    image.add_term(Monomial::single(astar[mu]), Rational(eps[i][mu]));
            rule.set(theta, std::move(image));
        }
    }
}

} // namespace detail

// One momentum block of the electromagnetic lattice: bosons A_μ(k), ζ(k),
// fermions c(k), A*_μ(k), and for lightlike k ≠ 0 the transverse θ_(1), θ_(2).
inline Complex build_maxwell_block(const Vec4& k)
{
    GeneratorTable table;
    DifferentialRule rule;
    detail::add_maxwell_block(table, rule, k);
    return Complex(std::move(table), std::move(rule));
}

// The whole box [−radius, radius]^4, block-diagonal over k (lexicographic
// order over the components).
inline Complex build_maxwell(int radius)
{
    if (radius < 1)
        throw std::invalid_argument("maxwell: radius must be >= 1");
    GeneratorTable table;
    DifferentialRule rule;
    Vec4 k{};
    for (k[0] = -radius; k[0] <= radius; ++k[0])
        for (k[1] = -radius; k[1] <= radius; ++k[1])
            for (k[2] = -radius; k[2] <= radius; ++k[2])
                for (k[3] = -radius; k[3] <= radius; ++k[3])
                    detail::add_maxwell_block(table, rule, k);
    return Complex(std::move(table), std::move(rule));
}

enum class Scalar2dTower {
    naive,      // fields and first-order antifields only
    theta_only, // plus theta_m, thetabar_n
    full        // plus the third-order chi
};

// Taylor modes of the 2D massless scalar, 0 ≤ m,n ≤ M:
// δ phi*(m,n) = m·n·phi(m,n); the tower adds δ theta(m) = phi*(m,0),
// δ thetabar(n) = phi*(0,n) and δ chi = theta(0) − thetabar(0).
inline Complex build_scalar2d(int taylor_order, Scalar2dTower tower)
{
    if (taylor_order < 1)
        throw std::invalid_argument("scalar2d: Taylor order must be >= 1");
    const int m_max = taylor_order;

    GeneratorTable table;
    std::map<std::pair<int, int>, GenId> field;
    std::map<std::pair<int, int>, GenId> antifield;
    const auto pair_name = [](std::string_view base, int m, int n) {
        return std::string(base) + "(" + std::to_string(m) + "," + std::to_string(n) + ")";
    };
    for (int m = 0; m <= m_max; ++m)
        for (int n = 0; n <= m_max; ++n)
            field[{m, n}] = table.add(pair_name("phi", m, n), 0, Parity::boson);
    for (int m = 0; m <= m_max; ++m)
        for (int n = 0; n <= m_max; ++n)
            antifield[{m, n}] = table.add(pair_name("phi*", m, n), 1, Parity::fermion);

    DifferentialRule rule;
    for (int m = 0; m <= m_max; ++m)
        for (int n = 0; n <= m_max; ++n)
            if (m * n != 0)
                rule.set(antifield[{m, n}],
                         Polynomial::term(Monomial::single(field[{m, n}]), Rational(m * n)));

    if (tower != Scalar2dTower::naive) {
        std::map<int, GenId> theta;
        std::map<int, GenId> thetabar;
        for (int m = 0; m <= m_max; ++m) {
            theta[m] = table.add(mode_name("theta", m), 2, Parity::boson);
            rule.set(theta[m], Polynomial::term(Monomial::single(antifield[{m, 0}]), Rational(1)));
        }
        for (int n = 0; n <= m_max; ++n) {
            thetabar[n] = table.add(mode_name("thetabar", n), 2, Parity::boson);
            rule.set(thetabar[n], Polynomial::term(Monomial::single(antifield[{0, n}]), Rational(1)));
        }
        if (tower == Scalar2dTower::full) {
            const GenId chi = table.add("chi", 3, Parity::fermion);
            Polynomial image = Polynomial::term(Monomial::single(theta[0]), Rational(1));
            image.add_term(Monomial::single(thetabar[0]), Rational(-1));
            rule.set(chi, std::move(image));
        }
    }
    return Complex(std::move(table), std::move(rule));
}

inline Complex build_scalar2d(int taylor_order, bool with_tower)
{
    return build_scalar2d(taylor_order,
                          with_tower ? Scalar2dTower::full : Scalar2dTower::naive);
}

// Reproducible integer stream: x_{i+1} = 1664525·x_i + 1013904223 mod 2^32,
// entry = ((x >> 16) mod 7) − 3. Documented in the file-format docs so other
// implementations can match the matrices bit for bit.
class Lcg32 {
public:
    explicit Lcg32(std::uint32_t seed) : state_(seed) {}

    std::uint32_t next_raw()
    {
        state_ = 1664525u * state_ + 1013904223u;
        return state_;
    }

    int next_entry() { return static_cast<int>((next_raw() >> 16) % 7u) - 3; }

private:
    std::uint32_t state_;
};

struct RandomLinearSystem {
    Matrix a;                       // n×n of rank n−p
    std::uint32_t effective_seed;   // first seed whose draw had full factor rank
};

// A = B·C with B an n×(n−p) and C an (n−p)×n integer draw from the stream;
// rank-deficient draws retry with seed+1.
inline RandomLinearSystem random_linear_matrix(int n, int p, std::uint32_t seed)
{
    if (n < 0 || p < 0 || p > n)
        throw std::invalid_argument("random_linear: need 0 <= p <= n");
    const int r = n - p;
    for (std::uint32_t s = seed;; ++s) {
        Lcg32 stream(s);
        Matrix b(static_cast<std::size_t>(n), static_cast<std::size_t>(r));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < r; ++j)
                b.at(i, j) = stream.next_entry();
        Matrix c(static_cast<std::size_t>(r), static_cast<std::size_t>(n));
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < n; ++j)
                c.at(i, j) = stream.next_entry();
        Matrix a = mat_mul(b, c);
        if (rank(a) == static_cast<std::size_t>(r))
            return RandomLinearSystem{std::move(a), s};
    }
}

// Fields u(i), antifields u*(i), δ u* = A·u for the seeded random A.
inline Complex build_random_linear(int n, int p, std::uint32_t seed)
{
    const RandomLinearSystem sys = random_linear_matrix(n, p, seed);

    GeneratorTable table;
    std::vector<GenId> u;
    std::vector<GenId> ustar;
    for (int i = 0; i < n; ++i)
        u.push_back(table.add(mode_name("u", i), 0, Parity::boson));
    for (int i = 0; i < n; ++i)
        ustar.push_back(table.add(mode_name("u*", i), 1, Parity::fermion));

    DifferentialRule rule;
    for (int i = 0; i < n; ++i) {
        Polynomial image;
        for (int j = 0; j < n; ++j)
            if (sys.a.at(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) != 0)
                image.add_term(Monomial::single(u[static_cast<std::size_t>(j)]),
                               sys.a.at(static_cast<std::size_t>(i), static_cast<std::size_t>(j)));
        if (!image.is_zero())
            rule.set(ustar[static_cast<std::size_t>(i)], std::move(image));
    }
    return Complex(std::move(table), std::move(rule));
}

} // namespace models
} // namespace kt
