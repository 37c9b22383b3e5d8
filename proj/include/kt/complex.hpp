#pragma once

#include "kt/algebra.hpp"

#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

// The Koszul–Tate/BV differential: an odd derivation that lowers antifield
// number by exactly 1 and preserves weight. Generators absent from the rule
// map are annihilated.

namespace kt {

class DifferentialRule {
public:
    void set(GenId g, Polynomial image)
    {
        if (image.is_zero())
            images_.erase(g);
        else
            images_[g] = std::move(image);
    }

    const Polynomial& image(GenId g) const
    {
        static const Polynomial zero;
        auto it = images_.find(g);
        return it == images_.end() ? zero : it->second;
    }

    const std::map<GenId, Polynomial>& images() const { return images_; }

    bool operator==(const DifferentialRule&) const = default;

private:
    std::map<GenId, Polynomial> images_;
};

struct NilpotencyFailure {
    GenId generator;
    Polynomial delta_squared;
};

struct NilpotencyReport {
    bool ok = true;
    std::vector<NilpotencyFailure> failures;
};

class Complex {
public:
    // Validates the grading constraints on construction and precomputes the
    // nilpotency report (δ² failures are reported, not thrown).
    Complex(GeneratorTable table, DifferentialRule delta)
        : table_(std::move(table)), delta_(std::move(delta))
    {
        validate_grading();
        compute_nilpotency();
    }

    const GeneratorTable& table() const { return table_; }
    const DifferentialRule& delta() const { return delta_; }
    const NilpotencyReport& nilpotency() const { return nilpotency_; }

    void require_nilpotent() const
    {
        if (nilpotency_.ok)
            return;
        throw std::logic_error("differential is not nilpotent: δ²(" +
                               table_.gen(nilpotency_.failures.front().generator).name +
                               ") != 0");
    }

    bool operator==(const Complex& other) const
    {
        return table_ == other.table_ && delta_ == other.delta_;
    }

private:
    void validate_grading()
    {
        for (const auto& [g, image] : delta_.images()) {
            const Generator& gen = table_.gen(g);
            for (const auto& [m, c] : image.terms()) {
                for (auto [id, exp] : m.factors)
                    (void)table_.gen(id);
                if (antifield_number(table_, m) != gen.antifield_number - 1)
                    throw std::invalid_argument(
                        "grading violation in δ(" + gen.name + "): term " + to_string(table_, m) +
                        " does not lower the antifield number by 1");
                if (weight(table_, m) != gen.weight)
                    throw std::invalid_argument(
                        "grading violation in δ(" + gen.name + "): term " + to_string(table_, m) +
                        " does not preserve the weight");
                if (parity(table_, m) != opposite(gen.parity))
                    throw std::invalid_argument(
                        "grading violation in δ(" + gen.name + "): term " + to_string(table_, m) +
                        " has the same parity as the generator");
            }
        }
    }

    void compute_nilpotency();

    GeneratorTable table_;
    DifferentialRule delta_;
    NilpotencyReport nilpotency_;
};

// δ on a canonical monomial via the graded Leibniz rule:
// δ(ab) = δ(a)·b + (−1)^{|a|} a·δ(b), with δ(g^e) = e·g^{e−1}·δ(g).
inline Polynomial apply_delta(const Complex& c, const Monomial& m)
{
    const GeneratorTable& t = c.table();
    Polynomial out;
    int prefix_fermions = 0;
    for (std::size_t i = 0; i < m.factors.size(); ++i) {
        const auto [g, e] = m.factors[i];
        const Generator& gen = t.gen(g);
        const Polynomial& dg = c.delta().image(g);
        if (!dg.is_zero()) {
            Monomial left;
            left.factors.assign(m.factors.begin(), m.factors.begin() + static_cast<std::ptrdiff_t>(i));
            if (e > 1)
                left.factors.emplace_back(g, e - 1);
            Monomial right;
            right.factors.assign(m.factors.begin() + static_cast<std::ptrdiff_t>(i) + 1,
                                 m.factors.end());

            const int sign = (prefix_fermions & 1) ? -1 : 1;
            Polynomial term = Polynomial::term(std::move(left), Rational(sign * e));
            term = multiply(t, term, dg);
            if (!right.is_one())
                term = multiply(t, term, Polynomial::term(std::move(right), Rational(1)));
            out += term;
        }
        if (gen.parity == Parity::fermion)
            prefix_fermions += e;
    }
    return out;
}

inline Polynomial apply_delta(const Complex& c, const Polynomial& p)
{
    Polynomial out;
    for (const auto& [m, coeff] : p.terms()) {
        Polynomial d = apply_delta(c, m);
        d *= coeff;
        out += d;
    }
    return out;
}

inline void Complex::compute_nilpotency()
{
    for (const auto& [g, image] : delta_.images()) {
        Polynomial dd = apply_delta(*this, image);
        if (!dd.is_zero()) {
            nilpotency_.ok = false;
            nilpotency_.failures.push_back(NilpotencyFailure{g, std::move(dd)});
        }
    }
}

// δ∘δ vanishes on every generator; by the derivation property this extends to
// the whole algebra. Failures come back as a report.
inline const NilpotencyReport& check_nilpotent(const Complex& c)
{
    return c.nilpotency();
}

} // namespace kt
