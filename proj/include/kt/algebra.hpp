#pragma once

#include "kt/rational.hpp"

#include <algorithm>
#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

// Free graded-supercommutative algebra over the rationals. All signs are
// defined relative to one global convention: the canonical order of a monomial
// is generator-id (creation) order, and reordering a word picks up one minus
// sign per transposition of two fermionic factors.

namespace kt {

using GenId = std::uint32_t;

enum class Parity : std::uint8_t { boson, fermion };

inline Parity opposite(Parity p)
{
    return p == Parity::boson ? Parity::fermion : Parity::boson;
}

inline std::string_view to_string(Parity p)
{
    return p == Parity::boson ? "boson" : "fermion";
}

inline Parity parity_from_string(std::string_view s)
{
    if (s == "boson")
        return Parity::boson;
    if (s == "fermion")
        return Parity::fermion;
    throw std::invalid_argument("parity must be \"boson\" or \"fermion\", got \"" + std::string(s) + "\"");
}

struct Generator {
    GenId id = 0;
    std::string name;
    int antifield_number = 0; // negative for ghosts
    Parity parity = Parity::boson;
    int weight = 1;           // >= 1
};

class GeneratorTable {
public:
    GenId add(std::string name, int antifield_number, Parity parity, int weight = 1)
    {
        if (name.empty())
            throw std::invalid_argument("generator name must not be empty");
        if (weight < 1)
            throw std::invalid_argument("generator \"" + name + "\": weight must be >= 1");
        if (index_.count(name))
            throw std::invalid_argument("duplicate generator name \"" + name + "\"");
        const GenId id = static_cast<GenId>(gens_.size());
        index_.emplace(name, id);
        gens_.push_back(Generator{id, std::move(name), antifield_number, parity, weight});
        return id;
    }

    const Generator& gen(GenId id) const
    {
        if (id >= gens_.size())
            throw std::out_of_range("unknown generator id");
        return gens_[id];
    }

    std::size_t size() const { return gens_.size(); }
    bool empty() const { return gens_.empty(); }

    std::optional<GenId> find(std::string_view name) const
    {
        auto it = index_.find(name);
        if (it == index_.end())
            return std::nullopt;
        return it->second;
    }

    auto begin() const { return gens_.begin(); }
    auto end() const { return gens_.end(); }

    int min_antifield_number() const
    {
        int m = 0;
        for (const Generator& g : gens_)
            m = std::min(m, g.antifield_number);
        return m;
    }

    int max_antifield_number() const
    {
        int m = 0;
        for (const Generator& g : gens_)
            m = std::max(m, g.antifield_number);
        return m;
    }

    bool operator==(const GeneratorTable& other) const
    {
        if (gens_.size() != other.gens_.size())
            return false;
        for (std::size_t i = 0; i < gens_.size(); ++i) {
            const Generator& a = gens_[i];
            const Generator& b = other.gens_[i];
            if (a.name != b.name || a.antifield_number != b.antifield_number ||
                a.parity != b.parity || a.weight != b.weight)
                return false;
        }
        return true;
    }

private:
    std::vector<Generator> gens_;
    std::map<std::string, GenId, std::less<>> index_;
};

// Product of generator powers with strictly increasing ids; fermionic factors
// carry exponent exactly 1. The empty factor list is the unit monomial.
struct Monomial {
    std::vector<std::pair<GenId, int>> factors;

    bool is_one() const { return factors.empty(); }
    auto operator<=>(const Monomial&) const = default;

    static Monomial one() { return Monomial{}; }

    static Monomial single(GenId g, int exp = 1)
    {
        Monomial m;
        m.factors.emplace_back(g, exp);
        return m;
    }
};

inline int antifield_number(const GeneratorTable& t, const Monomial& m)
{
    int n = 0;
    for (auto [g, e] : m.factors)
        n += e * t.gen(g).antifield_number;
    return n;
}

inline int weight(const GeneratorTable& t, const Monomial& m)
{
    int w = 0;
    for (auto [g, e] : m.factors)
        w += e * t.gen(g).weight;
    return w;
}

inline Parity parity(const GeneratorTable& t, const Monomial& m)
{
    int fermions = 0;
    for (auto [g, e] : m.factors)
        if (t.gen(g).parity == Parity::fermion)
            fermions += e;
    return (fermions & 1) ? Parity::fermion : Parity::boson;
}

struct Normalized {
    int sign = 1;        // meaningless when zero
    Monomial monomial;
    bool zero = false;   // a fermionic generator repeated
};

// Sorts a word of generators into canonical order. The sign counts inversions
// between fermionic pairs; a repeated fermion squares to zero.
inline Normalized normalize(const GeneratorTable& t, std::span<const GenId> ids)
{
    Normalized out;
    for (GenId g : ids)
        (void)t.gen(g); // validates

    int inversions = 0;
    for (std::size_t i = 0; i < ids.size(); ++i) {
        if (t.gen(ids[i]).parity != Parity::fermion)
            continue;
        for (std::size_t j = i + 1; j < ids.size(); ++j) {
            if (t.gen(ids[j]).parity != Parity::fermion)
                continue;
            if (ids[i] == ids[j]) {
                out.zero = true;
                return out;
            }
            if (ids[i] > ids[j])
                ++inversions;
        }
    }
    out.sign = (inversions & 1) ? -1 : 1;

    std::vector<GenId> sorted(ids.begin(), ids.end());
    std::sort(sorted.begin(), sorted.end());
    for (GenId g : sorted) {
        if (!out.monomial.factors.empty() && out.monomial.factors.back().first == g)
            ++out.monomial.factors.back().second;
        else
            out.monomial.factors.emplace_back(g, 1);
    }
    return out;
}

// Merges two canonical monomials into their graded product. Returns zero when
// a fermion repeats; otherwise the Koszul sign of interleaving the right word
// into the left one.
inline Normalized merge(const GeneratorTable& t, const Monomial& a, const Monomial& b)
{
    Normalized out;

    // Fermions of a with id greater than a given fermion of b each contribute
    // one transposition.
    std::vector<GenId> a_fermions;
    for (auto [g, e] : a.factors)
        if (t.gen(g).parity == Parity::fermion)
            a_fermions.push_back(g);

    int inversions = 0;
    for (auto [g, e] : b.factors) {
        if (t.gen(g).parity != Parity::fermion)
            continue;
        for (GenId f : a_fermions) {
            if (f == g) {
                out.zero = true;
                return out;
            }
            if (f > g)
                ++inversions;
        }
    }
    out.sign = (inversions & 1) ? -1 : 1;

    auto ia = a.factors.begin();
    auto ib = b.factors.begin();
    auto& f = out.monomial.factors;
    while (ia != a.factors.end() || ib != b.factors.end()) {
        if (ib == b.factors.end() || (ia != a.factors.end() && ia->first < ib->first))
            f.push_back(*ia++);
        else if (ia == a.factors.end() || ib->first < ia->first)
            f.push_back(*ib++);
        else {
            f.emplace_back(ia->first, ia->second + ib->second);
            ++ia;
            ++ib;
        }
    }
    return out;
}

// Terms mapped to nonzero exact coefficients; the empty map is zero.
class Polynomial {
public:
    Polynomial() = default;

    static Polynomial constant(Rational c)
    {
        Polynomial p;
        p.add_term(Monomial::one(), std::move(c));
        return p;
    }

    static Polynomial term(Monomial m, Rational c)
    {
        Polynomial p;
        p.add_term(std::move(m), std::move(c));
        return p;
    }

    bool is_zero() const { return terms_.empty(); }
    const std::map<Monomial, Rational>& terms() const { return terms_; }

    void add_term(const Monomial& m, const Rational& c)
    {
        if (c == 0)
            return;
        auto it = terms_.find(m);
        if (it == terms_.end()) {
            terms_.emplace(m, c);
        } else {
            it->second += c;
            if (it->second == 0)
                terms_.erase(it);
        }
    }

    Polynomial& operator+=(const Polynomial& other)
    {
        for (const auto& [m, c] : other.terms_)
            add_term(m, c);
        return *this;
    }

    Polynomial& operator-=(const Polynomial& other)
    {
        for (const auto& [m, c] : other.terms_)
            add_term(m, -c);
        return *this;
    }

    Polynomial& operator*=(const Rational& c)
    {
        if (c == 0) {
            terms_.clear();
            return *this;
        }
        for (auto& [m, coeff] : terms_)
            coeff *= c;
        return *this;
    }

    friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
    friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
    friend Polynomial operator*(Polynomial a, const Rational& c) { return a *= c; }
    friend Polynomial operator*(const Rational& c, Polynomial a) { return a *= c; }

    bool operator==(const Polynomial&) const = default;

private:
    std::map<Monomial, Rational> terms_;
};

inline Polynomial multiply(const GeneratorTable& t, const Polynomial& a, const Polynomial& b)
{
    Polynomial out;
    for (const auto& [ma, ca] : a.terms())
        for (const auto& [mb, cb] : b.terms()) {
            Normalized n = merge(t, ma, mb);
            if (n.zero)
                continue;
            out.add_term(std::move(n.monomial), ca * cb * n.sign);
        }
    return out;
}

// All monomials of the given total antifield number and weight, in a fixed
// deterministic order (higher exponents of earlier generators first, so the
// weight-1 slice lists generators in id order). Closed: every monomial of the
// bidegree appears exactly once.
inline std::vector<Monomial> enumerate_basis(const GeneratorTable& t, int antifield_number, int weight)
{
    std::vector<Monomial> out;
    if (weight < 0)
        return out;
    if (t.empty()) {
        if (antifield_number == 0 && weight == 0)
            out.push_back(Monomial::one());
        return out;
    }

    const int min_afn = t.min_antifield_number();
    const int max_afn = t.max_antifield_number();
    const auto num_gens = static_cast<GenId>(t.size());

    std::vector<std::pair<GenId, int>> stack;
    auto recurse = [&](auto&& self, GenId g, int rem_weight, int rem_afn) -> void {
        // A monomial of weight w has at most w factors, each contributing at
        // most max_afn (at least min_afn) per unit of weight.
        if (rem_afn > rem_weight * std::max(0, max_afn) ||
            rem_afn < rem_weight * std::min(0, min_afn))
            return;
        if (g == num_gens) {
            if (rem_weight == 0 && rem_afn == 0) {
                Monomial m;
                m.factors = stack;
                out.push_back(std::move(m));
            }
            return;
        }
        const Generator& gen = t.gen(g);
        int max_exp = rem_weight / gen.weight;
        if (gen.parity == Parity::fermion)
            max_exp = std::min(max_exp, 1);
        for (int e = max_exp; e >= 0; --e) {
            if (e > 0)
                stack.emplace_back(g, e);
            self(self, g + 1, rem_weight - e * gen.weight, rem_afn - e * gen.antifield_number);
            if (e > 0)
                stack.pop_back();
        }
    };
    recurse(recurse, 0, weight, antifield_number);
    return out;
}

// Display form used verbatim in reports: name^exponent joined by "·".
inline std::string to_string(const GeneratorTable& t, const Monomial& m)
{
    if (m.is_one())
        return "1";
    std::string s;
    for (auto [g, e] : m.factors) {
        if (!s.empty())
            s += "·";
        s += t.gen(g).name;
        if (e != 1) {
            s += '^';
            s += std::to_string(e);
        }
    }
    return s;
}

inline std::string to_string(const GeneratorTable& t, const Polynomial& p)
{
    if (p.is_zero())
        return "0";
    std::string s;
    bool first = true;
    for (const auto& [m, c] : p.terms()) {
        const bool negative = c < 0;
        const Rational mag = negative ? Rational(-c) : c;
        if (first) {
            if (negative)
                s += '-';
            first = false;
        } else {
            s += negative ? " - " : " + ";
        }
        if (m.is_one())
            s += to_string(mag);
        else {
            if (mag != 1) {
                s += to_string(mag);
                s += "·";
            }
            s += to_string(t, m);
        }
    }
    return s;
}

} // namespace kt
