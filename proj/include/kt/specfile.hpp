#pragma once

#include "kt/complex.hpp"

#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>

// Problem-spec files: one self-describing JSON document holding the generator
// table, the differential, and free-form string metadata. Rational
// coefficients travel as "p/q" strings so the round trip is exact on every
// platform. Save → load is the identity on the complex.

namespace kt {

class SpecError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct SpecDocument {
    Complex complex;
    std::map<std::string, std::string> metadata;
};

namespace detail {

using Json = nlohmann::ordered_json;

inline const Json& require_field(const Json& obj, const char* key, const std::string& where)
{
    auto it = obj.find(key);
    if (it == obj.end())
        throw SpecError(where + ": missing field \"" + key + "\"");
    return *it;
}

} // namespace detail

inline SpecDocument parse_spec(const std::string& text)
{
    detail::Json doc;
    try {
        doc = detail::Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw SpecError(std::string("spec parse error: ") + e.what());
    }
    if (!doc.is_object())
        throw SpecError("spec parse error: top-level value must be an object");

    if (auto it = doc.find("format"); it != doc.end() && *it != "kt-complex")
        throw SpecError("spec: unknown format \"" + it->get<std::string>() + "\"");

    GeneratorTable table;
    const detail::Json& gens = detail::require_field(doc, "generators", "spec");
    if (!gens.is_array())
        throw SpecError("spec: \"generators\" must be an array");
    std::size_t index = 0;
    for (const auto& g : gens) {
        const std::string where = "generator " + std::to_string(index);
        if (!g.is_object())
            throw SpecError(where + ": must be an object");
        const detail::Json& name = detail::require_field(g, "name", where);
        if (!name.is_string())
            throw SpecError(where + ": \"name\" must be a string");
        const detail::Json& afn = detail::require_field(g, "antifield_number", where);
        if (!afn.is_number_integer())
            throw SpecError(where + " (\"" + name.get<std::string>() +
                            "\"): \"antifield_number\" must be an integer");
        const detail::Json& par = detail::require_field(g, "parity", where);
        if (!par.is_string())
            throw SpecError(where + " (\"" + name.get<std::string>() +
                            "\"): \"parity\" must be a string");
        int weight = 1;
        if (auto it = g.find("weight"); it != g.end()) {
            if (!it->is_number_integer())
                throw SpecError(where + " (\"" + name.get<std::string>() +
                                "\"): \"weight\" must be an integer");
            weight = it->get<int>();
        }
        try {
            table.add(name.get<std::string>(), afn.get<int>(),
                      parity_from_string(par.get<std::string>()), weight);
        } catch (const std::invalid_argument& e) {
            throw SpecError(where + ": " + e.what());
        }
        ++index;
    }

    DifferentialRule rule;
    if (auto it = doc.find("differential"); it != doc.end()) {
        if (!it->is_object())
            throw SpecError("spec: \"differential\" must be an object");
        for (const auto& [gen_name, terms] : it->items()) {
            const auto id = table.find(gen_name);
            if (!id)
                throw SpecError("differential: unknown generator name \"" + gen_name + "\"");
            const std::string where = "differential of \"" + gen_name + "\"";
            if (!terms.is_array())
                throw SpecError(where + ": must be an array of terms");
            Polynomial image;
            for (const auto& term : terms) {
                if (!term.is_object())
                    throw SpecError(where + ": each term must be an object");
                const detail::Json& coeff = detail::require_field(term, "coefficient", where);
                if (!coeff.is_string())
                    throw SpecError(where + ": \"coefficient\" must be a rational string");
                Rational c;
                try {
                    c = parse_rational(coeff.get<std::string>());
                } catch (const std::invalid_argument& e) {
                    throw SpecError(where + ": " + e.what());
                }
                const detail::Json& mono = detail::require_field(term, "monomial", where);
                if (!mono.is_object())
                    throw SpecError(where + ": \"monomial\" must be an object of name: exponent");
                std::vector<std::pair<GenId, int>> factors;
                for (const auto& [factor_name, exp] : mono.items()) {
                    const auto fid = table.find(factor_name);
                    if (!fid)
                        throw SpecError(where + ": unknown generator name \"" + factor_name +
                                        "\" in a monomial");
                    if (!exp.is_number_integer() || exp.get<int>() < 1)
                        throw SpecError(where + ": exponent of \"" + factor_name +
                                        "\" must be a positive integer");
                    factors.emplace_back(*fid, exp.get<int>());
                }
                std::sort(factors.begin(), factors.end());
                for (std::size_t i = 0; i + 1 < factors.size(); ++i)
                    if (factors[i].first == factors[i + 1].first)
                        throw SpecError(where + ": repeated generator in a monomial");
                for (auto [fid, e] : factors)
                    if (table.gen(fid).parity == Parity::fermion && e != 1)
                        throw SpecError(where + ": fermionic generator \"" + table.gen(fid).name +
                                        "\" must have exponent 1");
                Monomial m;
                m.factors = std::move(factors);
                image.add_term(std::move(m), std::move(c));
            }
            rule.set(*id, std::move(image));
        }
    }

    std::map<std::string, std::string> metadata;
    if (auto it = doc.find("metadata"); it != doc.end()) {
        if (!it->is_object())
            throw SpecError("spec: \"metadata\" must be an object");
        for (const auto& [key, value] : it->items()) {
            if (!value.is_string())
                throw SpecError("metadata \"" + key + "\": values must be strings");
            metadata.emplace(key, value.get<std::string>());
        }
    }

    try {
        return SpecDocument{Complex(std::move(table), std::move(rule)), std::move(metadata)};
    } catch (const std::invalid_argument& e) {
        throw SpecError(std::string("spec: ") + e.what());
    }
}

inline std::string spec_to_string(const Complex& c,
                                  const std::map<std::string, std::string>& metadata = {})
{
    detail::Json doc;
    doc["format"] = "kt-complex";
    doc["version"] = 1;

    doc["metadata"] = detail::Json::object();
    for (const auto& [k, v] : metadata)
        doc["metadata"][k] = v;

    doc["generators"] = detail::Json::array();
    for (const Generator& g : c.table()) {
        detail::Json item;
        item["name"] = g.name;
        item["antifield_number"] = g.antifield_number;
        item["parity"] = std::string(to_string(g.parity));
        item["weight"] = g.weight;
        doc["generators"].push_back(std::move(item));
    }

    doc["differential"] = detail::Json::object();
    for (const Generator& g : c.table()) {
        const Polynomial& image = c.delta().image(g.id);
        if (image.is_zero())
            continue;
        detail::Json terms = detail::Json::array();
        for (const auto& [m, coeff] : image.terms()) {
            detail::Json term;
            term["coefficient"] = to_string(coeff);
            term["monomial"] = detail::Json::object();
            for (auto [fid, e] : m.factors)
                term["monomial"][c.table().gen(fid).name] = e;
            terms.push_back(std::move(term));
        }
        doc["differential"][g.name] = std::move(terms);
    }

    return doc.dump(2) + "\n";
}

inline SpecDocument load_spec(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in)
        throw SpecError("cannot open spec file: " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    try {
        return parse_spec(buf.str());
    } catch (const SpecError& e) {
        throw SpecError(path.string() + ": " + e.what());
    }
}

inline void save_spec(const Complex& c, const std::filesystem::path& path,
                      const std::map<std::string, std::string>& metadata = {})
{
    const std::string text = spec_to_string(c, metadata);
    std::ofstream out(path);
    if (!out)
        throw SpecError("cannot write spec file: " + path.string());
    out << text;
}

} // namespace kt
