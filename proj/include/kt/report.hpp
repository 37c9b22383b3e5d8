#pragma once

#include "kt/augmentation.hpp"
#include "kt/cohomology.hpp"

#include <json.hpp>

#include <iomanip>
#include <sstream>
#include <string>

// Text and machine-readable renderings of the analysis results. Output is a
// pure function of the inputs (no timestamps, no paths), so identical runs
// produce identical bytes. Rows with an empty chain space are omitted from the
// renderings; dimensions and ordering follow the table itself.

namespace kt {
namespace report {

using Json = nlohmann::ordered_json;

inline std::string text(const GeneratorTable& t, const CohomologyTable& table,
                        bool with_representatives = false)
{
    std::ostringstream out;
    out << "   n    d    chain   kernel    image        H\n";
    for (const CohomologyRow& r : table.rows) {
        if (r.dim_chain == 0)
            continue;
        out << std::setw(4) << r.antifield_number << ' ' << std::setw(4) << r.weight << ' '
            << std::setw(8) << r.dim_chain << ' ' << std::setw(8) << r.dim_kernel << ' '
            << std::setw(8) << r.dim_image_from_above << ' ' << std::setw(8) << r.dim_h << '\n';
        if (with_representatives)
            for (const Polynomial& rep : r.representatives)
                out << "        H(" << r.antifield_number << "," << r.weight
                    << ") <- " << to_string(t, rep) << '\n';
    }
    return out.str();
}

inline Json json(const GeneratorTable& t, const CohomologyTable& table,
                 bool with_representatives = false)
{
    Json rows = Json::array();
    for (const CohomologyRow& r : table.rows) {
        if (r.dim_chain == 0)
            continue;
        Json row;
        row["antifield_number"] = r.antifield_number;
        row["weight"] = r.weight;
        row["chain"] = r.dim_chain;
        row["kernel"] = r.dim_kernel;
        row["image_from_above"] = r.dim_image_from_above;
        row["h"] = r.dim_h;
        if (with_representatives) {
            Json reps = Json::array();
            for (const Polynomial& rep : r.representatives)
                reps.push_back(to_string(t, rep));
            row["representatives"] = std::move(reps);
        }
        rows.push_back(std::move(row));
    }
    Json doc;
    doc["format"] = "kt-report";
    doc["command"] = "cohomology";
    doc["rows"] = std::move(rows);
    return doc;
}

inline std::string text(const GeneratorTable& t, const NilpotencyReport& r)
{
    if (r.ok)
        return "nilpotency: ok (δ² = 0 on every generator)\n";
    std::ostringstream out;
    out << "nilpotency: FAILED on " << r.failures.size() << " generator(s)\n";
    for (const NilpotencyFailure& f : r.failures)
        out << "  δ²(" << t.gen(f.generator).name << ") = " << to_string(t, f.delta_squared)
            << '\n';
    return out.str();
}

inline Json json(const GeneratorTable& t, const NilpotencyReport& r)
{
    Json doc;
    doc["format"] = "kt-report";
    doc["command"] = "nilpotency";
    doc["ok"] = r.ok;
    Json failures = Json::array();
    for (const NilpotencyFailure& f : r.failures) {
        Json item;
        item["generator"] = t.gen(f.generator).name;
        item["delta_squared"] = to_string(t, f.delta_squared);
        failures.push_back(std::move(item));
    }
    doc["failures"] = std::move(failures);
    return doc;
}

inline std::string text(const AugmentationReport& r)
{
    std::ostringstream out;
    if (r.rounds.empty())
        out << "no identities found; complex unchanged\n";
    for (std::size_t i = 0; i < r.rounds.size(); ++i) {
        const AugmentationRound& round = r.rounds[i];
        out << "round " << (i + 1) << ": level " << round.level << ", "
            << round.identities.size() << " identit" << (round.identities.size() == 1 ? "y" : "ies")
            << '\n';
        for (const std::string& s : round.identities)
            out << "  identity: " << s << '\n';
        for (const std::string& s : round.added_generators)
            out << "  added: " << s << '\n';
    }
    out << "terminated: " << (r.terminated ? "yes" : "no") << '\n';
    for (const std::string& n : r.notes)
        out << "note: " << n << '\n';
    return out.str();
}

inline Json json(const AugmentationReport& r)
{
    Json doc;
    doc["format"] = "kt-report";
    doc["command"] = "augment";
    doc["terminated"] = r.terminated;
    Json rounds = Json::array();
    for (const AugmentationRound& round : r.rounds) {
        Json item;
        item["level"] = round.level;
        item["identities"] = round.identities;
        item["added_generators"] = round.added_generators;
        rounds.push_back(std::move(item));
    }
    doc["rounds"] = std::move(rounds);
    doc["notes"] = r.notes;
    return doc;
}

inline std::string text(const AcyclicityReport& r)
{
    std::ostringstream out;
    out << "acyclic: " << (r.acyclic ? "yes" : "no") << '\n';
    if (!r.offending.empty()) {
        out << "offending blocks:\n";
        out << "   n    d        H\n";
        for (const OffendingBlock& b : r.offending)
            out << std::setw(4) << b.antifield_number << ' ' << std::setw(4) << b.weight << ' '
                << std::setw(8) << b.dim_h << '\n';
    }
    out << "constants block H(0,0) = " << r.constants_dim << " (reported separately)\n";
    return out.str();
}

inline Json json(const AcyclicityReport& r)
{
    Json doc;
    doc["format"] = "kt-report";
    doc["command"] = "verify";
    doc["acyclic"] = r.acyclic;
    Json offending = Json::array();
    for (const OffendingBlock& b : r.offending) {
        Json item;
        item["antifield_number"] = b.antifield_number;
        item["weight"] = b.weight;
        item["h"] = b.dim_h;
        offending.push_back(std::move(item));
    }
    doc["offending"] = std::move(offending);
    doc["constants_h"] = r.constants_dim;
    return doc;
}

inline std::string text_grassmann(int value)
{
    return "grassmann number: " + std::to_string(value) + "\n";
}

inline Json json_grassmann(int value)
{
    Json doc;
    doc["format"] = "kt-report";
    doc["command"] = "grassmann";
    doc["value"] = value;
    return doc;
}

} // namespace report
} // namespace kt
