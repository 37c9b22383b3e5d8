#pragma once

#include "kt/models.hpp"
#include "kt/report.hpp"
#include "kt/specfile.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <map>
#include <ostream>
#include <string>
#include <vector>

// Command-line front end. Exit codes: 0 success (acyclic / nilpotent /
// terminated), 1 verification failure, 2 input error. Data goes to the output
// stream, diagnostics to the error stream; files are written only after the
// whole computation succeeded, so no partial data file ever appears.

namespace kt {
namespace cli {

namespace detail {

inline void write_file(const std::filesystem::path& path, const std::string& content,
                       const char* what)
{
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error(std::string("cannot write ") + what + ": " + path.string());
    out << content;
    if (!out)
        throw std::runtime_error(std::string("failed writing ") + what + ": " + path.string());
}

inline models::ModeRange parse_mode_range(const std::string& text)
{
    const auto sep = text.find("..");
    if (sep == std::string::npos)
        throw std::invalid_argument("mode range must look like \"-4..4\", got \"" + text + "\"");
    try {
        models::ModeRange r;
        std::size_t used = 0;
        r.lo = std::stoi(text.substr(0, sep), &used);
        if (used != sep)
            throw std::invalid_argument("");
        const std::string hi = text.substr(sep + 2);
        r.hi = std::stoi(hi, &used);
        if (used != hi.size())
            throw std::invalid_argument("");
        return r;
    } catch (const std::exception&) {
        throw std::invalid_argument("mode range must look like \"-4..4\", got \"" + text + "\"");
    }
}

} // namespace detail

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"ktc — Koszul–Tate/BV complexes for lattice field equations: exact cohomology, "
                 "identity detection, and automatic augmentation to acyclicity"};
    app.require_subcommand(1);

    // build
    auto* build = app.add_subcommand("build", "build a model complex and emit its spec");
    std::string model;
    build->add_option("model", model, "one of: oscillator, oscillator_ghost, maxwell, scalar2d, random_linear")
        ->required()
        ->check(CLI::IsMember({"oscillator", "oscillator_ghost", "maxwell", "scalar2d", "random_linear"}));
    std::string modes = "-4..4";
    int omega = 0;
    bool ghosts = false;
    int radius = 1;
    int order = 4;
    std::string tower = "full";
    int size = 4;
    int corank = 0;
    unsigned seed = 1;
    std::string build_output;
    build->add_option("--modes", modes, "oscillator mode range, e.g. -4..4");
    build->add_option("--omega", omega, "oscillator frequency (nonzero lattice mode)");
    build->add_flag("--ghosts", ghosts, "oscillator: include the ghost variant");
    build->add_option("--radius", radius, "maxwell momentum box radius");
    build->add_option("--order", order, "scalar2d Taylor truncation order M");
    build->add_option("--tower", tower, "scalar2d antifield tower: none, theta, full")
        ->check(CLI::IsMember({"none", "theta", "full"}));
    build->add_option("--size", size, "random_linear system size n");
    build->add_option("--corank", corank, "random_linear corank p (number of solutions)");
    build->add_option("--seed", seed, "random_linear stream seed");
    build->add_option("-o,--output", build_output, "write the spec here instead of stdout");

    // shared spec + report options
    std::string spec_path;
    std::string report_path;
    int max_antifield = 0;
    int max_weight = 0;
    bool representatives = false;
    int max_level = 0;
    std::string prefix = "theta";
    std::string augment_output;

    auto* nilpotency = app.add_subcommand("nilpotency", "check δ² = 0 on every generator");
    nilpotency->add_option("spec", spec_path, "problem spec file")->required();
    nilpotency->add_option("--out", report_path, "write the machine-readable report here");

    auto* cohomology_cmd = app.add_subcommand("cohomology", "per-block cohomology table");
    cohomology_cmd->add_option("spec", spec_path, "problem spec file")->required();
    cohomology_cmd->add_option("--max-antifield", max_antifield, "largest antifield number")->required();
    cohomology_cmd->add_option("--max-weight", max_weight, "largest weight")->required();
    cohomology_cmd->add_flag("--representatives", representatives, "include reduced cocycle representatives");
    cohomology_cmd->add_option("--out", report_path, "write the machine-readable report here");

    auto* augment = app.add_subcommand("augment", "add antifields until the complex is acyclic");
    augment->add_option("spec", spec_path, "problem spec file")->required();
    augment->add_option("--max-level", max_level, "do not create generators above this level")->required();
    augment->add_option("-o,--output", augment_output, "write the augmented spec here")->required();
    augment->add_option("--prefix", prefix, "name prefix for synthesized generators");
    augment->add_option("--out", report_path, "write the machine-readable report here");

    auto* verify = app.add_subcommand("verify", "check acyclicity away from degree zero");
    verify->add_option("spec", spec_path, "problem spec file")->required();
    verify->add_option("--max-antifield", max_antifield, "largest antifield number")->required();
    verify->add_option("--max-weight", max_weight, "largest weight")->required();
    verify->add_option("--out", report_path, "write the machine-readable report here");

    auto* grassmann = app.add_subcommand("grassmann", "bosonic minus fermionic generator count");
    grassmann->add_option("spec", spec_path, "problem spec file")->required();
    grassmann->add_option("--out", report_path, "write the machine-readable report here");

    std::vector<std::string> argv_storage;
    argv_storage.reserve(args.size() + 1);
    argv_storage.push_back("ktc");
    for (const std::string& a : args)
        argv_storage.push_back(a);
    std::vector<char*> argv;
    for (std::string& s : argv_storage)
        argv.push_back(s.data());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "ktc: " << e.what() << "\n";
        return 2;
    }

    try {
        if (build->parsed()) {
            std::map<std::string, std::string> metadata;
            metadata["model"] = model;
            std::string spec_text;
            if (model == "oscillator" || model == "oscillator_ghost") {
                const models::ModeRange range = detail::parse_mode_range(modes);
                const bool with_ghosts = ghosts || model == "oscillator_ghost";
                metadata["modes"] = modes;
                metadata["omega"] = std::to_string(omega);
                metadata["ghosts"] = with_ghosts ? "true" : "false";
                spec_text = spec_to_string(models::build_oscillator(range, omega, with_ghosts), metadata);
            } else if (model == "maxwell") {
                metadata["radius"] = std::to_string(radius);
                metadata["note"] = "block-diagonal over k; the k=0 block has a vanishing gauge row "
                                   "and gets its antifields from automatic augmentation";
                spec_text = spec_to_string(models::build_maxwell(radius), metadata);
            } else if (model == "scalar2d") {
                const models::Scalar2dTower t = tower == "none"    ? models::Scalar2dTower::naive
                                                : tower == "theta" ? models::Scalar2dTower::theta_only
                                                                   : models::Scalar2dTower::full;
                metadata["order"] = std::to_string(order);
                metadata["tower"] = tower;
                spec_text = spec_to_string(models::build_scalar2d(order, t), metadata);
            } else { // random_linear
                const models::RandomLinearSystem sys = models::random_linear_matrix(size, corank, seed);
                metadata["size"] = std::to_string(size);
                metadata["corank"] = std::to_string(corank);
                metadata["seed"] = std::to_string(seed);
                metadata["effective_seed"] = std::to_string(sys.effective_seed);
                spec_text = spec_to_string(models::build_random_linear(size, corank, seed), metadata);
            }
            if (build_output.empty())
                out << spec_text;
            else
                detail::write_file(build_output, spec_text, "spec");
            return 0;
        }

        if (nilpotency->parsed()) {
            const SpecDocument doc = load_spec(spec_path);
            const NilpotencyReport& rep = check_nilpotent(doc.complex);
            out << report::text(doc.complex.table(), rep);
            if (!report_path.empty())
                detail::write_file(report_path, report::json(doc.complex.table(), rep).dump(2) + "\n",
                                   "report");
            return rep.ok ? 0 : 1;
        }

        if (cohomology_cmd->parsed()) {
            const SpecDocument doc = load_spec(spec_path);
            const CohomologyTable table =
                cohomology_table(doc.complex, max_antifield, max_weight, representatives);
            out << report::text(doc.complex.table(), table, representatives);
            if (!report_path.empty())
                detail::write_file(report_path,
                                   report::json(doc.complex.table(), table, representatives).dump(2) + "\n",
                                   "report");
            return 0;
        }

        if (augment->parsed()) {
            const SpecDocument doc = load_spec(spec_path);
            ResolveResult res = resolve(doc.complex, max_level, prefix);
            out << report::text(res.report);
            const std::string spec_text = spec_to_string(res.complex, doc.metadata);
            detail::write_file(augment_output, spec_text, "augmented spec");
            if (!report_path.empty())
                detail::write_file(report_path, report::json(res.report).dump(2) + "\n", "report");
            return res.report.terminated ? 0 : 1;
        }

        if (verify->parsed()) {
            const SpecDocument doc = load_spec(spec_path);
            const AcyclicityReport rep = verify_acyclic(doc.complex, max_antifield, max_weight);
            out << report::text(rep);
            if (!report_path.empty())
                detail::write_file(report_path, report::json(rep).dump(2) + "\n", "report");
            return rep.acyclic ? 0 : 1;
        }

        if (grassmann->parsed()) {
            const SpecDocument doc = load_spec(spec_path);
            const int value = grassmann_number(doc.complex);
            out << report::text_grassmann(value);
            if (!report_path.empty())
                detail::write_file(report_path, report::json_grassmann(value).dump(2) + "\n", "report");
            return 0;
        }
    } catch (const std::exception& e) {
        err << "ktc: " << e.what() << "\n";
        return 2;
    }
    return 2;
}

} // namespace cli
} // namespace kt
