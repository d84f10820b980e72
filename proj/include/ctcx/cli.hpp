#pragma once

// Command-line front end. Every command writes one JSON document (to --out
// or stdout) and returns 0 on pass, 1 on fail, 2 on usage, parse,
// invariant or file errors.

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ctcx/bounds.hpp"
#include "ctcx/classes.hpp"
#include "ctcx/disk.hpp"
#include "ctcx/errors.hpp"
#include "ctcx/series.hpp"
#include "ctcx/series_json.hpp"
#include "ctcx/suite.hpp"
#include "ctcx/synthesis.hpp"

namespace ctcx::cli {

enum ExitCode : int { kPass = 0, kFail = 1, kUsage = 2 };

struct RunConfig {
    std::string command;
    std::string f;
    std::string g;
    std::string name;
    int k = 1;
    double lambda = 0.0;
    double mu = 0.0;
    double A = 1.0;
    double B = -1.0;
    std::optional<double> alpha;
    std::optional<double> gamma;
    double delta = 0.0;
    double d1 = 2.0;
    std::size_t order = kDefaultOrder;
    std::size_t nmax = 16;
    std::vector<double> grid_radii;
    std::size_t grid_angles = 720;
    std::string grid_file;
    std::uint64_t seed = kDefaultSeed;
    std::size_t trials = kDefaultTrials;
    std::string out;

    [[nodiscard]] ClassParams params() const { return {k, lambda, mu}; }
    [[nodiscard]] MoebiusTarget target() const { return {A, B}; }

    void validate() const {
        if (order < 8 || order > 256) {
            throw InvariantViolation("--order must lie in [8, 256]");
        }
        params().validate();
        target().validate();
    }
};

inline constexpr const char* kCatalogPrefix = "catalog:";

/// A `catalog:<spec>` reference or a path to a series JSON file. A bare
/// catalog spec such as `koebe` is accepted when no file of that name exists.
inline Series resolve_series(const std::string& ref, std::size_t order) {
    if (ref.empty()) {
        throw InvariantViolation("missing series argument");
    }
    if (ref.rfind(kCatalogPrefix, 0) == 0) {
        return catalog_from_spec(ref.substr(std::char_traits<char>::length(kCatalogPrefix)), order);
    }
    if (!std::filesystem::exists(ref)) {
        const std::string name = ref.substr(0, ref.find('('));
        const auto& names = catalog_names();
        if (std::find(names.begin(), names.end(), name) != names.end()) {
            return catalog_from_spec(ref, order);
        }
    }
    return series_from_json(read_json_file(ref));
}

inline DiskGrid resolve_grid(const RunConfig& cfg) {
    if (!cfg.grid_file.empty()) {
        return grid_from_json(read_json_file(cfg.grid_file));
    }
    if (!cfg.grid_radii.empty()) {
        return make_grid(cfg.grid_radii, cfg.grid_angles);
    }
    DiskGrid g = default_grid();
    if (cfg.grid_angles != g.angles_per_circle) {
        g = make_grid(g.radii, cfg.grid_angles);
    }
    return g;
}

namespace detail {

inline void emit(const RunConfig& cfg, const nlohmann::json& doc, std::ostream& out) {
    const std::string text = doc.dump(2) + "\n";
    if (cfg.out.empty()) {
        out << text;
    } else {
        write_text_file(cfg.out, text);
    }
}

/// Catalog inputs to certifiers are rebuilt at the certification order so
/// that the tail on the outer circle does not swamp boundary margins.
inline std::size_t certification_order(const RunConfig& cfg) { return std::max(cfg.order, kCertificationOrder); }

inline int run_check(const RunConfig& cfg, std::ostream& out) {
    const std::size_t order = certification_order(cfg);
    const Series f = resolve_series(cfg.f, order);
    const Series g = resolve_series(cfg.g, order);
    const auto report = certify_membership(f, g, cfg.params(), cfg.target(), resolve_grid(cfg));
    emit(cfg, report_to_json(report), out);
    return report.pass ? kPass : kFail;
}

inline int run_synth(const RunConfig& cfg, std::ostream& out) {
    Rng rng(cfg.seed);
    const Series g = resolve_series(cfg.g.empty() ? std::string("catalog:identity") : cfg.g, cfg.order);
    const auto member = synthesize_member(random_witness(rng), g.truncated(cfg.order), cfg.params(), cfg.target(),
                                          cfg.order);
    Series f = member.f;
    if (cfg.gamma) {
        f = bernardi_transform(f, *cfg.gamma);
    }
    emit(cfg, series_to_json(f.retagged("f")), out);
    return kPass;
}

inline int run_bounds(const RunConfig& cfg, std::ostream& out) {
    const Series f = resolve_series(cfg.f, cfg.order);
    const auto report = verify_coefficient_bounds(f, cfg.params(), PhiExpansion::from_target(cfg.target()), cfg.nmax);
    emit(cfg, bound_rows_to_json(report), out);
    return report.pass ? kPass : kFail;
}

inline int run_fs(const RunConfig& cfg, std::ostream& out) {
    const Series f = resolve_series(cfg.f, cfg.order);
    const double functional = fekete_szego_functional(f, cfg.delta);
    const auto bound = fekete_szego_bound(cfg.params(), PhiExpansion::from_target(cfg.target()), {cfg.delta, cfg.d1});
    const bool within_bound = functional <= bound.value + kBoundSlackTolerance;
    nlohmann::json doc = fs_report_to_json(bound);
    doc["functional"] = functional;
    doc["delta"] = cfg.delta;
    doc["d1"] = cfg.d1;
    doc["within_bound"] = within_bound;
    emit(cfg, doc, out);
    return within_bound ? kPass : kFail;
}

inline int run_sufficient(const RunConfig& cfg, std::ostream& out) {
    const Series f = resolve_series(cfg.f, cfg.order);
    const Series g = resolve_series(cfg.g, cfg.order);
    const auto report = sufficient_condition(f, g, cfg.params(), cfg.target());
    emit(cfg, sufficient_to_json(report), out);
    return report.holds ? kPass : kFail;
}

inline int run_suite_command(const RunConfig& cfg, std::ostream& out) {
    const auto report = run_suite(cfg.seed, cfg.trials);
    emit(cfg, suite_to_json(report), out);
    return report.all_passed() ? kPass : kFail;
}

inline int run_catalog(const RunConfig& cfg, std::ostream& out) {
    std::string spec = !cfg.name.empty() ? cfg.name : cfg.f;
    if (spec.rfind(kCatalogPrefix, 0) == 0) {
        spec = spec.substr(std::char_traits<char>::length(kCatalogPrefix));
    }
    if (spec.empty()) {
        throw InvariantViolation("catalog: --name is required");
    }
    if (spec == "gen_koebe" && cfg.alpha) {
        spec += "(" + std::to_string(*cfg.alpha) + ")";
    }
    emit(cfg, series_to_json(catalog_from_spec(spec, cfg.order)), out);
    return kPass;
}

}  // namespace detail

/// Executes a parsed configuration. Library errors map to exit status 2.
inline int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    try {
        cfg.validate();
        if (cfg.command == "check") return detail::run_check(cfg, out);
        if (cfg.command == "synth") return detail::run_synth(cfg, out);
        if (cfg.command == "bounds") return detail::run_bounds(cfg, out);
        if (cfg.command == "fs") return detail::run_fs(cfg, out);
        if (cfg.command == "sufficient") return detail::run_sufficient(cfg, out);
        if (cfg.command == "suite") return detail::run_suite_command(cfg, out);
        if (cfg.command == "catalog") return detail::run_catalog(cfg, out);
        err << "error: unknown command '" << cfg.command << "'\n";
        return kUsage;
    } catch (const InvariantViolation& e) {
        err << "InvariantViolation: " << e.what() << "\n";
    } catch (const ParseError& e) {
        err << "ParseError: " << e.what() << "\n";
    } catch (const FileIOError& e) {
        err << "FileIO: " << e.what() << "\n";
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
    }
    return kUsage;
}

/// Parses argv into a RunConfig and runs it.
inline int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Certify and explore the close-to-convex class K_s^(k)(lambda, mu, A, B)"};
    app.require_subcommand(1);
    RunConfig cfg;

    const auto add_common = [&cfg](CLI::App* sub) {
        sub->add_option("--f,--member", cfg.f, "series JSON file or catalog:<name>");
        sub->add_option("--g", cfg.g, "series JSON file or catalog:<name>");
        sub->add_option("--k", cfg.k, "rotation order k (1..16)");
        sub->add_option("--lambda", cfg.lambda, "class parameter lambda");
        sub->add_option("--mu", cfg.mu, "class parameter mu");
        sub->add_option("--A", cfg.A, "Moebius target A");
        sub->add_option("--B", cfg.B, "Moebius target B");
        sub->add_option("--alpha", cfg.alpha, "order alpha for gen_koebe");
        sub->add_option("--gamma", cfg.gamma, "Bernardi transform parameter applied to synthesized output");
        sub->add_option("--delta", cfg.delta, "Fekete-Szego weight");
        sub->add_option("--d1", cfg.d1, "first coefficient of h = (1+w)/(1-w) for the Fekete-Szego bound");
        sub->add_option("--order", cfg.order, "truncation order (8..256)");
        sub->add_option("--nmax", cfg.nmax, "largest coefficient index for bounds");
        sub->add_option("--name", cfg.name, "catalog entry, e.g. gen_koebe(0.5)");
        sub->add_option("--grid-radii", cfg.grid_radii, "sampling radii in (0, 1)")->delimiter(',');
        sub->add_option("--grid-angles", cfg.grid_angles, "angles per circle");
        sub->add_option("--grid", cfg.grid_file, "grid JSON file {\"radii\": [...], \"angles\": n}");
        sub->add_option("--seed", cfg.seed, "master seed");
        sub->add_option("--trials", cfg.trials, "trials per property");
        sub->add_option("--out", cfg.out, "output path (default stdout)");
    };

    for (const auto& [name, help] : std::vector<std::pair<std::string, std::string>>{
             {"check", "certify membership of f with witness g"},
             {"synth", "synthesize a class member from a random subordinate p"},
             {"bounds", "verify coefficient bounds for a member"},
             {"fs", "evaluate the Fekete-Szego functional and bound"},
             {"sufficient", "evaluate the sufficient coefficient condition"},
             {"suite", "run the randomized property suite"},
             {"catalog", "emit a catalog function as series JSON"}}) {
        CLI::App* sub = app.add_subcommand(name, help);
        add_common(sub);
        sub->callback([&cfg, name = name] { cfg.command = name; });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kPass;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << "\n";
        return kUsage;
    }
    for (const auto* sub : app.get_subcommands()) {
        if (sub->parsed() && cfg.command.empty()) {
            cfg.command = sub->get_name();
        }
    }
    return run(cfg, out, err);
}

}  // namespace ctcx::cli
