#pragma once

#include <algorithm>
#include <fstream>
#include <iostream>
#include <map>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fram/chord.hpp"
#include "fram/errors.hpp"
#include "fram/graph.hpp"
#include "fram/json_io.hpp"
#include "fram/majority.hpp"
#include "fram/model.hpp"
#include "fram/reports.hpp"
#include "fram/scenario.hpp"
#include "fram/variability.hpp"

namespace fram {

namespace cli_detail {

inline constexpr int kExitOk = 0;
inline constexpr int kExitDomainError = 1;
inline constexpr int kExitUsageError = 2;

inline CenterMarginEstimator parse_estimator(const std::string& spec) {
    if (spec == "median-mad") return CenterMarginEstimator::median_mad();
    if (spec == "mean-std") return CenterMarginEstimator::mean_std();
    if (spec.rfind("median-mad:", 0) == 0) {
        try {
            return CenterMarginEstimator::median_mad(std::stod(spec.substr(11)));
        } catch (const std::exception&) {
            raise(ErrorCode::SchemaError, "bad zero-MAD guard in estimator '" + spec + "'");
        }
    }
    if (spec.rfind("fixed:", 0) == 0) {
        const std::string body = spec.substr(6);
        const size_t comma = body.find(',');
        if (comma == std::string::npos)
            raise(ErrorCode::SchemaError, "estimator '" + spec + "' must look like fixed:E,M");
        try {
            return CenterMarginEstimator::fixed_thresholds(std::stod(body.substr(0, comma)),
                                                           std::stod(body.substr(comma + 1)));
        } catch (const FramError&) {
            throw;
        } catch (const std::exception&) {
            raise(ErrorCode::SchemaError, "bad numbers in estimator '" + spec + "'");
        }
    }
    raise(ErrorCode::SchemaError,
          "unknown estimator '" + spec + "' (expected median-mad, fixed:E,M, or mean-std)");
}

inline std::vector<double> parse_inline_bag(const std::string& csv) {
    std::vector<double> values;
    std::stringstream ss(csv);
    std::string token;
    while (std::getline(ss, token, ',')) {
        try {
            values.push_back(std::stod(token));
        } catch (const std::exception&) {
            raise(ErrorCode::SchemaError, "bad valuation '" + token + "' in --bag");
        }
    }
    if (values.empty()) raise(ErrorCode::SchemaError, "--bag must contain at least one value");
    return values;
}

inline double bag_mean(const ValuationBag& bag) {
    return std::accumulate(bag.values.begin(), bag.values.end(), 0.0) / static_cast<double>(bag.values.size());
}

/// MajOp with the caller-selected NoMajority fallback. The mean fallback has
/// to be opted into; there is no silent default.
inline double majop_or_fallback(const ValuationBag& bag, const SimilarityFunction& sim, const MajorityFunction& maj,
                                const std::string& fallback) {
    try {
        return majop(bag, sim, maj).majop;
    } catch (const FramError& e) {
        if (e.code() == ErrorCode::NoMajority && fallback == "mean") return bag_mean(bag);
        throw;
    }
}

inline const ObservationSeries& series_for(const std::vector<ObservationSeries>& all, const std::string& function) {
    const ObservationSeries* found = nullptr;
    for (const auto& s : all) {
        if (s.function != function) continue;
        if (found)
            raise(ErrorCode::SchemaError, "multiple observation series for function '" + function +
                                              "'; pair selection is ambiguous");
        found = &s;
    }
    if (!found) raise(ErrorCode::UnknownFunction, "no observation series for function '" + function + "'");
    return *found;
}

inline void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) raise(ErrorCode::IoError, "cannot write '" + path + "'");
    out << content;
}

inline std::string dump_json(const nlohmann::json& j) { return j.dump(2) + "\n"; }

struct Options {
    std::string model_path;
    std::string observations_path;
    std::string valuations_path;
    std::string format = "tsv";
    std::string scope = "all";
    std::string estimator = "median-mad";
    std::string scenario;
    std::string bag;
    std::string scale = "0,10";
    std::string relationship;
    std::string fallback = "error";
    std::string svg_path = "chord.svg";
    std::string matrix_path;
    std::vector<std::string> pairs;
};

inline int cmd_validate(const Options& opt, std::ostream& out) {
    const FramModel model = parse_model(opt.model_path, /*strict=*/false);
    const ValidationReport report = validate_model(model);
    if (opt.format == "json")
        out << dump_json(validation_to_json(report));
    else
        out << render_validation_tsv(report);
    return report.has_dangling() ? kExitDomainError : kExitOk;
}

inline int cmd_centrality(const Options& opt, std::ostream& out) {
    const FramModel model = parse_model(opt.model_path);
    const PrestigeTable table = degree_prestige(model);
    const RankScope scope = opt.scope == "functions"       ? RankScope::Functions
                            : opt.scope == "relationships" ? RankScope::Relationships
                                                           : RankScope::All;
    const auto rows = rank_nodes(table, scope);
    const auto bands = prestige_bands(rows);
    if (opt.format == "json")
        out << dump_json(centrality_to_json(rows, bands));
    else
        out << render_centrality_tsv(rows, bands);
    return kExitOk;
}

inline int cmd_variability(const Options& opt, std::ostream& out) {
    const auto estimator = parse_estimator(opt.estimator);
    const auto series = parse_observations(opt.observations_path);

    std::vector<PairVariability> results;
    for (const auto& pair : opt.pairs) {
        const size_t colon = pair.find(':');
        if (colon == std::string::npos || colon == 0 || colon + 1 == pair.size())
            raise(ErrorCode::SchemaError, "--pair '" + pair + "' must look like ORIGIN:DESTINATION");
        const auto& origin_series = series_for(series, pair.substr(0, colon));
        const auto& destination_series = series_for(series, pair.substr(colon + 1));
        if (origin_series.dimension != destination_series.dimension || origin_series.unit != destination_series.unit)
            raise(ErrorCode::MisalignedSeries, "pair '" + pair + "' compares different dimensions or units");

        const DeviationProfile origin = deviation_profile(origin_series, estimator);
        const DeviationProfile destination = deviation_profile(destination_series, estimator);
        PairVariability row{origin_series.function, destination_series.function, fpv(origin),
                            fdc(origin, destination), std::nullopt};
        try {
            row.vr = vr(origin, destination);
        } catch (const FramError& e) {
            if (e.code() != ErrorCode::ZeroUpstreamVariability) throw;
        }
        results.push_back(std::move(row));
    }

    if (opt.format == "json")
        out << dump_json(variability_to_json(results));
    else
        out << render_variability_tsv(results);
    return kExitOk;
}

inline int cmd_majop(const Options& opt, std::ostream& out) {
    SimilarityFunction sim = SimilarityFunction::default_shape();
    MajorityFunction maj = MajorityFunction::default_shape();
    std::optional<ValuationBag> bag;

    if (!opt.bag.empty()) {
        const size_t comma = opt.scale.find(',');
        if (comma == std::string::npos)
            raise(ErrorCode::SchemaError, "--scale must look like LO,HI");
        double lo = 0.0, hi = 10.0;
        try {
            lo = std::stod(opt.scale.substr(0, comma));
            hi = std::stod(opt.scale.substr(comma + 1));
        } catch (const std::exception&) {
            raise(ErrorCode::SchemaError, "bad numbers in --scale '" + opt.scale + "'");
        }
        bag = make_bag(parse_inline_bag(opt.bag), lo, hi);
    } else {
        if (opt.valuations_path.empty() || opt.relationship.empty() || opt.scenario.empty())
            raise(ErrorCode::SchemaError,
                  "either --bag or all of --valuations/--relationship/--scenario must be given");
        const ValuationSet set = parse_valuations(opt.valuations_path);
        sim = set.similarity;
        maj = set.majority;
        auto it = set.bags.find(opt.relationship);
        if (it == set.bags.end())
            raise(ErrorCode::UnknownRelationship,
                  "no bags for relationship '" + opt.relationship + "' in " + opt.valuations_path);
        bag = opt.scenario == "cc" ? it->second.cc : it->second.standard;
    }

    try {
        const MajOpBreakdown breakdown = majop(*bag, sim, maj);
        if (opt.format == "json")
            out << dump_json(majop_to_json(breakdown));
        else
            out << render_majop_tsv(breakdown);
    } catch (const FramError& e) {
        if (e.code() != ErrorCode::NoMajority || opt.fallback != "mean") throw;
        const double mean = bag_mean(*bag);
        if (opt.format == "json")
            out << dump_json({{"subsets", nlohmann::json::array()},
                              {"majop", mean},
                              {"fallback", "mean"}});
        else
            out << "majop\t" << detail::fixed(mean, 2) << "\t(fallback: mean; no qualifying majority)\n";
    }
    return kExitOk;
}

inline int cmd_compare(const Options& opt, std::ostream& out) {
    const ValuationSet set = parse_valuations(opt.valuations_path);
    std::vector<ScenarioAssessment> assessments;
    for (const auto& [rel, bags] : set.bags) {
        ScenarioAssessment a;
        a.relationship = rel;
        a.majop_standard = majop_or_fallback(bags.standard, set.similarity, set.majority, opt.fallback);
        a.majop_cc = majop_or_fallback(bags.cc, set.similarity, set.majority, opt.fallback);
        a.vr_standard = a.majop_standard * 10.0;
        a.vr_cc = a.majop_cc * 10.0;
        if (a.vr_standard > 0.0) a.improvement_ratio = a.vr_cc / a.vr_standard;
        assessments.push_back(std::move(a));
    }
    const ComparisonReport report = compare_scenarios(std::move(assessments));
    if (opt.format == "json")
        out << dump_json(compare_to_json(report));
    else
        out << render_compare_tsv(report);
    return kExitOk;
}

inline int cmd_chord(const Options& opt, std::ostream& out) {
    const FramModel model = parse_model(opt.model_path);
    const ValuationSet set = parse_valuations(opt.valuations_path);

    std::map<std::string, double, detail::NaturalLess> vr_map;
    for (const auto& [rel, bags] : set.bags) {
        const ValuationBag& bag = opt.scenario == "cc" ? bags.cc : bags.standard;
        vr_map[rel] = majop_or_fallback(bag, set.similarity, set.majority, opt.fallback) * 10.0;
    }

    const ChordDiagram diagram = emit_chord(model, vr_map);
    write_file(opt.svg_path, diagram.svg);
    const std::string matrix = dump_json(diagram.matrix.to_json());
    if (opt.matrix_path.empty())
        out << matrix;
    else
        write_file(opt.matrix_path, matrix);
    return kExitOk;
}

} // namespace cli_detail

/// Full command-line surface; returns the process exit code. Streams are
/// parameters so tests exercise the CLI without spawning processes.
inline int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    using cli_detail::Options;
    CLI::App app{"FRAM graph analytics: prestige ranking, variability rates, fuzzy-majority aggregation"};
    app.name("fram");
    app.require_subcommand(1);
    Options opt;

    auto add_format = [&](CLI::App* cmd) {
        cmd->add_option("--format", opt.format, "Report format")
            ->check(CLI::IsMember({"tsv", "json"}))
            ->capture_default_str();
    };

    CLI::App* validate = app.add_subcommand("validate", "Check a model file and report integrity findings");
    validate->add_option("--model", opt.model_path, "Model JSON file")->required();
    add_format(validate);

    CLI::App* centrality = app.add_subcommand("centrality", "Rank functions and relationships by degree prestige");
    centrality->add_option("--model", opt.model_path, "Model JSON file")->required();
    centrality->add_option("--scope", opt.scope, "Node class to rank")
        ->check(CLI::IsMember({"functions", "relationships", "all"}))
        ->capture_default_str();
    add_format(centrality);

    CLI::App* variability = app.add_subcommand("variability", "Compute FPV, FDC, and VR for function pairs");
    variability->add_option("observations", opt.observations_path, "Observation JSON file")->required();
    variability->add_option("--estimator", opt.estimator, "median-mad | fixed:E,M | mean-std")
        ->capture_default_str();
    variability->add_option("--pair", opt.pairs, "ORIGIN:DESTINATION (repeatable)")->required();
    add_format(variability);

    CLI::App* majop_cmd = app.add_subcommand("majop", "Aggregate a valuation bag into its fuzzy-majority value");
    CLI::Option* bag_opt = majop_cmd->add_option("--bag", opt.bag, "Inline comma-separated valuations");
    majop_cmd->add_option("--scale", opt.scale, "Valuation scale LO,HI for --bag")->capture_default_str();
    majop_cmd->add_option("--valuations", opt.valuations_path, "Valuation JSON file")->excludes(bag_opt);
    majop_cmd->add_option("--relationship", opt.relationship, "Relationship id within the valuation file");
    majop_cmd->add_option("--scenario", opt.scenario, "Scenario bag to aggregate")
        ->check(CLI::IsMember({"standard", "cc"}));
    majop_cmd->add_option("--fallback", opt.fallback, "Behavior when no majority qualifies")
        ->check(CLI::IsMember({"error", "mean"}))
        ->capture_default_str();
    add_format(majop_cmd);

    CLI::App* compare = app.add_subcommand("compare", "Compare standard and CC scenario variability rates");
    compare->add_option("--valuations", opt.valuations_path, "Valuation JSON file")->required();
    compare->add_option("--fallback", opt.fallback, "Behavior when no majority qualifies")
        ->check(CLI::IsMember({"error", "mean"}))
        ->capture_default_str();
    add_format(compare);

    CLI::App* chord = app.add_subcommand("chord", "Export the VR chord diagram (SVG + matrix JSON)");
    chord->add_option("--model", opt.model_path, "Model JSON file")->required();
    chord->add_option("--valuations", opt.valuations_path, "Valuation JSON file")->required();
    chord->add_option("--scenario", opt.scenario, "Scenario providing the VR values")
        ->check(CLI::IsMember({"standard", "cc"}))
        ->required();
    chord->add_option("--svg", opt.svg_path, "Output SVG path")->capture_default_str();
    chord->add_option("--matrix", opt.matrix_path, "Output matrix JSON path (stdout when omitted)");
    chord->add_option("--fallback", opt.fallback, "Behavior when no majority qualifies")
        ->check(CLI::IsMember({"error", "mean"}))
        ->capture_default_str();

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        app.exit(e, out, err);
        return cli_detail::kExitOk;
    } catch (const CLI::ParseError& e) {
        err << e.what() << "\n\n" << app.help();
        return cli_detail::kExitUsageError;
    }

    try {
        if (validate->parsed()) return cli_detail::cmd_validate(opt, out);
        if (centrality->parsed()) return cli_detail::cmd_centrality(opt, out);
        if (variability->parsed()) return cli_detail::cmd_variability(opt, out);
        if (majop_cmd->parsed()) return cli_detail::cmd_majop(opt, out);
        if (compare->parsed()) return cli_detail::cmd_compare(opt, out);
        if (chord->parsed()) return cli_detail::cmd_chord(opt, out);
    } catch (const FramError& e) {
        err << "error: " << e.what() << "\n";
        return cli_detail::kExitDomainError;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return cli_detail::kExitDomainError;
    }
    err << "error: no subcommand selected\n";
    return cli_detail::kExitUsageError;
}

} // namespace fram
