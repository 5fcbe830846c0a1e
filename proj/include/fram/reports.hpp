#pragma once

#include <cmath>
#include <cstdio>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "fram/chord.hpp"
#include "fram/graph.hpp"
#include "fram/majority.hpp"
#include "fram/model.hpp"
#include "fram/scenario.hpp"
#include "fram/variability.hpp"

namespace fram {

namespace detail {

inline std::string fixed(double v, int decimals) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*f", decimals, v);
    return buf;
}

/// Plain decimal with trailing zeros trimmed: 22 -> "22", 0.5 -> "0.5".
inline std::string number(double v) {
    std::string s = fixed(v, 6);
    s.erase(s.find_last_not_of('0') + 1);
    if (!s.empty() && s.back() == '.') s.pop_back();
    if (s == "-0") s = "0";
    return s;
}

} // namespace detail

/// Percentages print at one decimal, with the integer part (truncated toward
/// zero) in parentheses: -345.45 -> "-345.5% (-345%)".
inline std::string format_percent(double v) {
    return detail::fixed(v, 1) + "% (" + std::to_string(static_cast<long long>(std::trunc(v))) + "%)";
}

// --- validation --------------------------------------------------------------

inline std::string render_validation_tsv(const ValidationReport& report) {
    std::ostringstream out;
    for (const auto& d : report.dangling)
        out << "dangling\t" << d.relationship << "\t" << d.missing_function << "\t"
            << (d.origin_side ? "origin" : "destination") << "\n";
    for (const auto& f : report.background_functions) out << "background\t" << f << "\n";
    for (const auto& f : report.no_output_functions) out << "no_output\t" << f << "\n";
    out << "summary\tdangling=" << report.dangling.size() << "\tbackground=" << report.background_functions.size()
        << "\tno_output=" << report.no_output_functions.size() << "\n";
    return out.str();
}

inline nlohmann::json validation_to_json(const ValidationReport& report) {
    nlohmann::json dangling = nlohmann::json::array();
    for (const auto& d : report.dangling)
        dangling.push_back({{"relationship", d.relationship},
                            {"missing_function", d.missing_function},
                            {"side", d.origin_side ? "origin" : "destination"}});
    return {{"dangling", std::move(dangling)},
            {"background_functions", report.background_functions},
            {"no_output_functions", report.no_output_functions}};
}

// --- centrality ---------------------------------------------------------------

inline std::string render_centrality_tsv(const std::vector<PrestigeRow>& rows, const std::vector<size_t>& bands) {
    std::ostringstream out;
    out << "id\tclass\tdp\tdp_normalized\trank\tband\n";
    for (size_t i = 0; i < rows.size(); ++i)
        out << rows[i].id << "\t" << to_string(rows[i].kind) << "\t" << detail::number(rows[i].raw) << "\t"
            << detail::fixed(rows[i].normalized, 6) << "\t" << i + 1 << "\t" << bands[i] << "\n";
    return out.str();
}

inline nlohmann::json centrality_to_json(const std::vector<PrestigeRow>& rows, const std::vector<size_t>& bands) {
    nlohmann::json nodes = nlohmann::json::array();
    for (size_t i = 0; i < rows.size(); ++i)
        nodes.push_back({{"id", rows[i].id},
                         {"class", std::string(to_string(rows[i].kind))},
                         {"dp", rows[i].raw},
                         {"dp_normalized", rows[i].normalized},
                         {"rank", i + 1},
                         {"band", bands[i]}});
    return {{"nodes", std::move(nodes)}};
}

// --- variability ---------------------------------------------------------------

struct PairVariability {
    std::string origin;
    std::string destination;
    double fpv = 0.0;
    double fdc = 0.0;
    std::optional<double> vr;  // absent when the origin has no out-of-margin variability
};

inline std::string render_variability_tsv(const std::vector<PairVariability>& pairs) {
    std::ostringstream out;
    out << "origin\tdestination\tfpv\tfdc\tvr\n";
    for (const auto& p : pairs) {
        out << p.origin << "\t" << p.destination << "\t" << detail::number(p.fpv) << "\t" << detail::number(p.fdc)
            << "\t" << (p.vr ? format_percent(*p.vr) : "n/a") << "\n";
    }
    return out.str();
}

inline nlohmann::json variability_to_json(const std::vector<PairVariability>& pairs) {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& p : pairs) {
        nlohmann::json row = {{"origin", p.origin}, {"destination", p.destination}, {"fpv", p.fpv}, {"fdc", p.fdc}};
        row["vr"] = p.vr ? nlohmann::json(*p.vr) : nlohmann::json(nullptr);
        rows.push_back(std::move(row));
    }
    return {{"pairs", std::move(rows)}};
}

// --- majop ---------------------------------------------------------------------

inline std::string render_subset_values(const std::vector<double>& values) {
    std::string s = "{";
    for (size_t i = 0; i < values.size(); ++i) {
        if (i > 0) s += ", ";
        s += detail::number(values[i]);
    }
    return s + "}";
}

inline std::string render_majop_tsv(const MajOpBreakdown& breakdown) {
    std::ostringstream out;
    out << "subset\tsimilarity\tmajority\tmaj\top\tweight\n";
    for (const auto& row : breakdown.subsets)
        out << render_subset_values(row.values) << "\t" << detail::fixed(row.similarity, 2) << "\t"
            << detail::fixed(row.majority, 2) << "\t" << detail::fixed(row.maj, 2) << "\t" << detail::fixed(row.op, 2)
            << "\t" << detail::fixed(row.weight, 2) << "\n";
    out << "majop\t" << detail::fixed(breakdown.majop, 2) << "\n";
    return out.str();
}

inline nlohmann::json majop_to_json(const MajOpBreakdown& breakdown) {
    nlohmann::json subsets = nlohmann::json::array();
    for (const auto& row : breakdown.subsets)
        subsets.push_back({{"values", row.values},
                           {"similarity", row.similarity},
                           {"majority", row.majority},
                           {"maj", row.maj},
                           {"op", row.op},
                           {"weight", row.weight}});
    return {{"subsets", std::move(subsets)}, {"majop", breakdown.majop}, {"total_maj", breakdown.total_maj}};
}

// --- scenario comparison ----------------------------------------------------------

inline std::string render_compare_tsv(const ComparisonReport& report) {
    std::ostringstream out;
    out << "relationship\tmajop_standard\tvr_standard\tmajop_cc\tvr_cc\tratio\n";
    for (const auto& row : report.rows) {
        out << row.relationship << "\t" << detail::fixed(row.majop_standard, 2) << "\t"
            << format_percent(row.vr_standard) << "\t" << detail::fixed(row.majop_cc, 2) << "\t"
            << format_percent(row.vr_cc) << "\t"
            << (row.improvement_ratio ? detail::fixed(*row.improvement_ratio, 2) : "n/a") << "\n";
    }
    if (report.ratios)
        out << "# ratio\tmin=" << detail::fixed(report.ratios->min, 2) << "\tmedian="
            << detail::fixed(report.ratios->median, 2) << "\tmax=" << detail::fixed(report.ratios->max, 2)
            << "\tdefined=" << report.ratios->defined_count << "\n";
    for (const auto& rel : report.undefined_ratio)
        out << "# undefined_ratio\t" << rel << "\t(vr_standard is zero)\n";
    return out.str();
}

inline nlohmann::json compare_to_json(const ComparisonReport& report) {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& row : report.rows) {
        nlohmann::json r = {{"relationship", row.relationship},
                            {"majop_standard", row.majop_standard},
                            {"vr_standard", row.vr_standard},
                            {"majop_cc", row.majop_cc},
                            {"vr_cc", row.vr_cc}};
        r["ratio"] = row.improvement_ratio ? nlohmann::json(*row.improvement_ratio) : nlohmann::json(nullptr);
        rows.push_back(std::move(r));
    }
    nlohmann::json j = {{"relationships", std::move(rows)}, {"undefined_ratio", report.undefined_ratio}};
    if (report.ratios)
        j["ratio"] = {{"min", report.ratios->min},
                      {"median", report.ratios->median},
                      {"max", report.ratios->max},
                      {"defined", report.ratios->defined_count}};
    else
        j["ratio"] = nullptr;
    return j;
}

} // namespace fram
