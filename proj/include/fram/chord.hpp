#pragma once

#include <cmath>
#include <cstdio>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "fram/errors.hpp"
#include "fram/model.hpp"

namespace fram {

struct ChordArc {
    std::string relationship;
    std::string qname;
    Aspect aspect = Aspect::Input;
    double vr = 0.0;  // percent; sign distinguishes dampening from amplification
};

/// Square function-to-function matrix of variability rates. Nodes are the
/// union of origin and destination functions of the supplied relationships,
/// in ascending id order. A cell holds one arc per relationship from the row
/// function to the column function; cells without a relationship are absent
/// (a rate of zero is meaningful, absence is not).
struct ChordMatrix {
    std::vector<std::string> nodes;
    std::map<std::pair<size_t, size_t>, std::vector<ChordArc>> cells;

    size_t arc_count() const {
        size_t n = 0;
        for (const auto& [key, arcs] : cells) n += arcs.size();
        return n;
    }

    nlohmann::json to_json() const {
        nlohmann::json matrix = nlohmann::json::array();
        for (size_t i = 0; i < nodes.size(); ++i) {
            nlohmann::json row = nlohmann::json::array();
            for (size_t j = 0; j < nodes.size(); ++j) {
                auto it = cells.find({i, j});
                if (it == cells.end()) {
                    row.push_back(nullptr);
                    continue;
                }
                nlohmann::json cell = nlohmann::json::array();
                for (const auto& arc : it->second)
                    cell.push_back({{"relationship", arc.relationship},
                                    {"qname", arc.qname},
                                    {"aspect", std::string(to_string(arc.aspect))},
                                    {"vr", arc.vr}});
                row.push_back(std::move(cell));
            }
            matrix.push_back(std::move(row));
        }
        return {{"nodes", nodes}, {"matrix", std::move(matrix)}};
    }
};

struct ChordDiagram {
    ChordMatrix matrix;
    std::string svg;
};

namespace detail {

inline std::string fmt2(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    return buf;
}

} // namespace detail

/// Renders the supplied per-relationship variability rates as a static,
/// self-contained SVG chord diagram. Output is byte-stable: node order,
/// arc order, and number formatting are all fixed functions of the input.
inline ChordDiagram emit_chord(const FramModel& model,
                               const std::map<std::string, double, detail::NaturalLess>& vr_by_relationship) {
    std::vector<const Relationship*> arcs;
    for (const auto& entry : vr_by_relationship) {
        const Relationship* r = model.find_relationship(entry.first);
        if (!r) raise(ErrorCode::UnknownRelationship, "no relationship '" + entry.first + "' in the model");
        arcs.push_back(r);
    }

    ChordDiagram diagram;
    std::vector<std::string>& nodes = diagram.matrix.nodes;
    for (const Relationship* r : arcs) {
        nodes.push_back(r->origin);
        nodes.push_back(r->destination);
    }
    std::sort(nodes.begin(), nodes.end(), detail::NaturalLess{});
    nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());

    auto node_index = [&](const std::string& id) {
        return static_cast<size_t>(std::lower_bound(nodes.begin(), nodes.end(), id, detail::NaturalLess{}) -
                                   nodes.begin());
    };

    constexpr double kCenter = 320.0, kRadius = 260.0, kLabelRadius = 285.0;
    const double pi = std::acos(-1.0);
    auto anchor = [&](size_t i, double radius) {
        const double theta = 2.0 * pi * static_cast<double>(i) / static_cast<double>(nodes.size()) - pi / 2.0;
        return std::pair<double, double>{kCenter + radius * std::cos(theta), kCenter + radius * std::sin(theta)};
    };

    std::string svg;
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"640\" height=\"640\" "
           "viewBox=\"0 0 640 640\">\n";
    svg += "<style>\n"
           ".arc{fill:none;stroke-linecap:round;opacity:0.75}\n"
           ".damp{stroke:#2c7fb8}\n"
           ".amp{stroke:#d7301f}\n"
           ".node{fill:#333333}\n"
           ".label{font-family:monospace;font-size:12px;fill:#111111;text-anchor:middle}\n"
           "</style>\n";
    svg += "<circle cx=\"" + detail::fmt2(kCenter) + "\" cy=\"" + detail::fmt2(kCenter) + "\" r=\"" +
           detail::fmt2(kRadius) + "\" fill=\"none\" stroke=\"#dddddd\"/>\n";

    for (const Relationship* r : arcs) {
        const double rate = vr_by_relationship.at(r->id);
        const size_t i = node_index(r->origin);
        const size_t j = node_index(r->destination);
        diagram.matrix.cells[{i, j}].push_back({r->id, r->qname, r->aspect, rate});

        const auto [x1, y1] = anchor(i, kRadius);
        const auto [x2, y2] = anchor(j, kRadius);
        const double width = 1.0 + 0.04 * std::abs(rate);
        const char* cls = rate >= 0.0 ? "arc damp" : "arc amp";
        std::string path;
        if (i == j) {
            const auto [cx, cy] = anchor(i, kRadius * 1.25);
            path = "M " + detail::fmt2(x1) + " " + detail::fmt2(y1) + " C " + detail::fmt2(cx - 20.0) + " " +
                   detail::fmt2(cy) + ", " + detail::fmt2(cx + 20.0) + " " + detail::fmt2(cy) + ", " +
                   detail::fmt2(x2) + " " + detail::fmt2(y2);
        } else {
            path = "M " + detail::fmt2(x1) + " " + detail::fmt2(y1) + " Q " + detail::fmt2(kCenter) + " " +
                   detail::fmt2(kCenter) + " " + detail::fmt2(x2) + " " + detail::fmt2(y2);
        }
        svg += "<path class=\"" + std::string(cls) + "\" stroke-width=\"" + detail::fmt2(width) + "\" d=\"" + path +
               "\"><title>" + r->id + " " + r->qname + " (" + std::string(to_string(r->aspect)) + "): " +
               detail::fmt2(rate) + "%</title></path>\n";
    }

    for (size_t i = 0; i < nodes.size(); ++i) {
        const auto [x, y] = anchor(i, kRadius);
        const auto [lx, ly] = anchor(i, kLabelRadius);
        svg += "<circle class=\"node\" cx=\"" + detail::fmt2(x) + "\" cy=\"" + detail::fmt2(y) + "\" r=\"4.00\"/>\n";
        svg += "<text class=\"label\" x=\"" + detail::fmt2(lx) + "\" y=\"" + detail::fmt2(ly) + "\">" + nodes[i] +
               "</text>\n";
    }
    svg += "</svg>\n";
    diagram.svg = std::move(svg);
    return diagram;
}

} // namespace fram
