#pragma once

#include <algorithm>
#include <cstddef>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "fram/errors.hpp"
#include "fram/model.hpp"

namespace fram {

/// Adjacency matrix of the bipartite graph unifying functions and
/// relationships. Rows/columns are ordered functions first, then
/// relationships, each block in natural id order. Entry (i,j) is the weight
/// of the directed edge i -> j; the function-function and
/// relationship-relationship blocks are identically zero.
class BipartiteMatrix {
public:
    BipartiteMatrix(std::vector<std::string> function_ids, std::vector<std::string> relationship_ids)
        : function_count_(function_ids.size()), ids_(std::move(function_ids)) {
        ids_.insert(ids_.end(), relationship_ids.begin(), relationship_ids.end());
        data_.assign(ids_.size() * ids_.size(), 0.0);
        for (size_t k = 0; k < ids_.size(); ++k) index_[ids_[k]] = k;
    }

    size_t size() const { return ids_.size(); }
    size_t function_count() const { return function_count_; }
    size_t relationship_count() const { return ids_.size() - function_count_; }
    const std::vector<std::string>& node_ids() const { return ids_; }

    bool is_function_index(size_t i) const { return i < function_count_; }

    size_t index_of(std::string_view id) const {
        auto it = index_.find(std::string(id));
        if (it == index_.end()) raise(ErrorCode::UnknownFunction, "no node '" + std::string(id) + "' in matrix");
        return it->second;
    }

    double at(size_t i, size_t j) const { return data_[i * size() + j]; }
    void set(size_t i, size_t j, double w) { data_[i * size() + j] = w; }

    double total_edge_weight() const {
        double total = 0.0;
        for (double w : data_) total += w;
        return total;
    }

private:
    size_t function_count_;
    std::vector<std::string> ids_;
    std::vector<double> data_;
    std::unordered_map<std::string, size_t> index_;
};

inline void require_valid(const FramModel& model) {
    if (validate_model(model).has_dangling())
        raise(ErrorCode::InvalidModel, "model has dangling function references");
}

/// Each relationship r with weight w contributes two edges:
/// origin(r) -> r and r -> destination(r), both of weight w.
inline BipartiteMatrix encode_bipartite(const FramModel& model) {
    require_valid(model);
    std::vector<std::string> fn_ids, rel_ids;
    fn_ids.reserve(model.functions.size());
    rel_ids.reserve(model.relationships.size());
    for (const auto& f : model.functions) fn_ids.push_back(f.id);
    for (const auto& r : model.relationships) rel_ids.push_back(r.id);
    BipartiteMatrix m(std::move(fn_ids), std::move(rel_ids));
    for (const auto& r : model.relationships) {
        m.set(m.index_of(r.origin), m.index_of(r.id), r.weight);
        m.set(m.index_of(r.id), m.index_of(r.destination), r.weight);
    }
    return m;
}

enum class NodeKind : std::uint8_t { Function, Relationship };

inline std::string_view to_string(NodeKind k) { return k == NodeKind::Function ? "function" : "relationship"; }

struct PrestigeRow {
    std::string id;
    NodeKind kind = NodeKind::Function;
    double raw = 0.0;         // sum of inbound edge weights
    double normalized = 0.0;  // raw / total edge weight
};

/// Degree Prestige per node, sorted descending by raw value with ties broken
/// by ascending node id. A relationship node has exactly one inbound edge
/// (from its origin), so its prestige equals its own weight.
struct PrestigeTable {
    std::vector<PrestigeRow> rows;
    double total_edge_weight = 0.0;
};

inline PrestigeTable degree_prestige(const FramModel& model) {
    require_valid(model);
    PrestigeTable table;
    double total = 0.0;
    for (const auto& r : model.relationships) total += 2.0 * r.weight;
    table.total_edge_weight = total;

    for (const auto& f : model.functions) {
        double raw = 0.0;
        for (const auto& r : model.relationships)
            if (r.destination == f.id) raw += r.weight;
        table.rows.push_back({f.id, NodeKind::Function, raw, 0.0});
    }
    for (const auto& r : model.relationships)
        table.rows.push_back({r.id, NodeKind::Relationship, r.weight, 0.0});

    for (auto& row : table.rows) row.normalized = total > 0.0 ? row.raw / total : 0.0;

    std::sort(table.rows.begin(), table.rows.end(), [](const PrestigeRow& a, const PrestigeRow& b) {
        if (a.raw != b.raw) return a.raw > b.raw;
        return detail::natural_compare(a.id, b.id) < 0;
    });
    return table;
}

enum class RankScope : std::uint8_t { Functions, Relationships, All };

inline std::vector<PrestigeRow> rank_nodes(const PrestigeTable& table, RankScope scope) {
    std::vector<PrestigeRow> out;
    for (const auto& row : table.rows) {
        if (scope == RankScope::Functions && row.kind != NodeKind::Function) continue;
        if (scope == RankScope::Relationships && row.kind != NodeKind::Relationship) continue;
        out.push_back(row);
    }
    return out;
}

/// Concentric-range band per node: nodes sharing a raw prestige value share
/// a band, band 0 holding the highest value. Input rows must come from a
/// PrestigeTable (already sorted), so bands are contiguous runs.
inline std::vector<size_t> prestige_bands(const std::vector<PrestigeRow>& ranked) {
    std::vector<size_t> bands(ranked.size(), 0);
    size_t band = 0;
    for (size_t i = 1; i < ranked.size(); ++i) {
        if (ranked[i].raw != ranked[i - 1].raw) ++band;
        bands[i] = band;
    }
    return bands;
}

} // namespace fram
