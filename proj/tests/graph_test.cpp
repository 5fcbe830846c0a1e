#include <gtest/gtest.h>

#include <map>
#include <random>

#include "fram/graph.hpp"
#include "fram/json_io.hpp"
#include "support.hpp"

using namespace fram;
using test_support::data_path;

namespace {

FramModel two_function_model(double weight) {
    FramModel model = add_function({}, "F13", "Use of the service");
    model = add_function(std::move(model), "F14", "Monitor user generated feedback");
    return add_relationship(std::move(model), "R106", "F13", "F14", Aspect::Input, "User Behavior", weight);
}

double raw_dp(const PrestigeTable& table, const std::string& id) {
    for (const auto& row : table.rows)
        if (row.id == id) return row.raw;
    ADD_FAILURE() << "no row for " << id;
    return -1.0;
}

} // namespace

TEST(BipartiteTest, SingleRelationshipEncodesTwoConnections) {
    const BipartiteMatrix m = encode_bipartite(two_function_model(1.0));
    ASSERT_EQ(m.size(), 3u);
    EXPECT_EQ(m.function_count(), 2u);
    // F13 -> R106 and R106 -> F14; everything else zero.
    size_t nonzero = 0;
    for (size_t i = 0; i < m.size(); ++i)
        for (size_t j = 0; j < m.size(); ++j) nonzero += m.at(i, j) != 0.0;
    EXPECT_EQ(nonzero, 2u);
    EXPECT_EQ(m.at(m.index_of("F13"), m.index_of("R106")), 1.0);
    EXPECT_EQ(m.at(m.index_of("R106"), m.index_of("F14")), 1.0);
}

TEST(BipartiteTest, EmptyModelGivesEmptyMatrix) {
    const BipartiteMatrix m = encode_bipartite({});
    EXPECT_EQ(m.size(), 0u);
}

TEST(BipartiteTest, DanglingModelRejected) {
    FramModel model;
    model.functions.push_back({"F1", "a"});
    model.relationships.push_back({"R1", "F1", "F99", Aspect::Input, "X", 1.0});
    EXPECT_EQ(test_support::error_code_of([&] { encode_bipartite(model); }), ErrorCode::InvalidModel);
}

// Block-zero structure: no function-function or relationship-relationship
// entries; function->relationship only for origins, relationship->function
// only for destinations.
TEST(BipartiteTest, BlockConstraintsHoldForRandomModels) {
    std::mt19937 rng(99);
    for (int round = 0; round < 30; ++round) {
        const FramModel model = test_support::random_model(rng);
        const BipartiteMatrix m = encode_bipartite(model);
        for (size_t i = 0; i < m.size(); ++i) {
            for (size_t j = 0; j < m.size(); ++j) {
                const double w = m.at(i, j);
                if (w == 0.0) continue;
                ASSERT_NE(m.is_function_index(i), m.is_function_index(j));
                if (m.is_function_index(i)) {
                    const Relationship* r = model.find_relationship(m.node_ids()[j]);
                    ASSERT_NE(r, nullptr);
                    EXPECT_EQ(r->origin, m.node_ids()[i]);
                    EXPECT_EQ(r->weight, w);
                } else {
                    const Relationship* r = model.find_relationship(m.node_ids()[i]);
                    ASSERT_NE(r, nullptr);
                    EXPECT_EQ(r->destination, m.node_ids()[j]);
                    EXPECT_EQ(r->weight, w);
                }
            }
        }
    }
}

TEST(PrestigeTest, HandSummedThreeNodeGraph) {
    const PrestigeTable table = degree_prestige(two_function_model(2.0));
    EXPECT_EQ(raw_dp(table, "F13"), 0.0);
    EXPECT_EQ(raw_dp(table, "R106"), 2.0);
    EXPECT_EQ(raw_dp(table, "F14"), 2.0);
}

TEST(PrestigeTest, InboundWeightsSum) {
    FramModel model = add_function({}, "F1", "a");
    model = add_function(std::move(model), "F2", "b");
    model = add_function(std::move(model), "F3", "c");
    model = add_relationship(std::move(model), "R1", "F1", "F2", Aspect::Input, "x", 3.0);
    model = add_relationship(std::move(model), "R2", "F3", "F2", Aspect::Control, "y", 4.0);
    const PrestigeTable table = degree_prestige(model);
    // Brute-force: inbound edges into F2 are R1->F2 (3) and R2->F2 (4).
    EXPECT_EQ(raw_dp(table, "F2"), 7.0);
}

TEST(PrestigeTest, BundledBackgroundFunctionsScoreZero) {
    const FramModel model = parse_model(data_path("uts-model.json"));
    const PrestigeTable table = degree_prestige(model);
    for (const char* id : {"F5", "F11", "F20", "F23"}) EXPECT_EQ(raw_dp(table, id), 0.0) << id;
}

TEST(PrestigeTest, RelationshipPrestigeEqualsOwnWeight) {
    const FramModel model = parse_model(data_path("uts-model.json"));
    const PrestigeTable table = degree_prestige(model);
    for (const auto& r : model.relationships) EXPECT_EQ(raw_dp(table, r.id), r.weight) << r.id;
}

TEST(PrestigeTest, StarGraphHubRanksFirst) {
    FramModel model = add_function({}, "F1", "hub");
    for (int i = 2; i <= 6; ++i) {
        model = add_function(std::move(model), "F" + std::to_string(i), "spoke");
        model = add_relationship(std::move(model), "R" + std::to_string(i), "F" + std::to_string(i), "F1",
                                 Aspect::Input, "spoke " + std::to_string(i), 1.0);
    }
    const auto functions = rank_nodes(degree_prestige(model), RankScope::Functions);
    ASSERT_FALSE(functions.empty());
    EXPECT_EQ(functions.front().id, "F1");
    EXPECT_EQ(functions.front().raw, 5.0);
}

TEST(PrestigeTest, ZeroInboundRanksLastInBundledModel) {
    const FramModel model = parse_model(data_path("uts-model.json"));
    const auto functions = rank_nodes(degree_prestige(model), RankScope::Functions);
    ASSERT_EQ(functions.size(), 25u);
    // Trailing block: the four background functions, tie-broken by id.
    EXPECT_EQ(functions[21].id, "F5");
    EXPECT_EQ(functions[22].id, "F11");
    EXPECT_EQ(functions[23].id, "F20");
    EXPECT_EQ(functions[24].id, "F23");
    for (size_t i = 21; i < 25; ++i) EXPECT_EQ(functions[i].raw, 0.0);
}

TEST(PrestigeTest, ConservationOverRandomModels) {
    std::mt19937 rng(314);
    for (int round = 0; round < 50; ++round) {
        const FramModel model = test_support::random_model(rng);
        const PrestigeTable table = degree_prestige(model);
        double dp_sum = 0.0, weight_sum = 0.0;
        for (const auto& row : table.rows) dp_sum += row.raw;
        for (const auto& r : model.relationships) weight_sum += r.weight;
        EXPECT_NEAR(dp_sum, 2.0 * weight_sum, 1e-9);
        EXPECT_NEAR(table.total_edge_weight, 2.0 * weight_sum, 1e-9);
    }
}

TEST(PrestigeTest, RankingInvariantUnderUniformScaling) {
    std::mt19937 rng(2718);
    for (int round = 0; round < 20; ++round) {
        const FramModel model = test_support::random_model(rng, 10, 25);
        const FramModel scaled = test_support::scale_weights(model, 10.0);
        const auto base = rank_nodes(degree_prestige(model), RankScope::All);
        const auto after = rank_nodes(degree_prestige(scaled), RankScope::All);
        ASSERT_EQ(base.size(), after.size());
        for (size_t i = 0; i < base.size(); ++i) EXPECT_EQ(base[i].id, after[i].id) << "position " << i;
    }
}

TEST(PrestigeTest, ScopeFiltersNodeClass) {
    const FramModel model = two_function_model(1.0);
    const PrestigeTable table = degree_prestige(model);
    EXPECT_EQ(rank_nodes(table, RankScope::Functions).size(), 2u);
    EXPECT_EQ(rank_nodes(table, RankScope::Relationships).size(), 1u);
    EXPECT_EQ(rank_nodes(table, RankScope::All).size(), 3u);
}

TEST(PrestigeTest, BandsGroupEqualScores) {
    const FramModel model = parse_model(data_path("uts-model.json"));
    const auto rows = rank_nodes(degree_prestige(model), RankScope::Functions);
    const auto bands = prestige_bands(rows);
    ASSERT_EQ(bands.size(), rows.size());
    EXPECT_EQ(bands.front(), 0u);
    // The four zero-prestige functions share the last band.
    EXPECT_EQ(bands[21], bands[24]);
    for (size_t i = 1; i < rows.size(); ++i) {
        if (rows[i].raw == rows[i - 1].raw)
            EXPECT_EQ(bands[i], bands[i - 1]);
        else
            EXPECT_EQ(bands[i], bands[i - 1] + 1);
    }
}
