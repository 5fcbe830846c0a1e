#include <gtest/gtest.h>

#include <random>

#include "fram/json_io.hpp"
#include "fram/scenario.hpp"
#include "support.hpp"

using namespace fram;
using test_support::data_path;
using test_support::error_code_of;

namespace {

const SimilarityFunction kSim = SimilarityFunction::default_shape();
const MajorityFunction kMaj = MajorityFunction::default_shape();

} // namespace

TEST(ScenarioTest, BehaviorDataRelationship) {
    // Eight-expert judgments for the user-behavior-data coupling under the
    // standard and connected-community deployments.
    const auto a = assess_relationship("R108", make_bag({1, 0, 0, 2, 0, 0, 2, 2}),
                                       make_bag({10, 10, 10, 9, 10, 9, 9, 10}), kSim, kMaj);
    EXPECT_NEAR(a.majop_standard, 0.87, 0.05);
    EXPECT_NEAR(a.majop_cc, 9.62, 0.05);
    EXPECT_DOUBLE_EQ(a.vr_standard, a.majop_standard * 10.0);
    EXPECT_DOUBLE_EQ(a.vr_cc, a.majop_cc * 10.0);
    ASSERT_TRUE(a.improvement_ratio.has_value());
    EXPECT_GT(*a.improvement_ratio, 1.0);
}

TEST(ScenarioTest, IdenticalBagsGiveRatioOne) {
    const ValuationBag bag = make_bag({5, 5, 6, 6, 5, 6, 5, 5});
    const auto a = assess_relationship("R1", bag, bag, kSim, kMaj);
    ASSERT_TRUE(a.improvement_ratio.has_value());
    EXPECT_NEAR(*a.improvement_ratio, 1.0, 1e-12);
}

TEST(ScenarioTest, AllZeroStandardBagFlagged) {
    // Constant zero bag aggregates to zero, so the ratio is undefined.
    const auto a = assess_relationship("R1", make_bag({0, 0, 0, 0, 0, 0, 0, 0}),
                                       make_bag({9, 9, 9, 9, 9, 9, 9, 9}), kSim, kMaj);
    EXPECT_DOUBLE_EQ(a.majop_standard, 0.0);
    EXPECT_DOUBLE_EQ(a.vr_standard, 0.0);
    EXPECT_FALSE(a.improvement_ratio.has_value());

    const auto report = compare_scenarios({a});
    ASSERT_EQ(report.undefined_ratio.size(), 1u);
    EXPECT_EQ(report.undefined_ratio[0], "R1");
    EXPECT_FALSE(report.ratios.has_value());
}

TEST(ScenarioTest, BundledBagsAllImprove) {
    const ValuationSet set = parse_valuations(data_path("uts-valuations.json"));
    ASSERT_EQ(set.bags.size(), 7u);
    for (const auto& [rel, bags] : set.bags) {
        const auto a = assess_relationship(rel, bags.standard, bags.cc, set.similarity, set.majority);
        EXPECT_GT(a.majop_cc, a.majop_standard) << rel;
        EXPECT_GT(a.vr_cc, a.vr_standard) << rel;
    }
}

TEST(ScenarioTest, SingleAssessmentAggregate) {
    ScenarioAssessment a;
    a.relationship = "R1";
    a.vr_standard = 10.0;
    a.vr_cc = 20.0;
    a.improvement_ratio = 2.0;
    const auto report = compare_scenarios({a});
    ASSERT_TRUE(report.ratios.has_value());
    EXPECT_DOUBLE_EQ(report.ratios->min, 2.0);
    EXPECT_DOUBLE_EQ(report.ratios->median, 2.0);
    EXPECT_DOUBLE_EQ(report.ratios->max, 2.0);
}

TEST(ScenarioTest, AggregateOverPrintedRatePairs) {
    // Seven (cc, standard) VR percentage pairs; aggregate ratios span about
    // 1.87 to 11.06.
    const double pairs[][2] = {{80.0, 11.5}, {64.0, 11.5}, {96.2, 8.7}, {90.0, 48.2},
                               {65.0, 12.5}, {97.5, 16.5}, {96.2, 9.9}};
    std::vector<ScenarioAssessment> assessments;
    int i = 0;
    for (const auto& p : pairs) {
        ScenarioAssessment a;
        a.relationship = "R" + std::to_string(++i);
        a.vr_cc = p[0];
        a.vr_standard = p[1];
        a.majop_cc = p[0] / 10.0;
        a.majop_standard = p[1] / 10.0;
        a.improvement_ratio = a.vr_cc / a.vr_standard;
        assessments.push_back(std::move(a));
    }
    const auto report = compare_scenarios(std::move(assessments));
    ASSERT_TRUE(report.ratios.has_value());
    EXPECT_NEAR(report.ratios->min, 90.0 / 48.2, 0.005);
    EXPECT_NEAR(report.ratios->max, 96.2 / 8.7, 0.005);
    EXPECT_EQ(report.ratios->defined_count, 7u);
}

TEST(ScenarioTest, RowsOrderedByRelationshipId) {
    std::vector<ScenarioAssessment> assessments;
    for (const char* rel : {"R106", "R26", "R9"}) {
        ScenarioAssessment a;
        a.relationship = rel;
        a.vr_standard = 10.0;
        a.vr_cc = 20.0;
        a.improvement_ratio = 2.0;
        assessments.push_back(std::move(a));
    }
    const auto report = compare_scenarios(std::move(assessments));
    ASSERT_EQ(report.rows.size(), 3u);
    EXPECT_EQ(report.rows[0].relationship, "R9");
    EXPECT_EQ(report.rows[1].relationship, "R26");
    EXPECT_EQ(report.rows[2].relationship, "R106");
}

TEST(ScenarioTest, EmptyComparisonRejected) {
    EXPECT_EQ(error_code_of([] { compare_scenarios({}); }), ErrorCode::SchemaError);
}

// Stochastic dominance: if every CC valuation sits at least three above
// every standard valuation, the aggregated rate must improve.
TEST(ScenarioTest, DominatedBagsAlwaysImprove) {
    std::mt19937 rng(909);
    std::uniform_int_distribution<int> low(0, 3);
    std::uniform_int_distribution<int> high(6, 10);
    std::uniform_int_distribution<int> size_dist(4, 8);
    for (int round = 0; round < 100; ++round) {
        const int n = size_dist(rng);
        std::vector<double> standard, cc;
        for (int i = 0; i < n; ++i) {
            standard.push_back(low(rng));
            cc.push_back(high(rng));
        }
        try {
            const auto a = assess_relationship("R1", make_bag(standard), make_bag(cc), kSim, kMaj);
            EXPECT_GT(a.vr_cc, a.vr_standard);
        } catch (const FramError& e) {
            EXPECT_EQ(e.code(), ErrorCode::NoMajority);
        }
    }
}
