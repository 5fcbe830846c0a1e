#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "fram/errors.hpp"
#include "fram/majority.hpp"
#include "fram/model.hpp"

namespace fram {

/// Variability-rate comparison of one relationship under two deployment
/// scenarios. Valuations are 0-10 judgments of the rate, so VR% is the
/// aggregated value times ten.
struct ScenarioAssessment {
    std::string relationship;
    double majop_standard = 0.0;
    double majop_cc = 0.0;
    double vr_standard = 0.0;  // percent
    double vr_cc = 0.0;        // percent
    std::optional<double> improvement_ratio;  // vr_cc / vr_standard, absent when vr_standard is not positive
};

inline ScenarioAssessment assess_relationship(const std::string& relationship, const ValuationBag& standard,
                                              const ValuationBag& cc, const SimilarityFunction& sim_fn,
                                              const MajorityFunction& maj_fn) {
    ScenarioAssessment a;
    a.relationship = relationship;
    a.majop_standard = majop(standard, sim_fn, maj_fn).majop;
    a.majop_cc = majop(cc, sim_fn, maj_fn).majop;
    a.vr_standard = a.majop_standard * 10.0;
    a.vr_cc = a.majop_cc * 10.0;
    if (a.vr_standard > 0.0) a.improvement_ratio = a.vr_cc / a.vr_standard;
    return a;
}

struct RatioAggregate {
    double min = 0.0;
    double median = 0.0;
    double max = 0.0;
    size_t defined_count = 0;
};

struct ComparisonReport {
    std::vector<ScenarioAssessment> rows;               // ordered by relationship id
    std::optional<RatioAggregate> ratios;               // absent when no row has a defined ratio
    std::vector<std::string> undefined_ratio;           // relationships flagged for vr_standard = 0
};

inline ComparisonReport compare_scenarios(std::vector<ScenarioAssessment> assessments) {
    if (assessments.empty()) raise(ErrorCode::SchemaError, "comparison needs at least one assessment");
    std::sort(assessments.begin(), assessments.end(), [](const auto& a, const auto& b) {
        return detail::natural_compare(a.relationship, b.relationship) < 0;
    });

    ComparisonReport report;
    std::vector<double> ratios;
    for (const auto& a : assessments) {
        if (a.improvement_ratio)
            ratios.push_back(*a.improvement_ratio);
        else
            report.undefined_ratio.push_back(a.relationship);
    }
    report.rows = std::move(assessments);

    if (!ratios.empty()) {
        std::sort(ratios.begin(), ratios.end());
        const size_t n = ratios.size();
        RatioAggregate agg;
        agg.min = ratios.front();
        agg.max = ratios.back();
        agg.median = n % 2 == 1 ? ratios[n / 2] : 0.5 * (ratios[n / 2 - 1] + ratios[n / 2]);
        agg.defined_count = n;
        report.ratios = agg;
    }
    return report;
}

} // namespace fram
