#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "fram/errors.hpp"
#include "fram/majority.hpp"
#include "fram/model.hpp"

namespace test_support {

inline std::string data_path(const std::string& name) { return std::string(FRAM_DATA_DIR) + "/" + name; }

/// Runs fn and reports the FramError code it threw, if any.
template <typename Fn>
std::optional<fram::ErrorCode> error_code_of(Fn&& fn) {
    try {
        fn();
    } catch (const fram::FramError& e) {
        return e.code();
    }
    return std::nullopt;
}

/// Unpruned power-set reference for MajOp. Walks every non-empty subset in
/// ascending bitmask order and recomputes similarity, majority, and the
/// weighted mean from scratch, independent of the pruned implementation.
inline std::optional<fram::MajOpBreakdown> naive_majop(const fram::ValuationBag& bag,
                                                       const fram::SimilarityFunction& sim_fn,
                                                       const fram::MajorityFunction& maj_fn) {
    const size_t n = bag.values.size();
    fram::MajOpBreakdown breakdown;
    double total_maj = 0.0;
    double total_weighted = 0.0;
    const std::uint32_t full = (std::uint32_t{1} << n) - 1;
    for (std::uint32_t mask = 1; mask <= full; ++mask) {
        std::vector<double> values;
        double sum = 0.0;
        for (size_t i = 0; i < n; ++i) {
            if (mask & (std::uint32_t{1} << i)) {
                values.push_back(bag.values[i]);
                sum += bag.values[i];
            }
        }
        double s = 1.0;
        for (size_t i = 0; i < values.size(); ++i)
            for (size_t j = i + 1; j < values.size(); ++j)
                s = std::min(s, sim_fn(std::abs(values[i] - values[j])));
        const double m = maj_fn(static_cast<double>(values.size()) / static_cast<double>(n));
        const double maj = std::min(s, m);
        if (maj <= 0.0) continue;
        const double op = sum / static_cast<double>(values.size());
        total_maj += maj;
        total_weighted += maj * op;
        std::sort(values.begin(), values.end());
        breakdown.subsets.push_back({std::move(values), s, m, maj, op, 0.0});
    }
    if (total_maj <= 0.0) return std::nullopt;
    for (auto& row : breakdown.subsets) row.weight = row.maj / total_maj;
    breakdown.total_maj = total_maj;
    breakdown.majop = total_weighted / total_maj;
    std::sort(breakdown.subsets.begin(), breakdown.subsets.end(), [](const auto& a, const auto& b) {
        if (a.values.size() != b.values.size()) return a.values.size() < b.values.size();
        return a.values < b.values;
    });
    return breakdown;
}

/// Bags that sometimes cluster (majorities exist) and sometimes spread out
/// (no majority), with integer and fractional values mixed.
inline fram::ValuationBag random_bag(std::mt19937& rng, size_t max_size = 12) {
    std::uniform_int_distribution<size_t> size_dist(1, max_size);
    std::uniform_int_distribution<int> style(0, 2);
    const size_t n = size_dist(rng);
    std::vector<double> values;
    const int kind = style(rng);
    std::uniform_real_distribution<double> center_dist(1.5, 8.5);
    const double center = center_dist(rng);
    for (size_t i = 0; i < n; ++i) {
        double v = 0.0;
        if (kind == 0) {
            std::uniform_int_distribution<int> d(0, 10);
            v = d(rng);
        } else if (kind == 1) {
            std::uniform_real_distribution<double> d(std::max(0.0, center - 1.5), std::min(10.0, center + 1.5));
            v = d(rng);
        } else {
            std::uniform_real_distribution<double> d(0.0, 10.0);
            v = d(rng);
        }
        values.push_back(v);
    }
    return fram::make_bag(std::move(values), 0.0, 10.0);
}

/// Valid random model: functions F1..Fk, relationships with unique
/// quadruples and positive weights.
inline fram::FramModel random_model(std::mt19937& rng, size_t max_functions = 10, size_t max_relationships = 20) {
    std::uniform_int_distribution<size_t> fn_dist(2, max_functions);
    const size_t fn_count = fn_dist(rng);
    fram::FramModel model;
    for (size_t i = 1; i <= fn_count; ++i)
        model = fram::add_function(std::move(model), "F" + std::to_string(i), "Function " + std::to_string(i));

    std::uniform_int_distribution<size_t> rel_dist(1, max_relationships);
    std::uniform_int_distribution<size_t> pick(1, fn_count);
    std::uniform_int_distribution<int> aspect_dist(0, 4);
    std::uniform_real_distribution<double> weight_dist(0.1, 10.0);
    const size_t rel_count = rel_dist(rng);
    for (size_t i = 1; i <= rel_count; ++i) {
        const fram::Aspect aspect = fram::kReceivingAspects[aspect_dist(rng)];
        model = fram::add_relationship(std::move(model), "R" + std::to_string(i), "F" + std::to_string(pick(rng)),
                                       "F" + std::to_string(pick(rng)), aspect, "Link " + std::to_string(i),
                                       weight_dist(rng));
    }
    return model;
}

inline fram::FramModel scale_weights(fram::FramModel model, double factor) {
    for (auto& r : model.relationships) r.weight *= factor;
    return model;
}

} // namespace test_support
