#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "fram/errors.hpp"

namespace fram {

/// Multiset of expert valuations on a declared scale. Duplicate values are
/// distinct elements: {4, 4, 5, 6} contains two three-element subsets whose
/// values read {4, 5, 6}.
struct ValuationBag {
    std::vector<double> values;
    double lo = 0.0;
    double hi = 10.0;
};

inline ValuationBag make_bag(std::vector<double> values, double lo = 0.0, double hi = 10.0) {
    if (values.empty()) raise(ErrorCode::SchemaError, "valuation bag must be non-empty");
    if (!(lo < hi)) raise(ErrorCode::SchemaError, "valuation scale requires lo < hi");
    for (double v : values) {
        if (!std::isfinite(v)) raise(ErrorCode::SchemaError, "valuation bag contains a non-finite value");
        if (v < lo || v > hi)
            raise(ErrorCode::ValueOutOfScale,
                  "valuation " + std::to_string(v) + " outside scale [" + std::to_string(lo) + ", " +
                      std::to_string(hi) + "]");
    }
    return {std::move(values), lo, hi};
}

/// Graded similarity of two valuations as a function of their absolute
/// difference delta (optionally scaled by a realization point epsilon).
/// Piecewise linear through the control points, 1 at delta = 0, and 0 at or
/// beyond the upper bound gamma. Symmetric by construction, not transitive.
class SimilarityFunction {
public:
    SimilarityFunction(std::vector<std::pair<double, double>> points, double gamma, double epsilon = 1.0)
        : points_(std::move(points)), gamma_(gamma), epsilon_(epsilon) {
        if (points_.empty()) raise(ErrorCode::SchemaError, "similarity function needs control points");
        if (points_.front().first != 0.0 || points_.front().second != 1.0)
            raise(ErrorCode::SchemaError, "similarity function must start at (0, 1)");
        for (size_t i = 0; i < points_.size(); ++i) {
            const auto& [d, mu] = points_[i];
            if (mu < 0.0 || mu > 1.0) raise(ErrorCode::SchemaError, "similarity membership outside [0, 1]");
            if (i > 0 && points_[i - 1].first >= d)
                raise(ErrorCode::SchemaError, "similarity control points must have increasing delta");
            if (i > 0 && points_[i - 1].second < mu)
                raise(ErrorCode::SchemaError, "similarity function must be non-increasing");
        }
        if (!(gamma_ > 0.0)) raise(ErrorCode::SchemaError, "similarity upper bound gamma must be positive");
        if (!(epsilon_ > 0.0)) raise(ErrorCode::SchemaError, "similarity epsilon must be positive");
    }

    /// Default shape: full membership for identical values, near-full for a
    /// difference of one, weak for two, none at three or more.
    static SimilarityFunction default_shape() {
        return SimilarityFunction({{0.0, 1.0}, {1.0, 0.99}, {2.0, 0.66}, {3.0, 0.0}}, 3.0, 1.0);
    }

    double operator()(double delta) const {
        const double d = delta / epsilon_;
        if (d >= gamma_) return 0.0;
        if (d <= points_.front().first) return points_.front().second;
        for (size_t i = 1; i < points_.size(); ++i) {
            const auto& [d1, mu1] = points_[i];
            if (d <= d1) {
                const auto& [d0, mu0] = points_[i - 1];
                return mu0 + (mu1 - mu0) * (d - d0) / (d1 - d0);
            }
        }
        return points_.back().second;
    }

    const std::vector<std::pair<double, double>>& points() const { return points_; }
    double gamma() const { return gamma_; }
    double epsilon() const { return epsilon_; }

private:
    std::vector<std::pair<double, double>> points_;
    double gamma_;
    double epsilon_;
};

/// How intensively a subset counts as a majority, judged on its cardinality
/// fraction |X| / |E|: zero at or below the lower bound zeta, full from the
/// knee upward, linear in between.
class MajorityFunction {
public:
    MajorityFunction(double zeta, double knee) : zeta_(zeta), knee_(knee) {
        if (zeta_ < 0.0 || zeta_ >= 1.0) raise(ErrorCode::SchemaError, "majority lower bound must lie in [0, 1)");
        if (!(knee_ > zeta_) || knee_ > 1.0)
            raise(ErrorCode::SchemaError, "majority knee must lie in (zeta, 1]");
    }

    static MajorityFunction default_shape() { return MajorityFunction(0.4, 0.7); }

    double operator()(double fraction) const {
        if (fraction <= zeta_) return 0.0;
        if (fraction >= knee_) return 1.0;
        return (fraction - zeta_) / (knee_ - zeta_);
    }

    double zeta() const { return zeta_; }
    double knee() const { return knee_; }

private:
    double zeta_;
    double knee_;
};

inline double similarity_membership(double delta, const SimilarityFunction& fn) { return fn(delta); }

inline double majority_membership(double fraction, const MajorityFunction& fn) {
    if (fraction < 0.0 || fraction > 1.0)
        raise(ErrorCode::SchemaError, "cardinality fraction must lie in [0, 1]");
    return fn(fraction);
}

/// Minimum pairwise similarity within a subset; 1 for singletons.
inline double subset_similarity(std::span<const double> values, const SimilarityFunction& sim_fn) {
    double s = 1.0;
    for (size_t i = 0; i < values.size(); ++i)
        for (size_t j = i + 1; j < values.size(); ++j)
            s = std::min(s, sim_fn(std::abs(values[i] - values[j])));
    return s;
}

/// Maj(X) = min(M(|X|/|E|), min pairwise similarity in X).
inline double subset_majority_degree(std::span<const double> subset, size_t bag_size,
                                     const SimilarityFunction& sim_fn, const MajorityFunction& maj_fn) {
    if (subset.empty() || bag_size == 0 || subset.size() > bag_size)
        raise(ErrorCode::SchemaError, "subset must be non-empty and drawn from the bag");
    const double m = maj_fn(static_cast<double>(subset.size()) / static_cast<double>(bag_size));
    return std::min(m, subset_similarity(subset, sim_fn));
}

struct SubsetEvaluation {
    std::vector<double> values;  // sorted ascending
    double similarity = 0.0;
    double majority = 0.0;
    double maj = 0.0;
    double op = 0.0;
    double weight = 0.0;
};

/// One row per subset with Maj > 0, ordered by cardinality then values,
/// plus the aggregate representative value.
struct MajOpBreakdown {
    std::vector<SubsetEvaluation> subsets;
    double majop = 0.0;
    double total_maj = 0.0;
};

inline constexpr size_t kMaxBagSize = 24;  // power-set enumeration is 2^|E|

/// Fuzzy-majority representative value: a weighted mean of the average
/// opinion of every subset that qualifies as a majority.
///
/// Enumerates subsets as bitmasks in ascending order. Two prunes keep the
/// power set tractable without changing the result: masks smaller than the
/// lowest qualifying cardinality are dropped, and per-element
/// incompatibility masks drop every superset of a pair with zero
/// similarity. Both prunes only skip subsets whose Maj is exactly 0, and
/// accumulation order is unchanged, so the sums match an unpruned
/// enumeration bit for bit.
inline MajOpBreakdown majop(const ValuationBag& bag, const SimilarityFunction& sim_fn,
                            const MajorityFunction& maj_fn) {
    const size_t n = bag.values.size();
    if (n == 0) raise(ErrorCode::SchemaError, "valuation bag must be non-empty");
    if (n > kMaxBagSize)
        raise(ErrorCode::BagTooLarge, "bag of " + std::to_string(n) + " valuations exceeds the enumeration limit of " +
                                          std::to_string(kMaxBagSize));

    // Smallest cardinality whose fraction clears the majority lower bound.
    // The knee is validated to lie in (zeta, 1], so the full bag always
    // qualifies and min_size <= n.
    size_t min_size = n;
    for (size_t k = 1; k <= n; ++k) {
        if (maj_fn(static_cast<double>(k) / static_cast<double>(n)) > 0.0) {
            min_size = k;
            break;
        }
    }

    std::vector<std::uint32_t> incompatible(n, 0);
    for (size_t i = 0; i < n; ++i)
        for (size_t j = i + 1; j < n; ++j)
            if (sim_fn(std::abs(bag.values[i] - bag.values[j])) == 0.0) {
                incompatible[i] |= std::uint32_t{1} << j;
                incompatible[j] |= std::uint32_t{1} << i;
            }

    MajOpBreakdown breakdown;
    double total_maj = 0.0;
    double total_weighted_op = 0.0;

    const std::uint32_t full = (std::uint32_t{1} << n) - 1;
    for (std::uint32_t mask = 1; mask <= full; ++mask) {
        const auto size = static_cast<size_t>(std::popcount(mask));
        if (size < min_size) continue;

        bool compatible = true;
        for (std::uint32_t rest = mask; rest != 0 && compatible; rest &= rest - 1) {
            const auto i = static_cast<size_t>(std::countr_zero(rest));
            compatible = (mask & incompatible[i]) == 0;
        }
        if (!compatible) continue;

        std::vector<double> values;
        values.reserve(size);
        double sum = 0.0;
        for (std::uint32_t rest = mask; rest != 0; rest &= rest - 1) {
            const double v = bag.values[static_cast<size_t>(std::countr_zero(rest))];
            values.push_back(v);
            sum += v;
        }

        const double s = subset_similarity(values, sim_fn);
        const double m = maj_fn(static_cast<double>(size) / static_cast<double>(n));
        const double maj = std::min(s, m);
        if (maj <= 0.0) continue;

        const double op = sum / static_cast<double>(size);
        total_maj += maj;
        total_weighted_op += maj * op;
        std::sort(values.begin(), values.end());
        breakdown.subsets.push_back({std::move(values), s, m, maj, op, 0.0});
    }

    if (total_maj <= 0.0)
        raise(ErrorCode::NoMajority, "no subset of the bag qualifies as a majority");

    for (auto& row : breakdown.subsets) row.weight = row.maj / total_maj;
    breakdown.total_maj = total_maj;
    breakdown.majop = total_weighted_op / total_maj;

    std::sort(breakdown.subsets.begin(), breakdown.subsets.end(),
              [](const SubsetEvaluation& a, const SubsetEvaluation& b) {
                  if (a.values.size() != b.values.size()) return a.values.size() < b.values.size();
                  return a.values < b.values;
              });
    return breakdown;
}

} // namespace fram
