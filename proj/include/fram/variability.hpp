#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fram/errors.hpp"

namespace fram {

enum class PerformanceDimension : std::uint8_t {
    Timing,
    Duration,
    Distance,
    Magnitude,
    Speed,
    Force,
    Precision,
    Volume,
    Costs,
};

inline std::string_view to_string(PerformanceDimension d) {
    switch (d) {
    case PerformanceDimension::Timing: return "timing";
    case PerformanceDimension::Duration: return "duration";
    case PerformanceDimension::Distance: return "distance";
    case PerformanceDimension::Magnitude: return "magnitude";
    case PerformanceDimension::Speed: return "speed";
    case PerformanceDimension::Force: return "force";
    case PerformanceDimension::Precision: return "precision";
    case PerformanceDimension::Volume: return "volume";
    case PerformanceDimension::Costs: return "costs";
    }
    return "?";
}

inline std::optional<PerformanceDimension> dimension_from_string(std::string_view s) {
    if (s == "timing") return PerformanceDimension::Timing;
    if (s == "duration") return PerformanceDimension::Duration;
    if (s == "distance") return PerformanceDimension::Distance;
    if (s == "magnitude") return PerformanceDimension::Magnitude;
    if (s == "speed") return PerformanceDimension::Speed;
    if (s == "force") return PerformanceDimension::Force;
    if (s == "precision") return PerformanceDimension::Precision;
    if (s == "volume") return PerformanceDimension::Volume;
    if (s == "costs") return PerformanceDimension::Costs;
    return std::nullopt;
}

/// Per-function performance measurements. Index i refers to the same process
/// execution across all series of one observation set, so profiles derived
/// from two series can be compared element-wise.
struct ObservationSeries {
    std::string function;
    PerformanceDimension dimension = PerformanceDimension::Timing;
    std::string unit;
    std::vector<double> values;
};

/// Normalized distance of an observation from the expected value, in units
/// of the margin of regular operation: |(x - e) / m|. Values inside [0, 1]
/// are within the margin.
inline double deviation(double x, double e, double m) {
    if (!(m > 0.0)) raise(ErrorCode::ZeroMargin, "margin of regular operation must be positive");
    return std::abs((x - e) / m);
}

struct CenterMargin {
    double center = 0.0;
    double margin = 1.0;
};

namespace detail {

inline double median_sorted(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const size_t n = v.size();
    return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

} // namespace detail

/// Chooses the expected value e and the margin m fed into deviation().
///
/// MedianMad is the robust default: e = median, m = median absolute
/// deviation. A zero MAD (more than half of the observations at the median)
/// falls back to one unit of the series' measurement scale, configurable via
/// zero_mad_guard. MeanStd makes the deviation the absolute z-score; a
/// constant series has no scale to normalize by and is rejected.
class CenterMarginEstimator {
public:
    enum class Kind : std::uint8_t { MedianMad, FixedThresholds, MeanStd };

    static CenterMarginEstimator median_mad(double zero_mad_guard = 1.0) {
        if (!(zero_mad_guard > 0.0)) raise(ErrorCode::ZeroMargin, "zero-MAD guard must be positive");
        CenterMarginEstimator est;
        est.kind_ = Kind::MedianMad;
        est.guard_ = zero_mad_guard;
        return est;
    }

    static CenterMarginEstimator fixed_thresholds(double e, double m) {
        if (!(m > 0.0)) raise(ErrorCode::ZeroMargin, "fixed margin must be positive");
        CenterMarginEstimator est;
        est.kind_ = Kind::FixedThresholds;
        est.fixed_ = {e, m};
        return est;
    }

    static CenterMarginEstimator mean_std() {
        CenterMarginEstimator est;
        est.kind_ = Kind::MeanStd;
        return est;
    }

    Kind kind() const { return kind_; }

    std::string describe() const {
        switch (kind_) {
        case Kind::MedianMad: return "median-mad";
        case Kind::FixedThresholds:
            return "fixed:" + std::to_string(fixed_.center) + "," + std::to_string(fixed_.margin);
        case Kind::MeanStd: return "mean-std";
        }
        return "?";
    }

    CenterMargin estimate(const std::vector<double>& values) const {
        if (values.empty()) raise(ErrorCode::DegenerateSeries, "cannot estimate from an empty series");
        switch (kind_) {
        case Kind::FixedThresholds:
            return fixed_;
        case Kind::MedianMad: {
            const double med = detail::median_sorted(values);
            std::vector<double> abs_dev;
            abs_dev.reserve(values.size());
            for (double x : values) abs_dev.push_back(std::abs(x - med));
            double mad = detail::median_sorted(std::move(abs_dev));
            if (mad == 0.0) mad = guard_;
            return {med, mad};
        }
        case Kind::MeanStd: {
            double mean = 0.0;
            for (double x : values) mean += x;
            mean /= static_cast<double>(values.size());
            double var = 0.0;
            for (double x : values) var += (x - mean) * (x - mean);
            var /= static_cast<double>(values.size());  // population variance
            const double std_dev = std::sqrt(var);
            if (std_dev == 0.0)
                raise(ErrorCode::DegenerateSeries, "constant series: standard deviation is zero");
            return {mean, std_dev};
        }
        }
        raise(ErrorCode::DegenerateSeries, "unreachable estimator kind");
    }

private:
    CenterMarginEstimator() = default;

    Kind kind_ = Kind::MedianMad;
    double guard_ = 1.0;
    CenterMargin fixed_{};
};

inline CenterMargin estimate_center_margin(const ObservationSeries& series, const CenterMarginEstimator& estimator) {
    return estimator.estimate(series.values);
}

struct DeviationProfile {
    std::string function;
    std::string estimator;
    std::vector<double> devs;
};

inline DeviationProfile deviation_profile(const ObservationSeries& series, const CenterMarginEstimator& estimator) {
    const CenterMargin cm = estimator.estimate(series.values);
    DeviationProfile profile{series.function, estimator.describe(), {}};
    profile.devs.reserve(series.values.size());
    for (double x : series.values) profile.devs.push_back(deviation(x, cm.center, cm.margin));
    return profile;
}

/// Cutoffs selecting which observations count as out-of-margin. The
/// variability sum admits deviations at the threshold; the dampening sum
/// requires strictly exceeding it. Both are adjustable, but this pair is the
/// library's reference behavior (see docs/method-notes.md).
struct VariabilityThresholds {
    double fpv_cutoff = 1.0;
    bool fpv_inclusive = true;
    double fdc_cutoff = 1.0;
    bool fdc_inclusive = false;
};

/// Function Performance Variability: total out-of-margin deviation.
inline double fpv(const DeviationProfile& profile, const VariabilityThresholds& t = {}) {
    double sum = 0.0;
    for (double d : profile.devs)
        if (t.fpv_inclusive ? d >= t.fpv_cutoff : d > t.fpv_cutoff) sum += d;
    return sum;
}

/// Function Dampening Capacity of the destination given the origin: summed
/// deviation drop across the observations where the origin ran out of
/// margin. Negative values mean the destination amplified the variability.
inline double fdc(const DeviationProfile& origin, const DeviationProfile& destination,
                  const VariabilityThresholds& t = {}) {
    if (origin.devs.size() != destination.devs.size())
        raise(ErrorCode::MisalignedSeries, "profiles for '" + origin.function + "' and '" + destination.function +
                                               "' have different lengths");
    double sum = 0.0;
    for (size_t i = 0; i < origin.devs.size(); ++i) {
        const double d = origin.devs[i];
        if (t.fdc_inclusive ? d >= t.fdc_cutoff : d > t.fdc_cutoff) sum += d - destination.devs[i];
    }
    return sum;
}

/// Variability Rate as a percentage: the share of upstream out-of-margin
/// variability the downstream function absorbs. Never exceeds 100; negative
/// values indicate amplification (functional resonance).
inline double vr(const DeviationProfile& origin, const DeviationProfile& destination,
                 const VariabilityThresholds& t = {}) {
    const double upstream = fpv(origin, t);
    if (!(upstream > 0.0))
        raise(ErrorCode::ZeroUpstreamVariability,
              "origin '" + origin.function + "' has no out-of-margin variability; rate undefined");
    return 100.0 * fdc(origin, destination, t) / upstream;
}

} // namespace fram
