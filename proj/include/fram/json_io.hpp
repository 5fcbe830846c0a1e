#pragma once

#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "fram/errors.hpp"
#include "fram/majority.hpp"
#include "fram/model.hpp"
#include "fram/variability.hpp"

namespace fram {

inline constexpr int kSchemaVersion = 1;

namespace detail {

using nlohmann::json;

inline json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) raise(ErrorCode::IoError, "cannot open '" + path + "'");
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        raise(ErrorCode::SchemaError, path + ": " + e.what());
    }
}

inline void require_object(const json& j, const std::string& loc) {
    if (!j.is_object()) raise(ErrorCode::SchemaError, loc + ": expected an object");
}

inline void reject_unknown_keys(const json& j, const std::string& loc, std::initializer_list<const char*> allowed) {
    for (const auto& [key, value] : j.items()) {
        bool known = false;
        for (const char* k : allowed) known = known || key == k;
        if (!known) raise(ErrorCode::SchemaError, loc + ": unknown key '" + key + "'");
    }
}

inline const json& require_key(const json& j, const std::string& loc, const char* key) {
    auto it = j.find(key);
    if (it == j.end()) raise(ErrorCode::SchemaError, loc + ": missing key '" + std::string(key) + "'");
    return *it;
}

inline std::string get_string(const json& j, const std::string& loc, const char* key) {
    const json& v = require_key(j, loc, key);
    if (!v.is_string()) raise(ErrorCode::SchemaError, loc + "." + key + ": expected a string");
    return v.get<std::string>();
}

inline double get_number(const json& j, const std::string& loc, const char* key) {
    const json& v = require_key(j, loc, key);
    if (!v.is_number()) raise(ErrorCode::SchemaError, loc + "." + key + ": expected a number");
    return v.get<double>();
}

inline std::vector<double> get_number_array(const json& v, const std::string& loc) {
    if (!v.is_array()) raise(ErrorCode::SchemaError, loc + ": expected an array");
    std::vector<double> out;
    out.reserve(v.size());
    for (size_t i = 0; i < v.size(); ++i) {
        if (!v[i].is_number())
            raise(ErrorCode::SchemaError, loc + "[" + std::to_string(i) + "]: expected a number");
        const double x = v[i].get<double>();
        if (!std::isfinite(x)) raise(ErrorCode::SchemaError, loc + "[" + std::to_string(i) + "]: must be finite");
        out.push_back(x);
    }
    return out;
}

inline void check_schema_version(const json& j, const std::string& path) {
    require_object(j, path);
    const json& v = require_key(j, path, "schema_version");
    if (!v.is_number_integer() || v.get<int>() != kSchemaVersion)
        raise(ErrorCode::SchemaError, path + ".schema_version: expected " + std::to_string(kSchemaVersion));
}

} // namespace detail

// --- model file ------------------------------------------------------------

inline FramModel model_from_json(const nlohmann::json& j, const std::string& path, bool strict = true) {
    using detail::json;
    detail::check_schema_version(j, path);
    detail::reject_unknown_keys(j, path, {"schema_version", "functions", "relationships"});

    FramModel model;
    const json& functions = detail::require_key(j, path, "functions");
    if (!functions.is_array()) raise(ErrorCode::SchemaError, path + ".functions: expected an array");
    for (size_t i = 0; i < functions.size(); ++i) {
        const std::string loc = path + ".functions[" + std::to_string(i) + "]";
        detail::require_object(functions[i], loc);
        detail::reject_unknown_keys(functions[i], loc, {"id", "label"});
        FramFunction f{detail::get_string(functions[i], loc, "id"), detail::get_string(functions[i], loc, "label")};
        if (f.id.empty()) raise(ErrorCode::SchemaError, loc + ".id: must be non-empty");
        if (f.label.empty()) raise(ErrorCode::SchemaError, loc + ".label: must be non-empty");
        if (model.find_function(f.id)) raise(ErrorCode::SchemaError, loc + ": duplicate function id '" + f.id + "'");
        model.functions.push_back(std::move(f));
    }

    const json& relationships = detail::require_key(j, path, "relationships");
    if (!relationships.is_array()) raise(ErrorCode::SchemaError, path + ".relationships: expected an array");
    for (size_t i = 0; i < relationships.size(); ++i) {
        const std::string loc = path + ".relationships[" + std::to_string(i) + "]";
        detail::require_object(relationships[i], loc);
        detail::reject_unknown_keys(relationships[i], loc,
                                    {"id", "origin", "destination", "aspect", "qname", "weight"});
        Relationship r;
        r.id = detail::get_string(relationships[i], loc, "id");
        r.origin = detail::get_string(relationships[i], loc, "origin");
        r.destination = detail::get_string(relationships[i], loc, "destination");
        r.qname = detail::get_string(relationships[i], loc, "qname");
        r.weight = detail::get_number(relationships[i], loc, "weight");
        const std::string aspect = detail::get_string(relationships[i], loc, "aspect");
        const auto parsed = aspect_from_string(aspect);
        if (!parsed) raise(ErrorCode::SchemaError, loc + ".aspect: unknown aspect '" + aspect + "'");
        r.aspect = *parsed;
        if (r.id.empty()) raise(ErrorCode::SchemaError, loc + ".id: must be non-empty");
        if (r.aspect == Aspect::Output)
            raise(ErrorCode::SchemaError,
                  loc + ": relationship '" + r.id + "' uses 'output' as destination aspect; outputs only originate");
        if (!(r.weight > 0.0) || !std::isfinite(r.weight))
            raise(ErrorCode::SchemaError, loc + ".weight: must be a positive finite number");
        for (const auto& prev : model.relationships) {
            if (prev.id == r.id) raise(ErrorCode::SchemaError, loc + ": duplicate relationship id '" + r.id + "'");
            if (prev.origin == r.origin && prev.destination == r.destination && prev.aspect == r.aspect &&
                prev.qname == r.qname)
                raise(ErrorCode::SchemaError, loc + ": duplicate quadruple for relationship '" + r.id + "'");
        }
        model.relationships.push_back(std::move(r));
    }

    model.sort();
    if (strict) {
        const auto report = validate_model(model);
        if (report.has_dangling())
            raise(ErrorCode::ValidationError,
                  path + ": relationship '" + report.dangling.front().relationship +
                      "' references unknown function '" + report.dangling.front().missing_function + "'");
    }
    return model;
}

/// Strict parsing rejects dangling function references; pass strict = false
/// to obtain the raw model for validate_model reporting.
inline FramModel parse_model(const std::string& path, bool strict = true) {
    return model_from_json(detail::load_json(path), path, strict);
}

inline nlohmann::json emit_model(const FramModel& model) {
    nlohmann::json j;
    j["schema_version"] = kSchemaVersion;
    j["functions"] = nlohmann::json::array();
    for (const auto& f : model.functions) j["functions"].push_back({{"id", f.id}, {"label", f.label}});
    j["relationships"] = nlohmann::json::array();
    for (const auto& r : model.relationships)
        j["relationships"].push_back({{"id", r.id},
                                      {"origin", r.origin},
                                      {"destination", r.destination},
                                      {"aspect", std::string(to_string(r.aspect))},
                                      {"qname", r.qname},
                                      {"weight", r.weight}});
    return j;
}

// --- observation file --------------------------------------------------------

inline std::vector<ObservationSeries> observations_from_json(const nlohmann::json& j, const std::string& path) {
    using detail::json;
    detail::check_schema_version(j, path);
    detail::reject_unknown_keys(j, path, {"schema_version", "series"});
    const json& series = detail::require_key(j, path, "series");
    if (!series.is_array()) raise(ErrorCode::SchemaError, path + ".series: expected an array");

    std::vector<ObservationSeries> out;
    for (size_t i = 0; i < series.size(); ++i) {
        const std::string loc = path + ".series[" + std::to_string(i) + "]";
        detail::require_object(series[i], loc);
        detail::reject_unknown_keys(series[i], loc, {"function", "dimension", "unit", "values"});
        ObservationSeries s;
        s.function = detail::get_string(series[i], loc, "function");
        s.unit = detail::get_string(series[i], loc, "unit");
        const std::string dim = detail::get_string(series[i], loc, "dimension");
        const auto parsed = dimension_from_string(dim);
        if (!parsed) raise(ErrorCode::SchemaError, loc + ".dimension: unknown dimension '" + dim + "'");
        s.dimension = *parsed;
        s.values = detail::get_number_array(detail::require_key(series[i], loc, "values"), loc + ".values");
        if (s.values.empty()) raise(ErrorCode::SchemaError, loc + ".values: series must be non-empty");
        out.push_back(std::move(s));
    }
    return out;
}

inline std::vector<ObservationSeries> parse_observations(const std::string& path) {
    return observations_from_json(detail::load_json(path), path);
}

// --- valuation file ----------------------------------------------------------

struct ScenarioBags {
    ValuationBag standard;
    ValuationBag cc;
};

struct ValuationSet {
    double lo = 0.0;
    double hi = 10.0;
    SimilarityFunction similarity = SimilarityFunction::default_shape();
    MajorityFunction majority = MajorityFunction::default_shape();
    std::map<std::string, ScenarioBags, detail::NaturalLess> bags;
};

inline ValuationSet valuations_from_json(const nlohmann::json& j, const std::string& path) {
    using detail::json;
    detail::check_schema_version(j, path);
    detail::reject_unknown_keys(j, path, {"schema_version", "scale", "similarity", "majority", "bags"});

    ValuationSet set;
    const json& scale = detail::require_key(j, path, "scale");
    detail::require_object(scale, path + ".scale");
    detail::reject_unknown_keys(scale, path + ".scale", {"lo", "hi"});
    set.lo = detail::get_number(scale, path + ".scale", "lo");
    set.hi = detail::get_number(scale, path + ".scale", "hi");
    if (!(set.lo < set.hi)) raise(ErrorCode::SchemaError, path + ".scale: requires lo < hi");

    if (auto it = j.find("similarity"); it != j.end()) {
        const std::string loc = path + ".similarity";
        detail::require_object(*it, loc);
        detail::reject_unknown_keys(*it, loc, {"points", "gamma", "epsilon"});
        const json& points = detail::require_key(*it, loc, "points");
        if (!points.is_array() || points.empty()) raise(ErrorCode::SchemaError, loc + ".points: expected an array");
        std::vector<std::pair<double, double>> pts;
        for (size_t i = 0; i < points.size(); ++i) {
            const auto pair = detail::get_number_array(points[i], loc + ".points[" + std::to_string(i) + "]");
            if (pair.size() != 2)
                raise(ErrorCode::SchemaError, loc + ".points[" + std::to_string(i) + "]: expected [delta, mu]");
            pts.emplace_back(pair[0], pair[1]);
        }
        const double gamma = detail::get_number(*it, loc, "gamma");
        const double epsilon = it->contains("epsilon") ? detail::get_number(*it, loc, "epsilon") : 1.0;
        try {
            set.similarity = SimilarityFunction(std::move(pts), gamma, epsilon);
        } catch (const FramError& e) {
            raise(ErrorCode::SchemaError, loc + ": " + e.what());
        }
    }

    if (auto it = j.find("majority"); it != j.end()) {
        const std::string loc = path + ".majority";
        detail::require_object(*it, loc);
        detail::reject_unknown_keys(*it, loc, {"zeta", "knee"});
        try {
            set.majority = MajorityFunction(detail::get_number(*it, loc, "zeta"), detail::get_number(*it, loc, "knee"));
        } catch (const FramError& e) {
            raise(ErrorCode::SchemaError, loc + ": " + e.what());
        }
    }

    const json& bags = detail::require_key(j, path, "bags");
    detail::require_object(bags, path + ".bags");
    for (const auto& [rel, entry] : bags.items()) {
        const std::string loc = path + ".bags." + rel;
        detail::require_object(entry, loc);
        detail::reject_unknown_keys(entry, loc, {"standard", "cc"});
        auto read_bag = [&](const char* key) {
            const auto values = detail::get_number_array(detail::require_key(entry, loc, key), loc + "." + key);
            try {
                return make_bag(values, set.lo, set.hi);
            } catch (const FramError& e) {
                raise(ErrorCode::SchemaError, loc + "." + key + ": " + e.what());
            }
        };
        set.bags.emplace(rel, ScenarioBags{read_bag("standard"), read_bag("cc")});
    }
    if (set.bags.empty()) raise(ErrorCode::SchemaError, path + ".bags: at least one relationship entry required");
    return set;
}

inline ValuationSet parse_valuations(const std::string& path) {
    return valuations_from_json(detail::load_json(path), path);
}

} // namespace fram
