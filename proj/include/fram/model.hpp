#pragma once

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fram/errors.hpp"

namespace fram {

namespace detail {

// Orders identifiers with embedded numbers the way a person reads them:
// "F2" < "F13", "R106" < "R110". Digit runs compare by value (longer run of
// equal value wins over leading zeros), everything else byte-wise.
inline int natural_compare(std::string_view a, std::string_view b) {
    size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        const bool da = std::isdigit(static_cast<unsigned char>(a[i])) != 0;
        const bool db = std::isdigit(static_cast<unsigned char>(b[j])) != 0;
        if (da && db) {
            size_t ia = i, jb = j;
            while (ia < a.size() && std::isdigit(static_cast<unsigned char>(a[ia]))) ++ia;
            while (jb < b.size() && std::isdigit(static_cast<unsigned char>(b[jb]))) ++jb;
            std::string_view na = a.substr(i, ia - i);
            std::string_view nb = b.substr(j, jb - j);
            std::string_view ta = na.substr(std::min(na.find_first_not_of('0'), na.size() - 1));
            std::string_view tb = nb.substr(std::min(nb.find_first_not_of('0'), nb.size() - 1));
            if (ta.size() != tb.size()) return ta.size() < tb.size() ? -1 : 1;
            if (int c = ta.compare(tb); c != 0) return c < 0 ? -1 : 1;
            if (na.size() != nb.size()) return na.size() < nb.size() ? -1 : 1;
            i = ia;
            j = jb;
        } else {
            if (a[i] != b[j]) return static_cast<unsigned char>(a[i]) < static_cast<unsigned char>(b[j]) ? -1 : 1;
            ++i;
            ++j;
        }
    }
    if (i < a.size()) return 1;
    if (j < b.size()) return -1;
    return 0;
}

struct NaturalLess {
    bool operator()(std::string_view a, std::string_view b) const { return natural_compare(a, b) < 0; }
};

} // namespace detail

/// The six coupling points of a function. Output is the sole emitting
/// aspect; the other five receive.
enum class Aspect : std::uint8_t { Input, Precondition, Resource, Time, Control, Output };

inline constexpr Aspect kReceivingAspects[] = {Aspect::Input, Aspect::Precondition, Aspect::Resource,
                                               Aspect::Time, Aspect::Control};

inline std::string_view to_string(Aspect a) {
    switch (a) {
    case Aspect::Input: return "input";
    case Aspect::Precondition: return "precondition";
    case Aspect::Resource: return "resource";
    case Aspect::Time: return "time";
    case Aspect::Control: return "control";
    case Aspect::Output: return "output";
    }
    return "?";
}

inline std::optional<Aspect> aspect_from_string(std::string_view s) {
    if (s == "input") return Aspect::Input;
    if (s == "precondition") return Aspect::Precondition;
    if (s == "resource") return Aspect::Resource;
    if (s == "time") return Aspect::Time;
    if (s == "control") return Aspect::Control;
    if (s == "output") return Aspect::Output;
    return std::nullopt;
}

struct FramFunction {
    std::string id;
    std::string label;

    friend bool operator==(const FramFunction&, const FramFunction&) = default;
};

/// Qualified coupling from the origin's Output into one receiving aspect of
/// the destination. The aspect stored here is always the destination side;
/// the origin side is implicitly Output.
struct Relationship {
    std::string id;
    std::string origin;
    std::string destination;
    Aspect aspect = Aspect::Input;
    std::string qname;
    double weight = 1.0;

    friend bool operator==(const Relationship&, const Relationship&) = default;
};

/// A set of functions plus the qualified, weighted relationships coupling
/// them. Both collections are kept sorted by id, so two models built from
/// the same content compare equal regardless of insertion order.
///
/// The aggregate is open on purpose: deserializers may produce a model with
/// dangling references, which validate_model() then reports.
struct FramModel {
    std::vector<FramFunction> functions;
    std::vector<Relationship> relationships;

    const FramFunction* find_function(std::string_view id) const {
        for (const auto& f : functions)
            if (f.id == id) return &f;
        return nullptr;
    }

    const Relationship* find_relationship(std::string_view id) const {
        for (const auto& r : relationships)
            if (r.id == id) return &r;
        return nullptr;
    }

    void sort() {
        std::sort(functions.begin(), functions.end(),
                  [](const auto& a, const auto& b) { return detail::natural_compare(a.id, b.id) < 0; });
        std::sort(relationships.begin(), relationships.end(),
                  [](const auto& a, const auto& b) { return detail::natural_compare(a.id, b.id) < 0; });
    }

    friend bool operator==(const FramModel&, const FramModel&) = default;
};

inline FramModel add_function(FramModel model, std::string id, std::string label) {
    if (id.empty()) raise(ErrorCode::SchemaError, "function id must be non-empty");
    if (label.empty()) raise(ErrorCode::SchemaError, "function '" + id + "' has an empty label");
    if (model.find_function(id)) raise(ErrorCode::DuplicateFunctionId, "function '" + id + "' already present");
    model.functions.push_back({std::move(id), std::move(label)});
    model.sort();
    return model;
}

inline FramModel add_relationship(FramModel model, std::string id, std::string origin, std::string destination,
                                  Aspect aspect, std::string qname, double weight) {
    if (id.empty()) raise(ErrorCode::SchemaError, "relationship id must be non-empty");
    if (!model.find_function(origin))
        raise(ErrorCode::UnknownFunction, "relationship '" + id + "' references unknown origin '" + origin + "'");
    if (!model.find_function(destination))
        raise(ErrorCode::UnknownFunction,
              "relationship '" + id + "' references unknown destination '" + destination + "'");
    if (aspect == Aspect::Output)
        raise(ErrorCode::OutputAsDestinationAspect,
              "relationship '" + id + "' targets the output aspect; outputs only originate couplings");
    if (!(weight > 0.0))
        raise(ErrorCode::NonPositiveWeight, "relationship '" + id + "' has non-positive weight");
    for (const auto& r : model.relationships) {
        if (r.id == id) raise(ErrorCode::DuplicateQuadruple, "relationship id '" + id + "' already present");
        if (r.origin == origin && r.destination == destination && r.aspect == aspect && r.qname == qname)
            raise(ErrorCode::DuplicateQuadruple, "duplicate quadruple {" + origin + ", " + destination + ", " +
                                                     std::string(to_string(aspect)) + ", " + qname + "}");
    }
    model.relationships.push_back({std::move(id), std::move(origin), std::move(destination), aspect,
                                   std::move(qname), weight});
    model.sort();
    return model;
}

struct DanglingReference {
    std::string relationship;
    std::string missing_function;
    bool origin_side = false;

    friend bool operator==(const DanglingReference&, const DanglingReference&) = default;
};

/// Report-only integrity summary. Background functions (no inbound
/// couplings) and functions that never emit an output are legitimate model
/// features worth surfacing, not errors; dangling references are defects.
struct ValidationReport {
    std::vector<DanglingReference> dangling;
    std::vector<std::string> background_functions;  // no inbound relationships
    std::vector<std::string> no_output_functions;   // never an origin

    bool empty() const { return dangling.empty() && background_functions.empty() && no_output_functions.empty(); }
    bool has_dangling() const { return !dangling.empty(); }
};

inline ValidationReport validate_model(const FramModel& model) {
    ValidationReport report;
    for (const auto& r : model.relationships) {
        if (!model.find_function(r.origin)) report.dangling.push_back({r.id, r.origin, true});
        if (!model.find_function(r.destination)) report.dangling.push_back({r.id, r.destination, false});
    }
    for (const auto& f : model.functions) {
        bool inbound = false, outbound = false;
        for (const auto& r : model.relationships) {
            inbound = inbound || r.destination == f.id;
            outbound = outbound || r.origin == f.id;
        }
        if (!inbound) report.background_functions.push_back(f.id);
        if (!outbound) report.no_output_functions.push_back(f.id);
    }
    return report;
}

} // namespace fram
