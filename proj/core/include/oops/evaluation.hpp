#pragma once

#include "oops/oas_model.hpp"

#include <cstdint>
#include <optional>
#include <string>

namespace oops {

struct DimensionScore {
    std::int64_t tp = 0;
    std::int64_t fp = 0;
    std::int64_t fn = 0;
    std::optional<double> precision; // empty = N/A (zero denominator)
    std::optional<double> recall;
    std::optional<double> f1;
};

// precision = tp/(tp+fp), recall = tp/(tp+fn), f1 their harmonic mean;
// each is N/A when its denominator is zero, f1 also when P+R is zero.
DimensionScore with_prf(std::int64_t tp, std::int64_t fp, std::int64_t fn);

struct MetricsReport {
    DimensionScore endpoint_method;
    DimensionScore request_parameter;
    DimensionScore response;
    DimensionScore parameter_constraint;

    Json to_json() const;
    std::string to_table() const;
};

// normalize_path plus positional parameter matching: every {name} becomes
// {}, so renaming a path parameter never changes any count.
std::string positional_path(const std::string& path);

// Scores a generated document against the ground truth along the four
// dimensions: endpoint methods (method + positional path), request
// parameters (name, type, location; bodies flattened one level), responses
// (2xx only: status, media type, top-level schema type), and parameter
// constraints (the 13 keywords on matched parameters, with required=true
// auto-attached to path parameters on both sides).
MetricsReport score(const OpenApiDoc& generated, const OpenApiDoc& truth);

// Single-dimension views over the same matching.
DimensionScore match_endpoint_methods(const OpenApiDoc& generated, const OpenApiDoc& truth);
DimensionScore match_request_parameters(const OpenApiDoc& generated, const OpenApiDoc& truth);
DimensionScore match_responses(const OpenApiDoc& generated, const OpenApiDoc& truth);
DimensionScore match_constraints(const OpenApiDoc& generated, const OpenApiDoc& truth);

} // namespace oops
