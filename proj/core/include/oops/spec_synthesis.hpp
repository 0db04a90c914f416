#pragma once

#include "oops/endpoint_extraction.hpp"
#include "oops/json_repair.hpp"
#include "oops/oas_model.hpp"
#include "oops/prompts.hpp"
#include "oops/tech_analysis.hpp"

#include <string>
#include <vector>

namespace oops {

class LlmGateway;
class ToolHost;
struct RunConfig;

struct SemanticsResult {
    bool ok = false;
    Json body;         // corrected fragment, meaningful iff ok
    std::string error; // set iff !ok, phrased for the self-refine prompt
};

// Repairs OAS-version confusion in a parsed, ref-expanded fragment.
// Request kind: bare-typed in=body parameters merge into one body parameter
// with an object schema (OpenAPI-3 requestBody objects down-convert the same
// way); duplicate (name, in) parameters and locations outside
// path/query/header/body are dropped. Response kind: 3.0-style content
// nesting flattens onto the 2.0 schema key; status keys must be 3-digit or
// "default". Idempotent.
SemanticsResult correct_semantics(const Json& fragment,
                                  FragmentKind kind,
                                  std::vector<std::string>* warnings = nullptr);

struct FragmentResult {
    Json body; // corrected 2.0 fragment (array for request, object for response)
    RepairReport report;
    std::vector<std::string> warnings;
};

// One endpoint-method fragment: agent -> fix_syntax -> expand_refs ->
// correct_semantics, re-prompting with the error on each failure; after the
// refine budget the endpoint degrades to an empty fallback fragment.
FragmentResult generate_fragment(const EndpointMethod& endpoint,
                                 FragmentKind kind,
                                 LlmGateway& gateway,
                                 const PromptContext& ctx,
                                 const ToolHost& host,
                                 const FileLoader& load);

// Two-level merge into a Swagger 2.0 draft: paths -> path item -> operation,
// paths in first-seen order. Duplicate (path, method) keeps the first
// fragment; an operation without responses gets a bare 200.
SwaggerDoc merge_specs(const std::vector<EndpointMethod>& endpoints,
                       const std::vector<Json>& request_fragments,
                       const std::vector<Json>& response_fragments,
                       const DocInfo& info,
                       std::vector<std::string>& warnings);

// Deduplicates schemas: every parameter schema and media-type schema moves
// to components/schemas keyed by the md5 of its canonical serialization and
// is replaced in place by a $ref. Identical schemas share one entry.
OpenApiDoc rebuild_references(OpenApiDoc doc);

struct RunReport {
    UsageReport usage;
    std::vector<std::string> warnings;
    // (endpoint label "METHOD path", (request report, response report))
    std::vector<std::pair<std::string, std::pair<RepairReport, RepairReport>>> repairs;
    int max_dependency_depth = 0;

    Json to_json() const;
};

struct PipelineResult {
    OpenApiDoc doc;
    RunReport report;
    TechProfile profile;
    ApiDependencyGraph graph;
    std::vector<EndpointMethod> endpoints;
};

// Inventory -> technology analysis -> endpoint extraction. Shared by the
// full pipeline and the `entries` command.
struct ExtractionResult {
    TechProfile profile;
    PromptContext ctx;
    ApiDependencyGraph graph;
    std::vector<EndpointMethod> endpoints;
    std::vector<std::string> warnings;
};

ExtractionResult run_extraction(const RunConfig& config, LlmGateway& gateway);

// The whole pipeline: extraction, per-endpoint fragment generation, merge,
// upgrade to 3.0.4, reference rebuild, validation.
PipelineResult generate_openapi(const RunConfig& config, LlmGateway& gateway);

} // namespace oops
