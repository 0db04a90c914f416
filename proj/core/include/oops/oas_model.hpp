#pragma once

#include "oops/errors.hpp"
#include "oops/json.hpp"
#include "oops/ordered_map.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace oops {

class UnsupportedConstruct : public PipelineError {
public:
    explicit UnsupportedConstruct(const std::string& message)
        : PipelineError("oas_model", message) {}
};

class OasParseError : public PipelineError {
public:
    explicit OasParseError(const std::string& message) : PipelineError("oas_model", message) {}
};

struct DocInfo {
    std::string title;
    std::string version;
};

// ---------------------------------------------------------------- Swagger 2.0

struct ParameterV2 {
    std::string name;
    std::string in; // query | header | path | formData | body
    std::optional<std::string> description;
    std::optional<bool> required;
    Json schema;                       // body parameters; null otherwise
    Json type_fields = Json::object(); // non-body: type/format/items/enum/constraints, stored order
};

struct ResponseV2 {
    std::string description;
    Json schema; // null when the response has no body
};

struct OperationV2 {
    std::vector<std::string> consumes;
    std::vector<std::string> produces;
    std::vector<ParameterV2> parameters;
    OrderedMap<ResponseV2> responses; // status -> response, insertion order
};

struct SwaggerDoc {
    DocInfo info;
    OrderedMap<OrderedMap<OperationV2>> paths; // path -> method -> operation
};

// -------------------------------------------------------------- OpenAPI 3.0.4

struct ParameterV3 {
    std::string name;
    std::string in; // path | query | header | cookie (body is a violation)
    std::optional<std::string> description;
    std::optional<bool> required;
    Json schema;
};

struct MediaTypeV3 {
    Json schema; // null allowed: media type without schema
};

struct RequestBodyV3 {
    std::optional<std::string> description;
    std::optional<bool> required;
    OrderedMap<MediaTypeV3> content;
};

struct ResponseV3 {
    std::string description;
    OrderedMap<MediaTypeV3> content; // empty -> no content key
};

struct OperationV3 {
    std::vector<ParameterV3> parameters;
    std::optional<RequestBodyV3> request_body;
    OrderedMap<ResponseV3> responses;
};

struct OpenApiDoc {
    std::string openapi = "3.0.4";
    DocInfo info;
    OrderedMap<OrderedMap<OperationV3>> paths;
    std::map<std::string, Json> component_schemas; // lexicographic by key
    bool has_components = false;                   // emit components iff true
};

// ------------------------------------------------------------------ operations

Json swagger_to_json(const SwaggerDoc& doc);
SwaggerDoc swagger_from_json(const Json& value); // throws OasParseError

// Lenient single-parameter conversion, shared with specification merging.
ParameterV2 parameter_v2_from_json(const Json& value);

Json openapi_to_json(const OpenApiDoc& doc);
OpenApiDoc openapi_from_json(const Json& value); // throws OasParseError

// Swagger 2.0 -> OpenAPI 3.0.4: in=body parameters become requestBody,
// response schemas move under content, consumes/produces pick the media
// type (default application/json), non-body parameters get their type and
// constraints wrapped in a schema. Throws UnsupportedConstruct for 2.0
// constructs without a mapping in this subset (formData).
OpenApiDoc upgrade_to_304(const SwaggerDoc& doc);

struct Violation {
    std::string location; // JSON-pointer style
    std::string message;
};

// Empty result iff the document obeys the model invariants: no in=body
// parameters, every $ref resolves into components/schemas, $ref appears
// without siblings, response keys are 3-digit or "default", operations
// have at least one response and no duplicate (name, in) parameters.
std::vector<Violation> validate(const OpenApiDoc& doc);

enum class SerializeFormat { json, yaml };

SerializeFormat parse_serialize_format(const std::string& text); // throws ConfigError

// Deterministic text form: object keys in document order (components sorted
// lexicographically by construction), 2-space indentation for JSON, trailing
// newline.
std::string serialize(const OpenApiDoc& doc, SerializeFormat format);
std::string serialize(const SwaggerDoc& doc, SerializeFormat format);

// Accepts JSON or YAML (sniffed from the payload).
OpenApiDoc parse_openapi(const std::string& text);
SwaggerDoc parse_swagger(const std::string& text);

// Generic text <-> Json helpers shared with tests and the CLI.
Json json_from_yaml(const std::string& text);   // throws OasParseError
std::string json_to_yaml(const Json& value);

// Follows a "#/components/schemas/<key>" reference one step if present;
// returns the schema itself otherwise, or nullptr for a dangling ref.
const Json* resolve_schema(const OpenApiDoc& doc, const Json& schema);

} // namespace oops
