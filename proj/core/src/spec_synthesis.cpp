#include "oops/spec_synthesis.hpp"

#include "oops/digest.hpp"
#include "oops/errors.hpp"
#include "oops/gateway.hpp"
#include "oops/ref_expand.hpp"
#include "oops/tool_host.hpp"

#include <algorithm>
#include <cctype>
#include <set>

namespace oops {
namespace {

constexpr int kFragmentRoundBudget = 4; // agent outputs per fragment

bool is_status_key(const std::string& key) {
    if (key == "default") return true;
    if (key.size() != 3) return false;
    return std::all_of(key.begin(), key.end(), [](unsigned char c) { return std::isdigit(c); });
}

void warn(std::vector<std::string>* sink, std::string message) {
    if (sink) sink->push_back(std::move(message));
}

// Pulls the schema out of an OpenAPI-3 requestBody object.
Json request_body_schema(const Json& request_body) {
    if (request_body.contains("schema")) return request_body.at("schema");
    if (request_body.contains("content") && request_body.at("content").is_object()) {
        for (const auto& [media, body] : request_body.at("content").items()) {
            (void)media;
            if (body.is_object() && body.contains("schema")) return body.at("schema");
        }
    }
    return Json(nullptr);
}

SemanticsResult correct_request(const Json& fragment, std::vector<std::string>* warnings) {
    SemanticsResult result;

    Json items = Json::array();
    if (fragment.is_array()) {
        items = fragment;
    } else if (fragment.is_object()) {
        if (fragment.contains("parameters") && fragment.at("parameters").is_array()) {
            for (const auto& item : fragment.at("parameters")) items.push_back(item);
        }
        if (fragment.contains("requestBody") && fragment.at("requestBody").is_object()) {
            // OpenAPI-3 construct: down-convert to a body parameter.
            const Json& rb = fragment.at("requestBody");
            Json body{{"name", "body"}, {"in", "body"}};
            if (rb.contains("required") && rb.at("required").is_boolean()) {
                body["required"] = rb.at("required");
            }
            Json schema = request_body_schema(rb);
            body["schema"] = schema.is_null() ? Json::object() : schema;
            items.push_back(std::move(body));
        }
        if (items.empty() && (fragment.contains("name") || fragment.contains("in"))) {
            items.push_back(fragment); // a single bare parameter object
        }
        if (items.empty()) {
            result.error = "the fragment is not a Swagger 2.0 Parameter object list";
            return result;
        }
    } else {
        result.error = "the fragment is not a Swagger 2.0 Parameter object list";
        return result;
    }

    // Keep only parameter objects with a representable location.
    static const char* kLocations[] = {"query", "header", "path", "body"};
    Json kept = Json::array();
    for (const auto& item : items) {
        if (!item.is_object()) {
            warn(warnings, "semantic correction: dropped non-object parameter entry");
            continue;
        }
        const std::string in = item.value("in", "");
        if (std::find_if(std::begin(kLocations), std::end(kLocations),
                         [&in](const char* l) { return in == l; }) == std::end(kLocations)) {
            warn(warnings, "semantic correction: dropped parameter '" + item.value("name", "") +
                               "' with unsupported location '" + in + "'");
            continue;
        }
        kept.push_back(item);
    }

    std::vector<std::size_t> body_positions;
    for (std::size_t i = 0; i < kept.size(); ++i) {
        if (kept.at(i).value("in", "") == "body") body_positions.push_back(i);
    }

    Json corrected = Json::array();
    const bool single_proper_body =
        body_positions.size() == 1 && kept.at(body_positions.front()).contains("schema");
    if (body_positions.empty() || single_proper_body) {
        corrected = kept;
    } else {
        // Merge every body parameter into one object-schema parameter.
        Json properties = Json::object();
        Json required_names = Json::array();
        bool any_required = false;
        for (std::size_t i : body_positions) {
            const Json& item = kept.at(i);
            if (item.value("required", false)) any_required = true;
            if (item.contains("schema")) {
                const Json& schema = item.at("schema");
                if (schema.is_object() && schema.value("type", "") == "object" &&
                    schema.contains("properties") && schema.at("properties").is_object()) {
                    for (const auto& [key, value] : schema.at("properties").items()) {
                        if (!properties.contains(key)) properties[key] = value;
                    }
                    if (schema.contains("required") && schema.at("required").is_array()) {
                        for (const auto& name : schema.at("required")) {
                            if (name.is_string() &&
                                std::find(required_names.begin(), required_names.end(), name) ==
                                    required_names.end()) {
                                required_names.push_back(name);
                            }
                        }
                    }
                } else {
                    const std::string key = item.value("name", "");
                    properties[key.empty() ? "value" : key] = schema;
                }
                continue;
            }
            // Bare type fields: the parameter itself describes one property.
            Json property = item;
            property.erase("name");
            property.erase("in");
            property.erase("required");
            property.erase("description");
            const std::string key = item.value("name", "");
            if (!properties.contains(key.empty() ? "value" : key)) {
                properties[key.empty() ? "value" : key] = std::move(property);
            }
        }
        Json schema{{"type", "object"}, {"properties", std::move(properties)}};
        if (!required_names.empty()) schema["required"] = std::move(required_names);
        Json merged{{"name", "body"}, {"in", "body"}};
        if (any_required) merged["required"] = true;
        merged["schema"] = std::move(schema);

        bool emitted = false;
        for (std::size_t i = 0; i < kept.size(); ++i) {
            if (kept.at(i).value("in", "") == "body") {
                if (!emitted) {
                    corrected.push_back(merged);
                    emitted = true;
                }
                continue;
            }
            corrected.push_back(kept.at(i));
        }
    }

    // The validator forbids duplicate (name, in) pairs; keep the first.
    Json deduped = Json::array();
    std::set<std::pair<std::string, std::string>> seen;
    for (const auto& item : corrected) {
        const auto identity = std::make_pair(item.value("name", ""), item.value("in", ""));
        if (!seen.insert(identity).second) {
            warn(warnings, "semantic correction: dropped duplicate parameter (" + identity.first +
                               ", " + identity.second + ")");
            continue;
        }
        deduped.push_back(item);
    }

    result.ok = true;
    result.body = std::move(deduped);
    return result;
}

SemanticsResult correct_response(const Json& fragment, std::vector<std::string>* warnings) {
    SemanticsResult result;
    if (!fragment.is_object()) {
        result.error = "the fragment is not a Swagger 2.0 Responses object";
        return result;
    }

    const Json* source = &fragment;
    if (fragment.contains("responses") && fragment.at("responses").is_object()) {
        source = &fragment.at("responses"); // unwrap an Operation-style wrapper
    }

    Json out = Json::object();
    for (const auto& [status, value] : source->items()) {
        if (!is_status_key(status)) {
            warn(warnings, "semantic correction: dropped response with non-status key '" + status + "'");
            continue;
        }
        if (!value.is_object()) {
            warn(warnings, "semantic correction: dropped non-object response for status " + status);
            continue;
        }
        Json response = value;
        if (response.contains("content")) {
            // 3.0-style nesting: lift the first media type's schema.
            if (!response.contains("schema") && response.at("content").is_object()) {
                for (const auto& [media, body] : response.at("content").items()) {
                    (void)media;
                    if (body.is_object() && body.contains("schema")) {
                        response["schema"] = body.at("schema");
                        break;
                    }
                }
            }
            response.erase("content");
        }
        if (!response.contains("description") || !response.at("description").is_string()) {
            response["description"] = "";
        }
        out[status] = std::move(response);
    }

    result.ok = true;
    result.body = std::move(out);
    return result;
}

} // namespace

SemanticsResult correct_semantics(const Json& fragment,
                                  FragmentKind kind,
                                  std::vector<std::string>* warnings) {
    return kind == FragmentKind::request ? correct_request(fragment, warnings)
                                         : correct_response(fragment, warnings);
}

FragmentResult generate_fragment(const EndpointMethod& endpoint,
                                 FragmentKind kind,
                                 LlmGateway& gateway,
                                 const PromptContext& ctx,
                                 const ToolHost& host,
                                 const FileLoader& load) {
    FragmentResult result;
    const char* kind_name = kind == FragmentKind::request ? "request" : "response";

    std::vector<std::pair<std::string, std::string>> files;
    files.reserve(endpoint.ordered_files.size());
    for (const auto& rel : endpoint.ordered_files) files.emplace_back(rel, load(rel));

    ChatRequest request = fragment_generation_request(ctx, kind, endpoint.path, endpoint.method,
                                                      dependencies_block(files));

    std::string last_error;
    for (int round = 0; round < kFragmentRoundBudget; ++round) {
        ChatResponse response;
        try {
            response = gateway.run_tool_loop(request, host, gateway.default_max_rounds(),
                                             "spec_generation");
        } catch (const ToolLoopExhausted& e) {
            last_error = e.what();
            break;
        } catch (const ToolExecutionError& e) {
            last_error = e.what();
            break;
        }

        FixResult fixed = fix_syntax(response.content);
        for (const auto& rule : fixed.report.applied_rules) {
            result.report.applied_rules.push_back(rule);
        }
        if (!fixed.ok) {
            last_error = "invalid JSON (" + *fixed.report.residual_error + ")";
            if (round + 1 < kFragmentRoundBudget) {
                continue_conversation(request, response,
                                      fragment_refine_message(last_error, response.content));
                ++result.report.ref_refine_rounds;
            }
            continue;
        }

        ExpandResult expanded = expand_refs(fixed.value);
        if (expanded.issue) {
            last_error = expanded.issue->message();
            if (round + 1 < kFragmentRoundBudget) {
                continue_conversation(request, response,
                                      fragment_refine_message(last_error, fixed.value.dump()));
                ++result.report.ref_refine_rounds;
            }
            continue;
        }

        SemanticsResult semantics = correct_semantics(expanded.value, kind, &result.warnings);
        if (!semantics.ok) {
            last_error = semantics.error;
            if (round + 1 < kFragmentRoundBudget) {
                continue_conversation(request, response,
                                      fragment_refine_message(last_error, expanded.value.dump()));
                ++result.report.ref_refine_rounds;
            }
            continue;
        }

        result.body = std::move(semantics.body);
        return result;
    }

    // Budget exhausted: degrade to an empty fragment so one bad endpoint
    // never sinks the document.
    result.report.residual_error = last_error;
    result.warnings.push_back("spec_generation: refine budget exhausted for " + endpoint.method +
                              " " + endpoint.path + " (" + kind_name + "): " + last_error);
    result.body = kind == FragmentKind::request
                      ? Json::array()
                      : Json{{"200", Json{{"description", ""}}}};
    return result;
}

SwaggerDoc merge_specs(const std::vector<EndpointMethod>& endpoints,
                       const std::vector<Json>& request_fragments,
                       const std::vector<Json>& response_fragments,
                       const DocInfo& info,
                       std::vector<std::string>& warnings) {
    SwaggerDoc doc;
    doc.info = info;

    for (std::size_t i = 0; i < endpoints.size(); ++i) {
        const auto& endpoint = endpoints[i];
        std::string method = endpoint.method;
        std::transform(method.begin(), method.end(), method.begin(),
                       [](unsigned char c) { return static_cast<char>(std::tolower(c)); });

        auto& path_item = doc.paths[endpoint.path];
        if (path_item.contains(method)) {
            warnings.push_back("merge: duplicate operation " + method + " " + endpoint.path +
                               "; keeping the first");
            continue;
        }

        OperationV2 op;
        if (i < request_fragments.size() && request_fragments[i].is_array()) {
            for (const auto& item : request_fragments[i]) {
                if (item.is_object()) op.parameters.push_back(parameter_v2_from_json(item));
            }
        }
        if (i < response_fragments.size() && response_fragments[i].is_object()) {
            for (const auto& [status, value] : response_fragments[i].items()) {
                ResponseV2 response;
                if (value.is_object()) {
                    response.description = value.value("description", "");
                    if (value.contains("schema")) response.schema = value.at("schema");
                }
                op.responses[status] = std::move(response);
            }
        }
        if (op.responses.empty()) {
            warnings.push_back("merge: no responses for " + method + " " + endpoint.path +
                               "; defaulting to a bare 200");
            op.responses["200"] = ResponseV2{"", Json(nullptr)};
        }
        path_item[method] = std::move(op);
    }
    return doc;
}

OpenApiDoc rebuild_references(OpenApiDoc doc) {
    std::map<std::string, Json> pool;
    auto pool_and_ref = [&pool](Json& schema) {
        const std::string key = md5_hex(canonical_dump(schema));
        pool.try_emplace(key, schema);
        schema = Json{{"$ref", "#/components/schemas/" + key}};
    };

    // Parameter objects first, then media-type objects, matching the merge
    // procedure's two collection passes.
    for (auto& [path, methods] : doc.paths) {
        (void)path;
        for (auto& [method, op] : methods) {
            (void)method;
            for (auto& parameter : op.parameters) {
                if (!parameter.schema.is_null()) pool_and_ref(parameter.schema);
            }
        }
    }
    for (auto& [path, methods] : doc.paths) {
        (void)path;
        for (auto& [method, op] : methods) {
            (void)method;
            if (op.request_body) {
                for (auto& [media, body] : op.request_body->content) {
                    (void)media;
                    if (!body.schema.is_null()) pool_and_ref(body.schema);
                }
            }
            for (auto& [status, response] : op.responses) {
                (void)status;
                for (auto& [media, body] : response.content) {
                    (void)media;
                    if (!body.schema.is_null()) pool_and_ref(body.schema);
                }
            }
        }
    }

    doc.component_schemas = std::move(pool);
    doc.has_components = true;
    return doc;
}

} // namespace oops
