#include "oops/oas_model.hpp"

#include <algorithm>
#include <cctype>

namespace oops {
namespace {

const char* kDefaultMedia = "application/json";

std::string pointer_escape(const std::string& token) {
    std::string out;
    out.reserve(token.size());
    for (char c : token) {
        if (c == '~') {
            out += "~0";
        } else if (c == '/') {
            out += "~1";
        } else {
            out += c;
        }
    }
    return out;
}

bool is_status_key(const std::string& key) {
    if (key == "default") return true;
    if (key.size() != 3) return false;
    return std::all_of(key.begin(), key.end(), [](unsigned char c) { return std::isdigit(c); });
}

Json info_to_json(const DocInfo& info) {
    return Json{{"title", info.title}, {"version", info.version}};
}

DocInfo info_from_json(const Json& value) {
    DocInfo info;
    if (value.is_object()) {
        info.title = value.value("title", "");
        info.version = value.value("version", "");
    }
    return info;
}

void require_object(const Json& value, const std::string& what) {
    if (!value.is_object()) throw OasParseError(what + " must be a JSON object");
}

} // namespace

// ------------------------------------------------------------- Swagger 2.0 IO

namespace {

Json parameter_v2_to_json(const ParameterV2& p) {
    Json out = Json::object();
    out["name"] = p.name;
    out["in"] = p.in;
    if (p.description) out["description"] = *p.description;
    if (p.required) out["required"] = *p.required;
    for (const auto& [key, value] : p.type_fields.items()) out[key] = value;
    if (!p.schema.is_null()) out["schema"] = p.schema;
    return out;
}

} // namespace

ParameterV2 parameter_v2_from_json(const Json& value) {
    require_object(value, "parameter");
    ParameterV2 p;
    p.name = value.value("name", "");
    p.in = value.value("in", "");
    if (value.contains("description") && value.at("description").is_string()) {
        p.description = value.at("description").get<std::string>();
    }
    if (value.contains("required") && value.at("required").is_boolean()) {
        p.required = value.at("required").get<bool>();
    }
    if (value.contains("schema")) p.schema = value.at("schema");
    for (const auto& [key, item] : value.items()) {
        if (key == "name" || key == "in" || key == "description" || key == "required" ||
            key == "schema") {
            continue;
        }
        p.type_fields[key] = item;
    }
    return p;
}

namespace {

Json operation_v2_to_json(const OperationV2& op) {
    Json out = Json::object();
    if (!op.consumes.empty()) out["consumes"] = op.consumes;
    if (!op.produces.empty()) out["produces"] = op.produces;
    if (!op.parameters.empty()) {
        Json params = Json::array();
        for (const auto& p : op.parameters) params.push_back(parameter_v2_to_json(p));
        out["parameters"] = std::move(params);
    }
    Json responses = Json::object();
    for (const auto& [status, response] : op.responses) {
        Json r{{"description", response.description}};
        if (!response.schema.is_null()) r["schema"] = response.schema;
        responses[status] = std::move(r);
    }
    out["responses"] = std::move(responses);
    return out;
}

OperationV2 operation_v2_from_json(const Json& value) {
    require_object(value, "operation");
    OperationV2 op;
    for (const char* field : {"consumes", "produces"}) {
        if (!value.contains(field) || !value.at(field).is_array()) continue;
        auto& target = std::string(field) == "consumes" ? op.consumes : op.produces;
        for (const auto& item : value.at(field)) {
            if (item.is_string()) target.push_back(item.get<std::string>());
        }
    }
    if (value.contains("parameters") && value.at("parameters").is_array()) {
        for (const auto& item : value.at("parameters")) {
            op.parameters.push_back(parameter_v2_from_json(item));
        }
    }
    if (value.contains("responses") && value.at("responses").is_object()) {
        for (const auto& [status, item] : value.at("responses").items()) {
            ResponseV2 response;
            if (item.is_object()) {
                response.description = item.value("description", "");
                if (item.contains("schema")) response.schema = item.at("schema");
            }
            op.responses[status] = std::move(response);
        }
    }
    return op;
}

} // namespace

Json swagger_to_json(const SwaggerDoc& doc) {
    Json paths = Json::object();
    for (const auto& [path, methods] : doc.paths) {
        Json item = Json::object();
        for (const auto& [method, op] : methods) item[method] = operation_v2_to_json(op);
        paths[path] = std::move(item);
    }
    return Json{{"swagger", "2.0"}, {"info", info_to_json(doc.info)}, {"paths", std::move(paths)}};
}

SwaggerDoc swagger_from_json(const Json& value) {
    require_object(value, "document");
    SwaggerDoc doc;
    doc.info = info_from_json(value.contains("info") ? value.at("info") : Json::object());
    if (value.contains("paths")) {
        require_object(value.at("paths"), "paths");
        for (const auto& [path, item] : value.at("paths").items()) {
            require_object(item, "path item " + path);
            auto& methods = doc.paths[path];
            for (const auto& [method, op] : item.items()) {
                methods[method] = operation_v2_from_json(op);
            }
        }
    }
    return doc;
}

// ----------------------------------------------------------- OpenAPI 3.0.4 IO

namespace {

Json content_to_json(const OrderedMap<MediaTypeV3>& content) {
    Json out = Json::object();
    for (const auto& [media, body] : content) {
        Json entry = Json::object();
        if (!body.schema.is_null()) entry["schema"] = body.schema;
        out[media] = std::move(entry);
    }
    return out;
}

OrderedMap<MediaTypeV3> content_from_json(const Json& value) {
    OrderedMap<MediaTypeV3> content;
    if (!value.is_object()) return content;
    for (const auto& [media, item] : value.items()) {
        MediaTypeV3 body;
        if (item.is_object() && item.contains("schema")) body.schema = item.at("schema");
        content[media] = std::move(body);
    }
    return content;
}

Json operation_v3_to_json(const OperationV3& op) {
    Json out = Json::object();
    if (!op.parameters.empty()) {
        Json params = Json::array();
        for (const auto& p : op.parameters) {
            Json item = Json::object();
            item["name"] = p.name;
            item["in"] = p.in;
            if (p.description) item["description"] = *p.description;
            if (p.required) item["required"] = *p.required;
            if (!p.schema.is_null()) item["schema"] = p.schema;
            params.push_back(std::move(item));
        }
        out["parameters"] = std::move(params);
    }
    if (op.request_body) {
        Json rb = Json::object();
        if (op.request_body->description) rb["description"] = *op.request_body->description;
        if (op.request_body->required) rb["required"] = *op.request_body->required;
        rb["content"] = content_to_json(op.request_body->content);
        out["requestBody"] = std::move(rb);
    }
    Json responses = Json::object();
    for (const auto& [status, response] : op.responses) {
        Json r{{"description", response.description}};
        if (!response.content.empty()) r["content"] = content_to_json(response.content);
        responses[status] = std::move(r);
    }
    out["responses"] = std::move(responses);
    return out;
}

OperationV3 operation_v3_from_json(const Json& value) {
    require_object(value, "operation");
    OperationV3 op;
    if (value.contains("parameters") && value.at("parameters").is_array()) {
        for (const auto& item : value.at("parameters")) {
            require_object(item, "parameter");
            ParameterV3 p;
            p.name = item.value("name", "");
            p.in = item.value("in", "");
            if (item.contains("description") && item.at("description").is_string()) {
                p.description = item.at("description").get<std::string>();
            }
            if (item.contains("required") && item.at("required").is_boolean()) {
                p.required = item.at("required").get<bool>();
            }
            if (item.contains("schema")) p.schema = item.at("schema");
            op.parameters.push_back(std::move(p));
        }
    }
    if (value.contains("requestBody") && value.at("requestBody").is_object()) {
        const auto& rb = value.at("requestBody");
        RequestBodyV3 body;
        if (rb.contains("description") && rb.at("description").is_string()) {
            body.description = rb.at("description").get<std::string>();
        }
        if (rb.contains("required") && rb.at("required").is_boolean()) {
            body.required = rb.at("required").get<bool>();
        }
        if (rb.contains("content")) body.content = content_from_json(rb.at("content"));
        op.request_body = std::move(body);
    }
    if (value.contains("responses") && value.at("responses").is_object()) {
        for (const auto& [status, item] : value.at("responses").items()) {
            ResponseV3 response;
            if (item.is_object()) {
                response.description = item.value("description", "");
                if (item.contains("content")) response.content = content_from_json(item.at("content"));
            }
            op.responses[status] = std::move(response);
        }
    }
    return op;
}

} // namespace

Json openapi_to_json(const OpenApiDoc& doc) {
    Json paths = Json::object();
    for (const auto& [path, methods] : doc.paths) {
        Json item = Json::object();
        for (const auto& [method, op] : methods) item[method] = operation_v3_to_json(op);
        paths[path] = std::move(item);
    }
    Json out{{"openapi", doc.openapi}, {"info", info_to_json(doc.info)}, {"paths", std::move(paths)}};
    if (doc.has_components) {
        Json schemas = Json::object();
        for (const auto& [key, schema] : doc.component_schemas) schemas[key] = schema;
        out["components"] = Json{{"schemas", std::move(schemas)}};
    }
    return out;
}

OpenApiDoc openapi_from_json(const Json& value) {
    require_object(value, "document");
    OpenApiDoc doc;
    doc.openapi = value.value("openapi", "");
    doc.info = info_from_json(value.contains("info") ? value.at("info") : Json::object());
    if (value.contains("paths")) {
        require_object(value.at("paths"), "paths");
        for (const auto& [path, item] : value.at("paths").items()) {
            require_object(item, "path item " + path);
            auto& methods = doc.paths[path];
            for (const auto& [method, op] : item.items()) {
                methods[method] = operation_v3_from_json(op);
            }
        }
    }
    if (value.contains("components") && value.at("components").is_object()) {
        doc.has_components = true;
        const auto& components = value.at("components");
        if (components.contains("schemas") && components.at("schemas").is_object()) {
            for (const auto& [key, schema] : components.at("schemas").items()) {
                doc.component_schemas[key] = schema;
            }
        }
    }
    return doc;
}

// -------------------------------------------------------------------- upgrade

OpenApiDoc upgrade_to_304(const SwaggerDoc& doc) {
    OpenApiDoc out;
    out.openapi = "3.0.4";
    out.info = doc.info;

    for (const auto& [path, methods] : doc.paths) {
        auto& out_methods = out.paths[path];
        for (const auto& [method, op2] : methods) {
            OperationV3 op3;
            const std::string req_media = op2.consumes.empty() ? kDefaultMedia : op2.consumes.front();
            const std::string resp_media = op2.produces.empty() ? kDefaultMedia : op2.produces.front();

            for (const auto& p : op2.parameters) {
                if (p.in == "body") {
                    if (op3.request_body) {
                        throw UnsupportedConstruct("multiple in=body parameters on " + method + " " + path);
                    }
                    RequestBodyV3 body;
                    body.description = p.description;
                    body.required = p.required;
                    body.content[req_media] = MediaTypeV3{p.schema};
                    op3.request_body = std::move(body);
                    continue;
                }
                if (p.in == "formData") {
                    throw UnsupportedConstruct("formData parameter '" + p.name + "' on " + method +
                                               " " + path + " has no mapping in this subset");
                }
                ParameterV3 q;
                q.name = p.name;
                q.in = p.in;
                q.description = p.description;
                q.required = p.required;
                // 2.0 keeps type/format/constraints at the parameter level;
                // 3.0 wraps them in a schema.
                q.schema = p.schema.is_null() ? p.type_fields : p.schema;
                op3.parameters.push_back(std::move(q));
            }

            for (const auto& [status, r2] : op2.responses) {
                ResponseV3 r3;
                r3.description = r2.description;
                if (!r2.schema.is_null()) r3.content[resp_media] = MediaTypeV3{r2.schema};
                op3.responses[status] = std::move(r3);
            }
            out_methods[method] = std::move(op3);
        }
    }
    return out;
}

// ------------------------------------------------------------------- validate

namespace {

void validate_schema_refs(const Json& schema,
                          const std::string& location,
                          const OpenApiDoc& doc,
                          std::vector<Violation>& out) {
    if (schema.is_object()) {
        if (schema.contains("$ref")) {
            if (schema.size() > 1) {
                out.push_back({location, "$ref must not have sibling fields"});
            }
            const auto& ref = schema.at("$ref");
            if (!ref.is_string()) {
                out.push_back({location + "/$ref", "$ref must be a string"});
                return;
            }
            const std::string target = ref.get<std::string>();
            const std::string prefix = "#/components/schemas/";
            if (target.rfind(prefix, 0) != 0) {
                out.push_back({location + "/$ref", "unsupported reference target: " + target});
                return;
            }
            const std::string key = target.substr(prefix.size());
            if (!doc.component_schemas.count(key)) {
                out.push_back({location + "/$ref", "dangling reference: " + target});
            }
            return;
        }
        for (const auto& [key, value] : schema.items()) {
            validate_schema_refs(value, location + "/" + pointer_escape(key), doc, out);
        }
    } else if (schema.is_array()) {
        for (std::size_t i = 0; i < schema.size(); ++i) {
            validate_schema_refs(schema.at(i), location + "/" + std::to_string(i), doc, out);
        }
    }
}

} // namespace

std::vector<Violation> validate(const OpenApiDoc& doc) {
    std::vector<Violation> out;
    if (doc.openapi.rfind("3.", 0) != 0) {
        out.push_back({"/openapi", "version must be a 3.0.x string, got '" + doc.openapi + "'"});
    }

    static const std::vector<std::string> kParameterLocations{"query", "header", "path", "cookie"};

    for (const auto& [path, methods] : doc.paths) {
        const std::string path_loc = "/paths/" + pointer_escape(path);
        if (path.empty() || path.front() != '/') {
            out.push_back({path_loc, "path must start with '/'"});
        }
        for (const auto& [method, op] : methods) {
            const std::string op_loc = path_loc + "/" + method;

            std::vector<std::pair<std::string, std::string>> seen_params;
            for (std::size_t i = 0; i < op.parameters.size(); ++i) {
                const auto& p = op.parameters[i];
                const std::string p_loc = op_loc + "/parameters/" + std::to_string(i);
                if (std::find(kParameterLocations.begin(), kParameterLocations.end(), p.in) ==
                    kParameterLocations.end()) {
                    out.push_back({p_loc + "/in", "forbidden parameter location '" + p.in + "'"});
                }
                if (p.name.empty()) out.push_back({p_loc + "/name", "parameter must have a name"});
                const auto identity = std::make_pair(p.name, p.in);
                if (std::find(seen_params.begin(), seen_params.end(), identity) != seen_params.end()) {
                    out.push_back({p_loc, "duplicate parameter (" + p.name + ", " + p.in + ")"});
                }
                seen_params.push_back(identity);
                if (!p.schema.is_null()) validate_schema_refs(p.schema, p_loc + "/schema", doc, out);
            }

            if (op.request_body) {
                const std::string rb_loc = op_loc + "/requestBody";
                if (op.request_body->content.empty()) {
                    out.push_back({rb_loc + "/content", "requestBody must define a media type"});
                }
                for (const auto& [media, body] : op.request_body->content) {
                    if (!body.schema.is_null()) {
                        validate_schema_refs(body.schema,
                                             rb_loc + "/content/" + pointer_escape(media) + "/schema",
                                             doc, out);
                    }
                }
            }

            if (op.responses.empty()) {
                out.push_back({op_loc + "/responses", "operation must define at least one response"});
            }
            for (const auto& [status, response] : op.responses) {
                const std::string r_loc = op_loc + "/responses/" + pointer_escape(status);
                if (!is_status_key(status)) {
                    out.push_back({r_loc, "status key must be a 3-digit code or 'default'"});
                }
                for (const auto& [media, body] : response.content) {
                    if (!body.schema.is_null()) {
                        validate_schema_refs(body.schema,
                                             r_loc + "/content/" + pointer_escape(media) + "/schema",
                                             doc, out);
                    }
                }
            }
        }
    }

    for (const auto& [key, schema] : doc.component_schemas) {
        validate_schema_refs(schema, "/components/schemas/" + pointer_escape(key), doc, out);
    }
    return out;
}

const Json* resolve_schema(const OpenApiDoc& doc, const Json& schema) {
    if (!schema.is_object() || !schema.contains("$ref") || !schema.at("$ref").is_string()) {
        return &schema;
    }
    const std::string target = schema.at("$ref").get<std::string>();
    const std::string prefix = "#/components/schemas/";
    if (target.rfind(prefix, 0) != 0) return nullptr;
    auto it = doc.component_schemas.find(target.substr(prefix.size()));
    if (it == doc.component_schemas.end()) return nullptr;
    return &it->second;
}

} // namespace oops
