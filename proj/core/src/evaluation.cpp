#include "oops/evaluation.hpp"

#include "oops/endpoint_extraction.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>
#include <vector>

namespace oops {
namespace {

// The 12 schema-level constraint keywords; `required` is the 13th and lives
// at the parameter level (or in the body schema's required array).
const char* kSchemaConstraints[] = {"pattern",          "maxProperties", "minProperties",
                                    "exclusiveMaximum", "exclusiveMinimum", "maximum",
                                    "minimum",          "maxLength",     "minLength",
                                    "maxItems",         "minItems",      "uniqueItems"};

struct ParamEntity {
    std::string name;
    std::string type;
    std::string location;
    std::vector<std::pair<std::string, Json>> constraints;
};

struct RespEntity {
    std::string status;
    std::string media;
    std::string type;
};

std::string to_lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
}

std::string schema_type(const OpenApiDoc& doc, const Json& schema) {
    const Json* resolved = resolve_schema(doc, schema);
    if (!resolved || !resolved->is_object()) return "";
    return resolved->value("type", "");
}

void collect_schema_constraints(const OpenApiDoc& doc, const Json& schema, ParamEntity& entity) {
    const Json* resolved = resolve_schema(doc, schema);
    if (!resolved || !resolved->is_object()) return;
    for (const char* keyword : kSchemaConstraints) {
        if (resolved->contains(keyword)) entity.constraints.emplace_back(keyword, resolved->at(keyword));
    }
}

void set_required(ParamEntity& entity, bool value) {
    for (auto& [keyword, v] : entity.constraints) {
        if (keyword == "required") {
            v = value;
            return;
        }
    }
    entity.constraints.emplace_back("required", value);
}

std::vector<ParamEntity> collect_parameters(const OpenApiDoc& doc, const OperationV3& op) {
    std::vector<ParamEntity> out;
    for (const auto& p : op.parameters) {
        ParamEntity entity;
        entity.name = p.name;
        entity.location = p.in;
        entity.type = p.schema.is_null() ? "" : schema_type(doc, p.schema);
        if (p.required) entity.constraints.emplace_back("required", *p.required);
        if (!p.schema.is_null()) collect_schema_constraints(doc, p.schema, entity);
        // Path parameters always carry a required=true constraint.
        if (p.in == "path") set_required(entity, true);
        out.push_back(std::move(entity));
    }

    if (op.request_body) {
        // Body parameters are the flattened top-level properties of the
        // first media type's schema, at location "body".
        const Json* body_schema = nullptr;
        for (const auto& [media, body] : op.request_body->content) {
            (void)media;
            if (!body.schema.is_null()) {
                body_schema = resolve_schema(doc, body.schema);
                break;
            }
        }
        if (body_schema && body_schema->is_object() && body_schema->contains("properties") &&
            body_schema->at("properties").is_object()) {
            for (const auto& [name, prop] : body_schema->at("properties").items()) {
                ParamEntity entity;
                entity.name = name;
                entity.location = "body";
                entity.type = schema_type(doc, prop);
                if (body_schema->contains("required") && body_schema->at("required").is_array()) {
                    const auto& required = body_schema->at("required");
                    if (std::find(required.begin(), required.end(), Json(name)) != required.end()) {
                        entity.constraints.emplace_back("required", true);
                    }
                }
                collect_schema_constraints(doc, prop, entity);
                out.push_back(std::move(entity));
            }
        }
    }
    return out;
}

std::vector<RespEntity> collect_responses(const OpenApiDoc& doc, const OperationV3& op) {
    std::vector<RespEntity> out;
    for (const auto& [status, response] : op.responses) {
        // Only successful status codes are scored.
        if (status.size() != 3 || status[0] != '2' ||
            !std::all_of(status.begin(), status.end(),
                         [](unsigned char c) { return std::isdigit(c); })) {
            continue;
        }
        if (response.content.empty()) {
            out.push_back({status, "", ""});
            continue;
        }
        for (const auto& [media, body] : response.content) {
            out.push_back({status, media, body.schema.is_null() ? "" : schema_type(doc, body.schema)});
        }
    }
    return out;
}

// Multiset matching on a string key: tp gets the per-key minimum, leftovers
// count against the side holding them. Matched pairs come back zipped in
// first-seen order for the constraint pass.
template <typename T>
struct MatchOutcome {
    std::int64_t tp = 0;
    std::int64_t a_excess = 0;
    std::int64_t b_excess = 0;
    std::vector<std::pair<const T*, const T*>> pairs;
};

template <typename T, typename KeyFn>
MatchOutcome<T> match_multiset(const std::vector<T>& a, const std::vector<T>& b, KeyFn key) {
    std::map<std::string, std::pair<std::vector<const T*>, std::vector<const T*>>> buckets;
    for (const auto& item : a) buckets[key(item)].first.push_back(&item);
    for (const auto& item : b) buckets[key(item)].second.push_back(&item);

    MatchOutcome<T> outcome;
    for (const auto& [k, bucket] : buckets) {
        (void)k;
        const std::size_t n = std::min(bucket.first.size(), bucket.second.size());
        outcome.tp += static_cast<std::int64_t>(n);
        outcome.a_excess += static_cast<std::int64_t>(bucket.first.size() - n);
        outcome.b_excess += static_cast<std::int64_t>(bucket.second.size() - n);
        for (std::size_t i = 0; i < n; ++i) {
            outcome.pairs.emplace_back(bucket.first[i], bucket.second[i]);
        }
    }
    return outcome;
}

struct OpEntity {
    std::string key; // method + positional path
    const OperationV3* op;
};

std::vector<OpEntity> collect_operations(const OpenApiDoc& doc) {
    std::vector<OpEntity> out;
    for (const auto& [path, methods] : doc.paths) {
        for (const auto& [method, op] : methods) {
            out.push_back({to_lower(method) + " " + positional_path(path), &op});
        }
    }
    return out;
}

std::string format_cell(const std::optional<double>& value) {
    if (!value) return "N/A";
    std::ostringstream out;
    out.setf(std::ios::fixed);
    out.precision(3);
    out << *value;
    return out.str();
}

Json score_to_json(const DimensionScore& score) {
    Json out{{"tp", score.tp}, {"fp", score.fp}, {"fn", score.fn}};
    out["precision"] = score.precision ? Json(*score.precision) : Json(nullptr);
    out["recall"] = score.recall ? Json(*score.recall) : Json(nullptr);
    out["f1"] = score.f1 ? Json(*score.f1) : Json(nullptr);
    return out;
}

} // namespace

DimensionScore with_prf(std::int64_t tp, std::int64_t fp, std::int64_t fn) {
    DimensionScore score;
    score.tp = tp;
    score.fp = fp;
    score.fn = fn;
    if (tp + fp > 0) score.precision = static_cast<double>(tp) / static_cast<double>(tp + fp);
    if (tp + fn > 0) score.recall = static_cast<double>(tp) / static_cast<double>(tp + fn);
    if (score.precision && score.recall && *score.precision + *score.recall > 0) {
        score.f1 = 2.0 * (*score.precision * *score.recall) / (*score.precision + *score.recall);
    }
    return score;
}

std::string positional_path(const std::string& path) {
    const std::string normalized = normalize_path(path);
    std::string out;
    out.reserve(normalized.size());
    std::size_t i = 0;
    while (i < normalized.size()) {
        if (normalized[i] == '{') {
            const std::size_t close = normalized.find('}', i);
            if (close != std::string::npos) {
                out += "{}";
                i = close + 1;
                continue;
            }
        }
        out += normalized[i++];
    }
    return out;
}

MetricsReport score(const OpenApiDoc& generated, const OpenApiDoc& truth) {
    MetricsReport report;

    const auto gen_ops = collect_operations(generated);
    const auto truth_ops = collect_operations(truth);
    auto op_match = match_multiset(gen_ops, truth_ops, [](const OpEntity& e) { return e.key; });
    report.endpoint_method = with_prf(op_match.tp, op_match.a_excess, op_match.b_excess);

    std::int64_t param_tp = 0, param_fp = 0, param_fn = 0;
    std::int64_t resp_tp = 0, resp_fp = 0, resp_fn = 0;
    std::int64_t con_tp = 0, con_fp = 0, con_fn = 0;

    auto param_key = [](const ParamEntity& p) { return p.name + "\n" + p.type + "\n" + p.location; };
    auto resp_key = [](const RespEntity& r) { return r.status + "\n" + r.media + "\n" + r.type; };

    for (const auto& [gen_op, truth_op] : op_match.pairs) {
        const auto gen_params = collect_parameters(generated, *gen_op->op);
        const auto truth_params = collect_parameters(truth, *truth_op->op);
        auto params = match_multiset(gen_params, truth_params, param_key);
        param_tp += params.tp;
        param_fp += params.a_excess;
        param_fn += params.b_excess;

        // Constraints are scored on matched parameters only.
        for (const auto& [gen_param, truth_param] : params.pairs) {
            auto constraint_key = [](const std::pair<std::string, Json>& c) {
                return c.first + "\n" + canonical_dump(c.second);
            };
            auto constraints =
                match_multiset(gen_param->constraints, truth_param->constraints, constraint_key);
            con_tp += constraints.tp;
            con_fp += constraints.a_excess;
            con_fn += constraints.b_excess;
        }

        const auto gen_responses = collect_responses(generated, *gen_op->op);
        const auto truth_responses = collect_responses(truth, *truth_op->op);
        auto responses = match_multiset(gen_responses, truth_responses, resp_key);
        resp_tp += responses.tp;
        resp_fp += responses.a_excess;
        resp_fn += responses.b_excess;
    }

    // Entities inside unmatched operations are all wrong (or all missed).
    std::map<std::string, std::pair<std::int64_t, std::int64_t>> op_counts;
    for (const auto& e : gen_ops) ++op_counts[e.key].first;
    for (const auto& e : truth_ops) ++op_counts[e.key].second;
    auto count_unmatched = [&](const std::vector<OpEntity>& ops, const OpenApiDoc& doc, bool is_gen) {
        std::map<std::string, std::int64_t> budget;
        for (const auto& [key, counts] : op_counts) {
            const auto matched = std::min(counts.first, counts.second);
            budget[key] = (is_gen ? counts.first : counts.second) - matched;
        }
        std::map<std::string, std::int64_t> used;
        for (const auto& e : ops) {
            ++used[e.key];
            // The first `matched` occurrences per key were paired; the rest
            // are unmatched.
            const auto matched = std::min(op_counts[e.key].first, op_counts[e.key].second);
            if (used[e.key] <= matched) continue;
            const auto params = collect_parameters(doc, *e.op);
            const auto responses = collect_responses(doc, *e.op);
            if (is_gen) {
                param_fp += static_cast<std::int64_t>(params.size());
                resp_fp += static_cast<std::int64_t>(responses.size());
            } else {
                param_fn += static_cast<std::int64_t>(params.size());
                resp_fn += static_cast<std::int64_t>(responses.size());
            }
        }
    };
    count_unmatched(gen_ops, generated, true);
    count_unmatched(truth_ops, truth, false);

    report.request_parameter = with_prf(param_tp, param_fp, param_fn);
    report.response = with_prf(resp_tp, resp_fp, resp_fn);
    report.parameter_constraint = with_prf(con_tp, con_fp, con_fn);
    return report;
}

Json MetricsReport::to_json() const {
    return Json{{"endpoint_method", score_to_json(endpoint_method)},
                {"request_parameter", score_to_json(request_parameter)},
                {"response", score_to_json(response)},
                {"parameter_constraint", score_to_json(parameter_constraint)}};
}

std::string MetricsReport::to_table() const {
    std::ostringstream out;
    auto row = [&out](const char* name, const DimensionScore& s) {
        out << name;
        for (std::size_t i = std::string(name).size(); i < 22; ++i) out << ' ';
        char buffer[128];
        std::snprintf(buffer, sizeof(buffer), "%6lld %6lld %6lld %10s %10s %10s",
                      static_cast<long long>(s.tp), static_cast<long long>(s.fp),
                      static_cast<long long>(s.fn), format_cell(s.precision).c_str(),
                      format_cell(s.recall).c_str(), format_cell(s.f1).c_str());
        out << buffer << "\n";
    };
    out << "Dimension                  TP     FP     FN  Precision     Recall         F1\n";
    row("endpoint_method", endpoint_method);
    row("request_parameter", request_parameter);
    row("response", response);
    row("parameter_constraint", parameter_constraint);
    return out.str();
}

} // namespace oops
