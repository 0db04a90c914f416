#include "oops/chat_types.hpp"

#include "oops/digest.hpp"

namespace oops {
namespace {

Json tool_call_to_json(const ToolCall& call) {
    return Json{{"id", call.id}, {"name", call.name}, {"arguments", call.arguments}};
}

ToolCall tool_call_from_json(const Json& value) {
    ToolCall call;
    call.id = value.value("id", "");
    call.name = value.value("name", "");
    call.arguments = value.value("arguments", "");
    return call;
}

} // namespace

Json request_to_json(const ChatRequest& request) {
    Json messages = Json::array();
    for (const auto& msg : request.messages) {
        Json m{{"role", msg.role}, {"content", msg.content}};
        if (!msg.tool_calls.empty()) {
            Json calls = Json::array();
            for (const auto& call : msg.tool_calls) calls.push_back(tool_call_to_json(call));
            m["tool_calls"] = std::move(calls);
        }
        if (!msg.tool_call_id.empty()) m["tool_call_id"] = msg.tool_call_id;
        messages.push_back(std::move(m));
    }
    Json tools = Json::array();
    for (const auto& tool : request.tools) {
        tools.push_back(Json{{"name", tool.name},
                             {"description", tool.description},
                             {"parameters", tool.parameter_schema}});
    }
    Json out{{"model", request.model_id},
             {"system", request.system_preamble},
             {"messages", std::move(messages)},
             {"tools", std::move(tools)},
             {"temperature", request.temperature}};
    if (request.output_schema) out["output_schema"] = *request.output_schema;
    return out;
}

std::string request_fingerprint(const ChatRequest& request) {
    return sha256_hex(canonical_dump(request_to_json(request)));
}

Json response_to_json(const ChatResponse& response) {
    Json calls = Json::array();
    for (const auto& call : response.tool_calls) calls.push_back(tool_call_to_json(call));
    return Json{{"content", response.content},
                {"tool_calls", std::move(calls)},
                {"usage", Json{{"input_tokens", response.usage.input_tokens},
                               {"output_tokens", response.usage.output_tokens}}}};
}

ChatResponse response_from_json(const Json& value) {
    ChatResponse response;
    response.content = value.value("content", "");
    if (value.contains("tool_calls")) {
        for (const auto& call : value.at("tool_calls")) {
            response.tool_calls.push_back(tool_call_from_json(call));
        }
    }
    if (value.contains("usage")) {
        const auto& usage = value.at("usage");
        response.usage.input_tokens = usage.value("input_tokens", std::int64_t{0});
        response.usage.output_tokens = usage.value("output_tokens", std::int64_t{0});
    }
    return response;
}

std::optional<Json> output_arguments(const ChatResponse& response) {
    for (const auto& call : response.tool_calls) {
        if (call.name != "output") continue;
        Json parsed = Json::parse(call.arguments, nullptr, false);
        if (parsed.is_discarded()) return std::nullopt;
        return parsed;
    }
    return std::nullopt;
}

Json UsageReport::to_json() const {
    return Json{{"calls", calls},
                {"total_input_tokens", total_input_tokens},
                {"total_output_tokens", total_output_tokens},
                {"avg_input_tokens", avg_input_tokens},
                {"max_input_tokens", max_input_tokens},
                {"avg_output_tokens", avg_output_tokens},
                {"max_output_tokens", max_output_tokens},
                {"cost", cost}};
}

} // namespace oops
