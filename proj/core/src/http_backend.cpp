#include "oops/gateway.hpp"

#include "oops/errors.hpp"

#define CPPHTTPLIB_OPENSSL_SUPPORT
#include <httplib.h>

#include <chrono>
#include <thread>

namespace oops {
namespace {

struct SplitUrl {
    std::string origin;      // scheme://host[:port]
    std::string path_prefix; // e.g. /v1
};

SplitUrl split_base_url(const std::string& base_url) {
    auto scheme_end = base_url.find("://");
    if (scheme_end == std::string::npos) {
        throw ConfigError("base URL must include a scheme: " + base_url);
    }
    auto path_start = base_url.find('/', scheme_end + 3);
    SplitUrl out;
    if (path_start == std::string::npos) {
        out.origin = base_url;
    } else {
        out.origin = base_url.substr(0, path_start);
        out.path_prefix = base_url.substr(path_start);
    }
    while (!out.path_prefix.empty() && out.path_prefix.back() == '/') out.path_prefix.pop_back();
    return out;
}

Json request_to_wire(const ChatRequest& request) {
    Json messages = Json::array();
    if (!request.system_preamble.empty()) {
        messages.push_back(Json{{"role", "system"}, {"content", request.system_preamble}});
    }
    for (const auto& msg : request.messages) {
        Json m{{"role", msg.role}, {"content", msg.content}};
        if (!msg.tool_calls.empty()) {
            Json calls = Json::array();
            for (const auto& call : msg.tool_calls) {
                calls.push_back(Json{{"id", call.id},
                                     {"type", "function"},
                                     {"function", Json{{"name", call.name}, {"arguments", call.arguments}}}});
            }
            m["tool_calls"] = std::move(calls);
        }
        if (!msg.tool_call_id.empty()) m["tool_call_id"] = msg.tool_call_id;
        messages.push_back(std::move(m));
    }
    Json body{{"model", request.model_id},
              {"messages", std::move(messages)},
              {"temperature", request.temperature}};
    if (!request.tools.empty()) {
        Json tools = Json::array();
        for (const auto& tool : request.tools) {
            tools.push_back(Json{{"type", "function"},
                                 {"function", Json{{"name", tool.name},
                                                   {"description", tool.description},
                                                   {"parameters", tool.parameter_schema}}}});
        }
        body["tools"] = std::move(tools);
    }
    return body;
}

ChatResponse response_from_wire(const Json& body) {
    ChatResponse response;
    const auto& choices = body.at("choices");
    if (!choices.is_array() || choices.empty()) {
        throw MalformedBackendResponse("llm_gateway", "backend response has no choices");
    }
    const auto& message = choices.at(0).at("message");
    if (message.contains("content") && message.at("content").is_string()) {
        response.content = message.at("content").get<std::string>();
    }
    if (message.contains("tool_calls") && message.at("tool_calls").is_array()) {
        for (const auto& call : message.at("tool_calls")) {
            ToolCall tc;
            tc.id = call.value("id", "");
            if (call.contains("function")) {
                tc.name = call.at("function").value("name", "");
                tc.arguments = call.at("function").value("arguments", "");
            }
            response.tool_calls.push_back(std::move(tc));
        }
    }
    if (body.contains("usage") && body.at("usage").is_object()) {
        const auto& usage = body.at("usage");
        response.usage.input_tokens = usage.value("prompt_tokens", std::int64_t{0});
        response.usage.output_tokens = usage.value("completion_tokens", std::int64_t{0});
    }
    return response;
}

class HttpBackend : public ChatBackend {
public:
    explicit HttpBackend(HttpBackendConfig config)
        : config_(std::move(config)), url_(split_base_url(config_.base_url)) {}

    ChatResponse complete(const ChatRequest& request) override {
        const std::string payload = request_to_wire(request).dump();
        const std::string endpoint = url_.path_prefix + "/chat/completions";

        std::string last_error;
        for (int attempt = 0; attempt <= config_.max_retries; ++attempt) {
            if (attempt > 0) {
                std::this_thread::sleep_for(std::chrono::milliseconds(500 << (attempt - 1)));
            }
            httplib::Client client(url_.origin);
            client.set_connection_timeout(config_.timeout_seconds);
            client.set_read_timeout(config_.timeout_seconds);
            httplib::Headers headers;
            if (!config_.api_key.empty()) {
                headers.emplace("Authorization", "Bearer " + config_.api_key);
            }
            auto result = client.Post(endpoint, headers, payload, "application/json");
            if (!result) {
                last_error = "connection failure: " + httplib::to_string(result.error());
                continue;
            }
            if (result->status == 429 || result->status >= 500) {
                last_error = "HTTP " + std::to_string(result->status);
                continue; // retryable
            }
            if (result->status != 200) {
                throw TransportError("llm_gateway",
                                     "HTTP " + std::to_string(result->status) + ": " + result->body);
            }
            Json body = Json::parse(result->body, nullptr, false);
            if (body.is_discarded()) {
                throw MalformedBackendResponse("llm_gateway", "backend response is not JSON");
            }
            try {
                return response_from_wire(body);
            } catch (const Json::exception& e) {
                throw MalformedBackendResponse("llm_gateway", e.what());
            }
        }
        throw TransportError("llm_gateway", "request failed after " +
                                                std::to_string(config_.max_retries + 1) +
                                                " attempts: " + last_error);
    }

private:
    HttpBackendConfig config_;
    SplitUrl url_;
};

} // namespace

std::unique_ptr<ChatBackend> make_http_backend(HttpBackendConfig config) {
    return std::make_unique<HttpBackend>(std::move(config));
}

} // namespace oops
