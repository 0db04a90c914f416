#include "oops/gateway.hpp"

#include "oops/errors.hpp"

#include <algorithm>
#include <set>

namespace oops {
namespace {

bool has_output_tool(const ChatRequest& request) {
    return std::any_of(request.tools.begin(), request.tools.end(),
                       [](const ToolSpec& t) { return t.name == "output"; });
}

} // namespace

LlmGateway::LlmGateway(GatewayMode mode,
                       std::shared_ptr<ChatBackend> backend,
                       std::shared_ptr<ChatTranscript> transcript,
                       TokenPricing pricing)
    : mode_(mode), backend_(std::move(backend)), transcript_(std::move(transcript)), pricing_(pricing) {
    if (mode_ != GatewayMode::replay && !backend_) {
        throw ConfigError("live/record mode requires a chat backend");
    }
    if (mode_ != GatewayMode::live && !transcript_) {
        throw ConfigError("record/replay mode requires a transcript");
    }
}

ChatRequest LlmGateway::effective_request(const ChatRequest& request) const {
    ChatRequest effective = request;
    effective.temperature = 0.0; // fixed for all pipeline calls
    if (effective.output_schema && !has_output_tool(effective)) {
        effective.tools.push_back(ToolSpec{
            "output",
            "Report your final result. Arguments must follow the given JSON schema exactly.",
            *effective.output_schema,
        });
    }
    return effective;
}

ChatResponse LlmGateway::complete(const ChatRequest& request, const std::string& stage) {
    const ChatRequest effective = effective_request(request);
    const std::string fingerprint = request_fingerprint(effective);

    ChatResponse response;
    if (mode_ == GatewayMode::replay) {
        auto hit = transcript_->lookup(fingerprint);
        if (!hit) throw ReplayMiss(stage, fingerprint);
        response = std::move(*hit);
    } else {
        response = backend_->complete(effective);
        if (response.usage.input_tokens < 0 || response.usage.output_tokens < 0) {
            throw MalformedBackendResponse(stage, "negative token usage in backend response");
        }
        if (mode_ == GatewayMode::record) transcript_->append(fingerprint, response);
    }

    {
        std::lock_guard<std::mutex> lock(meter_mutex_);
        ++calls_;
        total_in_ += response.usage.input_tokens;
        total_out_ += response.usage.output_tokens;
        max_in_ = std::max(max_in_, response.usage.input_tokens);
        max_out_ = std::max(max_out_, response.usage.output_tokens);
    }
    return response;
}

ChatResponse LlmGateway::run_tool_loop(ChatRequest& request,
                                       const ToolHost& host,
                                       int max_rounds,
                                       const std::string& stage) {
    const bool wants_output_tool = request.output_schema.has_value() || has_output_tool(request);
    std::set<std::string> failed_calls;

    for (int round = 0; round < max_rounds; ++round) {
        ChatResponse response = complete(request, stage);

        if (!response.tool_calls.empty()) {
            const bool has_output = std::any_of(response.tool_calls.begin(), response.tool_calls.end(),
                                                [](const ToolCall& c) { return c.name == "output"; });
            if (has_output) return response;

            request.messages.push_back(ChatMessage::assistant(response.content, response.tool_calls));
            for (const auto& call : response.tool_calls) {
                Json args = Json::parse(call.arguments, nullptr, false);
                if (args.is_discarded()) args = Json::object();
                auto result = host.call(call.name, args);
                if (!result.ok) {
                    // First failure of a given call goes back to the model as
                    // a tool error; an identical repeat escalates.
                    const std::string key = call.name + "\n" + canonical_dump(args);
                    if (!failed_calls.insert(key).second) {
                        throw ToolExecutionError(stage, "tool call kept failing: " + call.name + " " +
                                                            canonical_dump(args) + " -> " + result.text);
                    }
                }
                request.messages.push_back(ChatMessage::tool_result(call.id, result.text));
            }
            continue;
        }

        if (!wants_output_tool) return response; // plain-content agents end on text

        // Structured agents must answer through the output tool; nudge once
        // per round and keep going (bounded by max_rounds).
        request.messages.push_back(ChatMessage::assistant(response.content));
        request.messages.push_back(
            ChatMessage::user("Use the output tool to provide your final result."));
    }
    throw ToolLoopExhausted(stage, "no output tool call within " + std::to_string(max_rounds) + " rounds");
}

UsageReport LlmGateway::usage_report() const {
    std::lock_guard<std::mutex> lock(meter_mutex_);
    UsageReport report;
    report.calls = calls_;
    report.total_input_tokens = total_in_;
    report.total_output_tokens = total_out_;
    report.max_input_tokens = max_in_;
    report.max_output_tokens = max_out_;
    if (calls_ > 0) {
        report.avg_input_tokens = static_cast<double>(total_in_) / static_cast<double>(calls_);
        report.avg_output_tokens = static_cast<double>(total_out_) / static_cast<double>(calls_);
    }
    report.cost = static_cast<double>(total_in_) * pricing_.per_input_token +
                  static_cast<double>(total_out_) * pricing_.per_output_token;
    return report;
}

} // namespace oops
