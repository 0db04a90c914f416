#pragma once

#include "oops/json.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace oops {

struct ToolCall {
    std::string id;
    std::string name;
    std::string arguments; // raw JSON text, not yet parsed
};

struct ChatMessage {
    std::string role; // system | user | assistant | tool
    std::string content;
    std::vector<ToolCall> tool_calls; // assistant messages only
    std::string tool_call_id;         // tool messages only

    static ChatMessage system(std::string text) { return {"system", std::move(text), {}, {}}; }
    static ChatMessage user(std::string text) { return {"user", std::move(text), {}, {}}; }
    static ChatMessage assistant(std::string text, std::vector<ToolCall> calls = {}) {
        return {"assistant", std::move(text), std::move(calls), {}};
    }
    static ChatMessage tool_result(std::string call_id, std::string text) {
        return {"tool", std::move(text), {}, std::move(call_id)};
    }
};

struct ToolSpec {
    std::string name; // list_directory | read_file | search_files | output
    std::string description;
    Json parameter_schema;
};

struct TokenUsage {
    std::int64_t input_tokens = 0;
    std::int64_t output_tokens = 0;
};

struct ChatRequest {
    std::string model_id;
    std::string system_preamble;
    std::vector<ChatMessage> messages;
    std::vector<ToolSpec> tools;
    std::optional<Json> output_schema; // enforced via the mandatory `output` tool
    double temperature = 0.0;          // fixed 0 for every pipeline call
};

struct ChatResponse {
    std::string content;
    std::vector<ToolCall> tool_calls;
    TokenUsage usage;
};

// Canonical (key-sorted, whitespace-free) JSON form of a request; its
// sha256 is the transcript lookup key.
Json request_to_json(const ChatRequest& request);
std::string request_fingerprint(const ChatRequest& request);

Json response_to_json(const ChatResponse& response);
ChatResponse response_from_json(const Json& value);

// The arguments of the first `output` tool call, parsed as JSON.
// Empty optional when there is no such call or its arguments do not parse.
std::optional<Json> output_arguments(const ChatResponse& response);

struct UsageReport {
    std::int64_t calls = 0;
    std::int64_t total_input_tokens = 0;
    std::int64_t total_output_tokens = 0;
    double avg_input_tokens = 0.0;
    std::int64_t max_input_tokens = 0;
    double avg_output_tokens = 0.0;
    std::int64_t max_output_tokens = 0;
    double cost = 0.0;

    Json to_json() const;
};

} // namespace oops
