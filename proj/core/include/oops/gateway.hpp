#pragma once

#include "oops/chat_types.hpp"
#include "oops/tool_host.hpp"
#include "oops/transcript.hpp"

#include <memory>
#include <mutex>
#include <string>

namespace oops {

// Whatever actually produces chat completions: an OpenAI-compatible HTTP
// endpoint in production, a scripted responder in tests.
class ChatBackend {
public:
    virtual ~ChatBackend() = default;
    virtual ChatResponse complete(const ChatRequest& request) = 0;
};

struct HttpBackendConfig {
    std::string base_url;      // e.g. https://api.openai.com/v1
    std::string api_key;       // bearer token
    int max_retries = 3;       // transport retries with exponential backoff
    int timeout_seconds = 120;
};

std::unique_ptr<ChatBackend> make_http_backend(HttpBackendConfig config);

struct TokenPricing {
    double per_input_token = 0.0;
    double per_output_token = 0.0;
};

// Uniform entry point for every LLM call in the pipeline. Thread safe:
// transcript appends and token meters are internally synchronized, so
// complete() may be invoked concurrently.
class LlmGateway {
public:
    LlmGateway(GatewayMode mode,
               std::shared_ptr<ChatBackend> backend,     // required for live/record
               std::shared_ptr<ChatTranscript> transcript, // required for record/replay
               TokenPricing pricing = {});

    GatewayMode mode() const noexcept { return mode_; }

    // One completion. In record mode the (fingerprint, response) pair is
    // appended to the transcript; in replay mode a missing fingerprint is a
    // hard ReplayMiss, never a silent live call. `stage` only labels errors.
    ChatResponse complete(const ChatRequest& request, const std::string& stage = {});

    // Runs the tool loop: executes list_directory/read_file/search_files
    // calls against `host` and feeds results back until the model emits the
    // `output` tool (or, for requests without an output tool, replies with
    // plain content). Throws ToolLoopExhausted after max_rounds. The request
    // is mutated in place so callers can continue the conversation with
    // self-refine rounds.
    ChatResponse run_tool_loop(ChatRequest& request,
                               const ToolHost& host,
                               int max_rounds,
                               const std::string& stage = {});

    UsageReport usage_report() const;

    int default_max_rounds() const noexcept { return default_max_rounds_; }

private:
    ChatRequest effective_request(const ChatRequest& request) const;

    GatewayMode mode_;
    std::shared_ptr<ChatBackend> backend_;
    std::shared_ptr<ChatTranscript> transcript_;
    TokenPricing pricing_;
    int default_max_rounds_ = 16;

    mutable std::mutex meter_mutex_;
    std::int64_t calls_ = 0;
    std::int64_t total_in_ = 0;
    std::int64_t total_out_ = 0;
    std::int64_t max_in_ = 0;
    std::int64_t max_out_ = 0;
};

} // namespace oops
