#pragma once

#include "oops/chat_types.hpp"

#include <filesystem>
#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace oops {

enum class GatewayMode { live, record, replay };

GatewayMode parse_gateway_mode(const std::string& text); // throws ConfigError

// Append-only log of (request fingerprint, response) pairs, persisted as
// JSON lines: {"fp": hex, "response": {...}}. Lookup keeps the first entry
// per fingerprint; the on-disk log keeps every call so that token totals
// can be recomputed from the file alone.
class ChatTranscript {
public:
    ChatTranscript() = default;

    static ChatTranscript load(const std::filesystem::path& path); // throws IoError

    // Opens `path` for appending and keeps it open; existing entries are
    // loaded first so a resumed recording still replays earlier calls.
    void record_to(const std::filesystem::path& path); // throws IoError

    void append(const std::string& fingerprint, const ChatResponse& response);
    std::optional<ChatResponse> lookup(const std::string& fingerprint) const;

    std::size_t size() const;

private:
    mutable std::mutex mutex_;
    std::vector<std::pair<std::string, ChatResponse>> entries_;
    std::unordered_map<std::string, std::size_t> index_;
    std::filesystem::path sink_path_;
    bool persist_ = false;
};

} // namespace oops
