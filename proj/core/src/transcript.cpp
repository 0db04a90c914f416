#include "oops/transcript.hpp"

#include "oops/errors.hpp"

#include <fstream>

namespace oops {

GatewayMode parse_gateway_mode(const std::string& text) {
    if (text == "live") return GatewayMode::live;
    if (text == "record") return GatewayMode::record;
    if (text == "replay") return GatewayMode::replay;
    throw ConfigError("unknown mode '" + text + "' (expected live, record, or replay)");
}

ChatTranscript ChatTranscript::load(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("transcript", "cannot open transcript file: " + path.string());
    ChatTranscript transcript;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        Json entry = Json::parse(line, nullptr, false);
        if (entry.is_discarded() || !entry.contains("fp") || !entry.contains("response")) {
            throw IoError("transcript",
                          "malformed transcript line " + std::to_string(line_no) + " in " + path.string());
        }
        transcript.append(entry.at("fp").get<std::string>(),
                          response_from_json(entry.at("response")));
    }
    return transcript;
}

void ChatTranscript::record_to(const std::filesystem::path& path) {
    std::lock_guard<std::mutex> lock(mutex_);
    // Probe writability up front so record mode fails before any LLM call.
    std::ofstream probe(path, std::ios::app);
    if (!probe) throw IoError("transcript", "cannot open transcript file for append: " + path.string());
    sink_path_ = path;
    persist_ = true;
}

void ChatTranscript::append(const std::string& fingerprint, const ChatResponse& response) {
    std::lock_guard<std::mutex> lock(mutex_);
    entries_.emplace_back(fingerprint, response);
    index_.try_emplace(fingerprint, entries_.size() - 1);
    if (persist_) {
        std::ofstream out(sink_path_, std::ios::app);
        if (!out) throw IoError("transcript", "cannot append to transcript file: " + sink_path_.string());
        out << Json{{"fp", fingerprint}, {"response", response_to_json(response)}}.dump() << "\n";
    }
}

std::optional<ChatResponse> ChatTranscript::lookup(const std::string& fingerprint) const {
    std::lock_guard<std::mutex> lock(mutex_);
    auto it = index_.find(fingerprint);
    if (it == index_.end()) return std::nullopt;
    return entries_[it->second].second;
}

std::size_t ChatTranscript::size() const {
    std::lock_guard<std::mutex> lock(mutex_);
    return entries_.size();
}

} // namespace oops
