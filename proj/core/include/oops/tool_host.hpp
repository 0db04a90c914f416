#pragma once

#include "oops/json.hpp"

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace oops {

// Read-only tool surface over one repository. Every path argument is
// canonicalized and must land inside the repository root; `..` traversal
// and absolute paths are rejected. Safe to share between threads.
class ToolHost {
public:
    explicit ToolHost(std::filesystem::path root);

    const std::filesystem::path& root() const noexcept { return root_; }

    // Lexically normalized repo-relative path, or nullopt when the path
    // escapes the root or is otherwise unacceptable.
    std::optional<std::string> resolve(const std::string& rel_path) const;

    bool exists(const std::string& rel_path) const;

    // Tool implementations. Errors come back as {"error": "..."} payloads
    // so the caller can forward them to the model as tool messages.
    struct ToolResult {
        bool ok = false;
        std::string text; // tool message body
    };

    ToolResult list_directory(const std::string& rel_path) const;
    ToolResult read_file(const std::string& rel_path) const;
    ToolResult search_files(const std::string& pattern) const;

    // Dispatch by tool name with JSON arguments.
    ToolResult call(const std::string& tool_name, const Json& arguments) const;

private:
    std::filesystem::path root_;
};

} // namespace oops
