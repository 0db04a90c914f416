#include "oops/tool_host.hpp"

#include "oops/errors.hpp"
#include "oops/repo_inventory.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace fs = std::filesystem;

namespace oops {
namespace {

constexpr std::size_t kReadFileCap = 512 * 1024;
constexpr std::size_t kSearchResultCap = 100;

std::string read_all(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

} // namespace

ToolHost::ToolHost(fs::path root) : root_(std::move(root)) {
    std::error_code ec;
    fs::path canonical = fs::canonical(root_, ec);
    if (!ec) root_ = canonical;
}

std::optional<std::string> ToolHost::resolve(const std::string& rel_path) const {
    std::string cleaned = rel_path;
    std::replace(cleaned.begin(), cleaned.end(), '\\', '/');
    fs::path p(cleaned);
    if (p.is_absolute()) return std::nullopt;

    std::vector<std::string> segments;
    for (const auto& part : p) {
        std::string s = part.generic_string();
        if (s.empty() || s == ".") continue;
        if (s == "..") return std::nullopt; // traversal is rejected outright
        segments.push_back(std::move(s));
    }
    std::string out;
    for (std::size_t i = 0; i < segments.size(); ++i) {
        if (i) out += '/';
        out += segments[i];
    }

    // Symlinks could still escape the root; verify the canonical form.
    std::error_code ec;
    fs::path full = fs::weakly_canonical(root_ / fs::path(out), ec);
    if (ec) return std::nullopt;
    fs::path root_canon = fs::weakly_canonical(root_, ec);
    if (ec) return std::nullopt;
    auto [root_end, full_it] =
        std::mismatch(root_canon.begin(), root_canon.end(), full.begin(), full.end());
    if (root_end != root_canon.end()) return std::nullopt;
    return out;
}

bool ToolHost::exists(const std::string& rel_path) const {
    auto resolved = resolve(rel_path);
    if (!resolved) return false;
    std::error_code ec;
    return fs::is_regular_file(root_ / fs::path(*resolved), ec);
}

ToolHost::ToolResult ToolHost::list_directory(const std::string& rel_path) const {
    auto resolved = resolve(rel_path);
    if (!resolved) return {false, "Error: path is not inside the project root: " + rel_path};
    fs::path dir = root_ / fs::path(*resolved);
    std::error_code ec;
    if (!fs::is_directory(dir, ec)) return {false, "Error: not a directory: " + rel_path};

    std::vector<std::string> names;
    for (const auto& entry : fs::directory_iterator(dir, ec)) {
        std::string name = entry.path().filename().generic_string();
        if (entry.is_directory(ec)) {
            if (is_vcs_metadata_dir(name)) continue;
            name += '/';
        }
        names.push_back(std::move(name));
    }
    std::sort(names.begin(), names.end());
    std::string out;
    for (const auto& name : names) {
        out += name;
        out += '\n';
    }
    if (out.empty()) out = "(empty directory)\n";
    return {true, out};
}

ToolHost::ToolResult ToolHost::read_file(const std::string& rel_path) const {
    auto resolved = resolve(rel_path);
    if (!resolved) return {false, "Error: path is not inside the project root: " + rel_path};
    fs::path file = root_ / fs::path(*resolved);
    std::error_code ec;
    if (!fs::is_regular_file(file, ec)) return {false, "Error: no such file: " + rel_path};
    std::string content = read_all(file);
    if (content.size() > kReadFileCap) {
        content.resize(kReadFileCap);
        content += "\n... (truncated)\n";
    }
    return {true, content};
}

ToolHost::ToolResult ToolHost::search_files(const std::string& pattern) const {
    if (pattern.empty()) return {false, "Error: empty search pattern"};
    std::vector<std::string> hits;
    std::error_code ec;
    fs::recursive_directory_iterator it(root_, fs::directory_options::skip_permission_denied, ec);
    fs::recursive_directory_iterator end;
    for (; it != end && !ec; it.increment(ec)) {
        if (it->is_directory(ec)) {
            if (is_vcs_metadata_dir(it->path().filename().generic_string())) it.disable_recursion_pending();
            continue;
        }
        if (!it->is_regular_file(ec)) continue;
        std::string rel = fs::relative(it->path(), root_, ec).generic_string();
        if (ec) continue;
        if (rel.find(pattern) != std::string::npos) {
            hits.push_back(rel);
            continue;
        }
        std::string content = read_all(it->path());
        if (content.find('\0') != std::string::npos) continue; // skip binary
        if (content.find(pattern) != std::string::npos) hits.push_back(rel);
    }
    std::sort(hits.begin(), hits.end());
    if (hits.size() > kSearchResultCap) hits.resize(kSearchResultCap);
    std::string out;
    for (const auto& hit : hits) {
        out += hit;
        out += '\n';
    }
    if (out.empty()) out = "(no matches)\n";
    return {true, out};
}

ToolHost::ToolResult ToolHost::call(const std::string& tool_name, const Json& arguments) const {
    auto arg = [&](const char* key) -> std::string {
        if (arguments.is_object() && arguments.contains(key) && arguments.at(key).is_string()) {
            return arguments.at(key).get<std::string>();
        }
        return {};
    };
    if (tool_name == "list_directory") return list_directory(arguments.is_object() && arguments.contains("path") ? arg("path") : ".");
    if (tool_name == "read_file") return read_file(arg("path"));
    if (tool_name == "search_files") return search_files(arg("pattern"));
    return {false, "Error: unknown tool: " + tool_name};
}

} // namespace oops
