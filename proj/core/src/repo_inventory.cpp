#include "oops/repo_inventory.hpp"

#include "oops/errors.hpp"
#include "oops/gateway.hpp"
#include "oops/prompts.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace fs = std::filesystem;

namespace oops {
namespace {

constexpr std::size_t kBinarySniffBytes = 8192;

std::string read_head(const fs::path& path, std::size_t max_bytes) {
    std::ifstream in(path, std::ios::binary);
    std::string head(max_bytes, '\0');
    in.read(head.data(), static_cast<std::streamsize>(max_bytes));
    head.resize(static_cast<std::size_t>(in.gcount()));
    return head;
}

} // namespace

bool is_vcs_metadata_dir(std::string_view name) {
    return name == ".git" || name == ".hg" || name == ".svn" || name == ".bzr";
}

bool is_binary_content(std::string_view head) {
    const std::size_t limit = std::min(head.size(), kBinarySniffBytes);
    return head.substr(0, limit).find('\0') != std::string_view::npos;
}

bool glob_match(std::string_view pattern, std::string_view path) {
    // Iterative wildcard matcher; `**` also crosses `/`.
    std::size_t p = 0, s = 0;
    std::size_t star_p = std::string_view::npos, star_s = 0;
    bool star_crosses_sep = false;
    while (s < path.size()) {
        if (p < pattern.size() && (pattern[p] == path[s] || pattern[p] == '?')) {
            ++p;
            ++s;
        } else if (p < pattern.size() && pattern[p] == '*') {
            star_crosses_sep = p + 1 < pattern.size() && pattern[p + 1] == '*';
            p += star_crosses_sep ? 2 : 1;
            star_p = p;
            star_s = s;
        } else if (star_p != std::string_view::npos &&
                   (star_crosses_sep || path[star_s] != '/')) {
            p = star_p;
            s = ++star_s;
        } else {
            return false;
        }
    }
    while (p < pattern.size() && pattern[p] == '*') ++p;
    return p == pattern.size();
}

std::vector<RepoFile> enumerate_files(const fs::path& root, const std::vector<std::string>& excludes) {
    std::error_code ec;
    if (!fs::is_directory(root, ec)) {
        throw IoError("repo_inventory", "not a readable directory: " + root.string());
    }

    std::vector<RepoFile> files;
    fs::recursive_directory_iterator it(root, fs::directory_options::skip_permission_denied, ec);
    if (ec) throw IoError("repo_inventory", "cannot walk " + root.string() + ": " + ec.message());
    fs::recursive_directory_iterator end;
    for (; it != end; it.increment(ec)) {
        if (ec) throw IoError("repo_inventory", "cannot walk " + root.string() + ": " + ec.message());
        if (it->is_symlink(ec)) {
            if (it->is_directory(ec)) it.disable_recursion_pending();
            continue;
        }
        if (it->is_directory(ec)) {
            if (is_vcs_metadata_dir(it->path().filename().generic_string())) {
                it.disable_recursion_pending();
            }
            continue;
        }
        if (!it->is_regular_file(ec)) continue;

        RepoFile file;
        file.rel_path = fs::relative(it->path(), root, ec).generic_string();
        if (ec) continue;
        bool excluded = false;
        for (const auto& pattern : excludes) {
            if (glob_match(pattern, file.rel_path)) {
                excluded = true;
                break;
            }
        }
        if (excluded) continue;
        file.size_bytes = it->file_size(ec);
        if (ec) file.size_bytes = 0;
        file.is_binary = is_binary_content(read_head(it->path(), kBinarySniffBytes));
        files.push_back(std::move(file));
    }
    std::sort(files.begin(), files.end(),
              [](const RepoFile& a, const RepoFile& b) { return a.rel_path < b.rel_path; });
    return files;
}

std::string load_file(const fs::path& root, const std::string& rel_path) {
    std::ifstream in(root / fs::path(rel_path), std::ios::binary);
    if (!in) throw IoError("repo_inventory", "cannot read file: " + rel_path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

std::vector<std::string> split_into_chunks(const std::string& content,
                                           std::size_t max_bytes,
                                           std::size_t overlap_lines) {
    if (content.size() <= max_bytes || max_bytes == 0) return {content};

    std::vector<std::string> lines;
    std::size_t start = 0;
    while (start <= content.size()) {
        std::size_t nl = content.find('\n', start);
        if (nl == std::string::npos) {
            lines.push_back(content.substr(start));
            break;
        }
        lines.push_back(content.substr(start, nl - start + 1));
        start = nl + 1;
    }

    std::vector<std::string> chunks;
    std::size_t i = 0;
    while (i < lines.size()) {
        std::string chunk;
        std::size_t line_count = 0;
        std::size_t j = i;
        while (j < lines.size() && (chunk.empty() || chunk.size() + lines[j].size() <= max_bytes)) {
            chunk += lines[j];
            ++line_count;
            ++j;
        }
        chunks.push_back(std::move(chunk));
        if (j >= lines.size()) break;
        // Re-show the tail of the previous chunk so definitions spanning the
        // cut stay visible.
        const std::size_t overlap = std::min(overlap_lines, line_count > 1 ? line_count - 1 : 0);
        i = j - overlap;
    }
    return chunks;
}

FilterVerdict may_contain_api_entries(const RepoFile& file,
                                      LlmGateway& gateway,
                                      const PromptContext& ctx) {
    ChatRequest request = file_filter_request(ctx, file.rel_path);
    ChatResponse response = gateway.complete(request, "file_filter");
    for (int attempt = 0; attempt < 2; ++attempt) {
        auto args = output_arguments(response);
        if (args && args->is_object() && args->contains("result") && args->at("result").is_boolean()) {
            FilterVerdict verdict;
            verdict.may_contain = args->at("result").get<bool>();
            verdict.reasoning = args->value("reasoning", "");
            return verdict;
        }
        if (attempt == 0) {
            continue_conversation(request, response, file_filter_retry_message());
            response = gateway.complete(request, "file_filter");
        }
    }
    // Fail open: the filter exists only to save tokens, so ambiguity keeps
    // the file in scope.
    return FilterVerdict{true, "structurally invalid filter output; failing open"};
}

} // namespace oops
