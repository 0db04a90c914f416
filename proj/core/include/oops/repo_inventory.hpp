#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace oops {

class LlmGateway;
struct PromptContext;

struct RepoFile {
    std::string rel_path; // forward slashes, no `.`/`..` segments
    std::uint64_t size_bytes = 0;
    bool is_binary = false;
};

bool is_vcs_metadata_dir(std::string_view name);

// All regular files under root in lexicographic rel_path order. Symlinks are
// not followed; VCS metadata directories are skipped; `excludes` holds extra
// glob patterns matched against the rel_path.
std::vector<RepoFile> enumerate_files(const std::filesystem::path& root,
                                      const std::vector<std::string>& excludes = {});

// NUL byte within the first 8 KiB.
bool is_binary_content(std::string_view head);

std::string load_file(const std::filesystem::path& root, const std::string& rel_path);

// Shell-style glob with `*`, `?` and `**` (crosses `/`).
bool glob_match(std::string_view pattern, std::string_view path);

// Splits oversized text into chunks of at most max_bytes, re-starting each
// chunk `overlap_lines` lines before the previous cut so route definitions
// spanning a boundary stay visible. Content at or under max_bytes comes
// back as a single chunk.
std::vector<std::string> split_into_chunks(const std::string& content,
                                           std::size_t max_bytes,
                                           std::size_t overlap_lines);

struct FilterVerdict {
    bool may_contain = true;
    std::string reasoning;
};

// Path-only LLM pre-filter: asks whether the file might define REST API
// endpoints. A structurally invalid answer gets one corrective re-ask and
// then fails open (verdict true).
FilterVerdict may_contain_api_entries(const RepoFile& file,
                                      LlmGateway& gateway,
                                      const PromptContext& ctx);

} // namespace oops
