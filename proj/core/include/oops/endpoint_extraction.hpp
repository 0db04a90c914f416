#pragma once

#include "oops/json.hpp"
#include "oops/prompts.hpp"

#include <functional>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace oops {

class LlmGateway;
class ToolHost;

enum class EntryTag { local, ref };

const char* to_string(EntryTag tag);

// The (Path, Handler, Tag) routing triple. `key` is the normalized path and,
// together with `file`, the dedup identity.
struct ApiEntry {
    std::string key;
    std::string file;
    std::string path;
    std::string handler;
    EntryTag tag = EntryTag::local;

    Json to_json() const;
};

// Directed graph over files; edge (from, to) means the entry in `to`
// references a handler implemented in `from`, i.e. path-prefix information
// flows from `to` into `from`'s full route. Acyclic after build_graph.
struct ApiDependencyGraph {
    std::set<std::string> nodes;
    std::set<std::pair<std::string, std::string>> edges;
    std::map<std::string, std::vector<ApiEntry>> file_to_entries;

    Json to_json() const;
};

struct EndpointMethod {
    std::string path;   // normalized full path
    std::string method; // GET, POST, PUT, DELETE, PATCH, HEAD, OPTIONS
    ApiEntry origin;
    std::vector<std::string> ordered_files; // origin.file first, dispatchers after

    Json to_json() const;
};

// Rewrites `/:param`, `/<param>` and typed `/<int:param>` markers to the
// canonical `/{param}` form, collapses duplicate slashes, and strips any
// trailing slash except for the root "/". Total and idempotent.
std::string normalize_path(const std::string& raw);

// Keeps the first entry per (key, file) pair, preserving input order.
std::vector<ApiEntry> dedup_entries(const std::vector<ApiEntry>& entries);

// Iterative file-level detection loop: re-asks with the entries found so
// far until a round adds nothing new (cap: detection_round_cap rounds).
// Oversized files are chunk-split before prompting.
std::vector<ApiEntry> detect_entries(const std::string& rel_path,
                                     const std::string& content,
                                     LlmGateway& gateway,
                                     const PromptContext& ctx,
                                     std::vector<std::string>& warnings);

// Tool-loop agent that locates the files implementing a REF entry's
// handler. Invalid paths trigger corrective rounds (up to 3); whatever is
// still invalid afterwards is dropped.
std::vector<std::string> resolve_handler_files(const ApiEntry& entry,
                                               LlmGateway& gateway,
                                               const PromptContext& ctx,
                                               const ToolHost& host,
                                               std::vector<std::string>& warnings);

using HandlerResolver = std::function<std::vector<std::string>(const ApiEntry&)>;

// Algorithm: one node per entry file; for each REF entry, an edge from every
// resolved implementation file to the entry's file, synthesizing a LOCAL
// entry with an empty path where the handler has no entry yet. Ends with
// cycle repair, so the result is always acyclic.
ApiDependencyGraph build_graph(const std::vector<ApiEntry>& entries,
                               const HandlerResolver& resolver,
                               std::vector<std::string>& warnings);

bool is_acyclic(const ApiDependencyGraph& graph);

// Drops the lexicographically largest in-cycle edge per strongly connected
// component until the graph is acyclic, logging one warning per drop.
void remove_cycles(ApiDependencyGraph& graph, std::vector<std::string>& warnings);

// Files reachable from `file` along outgoing edges (its dispatchers).
std::set<std::string> descendants(const ApiDependencyGraph& graph, const std::string& file);

// The entry's own file followed by a topological linearization of its
// descendant subgraph (deterministic: lexicographic tie-break).
std::vector<std::string> ordered_files_for(const ApiDependencyGraph& graph, const std::string& file);

using FileLoader = std::function<std::string(const std::string& rel_path)>;

// Runs the endpoint-method extractor over every LOCAL entry and expands the
// per-method flags (ALL -> GET, POST, PUT, DELETE, PATCH). Failed entries
// are skipped with a warning; (path, method) pairs are unique in the result.
std::vector<EndpointMethod> extract_endpoint_methods(const ApiDependencyGraph& graph,
                                                     LlmGateway& gateway,
                                                     const PromptContext& ctx,
                                                     const ToolHost& host,
                                                     const FileLoader& load,
                                                     std::size_t parallelism,
                                                     std::vector<std::string>& warnings);

} // namespace oops
