#include "oops/endpoint_extraction.hpp"

#include "oops/errors.hpp"
#include "oops/gateway.hpp"
#include "oops/parallel.hpp"
#include "oops/repo_inventory.hpp"
#include "oops/tool_host.hpp"

#include <algorithm>
#include <cctype>
#include <optional>
#include <tuple>

namespace oops {
namespace {

constexpr std::size_t kDetectionChunkBytes = 256 * 1024;
constexpr std::size_t kDetectionOverlapLines = 200;
constexpr int kDetectionRoundCap = 8;
constexpr int kResolveRefineBudget = 3;

std::string trim_copy(const std::string& text) {
    auto begin = text.find_first_not_of(" \t\r\n");
    if (begin == std::string::npos) return "";
    auto end = text.find_last_not_of(" \t\r\n");
    return text.substr(begin, end - begin + 1);
}

} // namespace

const char* to_string(EntryTag tag) {
    return tag == EntryTag::local ? "LOCAL" : "REF";
}

Json ApiEntry::to_json() const {
    return Json{{"key", key}, {"file", file}, {"path", path}, {"handler", handler}, {"tag", to_string(tag)}};
}

Json ApiDependencyGraph::to_json() const {
    Json nodes_json = Json::array();
    for (const auto& node : nodes) nodes_json.push_back(node);
    Json edges_json = Json::array();
    for (const auto& [from, to] : edges) edges_json.push_back(Json{{"from", from}, {"to", to}});
    Json entries_json = Json::object();
    for (const auto& [file, entries] : file_to_entries) {
        Json list = Json::array();
        for (const auto& entry : entries) list.push_back(entry.to_json());
        entries_json[file] = std::move(list);
    }
    return Json{{"nodes", std::move(nodes_json)},
                {"edges", std::move(edges_json)},
                {"entries", std::move(entries_json)}};
}

Json EndpointMethod::to_json() const {
    Json files = Json::array();
    for (const auto& file : ordered_files) files.push_back(file);
    return Json{{"path", path},
                {"method", method},
                {"origin", origin.to_json()},
                {"ordered_files", std::move(files)}};
}

std::string normalize_path(const std::string& raw) {
    if (raw.empty()) return "";
    const bool rooted = raw.front() == '/';

    std::vector<std::string> segments;
    std::size_t i = 0;
    while (i < raw.size()) {
        while (i < raw.size() && raw[i] == '/') ++i;
        if (i >= raw.size()) break;
        std::size_t j = raw.find('/', i);
        if (j == std::string::npos) j = raw.size();
        std::string seg = raw.substr(i, j - i);
        i = j;

        if (seg.front() == ':') {
            seg = "{" + seg.substr(1) + "}";
        } else if (seg.size() >= 2 && seg.front() == '<' && seg.back() == '>') {
            std::string inner = seg.substr(1, seg.size() - 2);
            // Typed markers like <int:id> keep only the parameter name.
            auto colon = inner.find(':');
            if (colon != std::string::npos) inner = inner.substr(colon + 1);
            seg = "{" + inner + "}";
        }
        segments.push_back(std::move(seg));
    }

    if (segments.empty()) return rooted ? "/" : "";
    std::string out = rooted ? "/" : "";
    for (std::size_t k = 0; k < segments.size(); ++k) {
        if (k) out += '/';
        out += segments[k];
    }
    return out;
}

std::vector<ApiEntry> dedup_entries(const std::vector<ApiEntry>& entries) {
    std::set<std::pair<std::string, std::string>> seen;
    std::vector<ApiEntry> out;
    for (const auto& entry : entries) {
        if (seen.insert({entry.key, entry.file}).second) out.push_back(entry);
    }
    return out;
}

std::vector<ApiEntry> detect_entries(const std::string& rel_path,
                                     const std::string& content,
                                     LlmGateway& gateway,
                                     const PromptContext& ctx,
                                     std::vector<std::string>& warnings) {
    std::vector<ApiEntry> found;
    std::set<std::tuple<std::string, std::string, int>> seen; // (key, handler, tag)

    auto found_json = [&found] {
        Json list = Json::array();
        for (const auto& entry : found) {
            list.push_back(Json{{"path", entry.path}, {"handler", entry.handler}, {"tag", to_string(entry.tag)}});
        }
        return list;
    };

    for (const auto& chunk : split_into_chunks(content, kDetectionChunkBytes, kDetectionOverlapLines)) {
        ChatRequest request = entry_detection_request(ctx, rel_path, chunk);
        for (int round = 0; round < kDetectionRoundCap; ++round) {
            ChatResponse response = gateway.complete(request, "entry_detection");
            auto args = output_arguments(response);
            if (!args || !args->is_object() || !args->contains("entries") ||
                !args->at("entries").is_array()) {
                warnings.push_back("entry_detection: malformed detector output for " + rel_path);
                break;
            }
            const auto& raw_entries = args->at("entries");
            if (raw_entries.empty()) break;

            bool any_new = false;
            for (const auto& raw : raw_entries) {
                if (!raw.is_object()) continue;
                ApiEntry entry;
                entry.file = rel_path;
                entry.path = raw.value("path", "");
                entry.handler = trim_copy(raw.value("handler", ""));
                const std::string tag = raw.value("tag", "");
                if (tag == "LOCAL") {
                    entry.tag = EntryTag::local;
                } else if (tag == "REF") {
                    entry.tag = EntryTag::ref;
                } else {
                    warnings.push_back("entry_detection: dropped entry with unknown tag '" + tag +
                                       "' in " + rel_path);
                    continue;
                }
                if (entry.path.empty() && entry.handler.empty()) {
                    warnings.push_back("entry_detection: dropped entry with neither path nor handler in " +
                                       rel_path);
                    continue;
                }
                if (entry.tag == EntryTag::ref && entry.handler.empty()) {
                    warnings.push_back("entry_detection: dropped REF entry without a handler in " + rel_path);
                    continue;
                }
                entry.key = normalize_path(entry.path);
                if (seen.insert({entry.key, entry.handler, static_cast<int>(entry.tag)}).second) {
                    found.push_back(std::move(entry));
                    any_new = true;
                }
            }
            if (!any_new) break;
            continue_conversation(request, response, entry_detection_refine_message(found_json()));
        }
    }
    return found;
}

std::vector<std::string> resolve_handler_files(const ApiEntry& entry,
                                               LlmGateway& gateway,
                                               const PromptContext& ctx,
                                               const ToolHost& host,
                                               std::vector<std::string>& warnings) {
    ChatRequest request = dependency_analysis_request(ctx, entry);
    std::vector<std::string> valid;
    Json last_invalid = Json::array();

    for (int attempt = 0; attempt <= kResolveRefineBudget; ++attempt) {
        ChatResponse response;
        try {
            response = gateway.run_tool_loop(request, host, gateway.default_max_rounds(),
                                             "file_dependency_analysis");
        } catch (const ToolLoopExhausted&) {
            warnings.push_back("file_dependency_analysis: tool loop exhausted for handler '" +
                               entry.handler + "' in " + entry.file);
            break;
        }
        auto args = output_arguments(response);
        Json files = Json::array();
        if (args && args->is_object() && args->contains("files") && args->at("files").is_array()) {
            files = args->at("files");
        }

        valid.clear();
        Json invalid = Json::array();
        for (const auto& item : files) {
            if (!item.is_string()) continue;
            const std::string candidate = item.get<std::string>();
            auto resolved = host.resolve(candidate);
            if (resolved && host.exists(*resolved)) {
                if (std::find(valid.begin(), valid.end(), *resolved) == valid.end()) {
                    valid.push_back(*resolved);
                }
            } else {
                invalid.push_back(candidate);
            }
        }
        last_invalid = invalid;
        if (invalid.empty()) break;
        if (attempt == kResolveRefineBudget) break;
        continue_conversation(request, response, dependency_refine_message(files, invalid));
    }

    if (!last_invalid.empty()) {
        warnings.push_back("file_dependency_analysis: dropped invalid paths for handler '" +
                           entry.handler + "': " + last_invalid.dump());
    }
    if (valid.empty()) {
        warnings.push_back("file_dependency_analysis: no valid file found for handler '" +
                           entry.handler + "' referenced in " + entry.file);
    }
    return valid;
}

ApiDependencyGraph build_graph(const std::vector<ApiEntry>& entries,
                               const HandlerResolver& resolver,
                               std::vector<std::string>& warnings) {
    ApiDependencyGraph graph;
    for (const auto& entry : entries) {
        graph.nodes.insert(entry.file);
        graph.file_to_entries[entry.file].push_back(entry);
    }

    // Handler comparison is exact string equality after trimming.
    auto has_handler = [&graph](const std::string& file, const std::string& handler) {
        auto it = graph.file_to_entries.find(file);
        if (it == graph.file_to_entries.end()) return false;
        const std::string wanted = trim_copy(handler);
        return std::any_of(it->second.begin(), it->second.end(), [&wanted](const ApiEntry& e) {
            return trim_copy(e.handler) == wanted;
        });
    };

    for (const auto& entry : entries) {
        if (entry.tag != EntryTag::ref) continue;
        for (const auto& file : resolver(entry)) {
            if (!graph.nodes.count(file) || !has_handler(file, entry.handler)) {
                ApiEntry synthetic;
                synthetic.key = "";
                synthetic.file = file;
                synthetic.path = "";
                synthetic.handler = entry.handler;
                synthetic.tag = EntryTag::local;
                graph.file_to_entries[file].push_back(std::move(synthetic));
                graph.nodes.insert(file);
            }
            graph.edges.insert({file, entry.file});
        }
    }

    remove_cycles(graph, warnings);
    return graph;
}

bool is_acyclic(const ApiDependencyGraph& graph) {
    // Kahn's algorithm: a DAG can be fully drained.
    std::map<std::string, int> indegree;
    for (const auto& node : graph.nodes) indegree[node] = 0;
    for (const auto& [from, to] : graph.edges) {
        (void)from;
        ++indegree[to];
    }
    std::vector<std::string> ready;
    for (const auto& [node, deg] : indegree) {
        if (deg == 0) ready.push_back(node);
    }
    std::size_t drained = 0;
    while (!ready.empty()) {
        std::string node = ready.back();
        ready.pop_back();
        ++drained;
        for (const auto& [from, to] : graph.edges) {
            if (from != node) continue;
            if (--indegree[to] == 0) ready.push_back(to);
        }
    }
    return drained == graph.nodes.size();
}

namespace {

// Tarjan strongly connected components, iterative to be safe on deep graphs.
std::vector<std::vector<std::string>> strongly_connected_components(const ApiDependencyGraph& graph) {
    std::map<std::string, std::vector<std::string>> adjacency;
    for (const auto& node : graph.nodes) adjacency[node];
    for (const auto& [from, to] : graph.edges) adjacency[from].push_back(to);

    std::map<std::string, int> index, lowlink;
    std::map<std::string, bool> on_stack;
    std::vector<std::string> stack;
    std::vector<std::vector<std::string>> components;
    int next_index = 0;

    struct Frame {
        std::string node;
        std::size_t child = 0;
    };

    for (const auto& [start, _] : adjacency) {
        if (index.count(start)) continue;
        std::vector<Frame> frames{{start, 0}};
        index[start] = lowlink[start] = next_index++;
        stack.push_back(start);
        on_stack[start] = true;

        while (!frames.empty()) {
            Frame& frame = frames.back();
            const auto& children = adjacency[frame.node];
            if (frame.child < children.size()) {
                const std::string& child = children[frame.child++];
                if (!index.count(child)) {
                    index[child] = lowlink[child] = next_index++;
                    stack.push_back(child);
                    on_stack[child] = true;
                    frames.push_back({child, 0});
                } else if (on_stack[child]) {
                    lowlink[frame.node] = std::min(lowlink[frame.node], index[child]);
                }
            } else {
                if (lowlink[frame.node] == index[frame.node]) {
                    std::vector<std::string> component;
                    for (;;) {
                        std::string top = stack.back();
                        stack.pop_back();
                        on_stack[top] = false;
                        component.push_back(top);
                        if (top == frame.node) break;
                    }
                    components.push_back(std::move(component));
                }
                std::string finished = frame.node;
                frames.pop_back();
                if (!frames.empty()) {
                    lowlink[frames.back().node] =
                        std::min(lowlink[frames.back().node], lowlink[finished]);
                }
            }
        }
    }
    return components;
}

} // namespace

void remove_cycles(ApiDependencyGraph& graph, std::vector<std::string>& warnings) {
    // The paper asserts a DAG, but mutual imports can produce cycles. Per
    // repair round, drop the lexicographically largest edge inside each
    // nontrivial strongly connected component.
    for (;;) {
        bool removed = false;
        for (const auto& component : strongly_connected_components(graph)) {
            const bool self_loop =
                component.size() == 1 && graph.edges.count({component.front(), component.front()});
            if (component.size() < 2 && !self_loop) continue;

            std::set<std::string> members(component.begin(), component.end());
            std::optional<std::pair<std::string, std::string>> worst;
            for (const auto& edge : graph.edges) {
                if (!members.count(edge.first) || !members.count(edge.second)) continue;
                if (!worst || edge > *worst) worst = edge;
            }
            if (worst) {
                graph.edges.erase(*worst);
                warnings.push_back("dependency graph cycle: dropped edge " + worst->first + " -> " +
                                   worst->second);
                removed = true;
            }
        }
        if (!removed) return;
    }
}

std::set<std::string> descendants(const ApiDependencyGraph& graph, const std::string& file) {
    std::map<std::string, std::vector<std::string>> adjacency;
    for (const auto& [from, to] : graph.edges) adjacency[from].push_back(to);

    std::set<std::string> visited;
    std::vector<std::string> frontier{file};
    while (!frontier.empty()) {
        std::string node = frontier.back();
        frontier.pop_back();
        for (const auto& next : adjacency[node]) {
            if (next != file && visited.insert(next).second) frontier.push_back(next);
        }
    }
    return visited;
}

std::vector<std::string> ordered_files_for(const ApiDependencyGraph& graph, const std::string& file) {
    std::set<std::string> members = descendants(graph, file);
    members.insert(file);

    std::map<std::string, int> indegree;
    for (const auto& node : members) indegree[node] = 0;
    for (const auto& [from, to] : graph.edges) {
        if (members.count(from) && members.count(to)) ++indegree[to];
    }

    // Kahn, sources first; the origin is the unique source because every
    // member is reachable from it. Lexicographic tie-break keeps the rest
    // deterministic.
    std::set<std::string> ready;
    for (const auto& [node, deg] : indegree) {
        if (deg == 0) ready.insert(node);
    }
    std::vector<std::string> ordered;
    while (!ready.empty()) {
        std::string node;
        if (ordered.empty() && ready.count(file)) {
            node = file;
        } else {
            node = *ready.begin();
        }
        ready.erase(node);
        ordered.push_back(node);
        for (const auto& [from, to] : graph.edges) {
            if (from != node || !members.count(to)) continue;
            if (--indegree[to] == 0) ready.insert(to);
        }
    }
    return ordered;
}

namespace {

const std::vector<std::string>& canonical_methods() {
    static const std::vector<std::string> methods{"GET",    "POST", "PUT",    "DELETE",
                                                  "PATCH",  "HEAD", "OPTIONS"};
    return methods;
}

// ALL covers the five common methods; HEAD/OPTIONS stay opt-in because most
// frameworks add them implicitly.
std::vector<std::string> accepted_methods(const Json& flags) {
    std::set<std::string> accepted;
    auto flag = [&flags](const char* name) {
        return flags.is_object() && flags.contains(name) && flags.at(name).is_boolean() &&
               flags.at(name).get<bool>();
    };
    if (flag("all")) {
        for (const char* m : {"GET", "POST", "PUT", "DELETE", "PATCH"}) accepted.insert(m);
    }
    for (const auto& method : canonical_methods()) {
        std::string lower = method;
        std::transform(lower.begin(), lower.end(), lower.begin(),
                       [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
        if (flag(lower.c_str())) accepted.insert(method);
    }
    std::vector<std::string> out;
    for (const auto& method : canonical_methods()) {
        if (accepted.count(method)) out.push_back(method);
    }
    return out;
}

} // namespace

std::vector<EndpointMethod> extract_endpoint_methods(const ApiDependencyGraph& graph,
                                                     LlmGateway& gateway,
                                                     const PromptContext& ctx,
                                                     const ToolHost& host,
                                                     const FileLoader& load,
                                                     std::size_t parallelism,
                                                     std::vector<std::string>& warnings) {
    std::vector<ApiEntry> local_entries;
    for (const auto& [file, entries] : graph.file_to_entries) {
        (void)file;
        for (const auto& entry : entries) {
            if (entry.tag == EntryTag::local) local_entries.push_back(entry);
        }
    }

    struct TaskResult {
        std::vector<EndpointMethod> methods;
        std::vector<std::string> warnings;
    };

    auto task = [&](std::size_t i) -> TaskResult {
        TaskResult result;
        const ApiEntry& entry = local_entries[i];
        std::vector<std::string> ordered = ordered_files_for(graph, entry.file);

        std::vector<std::pair<std::string, std::string>> files;
        files.reserve(ordered.size());
        for (const auto& rel : ordered) files.emplace_back(rel, load(rel));

        ChatRequest request = endpoint_method_request(ctx, entry, dependencies_block(files));
        ChatResponse response;
        try {
            response = gateway.run_tool_loop(request, host, gateway.default_max_rounds(),
                                             "endpoint_method_extraction");
        } catch (const PipelineError& e) {
            result.warnings.push_back("endpoint_method_extraction: skipped entry (" + entry.file +
                                      ", '" + entry.path + "'): " + e.what());
            return result;
        }

        auto args = output_arguments(response);
        if (!args || !args->is_object() || !args->contains("path") || !args->at("path").is_string()) {
            result.warnings.push_back("endpoint_method_extraction: malformed output for entry (" +
                                      entry.file + ", '" + entry.path + "'); skipped");
            return result;
        }
        const std::string full_path = normalize_path(args->at("path").get<std::string>());
        const Json flags = args->contains("methods") ? args->at("methods") : Json::object();
        for (const auto& method : accepted_methods(flags)) {
            EndpointMethod em;
            em.path = full_path;
            em.method = method;
            em.origin = entry;
            em.ordered_files = ordered;
            result.methods.push_back(std::move(em));
        }
        return result;
    };

    std::vector<TaskResult> results = parallel_map(local_entries.size(), parallelism, task);

    std::vector<EndpointMethod> endpoints;
    std::set<std::pair<std::string, std::string>> seen; // (path, method) dedup
    for (auto& result : results) {
        for (auto& warning : result.warnings) warnings.push_back(std::move(warning));
        for (auto& method : result.methods) {
            if (seen.insert({method.path, method.method}).second) {
                endpoints.push_back(std::move(method));
            } else {
                warnings.push_back("endpoint_method_extraction: duplicate endpoint method " +
                                   method.method + " " + method.path + " ignored");
            }
        }
    }
    return endpoints;
}

} // namespace oops
