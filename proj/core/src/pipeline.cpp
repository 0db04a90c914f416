#include "oops/spec_synthesis.hpp"

#include "oops/gateway.hpp"
#include "oops/parallel.hpp"
#include "oops/repo_inventory.hpp"
#include "oops/run_config.hpp"
#include "oops/tool_host.hpp"

#include <algorithm>
#include <mutex>
#include <unordered_map>

namespace oops {
namespace {

// Dependency blocks re-read the same files for every endpoint; cache them.
FileLoader make_caching_loader(const std::filesystem::path& root) {
    auto cache = std::make_shared<std::unordered_map<std::string, std::string>>();
    auto mutex = std::make_shared<std::mutex>();
    return [root, cache, mutex](const std::string& rel_path) {
        {
            std::lock_guard<std::mutex> lock(*mutex);
            auto it = cache->find(rel_path);
            if (it != cache->end()) return it->second;
        }
        std::string content = load_file(root, rel_path);
        std::lock_guard<std::mutex> lock(*mutex);
        return cache->emplace(rel_path, std::move(content)).first->second;
    };
}

} // namespace

Json RunReport::to_json() const {
    Json warning_list = Json::array();
    for (const auto& warning : warnings) warning_list.push_back(warning);
    Json repair_map = Json::object();
    for (const auto& [label, reports] : repairs) {
        repair_map[label] = Json{{"request", reports.first.to_json()},
                                 {"response", reports.second.to_json()}};
    }
    return Json{{"usage", usage.to_json()},
                {"warnings", std::move(warning_list)},
                {"repairs", std::move(repair_map)},
                {"max_dependency_depth", max_dependency_depth}};
}

ExtractionResult run_extraction(const RunConfig& config, LlmGateway& gateway) {
    ExtractionResult result;

    std::vector<RepoFile> files = enumerate_files(config.repo_root, config.excludes);
    if (files.empty()) {
        result.warnings.push_back("repo_inventory: repository contains no files");
    }

    ToolHost host(config.repo_root);
    result.profile = analyze_technology(host, gateway, config.model_id, result.warnings);
    result.ctx = PromptContext{config.model_id, role_preamble(result.profile)};

    FileLoader load = make_caching_loader(config.repo_root);

    struct FileScan {
        std::vector<ApiEntry> entries;
        std::vector<std::string> warnings;
    };
    auto scans = parallel_map(files.size(), config.parallelism, [&](std::size_t i) -> FileScan {
        FileScan scan;
        const RepoFile& file = files[i];
        if (file.is_binary) return scan; // binary content never reaches a prompt
        FilterVerdict verdict = may_contain_api_entries(file, gateway, result.ctx);
        if (!verdict.may_contain) return scan;
        scan.entries = detect_entries(file.rel_path, load(file.rel_path), gateway, result.ctx,
                                      scan.warnings);
        return scan;
    });

    std::vector<ApiEntry> entries;
    for (auto& scan : scans) {
        for (auto& warning : scan.warnings) result.warnings.push_back(std::move(warning));
        for (auto& entry : scan.entries) entries.push_back(std::move(entry));
    }
    entries = dedup_entries(entries);

    HandlerResolver resolver = [&](const ApiEntry& entry) {
        return resolve_handler_files(entry, gateway, result.ctx, host, result.warnings);
    };
    result.graph = build_graph(entries, resolver, result.warnings);

    result.endpoints = extract_endpoint_methods(result.graph, gateway, result.ctx, host, load,
                                                config.parallelism, result.warnings);
    return result;
}

PipelineResult generate_openapi(const RunConfig& config, LlmGateway& gateway) {
    ExtractionResult extraction = run_extraction(config, gateway);

    PipelineResult result;
    result.profile = extraction.profile;
    result.graph = std::move(extraction.graph);
    result.endpoints = std::move(extraction.endpoints);
    result.report.warnings = std::move(extraction.warnings);

    if (result.endpoints.empty()) {
        result.report.warnings.push_back(
            "spec_synthesis: no endpoint methods extracted; emitting an empty document");
    }

    ToolHost host(config.repo_root);
    FileLoader load = make_caching_loader(config.repo_root);

    struct FragmentPair {
        FragmentResult request;
        FragmentResult response;
    };
    auto fragments =
        parallel_map(result.endpoints.size(), config.parallelism, [&](std::size_t i) -> FragmentPair {
            FragmentPair pair;
            pair.request = generate_fragment(result.endpoints[i], FragmentKind::request, gateway,
                                             extraction.ctx, host, load);
            pair.response = generate_fragment(result.endpoints[i], FragmentKind::response, gateway,
                                              extraction.ctx, host, load);
            return pair;
        });

    std::vector<Json> request_fragments, response_fragments;
    request_fragments.reserve(fragments.size());
    response_fragments.reserve(fragments.size());
    for (std::size_t i = 0; i < fragments.size(); ++i) {
        auto& pair = fragments[i];
        for (auto& w : pair.request.warnings) result.report.warnings.push_back(std::move(w));
        for (auto& w : pair.response.warnings) result.report.warnings.push_back(std::move(w));
        result.report.repairs.emplace_back(
            result.endpoints[i].method + " " + result.endpoints[i].path,
            std::make_pair(pair.request.report, pair.response.report));
        request_fragments.push_back(std::move(pair.request.body));
        response_fragments.push_back(std::move(pair.response.body));
    }

    SwaggerDoc draft = merge_specs(result.endpoints, request_fragments, response_fragments,
                                   DocInfo{config.title, config.version}, result.report.warnings);
    result.doc = rebuild_references(upgrade_to_304(draft));

    for (const auto& violation : validate(result.doc)) {
        result.report.warnings.push_back("validate: " + violation.location + ": " + violation.message);
    }

    int max_depth = 0;
    for (const auto& endpoint : result.endpoints) {
        max_depth = std::max(max_depth, static_cast<int>(endpoint.ordered_files.size()) - 1);
    }
    result.report.max_dependency_depth = max_depth;
    result.report.usage = gateway.usage_report();
    return result;
}

} // namespace oops
