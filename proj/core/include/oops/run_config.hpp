#pragma once

#include "oops/oas_model.hpp"
#include "oops/transcript.hpp"

#include <cstddef>
#include <filesystem>
#include <string>
#include <vector>

namespace oops {

std::size_t default_parallelism();

struct RunConfig {
    std::filesystem::path repo_root;
    std::string model_id = "gpt-5-mini";
    std::string base_url = "https://api.openai.com/v1";
    std::string api_key;
    GatewayMode mode = GatewayMode::live;
    std::filesystem::path transcript_path;
    std::filesystem::path output_path = "openapi.json";
    std::filesystem::path report_path;       // default: alongside output
    std::filesystem::path emit_entries_path; // empty -> disabled
    SerializeFormat format = SerializeFormat::json;
    std::string title = "Generated API";
    std::string version = "1.0.0";
    double price_in = 0.0;  // currency per input token
    double price_out = 0.0; // currency per output token
    std::size_t parallelism = default_parallelism();
    std::vector<std::string> excludes;

    // Throws ConfigError when the combination is unusable (replay without a
    // transcript, unreadable repository root, ...).
    void check(bool needs_repo = true) const;
};

// key=value lines, '#' comments; "exclude" may repeat. Unknown keys are an
// error so typos do not silently disappear.
void apply_config_file(RunConfig& config, const std::filesystem::path& path);

// OOPS_API_KEY / OOPS_BASE_URL.
void apply_environment(RunConfig& config);

} // namespace oops
