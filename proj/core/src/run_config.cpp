#include "oops/run_config.hpp"

#include "oops/errors.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <thread>

namespace oops {

std::size_t default_parallelism() {
    const unsigned hw = std::thread::hardware_concurrency();
    // Cap concurrent LLM calls at 8.
    return std::min<std::size_t>(hw == 0 ? 1 : hw, 8);
}

void RunConfig::check(bool needs_repo) const {
    if (needs_repo) {
        std::error_code ec;
        if (!std::filesystem::is_directory(repo_root, ec)) {
            throw ConfigError("repository root is not a readable directory: " + repo_root.string());
        }
    }
    if (mode == GatewayMode::replay) {
        std::error_code ec;
        if (transcript_path.empty() || !std::filesystem::is_regular_file(transcript_path, ec)) {
            throw ConfigError("replay mode requires an existing transcript file (--transcript)");
        }
    }
    if (mode == GatewayMode::record && transcript_path.empty()) {
        throw ConfigError("record mode requires a transcript path (--transcript)");
    }
    if (parallelism == 0) throw ConfigError("parallelism must be at least 1");
}

void apply_config_file(RunConfig& config, const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path.string());

    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos) continue;
        auto last = line.find_last_not_of(" \t\r");
        line = line.substr(first, last - first + 1);

        auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw ConfigError(path.string() + ":" + std::to_string(line_no) +
                              ": expected key=value");
        }
        auto trim = [](std::string s) {
            auto b = s.find_first_not_of(" \t");
            if (b == std::string::npos) return std::string();
            auto e = s.find_last_not_of(" \t");
            return s.substr(b, e - b + 1);
        };
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));

        try {
            if (key == "model_id") {
                config.model_id = value;
            } else if (key == "base_url") {
                config.base_url = value;
            } else if (key == "mode") {
                config.mode = parse_gateway_mode(value);
            } else if (key == "transcript") {
                config.transcript_path = value;
            } else if (key == "output") {
                config.output_path = value;
            } else if (key == "format") {
                config.format = parse_serialize_format(value);
            } else if (key == "title") {
                config.title = value;
            } else if (key == "version") {
                config.version = value;
            } else if (key == "price_in") {
                config.price_in = std::stod(value);
            } else if (key == "price_out") {
                config.price_out = std::stod(value);
            } else if (key == "parallelism") {
                config.parallelism = static_cast<std::size_t>(std::stoul(value));
            } else if (key == "exclude") {
                config.excludes.push_back(value);
            } else {
                throw ConfigError(path.string() + ":" + std::to_string(line_no) +
                                  ": unknown key '" + key + "'");
            }
        } catch (const std::invalid_argument&) {
            throw ConfigError(path.string() + ":" + std::to_string(line_no) +
                              ": invalid value for '" + key + "'");
        }
    }
}

void apply_environment(RunConfig& config) {
    if (const char* key = std::getenv("OOPS_API_KEY")) config.api_key = key;
    if (const char* url = std::getenv("OOPS_BASE_URL")) {
        if (*url) config.base_url = url;
    }
}

} // namespace oops
