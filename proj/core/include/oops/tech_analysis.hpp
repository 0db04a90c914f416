#pragma once

#include <string>
#include <utility>
#include <vector>

namespace oops {

class LlmGateway;
class ToolHost;

struct TechProfile {
    std::string language;
    std::string framework;
    std::vector<std::pair<std::string, std::string>> evidence; // (rel_path, note)
};

// Tool-loop agent that names the repository's language and framework. Runs
// once per pipeline; an exhausted loop degrades to ("unknown", "unknown").
TechProfile analyze_technology(const ToolHost& host,
                               LlmGateway& gateway,
                               const std::string& model_id,
                               std::vector<std::string>& warnings);

// "You are an AI assistant specialized in analyzing web projects developed
// using {language} and the {framework} framework."
std::string role_preamble(const TechProfile& profile);

} // namespace oops
