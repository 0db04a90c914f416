#include "oops/tech_analysis.hpp"

#include "oops/errors.hpp"
#include "oops/gateway.hpp"
#include "oops/prompts.hpp"
#include "oops/tool_host.hpp"

namespace oops {

TechProfile analyze_technology(const ToolHost& host,
                               LlmGateway& gateway,
                               const std::string& model_id,
                               std::vector<std::string>& warnings) {
    ChatRequest request = tech_analysis_request(model_id);
    ChatResponse response;
    try {
        response = gateway.run_tool_loop(request, host, gateway.default_max_rounds(), "tech_analysis");
    } catch (const ToolLoopExhausted&) {
        warnings.push_back("tech_analysis: agent exhausted its tool rounds; proceeding with unknown technology");
        return TechProfile{"unknown", "unknown", {}};
    }

    auto args = output_arguments(response);
    if (!args || !args->is_object()) {
        warnings.push_back("tech_analysis: agent produced no structured result; proceeding with unknown technology");
        return TechProfile{"unknown", "unknown", {}};
    }

    TechProfile profile;
    profile.language = args->value("language", "");
    profile.framework = args->value("framework", "");
    if (profile.language.empty()) profile.language = "unknown";
    if (profile.framework.empty()) profile.framework = "unknown";
    if (args->contains("evidence") && args->at("evidence").is_array()) {
        for (const auto& item : args->at("evidence")) {
            if (!item.is_object()) continue;
            std::string path = item.value("path", "");
            // Evidence may cite only existing files; anything else is dropped.
            if (path.empty() || !host.exists(path)) continue;
            profile.evidence.emplace_back(path, item.value("note", ""));
        }
    }
    return profile;
}

std::string role_preamble(const TechProfile& profile) {
    return "You are an AI assistant specialized in analyzing web projects developed using " +
           profile.language + " and the " + profile.framework + " framework.";
}

} // namespace oops
