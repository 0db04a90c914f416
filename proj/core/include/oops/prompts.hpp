#pragma once

#include "oops/chat_types.hpp"

#include <string>
#include <vector>

namespace oops {

// Everything an agent prompt needs beyond its own inputs. The role preamble
// is prepended as the system message of every downstream request.
struct PromptContext {
    std::string model_id;
    std::string role_preamble;
};

// JSON Schemas for the repository tools (list_directory, read_file,
// search_files) shared by all tool-calling agents.
std::vector<ToolSpec> repository_tools();

// Appends the model's last turn (with a synthetic acknowledgment for any
// tool calls it made) plus a new user message, so a finished conversation
// can be continued with a self-refine round.
void continue_conversation(ChatRequest& request,
                           const ChatResponse& response,
                           const std::string& user_message);

ChatRequest tech_analysis_request(const std::string& model_id);

ChatRequest file_filter_request(const PromptContext& ctx, const std::string& rel_path);
std::string file_filter_retry_message();

ChatRequest entry_detection_request(const PromptContext& ctx,
                                    const std::string& rel_path,
                                    const std::string& content);
std::string entry_detection_refine_message(const Json& found_entries);

struct ApiEntry; // endpoint_extraction.hpp

ChatRequest dependency_analysis_request(const PromptContext& ctx, const ApiEntry& entry);
std::string dependency_refine_message(const Json& files, const Json& invalid_files);

// One block per dependency file, in topological order.
std::string dependencies_block(const std::vector<std::pair<std::string, std::string>>& files);

ChatRequest endpoint_method_request(const PromptContext& ctx,
                                    const ApiEntry& entry,
                                    const std::string& dependencies);

enum class FragmentKind { request, response };

ChatRequest fragment_generation_request(const PromptContext& ctx,
                                        FragmentKind kind,
                                        const std::string& path,
                                        const std::string& method,
                                        const std::string& dependencies);
std::string fragment_refine_message(const std::string& error, const std::string& specification);

} // namespace oops
