#include "oops/prompts.hpp"

#include "oops/endpoint_extraction.hpp"

namespace oops {
namespace {

Json string_property(const char* description) {
    return Json{{"type", "string"}, {"description", description}};
}

const char* kOutputInstruction = "Use the output tool to provide your final result.";

} // namespace

std::vector<ToolSpec> repository_tools() {
    std::vector<ToolSpec> tools;
    tools.push_back(ToolSpec{
        "list_directory",
        "List the entries of a directory inside the project.",
        Json{{"type", "object"},
             {"properties", Json{{"path", string_property("Directory path relative to the project root; use \".\" for the root.")}}},
             {"required", Json::array({"path"})}},
    });
    tools.push_back(ToolSpec{
        "read_file",
        "Read the content of a file inside the project.",
        Json{{"type", "object"},
             {"properties", Json{{"path", string_property("File path relative to the project root.")}}},
             {"required", Json::array({"path"})}},
    });
    tools.push_back(ToolSpec{
        "search_files",
        "Search all project files for a substring; returns the matching file paths.",
        Json{{"type", "object"},
             {"properties", Json{{"pattern", string_property("Substring to search for.")}}},
             {"required", Json::array({"pattern"})}},
    });
    return tools;
}

void continue_conversation(ChatRequest& request,
                           const ChatResponse& response,
                           const std::string& user_message) {
    request.messages.push_back(ChatMessage::assistant(response.content, response.tool_calls));
    for (const auto& call : response.tool_calls) {
        request.messages.push_back(ChatMessage::tool_result(call.id, "ok"));
    }
    request.messages.push_back(ChatMessage::user(user_message));
}

ChatRequest tech_analysis_request(const std::string& model_id) {
    ChatRequest request;
    request.model_id = model_id;
    request.system_preamble = "You are an AI assistant specialized in analyzing web projects.";
    request.messages.push_back(ChatMessage::user(
        "Identify the programming language and the development framework used by the web project "
        "rooted at the current directory. Explore the project using the available tools: start by "
        "listing the root directory, then read or search files as needed. If the project mixes "
        "several technologies, report the dominant server-side pair.\n" +
        std::string(kOutputInstruction)));
    request.tools = repository_tools();
    request.output_schema = Json{
        {"type", "object"},
        {"properties",
         Json{{"language", string_property("The programming language of the server-side code.")},
              {"framework", string_property("The web development framework in use.")},
              {"evidence",
               Json{{"type", "array"},
                    {"items", Json{{"type", "object"},
                                   {"properties", Json{{"path", string_property("A file supporting the conclusion.")},
                                                       {"note", string_property("What the file shows.")}}},
                                   {"required", Json::array({"path", "note"})}}}}}}},
        {"required", Json::array({"language", "framework"})}};
    return request;
}

ChatRequest file_filter_request(const PromptContext& ctx, const std::string& rel_path) {
    ChatRequest request;
    request.model_id = ctx.model_id;
    request.system_preamble = ctx.role_preamble;
    request.messages.push_back(ChatMessage::user(
        "You need to analyze whether file " + rel_path +
        " might contain definitions of REST API endpoints, rather than tests, configuration, "
        "documentation, build scripts, static assets, or other unrelated code. Judge from the "
        "file path alone.\n"
        "Use the output tool to output your result (\"true\" or \"false\"), along with the "
        "reasoning behind your judgment."));
    request.output_schema = Json{
        {"type", "object"},
        {"properties", Json{{"result", Json{{"type", "boolean"}}},
                            {"reasoning", string_property("Why the file may or may not define endpoints.")}}},
        {"required", Json::array({"result"})}};
    return request;
}

std::string file_filter_retry_message() {
    return "Your previous answer was not structurally valid. " + std::string(kOutputInstruction) +
           " Provide the fields result (boolean) and reasoning (string).";
}

ChatRequest entry_detection_request(const PromptContext& ctx,
                                    const std::string& rel_path,
                                    const std::string& content) {
    ChatRequest request;
    request.model_id = ctx.model_id;
    request.system_preamble = ctx.role_preamble;
    request.messages.push_back(ChatMessage::user(
        "You need to extract API entries from file " + rel_path + ", its content is:\n```\n" + content +
        "\n```\n"
        "The definition of an API entry is a triple (path, handler, tag): path is the partial or "
        "complete request path bound by the routing mechanism (it may be an empty string); handler "
        "is the function, class, or object that processes or dispatches requests matching the path; "
        "tag is LOCAL when the handler is implemented in this file and REF when it is imported from "
        "another file. Express path parameters in the /{param} form.\n"
        "Think step by step, and use the output tool to provide your thought process, along with a "
        "list containing every API entry you found, each as an object with fields path, handler, "
        "and tag."));
    request.output_schema = Json{
        {"type", "object"},
        {"properties",
         Json{{"thoughts", string_property("Step-by-step reasoning.")},
              {"entries",
               Json{{"type", "array"},
                    {"items",
                     Json{{"type", "object"},
                          {"properties", Json{{"path", Json{{"type", "string"}}},
                                              {"handler", Json{{"type", "string"}}},
                                              {"tag", Json{{"type", "string"}, {"enum", Json::array({"LOCAL", "REF"})}}}}},
                          {"required", Json::array({"path", "handler", "tag"})}}}}}}},
        {"required", Json::array({"entries"})}};
    return request;
}

std::string entry_detection_refine_message(const Json& found_entries) {
    return "These are the API entries you've found " + found_entries.dump() +
           ". Continue searching for others. Output an empty list if no additional API entries "
           "exist in this file.";
}

ChatRequest dependency_analysis_request(const PromptContext& ctx, const ApiEntry& entry) {
    ChatRequest request;
    request.model_id = ctx.model_id;
    request.system_preamble = ctx.role_preamble;
    request.messages.push_back(ChatMessage::user(
        "In file " + entry.file + ", I found that `" + entry.handler +
        "` is imported to process HTTP requests to path `" + entry.path +
        "`. Your task is to find which files implement `" + entry.handler +
        "`, using the available tools to explore the project.\n"
        "Use the output tool to provide your reasoning and a list of the files you found, with "
        "each item presented as a file path relative to the project root directory."));
    request.tools = repository_tools();
    request.output_schema = Json{
        {"type", "object"},
        {"properties", Json{{"reasoning", string_property("How the files were located.")},
                            {"files", Json{{"type", "array"}, {"items", Json{{"type", "string"}}}}}}},
        {"required", Json::array({"files"})}};
    return request;
}

std::string dependency_refine_message(const Json& files, const Json& invalid_files) {
    return "These are the file paths you've found " + files.dump() +
           ". Some of them are not relative to the project root directory: " + invalid_files.dump() +
           ". Try to fix them and output the corrected list of files.";
}

std::string dependencies_block(const std::vector<std::pair<std::string, std::string>>& files) {
    std::string out;
    for (const auto& [path, content] : files) {
        out += "### File: " + path + "\n```\n" + content + "\n```\n";
    }
    return out;
}

ChatRequest endpoint_method_request(const PromptContext& ctx,
                                    const ApiEntry& entry,
                                    const std::string& dependencies) {
    ChatRequest request;
    request.model_id = ctx.model_id;
    request.system_preamble = ctx.role_preamble;
    request.messages.push_back(ChatMessage::user(
        "In file " + entry.file + ", I found that `" + entry.handler +
        "` is imported to process HTTP requests to path `" + entry.path +
        "`, here are the relevant files I found:\n" + dependencies +
        "You need to determine the full path and all acceptable HTTP methods of this API entry. "
        "Express path parameters in the /{param} form. For each HTTP method, output whether it is "
        "acceptable; if the route accepts every method or does not restrict the method, set all to "
        "true instead of marking each one.\n"
        "Think step by step, and use the output tool to provide your thought process, along with "
        "an object containing the full path and one boolean per HTTP method."));
    Json method_props = Json::object();
    for (const char* m : {"get", "post", "put", "delete", "patch", "head", "options", "all"}) {
        method_props[m] = Json{{"type", "boolean"}};
    }
    request.output_schema = Json{
        {"type", "object"},
        {"properties", Json{{"thoughts", string_property("Step-by-step reasoning.")},
                            {"path", string_property("The complete request path.")},
                            {"methods", Json{{"type", "object"}, {"properties", method_props}}}}},
        {"required", Json::array({"path", "methods"})}};
    return request;
}

ChatRequest fragment_generation_request(const PromptContext& ctx,
                                        FragmentKind kind,
                                        const std::string& path,
                                        const std::string& method,
                                        const std::string& dependencies) {
    ChatRequest request;
    request.model_id = ctx.model_id;
    request.system_preamble = ctx.role_preamble;
    const std::string target =
        kind == FragmentKind::request
            ? "the request specification of this endpoint method as a Swagger 2.0 Parameter object "
              "list (a JSON array). Describe the request body, if any, with a single parameter "
              "whose in is \"body\" and whose schema describes the payload. Do not output a "
              "requestBody object."
            : "the response specification of this endpoint method as a Swagger 2.0 Responses "
              "object (a JSON object keyed by status code). Give each response a description and, "
              "when it has a body, a schema. Do not output a content object.";
    request.messages.push_back(ChatMessage::user(
        "I'm focusing on path `" + path + "` and method " + method +
        ", here are the relevant files I found:\n" + dependencies + "Your task is to generate " +
        target +
        "\nYou need to output in Swagger 2.0 JSON format, do not include fields that are not "
        "mentioned above, do not add any additional explanations, and output only the JSON. You "
        "may read further project files with the available tools first."));
    request.tools = repository_tools();
    return request;
}

std::string fragment_refine_message(const std::string& error, const std::string& specification) {
    return "This is the specification you generated, its error is " + error +
           ", try to find the missing reference content and correct it: " + specification;
}

} // namespace oops
