#include "oops/ref_expand.hpp"

#include <algorithm>
#include <cctype>

namespace oops {
namespace {

constexpr int kExpansionDepthCap = 32;

std::string pointer_escape(const std::string& token) {
    std::string out;
    for (char c : token) {
        if (c == '~') {
            out += "~0";
        } else if (c == '/') {
            out += "~1";
        } else {
            out += c;
        }
    }
    return out;
}

std::string pointer_unescape(const std::string& token) {
    std::string out;
    for (std::size_t i = 0; i < token.size(); ++i) {
        if (token[i] == '~' && i + 1 < token.size()) {
            if (token[i + 1] == '0') {
                out += '~';
                ++i;
                continue;
            }
            if (token[i + 1] == '1') {
                out += '/';
                ++i;
                continue;
            }
        }
        out += token[i];
    }
    return out;
}

const Json* resolve_pointer(const Json& root, const std::string& reference) {
    if (reference.empty() || reference[0] != '#') return nullptr;
    const Json* node = &root;
    std::size_t pos = 1;
    while (pos < reference.size()) {
        if (reference[pos] != '/') return nullptr;
        ++pos;
        std::size_t next = reference.find('/', pos);
        if (next == std::string::npos) next = reference.size();
        const std::string token = pointer_unescape(reference.substr(pos, next - pos));
        pos = next;

        if (node->is_object()) {
            auto it = node->find(token);
            if (it == node->end()) return nullptr;
            node = &*it;
        } else if (node->is_array()) {
            if (token.empty() ||
                !std::all_of(token.begin(), token.end(),
                             [](unsigned char c) { return std::isdigit(c); })) {
                return nullptr;
            }
            const std::size_t index = std::stoul(token);
            if (index >= node->size()) return nullptr;
            node = &node->at(index);
        } else {
            return nullptr;
        }
    }
    return node;
}

struct RefFailure {
    RefIssue issue;
};

Json expand(const Json& node, const Json& root, int depth, const std::string& site) {
    if (node.is_object()) {
        if (node.contains("$ref") && node.at("$ref").is_string()) {
            const std::string target = node.at("$ref").get<std::string>();
            if (depth >= kExpansionDepthCap) {
                throw RefFailure{{RefIssue::Kind::cycle, site, target}};
            }
            const Json* resolved = resolve_pointer(root, target);
            if (!resolved) {
                throw RefFailure{{RefIssue::Kind::dangling, site, target}};
            }
            // JSON Reference semantics: the whole object is replaced, any
            // siblings of $ref are ignored.
            return expand(*resolved, root, depth + 1, site);
        }
        Json out = Json::object();
        for (const auto& [key, value] : node.items()) {
            out[key] = expand(value, root, depth, site + "/" + pointer_escape(key));
        }
        return out;
    }
    if (node.is_array()) {
        Json out = Json::array();
        for (std::size_t i = 0; i < node.size(); ++i) {
            out.push_back(expand(node.at(i), root, depth, site + "/" + std::to_string(i)));
        }
        return out;
    }
    return node;
}

} // namespace

std::string RefIssue::message() const {
    if (kind == Kind::cycle) {
        return "reference cycle while expanding " + target + " at " + (site.empty() ? "/" : site);
    }
    return "referenced a non-existent object: " + target + " at " + (site.empty() ? "/" : site);
}

ExpandResult expand_refs(const Json& value) {
    ExpandResult result;
    try {
        result.value = expand(value, value, 0, "");
    } catch (const RefFailure& failure) {
        result.issue = failure.issue;
    }
    return result;
}

} // namespace oops
