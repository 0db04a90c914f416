#include "oops/json_repair.hpp"

#include <cctype>

namespace oops {
namespace {

// UTF-8 sequences for the smart quotes the quote rule normalizes.
const std::string kCurlyOpenD = "\xe2\x80\x9c";  // left double quotation mark
const std::string kCurlyCloseD = "\xe2\x80\x9d"; // right double quotation mark
const std::string kCurlyOpenS = "\xe2\x80\x98";  // left single quotation mark
const std::string kCurlyCloseS = "\xe2\x80\x99"; // right single quotation mark

bool starts_at(const std::string& text, std::size_t pos, const std::string& token) {
    return text.compare(pos, token.size(), token) == 0;
}

// Skips a complete string literal starting at `pos` (which must point at a
// recognized opening quote); returns the index one past the closing quote.
// Understands regular, single-quoted, and curly-quoted strings so the other
// rules never touch quoted content.
std::size_t skip_string(const std::string& text, std::size_t pos) {
    std::string closer;
    if (text[pos] == '"') {
        closer = "\"";
        ++pos;
    } else if (text[pos] == '\'') {
        closer = "'";
        ++pos;
    } else if (starts_at(text, pos, kCurlyOpenD)) {
        closer = kCurlyCloseD;
        pos += kCurlyOpenD.size();
    } else if (starts_at(text, pos, kCurlyOpenS)) {
        closer = kCurlyCloseS;
        pos += kCurlyOpenS.size();
    } else {
        return pos + 1;
    }
    while (pos < text.size()) {
        if (text[pos] == '\\' && pos + 1 < text.size()) {
            pos += 2;
            continue;
        }
        if (starts_at(text, pos, closer)) return pos + closer.size();
        ++pos;
    }
    return pos;
}

bool at_string_start(const std::string& text, std::size_t pos) {
    return text[pos] == '"' || text[pos] == '\'' || starts_at(text, pos, kCurlyOpenD) ||
           starts_at(text, pos, kCurlyOpenS);
}

std::string strip_backticks(const std::string& text, bool& applied) {
    std::size_t begin = text.find_first_not_of(" \t\r\n");
    if (begin == std::string::npos) return text;
    std::size_t end = text.find_last_not_of(" \t\r\n") + 1;
    if (text[begin] != '`' || text[end - 1] != '`') return text;

    std::size_t open = begin;
    while (open < end && text[open] == '`') ++open;
    std::size_t close = end;
    while (close > open && text[close - 1] == '`') --close;
    if (open >= close) return text;

    std::string inner = text.substr(open, close - open);
    // Fenced blocks may carry a language tag on the opening line.
    if (open - begin >= 3) {
        std::size_t tag_end = 0;
        while (tag_end < inner.size() &&
               (std::isalnum(static_cast<unsigned char>(inner[tag_end])) || inner[tag_end] == '_' ||
                inner[tag_end] == '-')) {
            ++tag_end;
        }
        std::size_t after = tag_end;
        while (after < inner.size() && (inner[after] == ' ' || inner[after] == '\r')) ++after;
        if (tag_end > 0 && after < inner.size() && inner[after] == '\n') {
            inner.erase(0, after + 1);
        }
    }
    applied = true;
    return inner;
}

std::string strip_comments(const std::string& text, bool& applied) {
    std::string out;
    out.reserve(text.size());
    std::size_t pos = 0;
    while (pos < text.size()) {
        if (at_string_start(text, pos)) {
            std::size_t next = skip_string(text, pos);
            out.append(text, pos, next - pos);
            pos = next;
            continue;
        }
        if (text[pos] == '/' && pos + 1 < text.size() && text[pos + 1] == '/') {
            applied = true;
            pos = text.find('\n', pos);
            if (pos == std::string::npos) break;
            continue; // keep the newline
        }
        if (text[pos] == '/' && pos + 1 < text.size() && text[pos + 1] == '*') {
            applied = true;
            std::size_t close = text.find("*/", pos + 2);
            pos = close == std::string::npos ? text.size() : close + 2;
            continue;
        }
        out.push_back(text[pos++]);
    }
    return out;
}

std::string strip_trailing_commas(const std::string& text, char closer, bool& applied) {
    std::string current = text;
    for (;;) {
        std::string out;
        out.reserve(current.size());
        bool changed = false;
        std::size_t pos = 0;
        while (pos < current.size()) {
            if (at_string_start(current, pos)) {
                std::size_t next = skip_string(current, pos);
                out.append(current, pos, next - pos);
                pos = next;
                continue;
            }
            if (current[pos] == ',') {
                std::size_t ahead = pos + 1;
                while (ahead < current.size() &&
                       std::isspace(static_cast<unsigned char>(current[ahead]))) {
                    ++ahead;
                }
                if (ahead < current.size() && current[ahead] == closer) {
                    changed = true;
                    ++pos; // drop the comma, keep the whitespace and closer
                    continue;
                }
            }
            out.push_back(current[pos++]);
        }
        if (!changed) return current;
        applied = true;
        current = std::move(out);
    }
}

std::string normalize_quotes(const std::string& text, bool& applied) {
    std::string out;
    out.reserve(text.size());
    std::size_t pos = 0;
    while (pos < text.size()) {
        if (text[pos] == '"') {
            // Regular strings pass through verbatim.
            std::size_t next = skip_string(text, pos);
            out.append(text, pos, next - pos);
            pos = next;
            continue;
        }
        const bool single = text[pos] == '\'' || starts_at(text, pos, kCurlyOpenS);
        const bool curly_double = starts_at(text, pos, kCurlyOpenD);
        if (!single && !curly_double) {
            out.push_back(text[pos++]);
            continue;
        }

        applied = true;
        const std::string closer = text[pos] == '\''  ? "'"
                                   : single           ? kCurlyCloseS
                                                      : kCurlyCloseD;
        pos += text[pos] == '\'' ? 1 : kCurlyOpenD.size();
        out.push_back('"');
        while (pos < text.size() && !starts_at(text, pos, closer)) {
            if (text[pos] == '\\' && pos + 1 < text.size()) {
                if (text[pos + 1] == '\'') {
                    out.push_back('\''); // \' needs no escape inside "..."
                } else {
                    out.push_back('\\');
                    out.push_back(text[pos + 1]);
                }
                pos += 2;
                continue;
            }
            if (text[pos] == '"') {
                out += "\\\"";
                ++pos;
                continue;
            }
            out.push_back(text[pos++]);
        }
        pos += pos < text.size() ? closer.size() : 0;
        out.push_back('"');
    }
    return out;
}

} // namespace

Json RepairReport::to_json() const {
    Json rules = Json::array();
    for (const auto& rule : applied_rules) rules.push_back(rule);
    Json out{{"applied_rules", std::move(rules)}, {"ref_refine_rounds", ref_refine_rounds}};
    if (residual_error) out["residual_error"] = *residual_error;
    return out;
}

FixResult fix_syntax(const std::string& raw) {
    FixResult result;
    std::string text = raw;

    struct Rule {
        const char* name;
        std::string (*apply)(const std::string&, bool&);
    };
    static const Rule rules[] = {
        {"backtick", strip_backticks},
        {"comment", strip_comments},
        {"list_comma",
         [](const std::string& t, bool& a) { return strip_trailing_commas(t, ']', a); }},
        {"dict_comma",
         [](const std::string& t, bool& a) { return strip_trailing_commas(t, '}', a); }},
        {"quote", normalize_quotes},
    };
    for (const auto& rule : rules) {
        bool applied = false;
        text = rule.apply(text, applied);
        if (applied) result.report.applied_rules.emplace_back(rule.name);
    }

    try {
        result.value = Json::parse(text);
        result.ok = true;
    } catch (const Json::parse_error& e) {
        result.report.residual_error = e.what();
    }
    return result;
}

} // namespace oops
