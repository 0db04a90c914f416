#include "oops/oas_model.hpp"

#include <yaml-cpp/yaml.h>

#include <algorithm>
#include <cctype>
#include <charconv>

namespace oops {
namespace {

bool looks_like_number(const std::string& s) {
    if (s.empty()) return false;
    std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size()) return false;
    bool digits = false, dot = false, exponent = false;
    for (; i < s.size(); ++i) {
        const char c = s[i];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            digits = true;
        } else if (c == '.' && !dot && !exponent) {
            dot = true;
        } else if ((c == 'e' || c == 'E') && digits && !exponent) {
            exponent = true;
            if (i + 1 < s.size() && (s[i + 1] == '-' || s[i + 1] == '+')) ++i;
            digits = false;
        } else {
            return false;
        }
    }
    return digits;
}

bool plain_scalar_is_ambiguous(const std::string& s) {
    if (s.empty()) return true;
    std::string lower = s;
    std::transform(lower.begin(), lower.end(), lower.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    static const char* kKeywords[] = {"true", "false", "yes", "no", "on", "off", "null", "~", "y", "n"};
    for (const char* kw : kKeywords) {
        if (lower == kw) return true;
    }
    if (looks_like_number(s)) return true;
    if (s.front() == ' ' || s.back() == ' ') return true;
    return s.find_first_of(":#{}[],&*?|>'\"%@`\n\t-") != std::string::npos;
}

void emit_yaml(YAML::Emitter& out, const Json& value) {
    switch (value.type()) {
        case Json::value_t::object: {
            if (value.empty()) {
                out << YAML::Flow << YAML::BeginMap << YAML::EndMap;
                return;
            }
            out << YAML::BeginMap;
            for (const auto& [key, item] : value.items()) {
                out << YAML::Key;
                if (plain_scalar_is_ambiguous(key)) out << YAML::DoubleQuoted;
                out << key << YAML::Value;
                emit_yaml(out, item);
            }
            out << YAML::EndMap;
            return;
        }
        case Json::value_t::array: {
            if (value.empty()) {
                out << YAML::Flow << YAML::BeginSeq << YAML::EndSeq;
                return;
            }
            out << YAML::BeginSeq;
            for (const auto& item : value) emit_yaml(out, item);
            out << YAML::EndSeq;
            return;
        }
        case Json::value_t::string: {
            const auto& s = value.get_ref<const std::string&>();
            if (plain_scalar_is_ambiguous(s)) out << YAML::DoubleQuoted;
            out << s;
            return;
        }
        case Json::value_t::boolean:
            out << value.get<bool>();
            return;
        case Json::value_t::number_integer:
            out << value.get<std::int64_t>();
            return;
        case Json::value_t::number_unsigned:
            out << value.get<std::uint64_t>();
            return;
        case Json::value_t::number_float:
            out << value.get<double>();
            return;
        default:
            out << YAML::Null;
            return;
    }
}

Json yaml_node_to_json(const YAML::Node& node) {
    switch (node.Type()) {
        case YAML::NodeType::Null:
            return nullptr;
        case YAML::NodeType::Scalar: {
            const std::string& s = node.Scalar();
            // A "!" tag marks a quoted scalar: always a string. Plain scalars
            // get the usual YAML type resolution.
            if (node.Tag() == "!") return s;
            if (s == "null" || s == "~" || s == "Null" || s == "NULL") return nullptr;
            if (s == "true" || s == "True" || s == "TRUE") return true;
            if (s == "false" || s == "False" || s == "FALSE") return false;
            if (looks_like_number(s)) {
                if (s.find_first_of(".eE") == std::string::npos) {
                    std::int64_t integer = 0;
                    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), integer);
                    if (ec == std::errc() && ptr == s.data() + s.size()) return integer;
                }
                try {
                    return std::stod(s);
                } catch (...) {
                    return s;
                }
            }
            return s;
        }
        case YAML::NodeType::Sequence: {
            Json out = Json::array();
            for (const auto& item : node) out.push_back(yaml_node_to_json(item));
            return out;
        }
        case YAML::NodeType::Map: {
            Json out = Json::object();
            for (const auto& item : node) {
                out[item.first.Scalar()] = yaml_node_to_json(item.second);
            }
            return out;
        }
        default:
            return nullptr;
    }
}

std::string dump_json(const Json& value) {
    return value.dump(2) + "\n";
}

Json sniff_and_parse(const std::string& text) {
    const auto first = text.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && (text[first] == '{' || text[first] == '[')) {
        Json value = Json::parse(text, nullptr, false);
        if (value.is_discarded()) throw OasParseError("input is not valid JSON");
        return value;
    }
    return json_from_yaml(text);
}

} // namespace

SerializeFormat parse_serialize_format(const std::string& text) {
    if (text == "json") return SerializeFormat::json;
    if (text == "yaml") return SerializeFormat::yaml;
    throw ConfigError("unknown format '" + text + "' (expected json or yaml)");
}

std::string json_to_yaml(const Json& value) {
    YAML::Emitter out;
    emit_yaml(out, value);
    return std::string(out.c_str()) + "\n";
}

Json json_from_yaml(const std::string& text) {
    try {
        return yaml_node_to_json(YAML::Load(text));
    } catch (const YAML::Exception& e) {
        throw OasParseError(std::string("input is not valid YAML: ") + e.what());
    }
}

std::string serialize(const OpenApiDoc& doc, SerializeFormat format) {
    const Json value = openapi_to_json(doc);
    return format == SerializeFormat::json ? dump_json(value) : json_to_yaml(value);
}

std::string serialize(const SwaggerDoc& doc, SerializeFormat format) {
    const Json value = swagger_to_json(doc);
    return format == SerializeFormat::json ? dump_json(value) : json_to_yaml(value);
}

OpenApiDoc parse_openapi(const std::string& text) {
    return openapi_from_json(sniff_and_parse(text));
}

SwaggerDoc parse_swagger(const std::string& text) {
    return swagger_from_json(sniff_and_parse(text));
}

} // namespace oops
