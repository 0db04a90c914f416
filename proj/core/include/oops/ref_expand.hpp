#pragma once

#include "oops/json.hpp"

#include <optional>
#include <string>

namespace oops {

// Why an expansion failed: a dangling target, or a reference chain deeper
// than the cycle cap (self-referential schemas).
struct RefIssue {
    enum class Kind { dangling, cycle };
    Kind kind = Kind::dangling;
    std::string site;   // JSON pointer of the $ref occurrence
    std::string target; // the reference text, e.g. "#/nil"

    std::string message() const;
};

struct ExpandResult {
    Json value;
    std::optional<RefIssue> issue; // set -> expansion failed, value unspecified
};

// Replaces every internal "$ref" by its target's value, resolved against the
// fragment root. Expansion recurses into substituted content with a depth
// cap of 32, after which the chain is reported as a cycle.
ExpandResult expand_refs(const Json& value);

} // namespace oops
