#pragma once

#include "oops/json.hpp"

#include <optional>
#include <string>
#include <vector>

namespace oops {

// Per-fragment record of what the repair layer did.
struct RepairReport {
    std::vector<std::string> applied_rules; // backtick, comment, list_comma, dict_comma, quote
    int ref_refine_rounds = 0;              // self-refine re-prompts taken
    std::optional<std::string> residual_error;

    Json to_json() const;
};

struct FixResult {
    bool ok = false;
    Json value;          // meaningful iff ok
    RepairReport report; // residual_error set iff the final parse failed
};

// Rule-based syntax repair for model output, applied in this fixed order:
//   1. backtick   - strip enclosing backtick fences (and a language tag)
//   2. comment    - drop // and /* */ comments outside string literals
//   3. list_comma - drop trailing commas before ]
//   4. dict_comma - drop trailing commas before }
//   5. quote      - curly quotes and single-quoted strings become "..."
// then parse. A rule is reported only when it changed the text, so valid
// JSON passes through untouched with an empty rule list.
FixResult fix_syntax(const std::string& raw);

} // namespace oops
