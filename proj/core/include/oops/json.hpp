#pragma once

#include <nlohmann/json.hpp>

#include <string>

namespace oops {

// Insertion-order-preserving JSON value. All documents and fragments in the
// pipeline use this type so that serialization is deterministic.
using Json = nlohmann::ordered_json;

// Key-sorted, whitespace-free serialization. Used wherever a stable byte
// representation is needed: request fingerprints and schema identity hashes.
inline std::string canonical_dump(const Json& value) {
    // nlohmann::json is backed by std::map, so converting re-sorts every
    // object level; dump() without indent emits no whitespace.
    return nlohmann::json(value).dump();
}

} // namespace oops
