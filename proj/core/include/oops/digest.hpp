#pragma once

#include <string>
#include <string_view>

namespace oops {

// Lowercase hex digests, backed by OpenSSL EVP.
std::string md5_hex(std::string_view data);
std::string sha256_hex(std::string_view data);

} // namespace oops
