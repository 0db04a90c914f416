#include "oops/digest.hpp"

#include <openssl/evp.h>

#include <array>
#include <stdexcept>

namespace oops {
namespace {

std::string evp_hex(const EVP_MD* md, std::string_view data) {
    std::array<unsigned char, EVP_MAX_MD_SIZE> raw{};
    unsigned int len = 0;
    if (EVP_Digest(data.data(), data.size(), raw.data(), &len, md, nullptr) != 1) {
        throw std::runtime_error("EVP_Digest failed");
    }
    static constexpr char hex[] = "0123456789abcdef";
    std::string out;
    out.reserve(2 * len);
    for (unsigned int i = 0; i < len; ++i) {
        out.push_back(hex[raw[i] >> 4]);
        out.push_back(hex[raw[i] & 0x0f]);
    }
    return out;
}

} // namespace

std::string md5_hex(std::string_view data) {
    return evp_hex(EVP_md5(), data);
}

std::string sha256_hex(std::string_view data) {
    return evp_hex(EVP_sha256(), data);
}

} // namespace oops
