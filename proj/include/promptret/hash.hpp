#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace promptret {

// FNV-1a, 64 bit. Used for artifact fingerprints and seed derivation, where
// we need stability across runs and platforms, not cryptographic strength.
inline std::uint64_t fnv1a64(std::string_view data,
                             std::uint64_t state = 0xcbf29ce484222325ull) {
    for (unsigned char c : data) {
        state ^= c;
        state *= 0x100000001b3ull;
    }
    return state;
}

std::string to_hex(std::uint64_t value);

// Fingerprint of a file's full contents ("fnv1a64:<hex>").
// Throws MissingArtifactError when the file does not exist.
std::string file_fingerprint(const std::string& path);

std::string bytes_fingerprint(std::string_view data);

// Deterministic per-item seed derived from a run seed and a string tag.
inline std::uint64_t derive_seed(std::uint64_t seed, std::string_view tag) {
    char bytes[8];
    for (int i = 0; i < 8; ++i) bytes[i] = static_cast<char>((seed >> (8 * i)) & 0xff);
    return fnv1a64(tag, fnv1a64(std::string_view(bytes, 8)));
}

}  // namespace promptret
