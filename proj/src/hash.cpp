#include "promptret/hash.hpp"

#include <fstream>
#include <sstream>

#include "promptret/errors.hpp"

namespace promptret {

std::string to_hex(std::uint64_t value) {
    static const char* digits = "0123456789abcdef";
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i) {
        out[i] = digits[value & 0xf];
        value >>= 4;
    }
    return out;
}

std::string file_fingerprint(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw MissingArtifactError("cannot open file for fingerprinting: " + path);
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return bytes_fingerprint(buf.str());
}

std::string bytes_fingerprint(std::string_view data) {
    return "fnv1a64:" + to_hex(fnv1a64(data));
}

}  // namespace promptret
