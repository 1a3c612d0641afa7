#include "promptret/binio.hpp"

#include <cstring>

#include "promptret/errors.hpp"

namespace promptret {

namespace {

void require(bool ok, const std::string& path, const char* what) {
    if (!ok) throw ConfigError(path + ": " + what);
}

}  // namespace

std::ofstream open_output(const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("cannot write file: " + path);
    return out;
}

std::ifstream open_input(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw MissingArtifactError("cannot open file: " + path);
    return in;
}

void write_magic(std::ofstream& out, const char magic[8]) {
    out.write(magic, 8);
}

void expect_magic(std::ifstream& in, const char magic[8], const std::string& path) {
    char buf[8];
    in.read(buf, 8);
    require(in.good() && std::memcmp(buf, magic, 8) == 0, path, "bad file magic");
}

void write_u32(std::ofstream& out, std::uint32_t value) {
    char buf[4];
    for (int i = 0; i < 4; ++i) buf[i] = static_cast<char>((value >> (8 * i)) & 0xff);
    out.write(buf, 4);
}

std::uint32_t read_u32(std::ifstream& in, const std::string& path) {
    char buf[4];
    in.read(buf, 4);
    require(in.good(), path, "truncated file");
    std::uint32_t value = 0;
    for (int i = 0; i < 4; ++i) {
        value |= static_cast<std::uint32_t>(static_cast<unsigned char>(buf[i])) << (8 * i);
    }
    return value;
}

void write_json_header(std::ofstream& out, const nlohmann::json& header) {
    const std::string text = header.dump();
    write_u32(out, static_cast<std::uint32_t>(text.size()));
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
}

nlohmann::json read_json_header(std::ifstream& in, const std::string& path) {
    const std::uint32_t len = read_u32(in, path);
    std::string text(len, '\0');
    in.read(text.data(), static_cast<std::streamsize>(len));
    require(in.good(), path, "truncated header");
    try {
        return nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(path + ": malformed header: " + e.what());
    }
}

void write_string(std::ofstream& out, const std::string& value) {
    write_u32(out, static_cast<std::uint32_t>(value.size()));
    out.write(value.data(), static_cast<std::streamsize>(value.size()));
}

std::string read_string(std::ifstream& in, const std::string& path) {
    const std::uint32_t len = read_u32(in, path);
    std::string value(len, '\0');
    in.read(value.data(), static_cast<std::streamsize>(len));
    require(in.good(), path, "truncated string");
    return value;
}

void write_f32_array(std::ofstream& out, const std::vector<double>& values) {
    for (double v : values) {
        const float f = static_cast<float>(v);
        std::uint32_t bits;
        std::memcpy(&bits, &f, 4);
        write_u32(out, bits);
    }
}

std::vector<double> read_f32_array(std::ifstream& in, std::size_t count,
                                   const std::string& path) {
    std::vector<double> values(count);
    for (std::size_t i = 0; i < count; ++i) {
        const std::uint32_t bits = read_u32(in, path);
        float f;
        std::memcpy(&f, &bits, 4);
        values[i] = static_cast<double>(f);
    }
    return values;
}

}  // namespace promptret
