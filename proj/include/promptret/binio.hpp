#pragma once

#include <cstdint>
#include <fstream>
#include <string>
#include <vector>

#include "json.hpp"

namespace promptret {

// Framing shared by the binary artifact files (BM25 index, encoder
// checkpoint, embedding index): an 8-byte magic, a u32 little-endian header
// length, the UTF-8 JSON header, then a format-specific payload. See
// docs/file_formats.md.

void write_magic(std::ofstream& out, const char magic[8]);
void expect_magic(std::ifstream& in, const char magic[8], const std::string& path);

void write_u32(std::ofstream& out, std::uint32_t value);
std::uint32_t read_u32(std::ifstream& in, const std::string& path);

void write_json_header(std::ofstream& out, const nlohmann::json& header);
nlohmann::json read_json_header(std::ifstream& in, const std::string& path);

void write_string(std::ofstream& out, const std::string& value);
std::string read_string(std::ifstream& in, const std::string& path);

void write_f32_array(std::ofstream& out, const std::vector<double>& values);
std::vector<double> read_f32_array(std::ifstream& in, std::size_t count,
                                   const std::string& path);

std::ofstream open_output(const std::string& path);
std::ifstream open_input(const std::string& path);

}  // namespace promptret
