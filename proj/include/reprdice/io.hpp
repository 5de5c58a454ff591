#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace reprdice {

// Shortest decimal representation that round-trips exactly through
// parse_double. Used by every text format in the project.
std::string fmt_double(double x);

// Strict parse of a full token; throws std::invalid_argument on garbage.
double parse_double(std::string_view tok);
long parse_long(std::string_view tok);

std::vector<std::string> split(std::string_view line, char sep);

// CRC-32 (IEEE 802.3 polynomial), used by binary checkpoints.
std::uint32_t crc32(const void* data, std::size_t len, std::uint32_t seed = 0);

// FNV-1a, used to derive per-stage seeds and config hashes.
std::uint64_t fnv1a(std::string_view s);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

} // namespace reprdice
