#ifndef KINEX_IO_UTIL_HPP
#define KINEX_IO_UTIL_HPP

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>

namespace kinex {

// Shortest decimal string that round-trips to the same double.
std::string format_double(double v);

// Strict double parse of the complete token; throws naming the token.
double parse_double(std::string_view token);

// FNV-1a over the raw bytes, as a 16-digit hex string. Used for the
// output manifests; the algorithm is named there so files can be checked
// independently.
std::uint64_t fnv1a64(std::string_view bytes);
std::string fnv1a64_hex(std::string_view bytes);

std::string read_file(const std::filesystem::path& path);

// Binary write (LF endings preserved); creates parent directories.
void write_file(const std::filesystem::path& path, std::string_view content);

}  // namespace kinex

#endif  // KINEX_IO_UTIL_HPP
