#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace fracwave {

// 64-bit FNV-1a over a byte range.
std::uint64_t fnv1a64(const void* data, std::size_t size);
std::uint64_t fnv1a64(const std::string& text);

// Checksum of a file's full contents.
std::uint64_t checksum_file(const std::string& path);

// Writes <dir>/manifest.txt with one line per artifact,
//   fnv1a64:<16 hex digits> <size in bytes> <name>
// sorted by name so the manifest itself is reproducible.
void write_manifest(const std::string& dir,
                    std::vector<std::string> artifact_names);

// Recomputes every entry of <dir>/manifest.txt; returns human-readable
// mismatch descriptions (empty when everything matches).
std::vector<std::string> verify_manifest(const std::string& dir);

}  // namespace fracwave
