#include "fracwave/manifest.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <vector>

#include "fracwave/errors.hpp"

namespace fracwave {

std::uint64_t fnv1a64(const void* data, std::size_t size) {
  const auto* bytes = static_cast<const unsigned char*>(data);
  std::uint64_t hash = 0xcbf29ce484222325ull;
  for (std::size_t i = 0; i < size; ++i) {
    hash ^= bytes[i];
    hash *= 0x100000001b3ull;
  }
  return hash;
}

std::uint64_t fnv1a64(const std::string& text) {
  return fnv1a64(text.data(), text.size());
}

namespace {

std::string read_bytes(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw PreconditionError("manifest: cannot open " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

std::string hex16(std::uint64_t value) {
  char buf[20];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(value));
  return buf;
}

}  // namespace

std::uint64_t checksum_file(const std::string& path) {
  const std::string bytes = read_bytes(path);
  return fnv1a64(bytes.data(), bytes.size());
}

void write_manifest(const std::string& dir,
                    std::vector<std::string> artifact_names) {
  std::sort(artifact_names.begin(), artifact_names.end());
  std::ostringstream body;
  for (const auto& name : artifact_names) {
    const std::string bytes = read_bytes(dir + "/" + name);
    body << "fnv1a64:" << hex16(fnv1a64(bytes.data(), bytes.size())) << ' '
         << bytes.size() << ' ' << name << '\n';
  }
  std::ofstream out(dir + "/manifest.txt", std::ios::binary);
  if (!out)
    throw PreconditionError("manifest: cannot write manifest in " + dir);
  out << body.str();
}

std::vector<std::string> verify_manifest(const std::string& dir) {
  std::vector<std::string> problems;
  std::ifstream in(dir + "/manifest.txt");
  if (!in) {
    problems.push_back("manifest.txt missing in " + dir);
    return problems;
  }
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream parts(line);
    std::string checksum;
    std::size_t size = 0;
    std::string name;
    if (!(parts >> checksum >> size >> name)) {
      problems.push_back("malformed manifest line: " + line);
      continue;
    }
    std::string bytes;
    try {
      bytes = read_bytes(dir + "/" + name);
    } catch (const std::exception&) {
      problems.push_back(name + ": file missing");
      continue;
    }
    if (bytes.size() != size)
      problems.push_back(name + ": size mismatch");
    const std::string recomputed =
        "fnv1a64:" + hex16(fnv1a64(bytes.data(), bytes.size()));
    if (recomputed != checksum)
      problems.push_back(name + ": checksum mismatch");
  }
  return problems;
}

}  // namespace fracwave
