#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace cartdec::embedded {

// Files under data/, compiled into the library. Paths are relative to data/
// (e.g. "catalog.json", "atlas/A6.json"). The first access checks every file
// against data/MANIFEST and throws DataCorruption on a mismatch.
const std::string& file(const std::string& path);
bool has(const std::string& path);
std::vector<std::string> names();

std::uint64_t fnv1a64(const std::string& bytes);

}  // namespace cartdec::embedded
