#include "cartdec/embedded.hpp"

#include <cstdint>
#include <map>
#include <mutex>
#include <sstream>

#include "cartdec/errors.hpp"

namespace cartdec::embedded {
namespace detail {
const std::map<std::string, std::string>& raw_files();
}

namespace {

void verify_once() {
  static std::once_flag flag;
  std::call_once(flag, [] {
    const auto& files = detail::raw_files();
    auto it = files.find("MANIFEST");
    if (it == files.end()) throw DataCorruption("embedded data has no MANIFEST");
    std::istringstream in(it->second);
    std::string hash, path;
    std::size_t listed = 0;
    while (in >> hash >> path) {
      auto f = files.find(path);
      if (f == files.end()) throw DataCorruption("MANIFEST lists missing file " + path);
      std::ostringstream hex;
      hex << std::hex;
      hex.width(16);
      hex.fill('0');
      hex << fnv1a64(f->second);
      if (hex.str() != hash) throw DataCorruption("checksum mismatch for " + path);
      ++listed;
    }
    if (listed + 1 != files.size()) throw DataCorruption("MANIFEST does not cover every data file");
  });
}

}  // namespace

std::uint64_t fnv1a64(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

const std::string& file(const std::string& path) {
  verify_once();
  const auto& files = detail::raw_files();
  auto it = files.find(path);
  if (it == files.end()) throw InputError("no embedded data file '" + path + "'");
  return it->second;
}

bool has(const std::string& path) {
  verify_once();
  return detail::raw_files().count(path) > 0;
}

std::vector<std::string> names() {
  verify_once();
  std::vector<std::string> out;
  for (const auto& [k, v] : detail::raw_files())
    if (k != "MANIFEST") out.push_back(k);
  return out;
}

}  // namespace cartdec::embedded
