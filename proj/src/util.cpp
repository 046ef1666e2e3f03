#include <cstdio>
#include <fstream>
#include <sstream>

#include "slp/error.hpp"
#include "slp/hash.hpp"

namespace slp {

std::string Fnv1a::hex() const {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(state_));
  return buf;
}

std::string fnv1a_hex(std::string_view bytes) {
  Fnv1a h;
  h.update(bytes);
  return h.hex();
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string hash_file(const std::filesystem::path& path) { return fnv1a_hex(read_file(path)); }

}  // namespace slp
