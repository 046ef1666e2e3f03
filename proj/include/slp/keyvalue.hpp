#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace slp {

/// Ordered `key=value` lines, as used by reports, model metadata and config files.
using KeyValues = std::vector<std::pair<std::string, std::string>>;

void write_key_values(const KeyValues& kv, const std::filesystem::path& path);
/// Blank lines and lines starting with '#' are skipped.
std::map<std::string, std::string> read_key_values(const std::filesystem::path& path);

const std::string& require_key(const std::map<std::string, std::string>& kv, const std::string& key);

}  // namespace slp
