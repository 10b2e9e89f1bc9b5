#include "splitgap/cache.hpp"

#include <unistd.h>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include <json.hpp>

namespace splitgap {

namespace fs = std::filesystem;

ResultCache::ResultCache(fs::path dir) : dir_(std::move(dir)) {
  fs::create_directories(dir_);
}

std::string ResultCache::digest_hex(const std::string& key) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : key) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  // fold in the length to separate extensions of a common prefix
  h ^= key.size();
  h *= 0x100000001b3ULL;
  std::ostringstream os;
  os << std::hex;
  os.width(16);
  os.fill('0');
  os << h;
  return os.str();
}

std::optional<std::string> ResultCache::lookup(const std::string& canonical_key) const {
  const fs::path file = dir_ / (digest_hex(canonical_key) + ".json");
  std::ifstream in(file, std::ios::binary);
  if (!in) return std::nullopt;
  std::stringstream buffer;
  buffer << in.rdbuf();
  nlohmann::json entry = nlohmann::json::parse(buffer.str(), nullptr, false);
  if (entry.is_discarded() || !entry.contains("key") || !entry.contains("payload")) {
    std::cerr << "warning: corrupt cache entry " << file << ", treating as miss\n";
    return std::nullopt;
  }
  if (entry["key"].get<std::string>() != canonical_key) return std::nullopt;
  return entry["payload"].get<std::string>();
}

void ResultCache::store(const std::string& canonical_key, const std::string& payload) const {
  nlohmann::json entry;
  entry["key"] = canonical_key;
  entry["payload"] = payload;
  const std::string body = entry.dump();

  const fs::path file = dir_ / (digest_hex(canonical_key) + ".json");
  std::random_device rd;
  const fs::path tmp =
      dir_ / (file.filename().string() + ".tmp." + std::to_string(rd()) + "." +
              std::to_string(static_cast<unsigned>(::getpid())));
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    out << body;
  }
  std::error_code ec;
  fs::rename(tmp, file, ec);
  if (ec) {
    fs::remove(tmp, ec);  // a concurrent writer won; their entry is equivalent
  }
}

}  // namespace splitgap
