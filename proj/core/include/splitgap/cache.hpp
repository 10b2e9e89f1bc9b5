#pragma once

#include <filesystem>
#include <optional>
#include <string>

namespace splitgap {

/// Content-addressed on-disk result cache.
///
/// Entries are keyed by the canonical JSON of all inputs (params + solver
/// config + command). The file name is a 64-bit FNV-1a digest of the key;
/// the full key is stored inside the entry and verified on lookup, so digest
/// collisions and corrupt files degrade to misses. Writes go through a
/// temporary file plus atomic rename, which makes concurrent same-key writers
/// idempotent and distinct-key writers independent.
class ResultCache {
 public:
  explicit ResultCache(std::filesystem::path dir);

  /// Payload stored under this key, byte-identical to what store() received,
  /// or nullopt on miss/corruption (corruption emits a warning on stderr).
  std::optional<std::string> lookup(const std::string& canonical_key) const;

  void store(const std::string& canonical_key, const std::string& payload) const;

  static std::string digest_hex(const std::string& key);

  const std::filesystem::path& directory() const { return dir_; }

 private:
  std::filesystem::path dir_;
};

}  // namespace splitgap
