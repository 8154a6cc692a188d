#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "signbal/errors.hpp"

namespace signbal {

/// On-disk memo of enumeration streams.  A file holds a header (magic
/// "SBAL1", group tag, matrix size n, field descriptor, element count)
/// followed by the elements in enumeration order, one little-endian
/// 64-bit word per matrix row, each row packed base q (bit packed for
/// q = 2, low column first).
class EnumerationCache {
 public:
  EnumerationCache() = default;  // disabled
  explicit EnumerationCache(std::filesystem::path dir) : dir_(std::move(dir)) {}

  static const EnumerationCache& disabled();

  bool enabled() const { return !dir_.empty(); }
  const std::filesystem::path& dir() const { return dir_; }

  std::filesystem::path file_path(const std::string& group_tag, int n,
                                  const std::string& field_descriptor) const;

  /// nullopt when no cache file exists; CacheError when a file exists but
  /// its header or size does not match the request.
  std::optional<std::vector<uint64_t>> load(const std::string& group_tag, int n,
                                            const std::string& field_descriptor) const;

  /// rows.size() must be count * n.
  void store(const std::string& group_tag, int n,
             const std::string& field_descriptor, uint64_t count,
             const std::vector<uint64_t>& rows) const;

 private:
  std::filesystem::path dir_;
};

}  // namespace signbal
