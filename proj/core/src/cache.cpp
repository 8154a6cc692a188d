#include "signbal/cache.hpp"

#include <fstream>

namespace signbal {

namespace {

constexpr char kMagic[5] = {'S', 'B', 'A', 'L', '1'};

void put_u32(std::ostream& os, uint32_t v) {
  char b[4];
  for (int i = 0; i < 4; ++i) b[i] = static_cast<char>((v >> (8 * i)) & 0xff);
  os.write(b, 4);
}

void put_u64(std::ostream& os, uint64_t v) {
  char b[8];
  for (int i = 0; i < 8; ++i) b[i] = static_cast<char>((v >> (8 * i)) & 0xff);
  os.write(b, 8);
}

uint32_t get_u32(std::istream& is) {
  unsigned char b[4];
  is.read(reinterpret_cast<char*>(b), 4);
  uint32_t v = 0;
  for (int i = 0; i < 4; ++i) v |= uint32_t(b[i]) << (8 * i);
  return v;
}

uint64_t get_u64(std::istream& is) {
  unsigned char b[8];
  is.read(reinterpret_cast<char*>(b), 8);
  uint64_t v = 0;
  for (int i = 0; i < 8; ++i) v |= uint64_t(b[i]) << (8 * i);
  return v;
}

std::string sanitize(std::string s) {
  for (char& c : s)
    if (c == '/' || c == '\\') c = '_';
  return s;
}

}  // namespace

const EnumerationCache& EnumerationCache::disabled() {
  static const EnumerationCache none;
  return none;
}

std::filesystem::path EnumerationCache::file_path(
    const std::string& group_tag, int n,
    const std::string& field_descriptor) const {
  return dir_ / (group_tag + "_n" + std::to_string(n) + "_" +
                 sanitize(field_descriptor) + ".sbal");
}

std::optional<std::vector<uint64_t>> EnumerationCache::load(
    const std::string& group_tag, int n,
    const std::string& field_descriptor) const {
  if (!enabled()) return std::nullopt;
  const auto path = file_path(group_tag, n, field_descriptor);
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;

  char magic[5];
  in.read(magic, 5);
  if (!in || !std::equal(magic, magic + 5, kMagic))
    throw CacheError("bad magic in cache file " + path.string());
  uint32_t tag_len = get_u32(in);
  std::string tag(tag_len, '\0');
  in.read(tag.data(), tag_len);
  uint32_t fn = get_u32(in);
  uint32_t desc_len = get_u32(in);
  std::string desc(desc_len, '\0');
  in.read(desc.data(), desc_len);
  uint64_t count = get_u64(in);
  if (!in) throw CacheError("truncated header in cache file " + path.string());
  if (tag != group_tag || fn != static_cast<uint32_t>(n) ||
      desc != field_descriptor)
    throw CacheError("cache file " + path.string() +
                     " does not match the requested stream");

  std::vector<uint64_t> rows(count * static_cast<uint64_t>(n));
  for (auto& r : rows) r = get_u64(in);
  if (!in) throw CacheError("truncated rows in cache file " + path.string());
  // must be exactly at EOF
  in.peek();
  if (!in.eof())
    throw CacheError("trailing bytes in cache file " + path.string());
  return rows;
}

void EnumerationCache::store(const std::string& group_tag, int n,
                             const std::string& field_descriptor,
                             uint64_t count,
                             const std::vector<uint64_t>& rows) const {
  if (!enabled()) return;
  if (rows.size() != count * static_cast<uint64_t>(n))
    throw CacheError("row count does not match element count");
  std::filesystem::create_directories(dir_);
  const auto path = file_path(group_tag, n, field_descriptor);
  const auto tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw CacheError("cannot write cache file " + path.string());
    out.write(kMagic, 5);
    put_u32(out, static_cast<uint32_t>(group_tag.size()));
    out.write(group_tag.data(), static_cast<std::streamsize>(group_tag.size()));
    put_u32(out, static_cast<uint32_t>(n));
    put_u32(out, static_cast<uint32_t>(field_descriptor.size()));
    out.write(field_descriptor.data(),
              static_cast<std::streamsize>(field_descriptor.size()));
    put_u64(out, count);
    for (uint64_t r : rows) put_u64(out, r);
    if (!out) throw CacheError("cannot write cache file " + path.string());
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace signbal
