#pragma once

#include <iosfwd>
#include <memory>
#include <string>

#include "mrlp/refinable.hpp"

namespace mrlp {

// HWTB1 layout (little-endian):
//   "HWTB1" | u32 id length | id bytes | u8 which | i32 depth | i64 support lo |
//   i64 support hi | u8 has derivatives | u64 length | f64 values[length] |
//   [f64 derivatives[length]] | u64 FNV-1a checksum of the arrays
void write_table(std::ostream& out, const DyadicTable& t);
/// Throws IoError on malformed input or checksum mismatch.
DyadicTable read_table(std::istream& in);

/// Shared, thread-safe store of cascaded tables keyed by bank content, role
/// and depth. With a cache directory set, tables are also persisted as HWTB1
/// files and rebuilt when missing or stale.
class TableCache {
 public:
  explicit TableCache(std::string directory = {});

  /// Process-wide instance; the directory comes from MRLP_CACHE_DIR.
  static TableCache& global();

  std::shared_ptr<const DyadicTable> get(const FilterBank& bank, Which which, int depth);

  const std::string& directory() const { return directory_; }
  std::string file_for(const FilterBank& bank, Which which, int depth) const;
  /// Number of tables rebuilt because the file was stale (corrupt or mismatched).
  int stale_rebuilds() const;

 private:
  struct Impl;
  std::string directory_;
  std::shared_ptr<Impl> impl_;
};

}  // namespace mrlp
