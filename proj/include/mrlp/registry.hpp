#pragma once

#include <string>
#include <vector>

#include "mrlp/kvfile.hpp"
#include "mrlp/refinable.hpp"

namespace mrlp {

/// Directory of the shipped `*.bank` files (MRLP_REGISTRY overrides).
std::string default_registry_dir();

/// Parses one bank. Structural problems are ParseErrors with file:line;
/// numeric invariants are left to FilterBank::validate so callers can report
/// them per bank.
FilterBank parse_bank(const KeyValueFile& kv);
FilterBank load_bank(const std::string& path);

struct RegistryEntry {
  std::string path;
  FilterBank bank;
};

/// All `*.bank` files in `dir`, sorted by file name.
std::vector<RegistryEntry> load_registry(const std::string& dir);

/// Bank by id from `dir` (default registry when empty). Validated.
FilterBank find_bank(const std::string& id, const std::string& dir = {});

/// Writes a bank in the registry format.
std::string format_bank(const FilterBank& bank);

}  // namespace mrlp
