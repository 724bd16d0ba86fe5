#include "mrlp/registry.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <filesystem>

#include "mrlp/error.hpp"
#include "mrlp/grid_io.hpp"

namespace mrlp {

namespace {

constexpr int kMinSignificantDigits = 15;

int significant_digits(const std::string& word) {
  std::string mantissa = word.substr(0, word.find_first_of("eE"));
  int digits = 0;
  bool leading = true;
  for (char c : mantissa) {
    if (!std::isdigit(static_cast<unsigned char>(c))) continue;
    if (leading && c == '0') continue;
    leading = false;
    ++digits;
  }
  return digits;
}

Mask read_mask(const KeyValueFile& kv, const std::string& name) {
  Mask m;
  m.first = kv.get_int(name + "_first");
  for (const auto& w : kv.get_words(name)) {
    // Exact zero taps need no digits; anything else must carry full precision.
    const double v = parse_double(w, kv.source() + ":" + std::to_string(kv.entry(name).line));
    if (v != 0.0 && significant_digits(w) < kMinSignificantDigits) {
      kv.fail_at(name, "coefficient '" + w + "' has fewer than " +
                           std::to_string(kMinSignificantDigits) + " significant digits");
    }
    m.taps.push_back(v);
  }
  if (m.taps.empty()) kv.fail_at(name, "empty mask");
  return m;
}

Support read_support(const KeyValueFile& kv, const std::string& key) {
  const auto v = kv.get_ints(key);
  if (v.size() != 2) kv.fail_at(key, "support needs two integers 'lo hi'");
  if (v[1] < v[0]) kv.fail_at(key, "support upper end below lower end");
  return {v[0], v[1]};
}

}  // namespace

std::string default_registry_dir() {
  if (const char* env = std::getenv("MRLP_REGISTRY"); env && *env) return env;
  return MRLP_REGISTRY_DIR;
}

FilterBank parse_bank(const KeyValueFile& kv) {
  FilterBank b;
  b.id = kv.get_string("id");
  b.primal = read_mask(kv, "primal");
  b.dual = read_mask(kv, "dual");
  b.primal_support = read_support(kv, "primal_support");
  b.dual_support = read_support(kv, "dual_support");
  b.smooth_dual = kv.get_bool("smooth_dual", false);
  return b;
}

FilterBank load_bank(const std::string& path) { return parse_bank(KeyValueFile::load(path)); }

std::vector<RegistryEntry> load_registry(const std::string& dir) {
  namespace fs = std::filesystem;
  std::error_code ec;
  if (!fs::is_directory(dir, ec)) fail(ErrorKind::IoError, "registry directory not found: " + dir);
  std::vector<std::string> paths;
  for (const auto& e : fs::directory_iterator(dir)) {
    if (e.is_regular_file() && e.path().extension() == ".bank") paths.push_back(e.path().string());
  }
  std::sort(paths.begin(), paths.end());
  std::vector<RegistryEntry> out;
  for (const auto& p : paths) out.push_back({p, load_bank(p)});
  return out;
}

FilterBank find_bank(const std::string& id, const std::string& dir) {
  const std::string where = dir.empty() ? default_registry_dir() : dir;
  for (auto& e : load_registry(where)) {
    if (e.bank.id == id) {
      e.bank.validate();
      return e.bank;
    }
  }
  fail(ErrorKind::ConfigError, "no filter bank '" + id + "' in " + where);
}

std::string format_bank(const FilterBank& b) {
  std::string s = "id = " + b.id + "\n";
  auto mask = [&s](const std::string& name, const Mask& m, Support sup) {
    s += name + "_first = " + std::to_string(m.first) + "\n" + name + " =";
    for (double t : m.taps) s += " " + format_double(t);
    s += "\n" + name + "_support = " + std::to_string(sup.lo) + " " + std::to_string(sup.hi) + "\n";
  };
  mask("primal", b.primal, b.primal_support);
  mask("dual", b.dual, b.dual_support);
  s += std::string("smooth_dual = ") + (b.smooth_dual ? "true" : "false") + "\n";
  return s;
}

}  // namespace mrlp
