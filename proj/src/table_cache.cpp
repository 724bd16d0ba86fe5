#include "mrlp/table_cache.hpp"

#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <mutex>
#include <tuple>

#include "mrlp/error.hpp"

namespace mrlp {

namespace {

constexpr char kMagic[5] = {'H', 'W', 'T', 'B', '1'};

template <class T>
void put(std::ostream& out, T v) {
  out.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <class T>
T get(std::istream& in) {
  T v{};
  in.read(reinterpret_cast<char*>(&v), sizeof(T));
  if (!in) fail(ErrorKind::IoError, "truncated table file");
  return v;
}

std::vector<double> get_array(std::istream& in, std::uint64_t n) {
  std::vector<double> v(n);
  in.read(reinterpret_cast<char*>(v.data()), static_cast<std::streamsize>(n * sizeof(double)));
  if (!in) fail(ErrorKind::IoError, "truncated table payload");
  return v;
}

}  // namespace

void write_table(std::ostream& out, const DyadicTable& t) {
  out.write(kMagic, sizeof(kMagic));
  put<std::uint32_t>(out, static_cast<std::uint32_t>(t.filter_id().size()));
  out.write(t.filter_id().data(), static_cast<std::streamsize>(t.filter_id().size()));
  put<std::uint8_t>(out, t.which() == Which::primal ? 0 : 1);
  put<std::int32_t>(out, t.depth());
  put<std::int64_t>(out, t.support().lo);
  put<std::int64_t>(out, t.support().hi);
  put<std::uint8_t>(out, t.derivatives() ? 1 : 0);
  put<std::uint64_t>(out, t.values().size());
  out.write(reinterpret_cast<const char*>(t.values().data()),
            static_cast<std::streamsize>(t.values().size() * sizeof(double)));
  if (t.derivatives()) {
    out.write(reinterpret_cast<const char*>(t.derivatives()->data()),
              static_cast<std::streamsize>(t.derivatives()->size() * sizeof(double)));
  }
  put<std::uint64_t>(out, t.checksum());
  if (!out) fail(ErrorKind::IoError, "failed writing table");
}

DyadicTable read_table(std::istream& in) {
  char magic[5];
  in.read(magic, sizeof(magic));
  if (!in || std::memcmp(magic, kMagic, sizeof(kMagic)) != 0) fail(ErrorKind::IoError, "not an HWTB1 table");
  const auto id_len = get<std::uint32_t>(in);
  if (id_len > 4096) fail(ErrorKind::IoError, "implausible filter id length");
  std::string id(id_len, '\0');
  in.read(id.data(), id_len);
  const Which which = get<std::uint8_t>(in) == 0 ? Which::primal : Which::dual;
  const int depth = get<std::int32_t>(in);
  Support s;
  s.lo = get<std::int64_t>(in);
  s.hi = get<std::int64_t>(in);
  const bool has_d = get<std::uint8_t>(in) != 0;
  const auto n = get<std::uint64_t>(in);
  if (depth < 0 || depth > kMaxCascadeDepth || s.hi < s.lo ||
      n != static_cast<std::uint64_t>((s.hi - s.lo) << depth) + 1) {
    fail(ErrorKind::IoError, "inconsistent table header");
  }
  std::vector<double> values = get_array(in, n);
  std::optional<std::vector<double>> derivs;
  if (has_d) derivs = get_array(in, n);
  const auto stored = get<std::uint64_t>(in);
  if (stored != DyadicTable::compute_checksum(values, derivs)) {
    fail(ErrorKind::IoError, "table checksum mismatch");
  }
  return DyadicTable(std::move(id), which, depth, s, std::move(values), std::move(derivs));
}

struct TableCache::Impl {
  std::mutex mu;
  std::map<std::tuple<std::uint64_t, int, int>, std::shared_ptr<const DyadicTable>> tables;
  int stale = 0;
};

TableCache::TableCache(std::string directory)
    : directory_(std::move(directory)), impl_(std::make_shared<Impl>()) {}

TableCache& TableCache::global() {
  static TableCache cache([] {
    const char* env = std::getenv("MRLP_CACHE_DIR");
    return std::string(env ? env : "");
  }());
  return cache;
}

std::string TableCache::file_for(const FilterBank& bank, Which which, int depth) const {
  char name[128];
  std::snprintf(name, sizeof(name), "%s-%016llx-%s-L%d.hwtb", bank.id.c_str(),
                static_cast<unsigned long long>(bank.content_hash()), to_string(which), depth);
  return (std::filesystem::path(directory_) / name).string();
}

int TableCache::stale_rebuilds() const {
  std::lock_guard<std::mutex> lock(impl_->mu);
  return impl_->stale;
}

std::shared_ptr<const DyadicTable> TableCache::get(const FilterBank& bank, Which which, int depth) {
  const auto key = std::make_tuple(bank.content_hash(), which == Which::primal ? 0 : 1, depth);
  std::lock_guard<std::mutex> lock(impl_->mu);
  if (auto it = impl_->tables.find(key); it != impl_->tables.end()) return it->second;

  std::shared_ptr<const DyadicTable> table;
  if (!directory_.empty()) {
    const std::string path = file_for(bank, which, depth);
    std::ifstream in(path, std::ios::binary);
    if (in) {
      try {
        auto t = std::make_shared<const DyadicTable>(read_table(in));
        if (t->depth() == depth && t->which() == which) table = t;
      } catch (const Error& e) {
        std::clog << "mrlp: rebuilding stale table " << path << " (" << e.what() << ")\n";
        ++impl_->stale;
      }
    }
  }
  if (!table) {
    table = std::make_shared<const DyadicTable>(cascade(bank, which, depth));
    if (!directory_.empty()) {
      std::error_code ec;
      std::filesystem::create_directories(directory_, ec);
      std::ofstream out(file_for(bank, which, depth), std::ios::binary);
      if (out) write_table(out, *table);
    }
  }
  impl_->tables.emplace(key, table);
  return table;
}

}  // namespace mrlp
