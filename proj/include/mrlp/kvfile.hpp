#pragma once

#include <map>
#include <string>
#include <vector>

namespace mrlp {

/// Line-oriented `key = value` text: `#` starts a comment, blank lines are
/// ignored, and every key remembers the line it came from so errors can be
/// reported as `file:line`.
class KeyValueFile {
 public:
  struct Entry {
    std::string value;
    int line = 0;
  };

  static KeyValueFile parse(const std::string& text, const std::string& source_name);
  static KeyValueFile load(const std::string& path);

  const std::string& source() const { return source_; }
  bool has(const std::string& key) const { return entries_.count(key) != 0; }
  const Entry& entry(const std::string& key) const;
  std::vector<std::string> keys() const;

  std::string get_string(const std::string& key) const;
  std::string get_string(const std::string& key, const std::string& fallback) const;
  long long get_int(const std::string& key) const;
  long long get_int(const std::string& key, long long fallback) const;
  double get_double(const std::string& key) const;
  double get_double(const std::string& key, double fallback) const;
  bool get_bool(const std::string& key) const;
  bool get_bool(const std::string& key, bool fallback) const;
  std::vector<std::string> get_words(const std::string& key) const;
  std::vector<double> get_doubles(const std::string& key) const;
  std::vector<long long> get_ints(const std::string& key) const;

  [[noreturn]] void fail_at(const std::string& key, const std::string& message) const;

 private:
  std::string source_;
  std::map<std::string, Entry> entries_;
};

std::vector<std::string> split_words(const std::string& text);
double parse_double(const std::string& word, const std::string& where);
long long parse_int(const std::string& word, const std::string& where);

}  // namespace mrlp
