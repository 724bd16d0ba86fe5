#include "mrlp/kvfile.hpp"

#include <cerrno>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "mrlp/error.hpp"

namespace mrlp {

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

}  // namespace

std::vector<std::string> split_words(const std::string& text) {
  std::vector<std::string> words;
  std::istringstream in(text);
  std::string w;
  while (in >> w) words.push_back(w);
  return words;
}

double parse_double(const std::string& word, const std::string& where) {
  errno = 0;
  char* end = nullptr;
  const double v = std::strtod(word.c_str(), &end);
  if (word.empty() || end != word.c_str() + word.size() || errno == ERANGE) {
    fail(ErrorKind::ParseError, where + ": not a number: '" + word + "'");
  }
  return v;
}

long long parse_int(const std::string& word, const std::string& where) {
  errno = 0;
  char* end = nullptr;
  const long long v = std::strtoll(word.c_str(), &end, 10);
  if (word.empty() || end != word.c_str() + word.size() || errno == ERANGE) {
    fail(ErrorKind::ParseError, where + ": not an integer: '" + word + "'");
  }
  return v;
}

KeyValueFile KeyValueFile::parse(const std::string& text, const std::string& source_name) {
  KeyValueFile kv;
  kv.source_ = source_name;
  std::istringstream in(text);
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const auto hash = raw.find('#');
    const std::string line = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      fail(ErrorKind::ParseError,
           source_name + ":" + std::to_string(line_no) + ": expected 'key = value'");
    }
    const std::string key = trim(line.substr(0, eq));
    if (key.empty()) {
      fail(ErrorKind::ParseError, source_name + ":" + std::to_string(line_no) + ": empty key");
    }
    if (kv.entries_.count(key) != 0) {
      fail(ErrorKind::ParseError,
           source_name + ":" + std::to_string(line_no) + ": duplicate key '" + key + "'");
    }
    kv.entries_[key] = Entry{trim(line.substr(eq + 1)), line_no};
  }
  return kv;
}

KeyValueFile KeyValueFile::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::IoError, "cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse(buf.str(), path);
}

const KeyValueFile::Entry& KeyValueFile::entry(const std::string& key) const {
  const auto it = entries_.find(key);
  if (it == entries_.end()) fail(ErrorKind::ParseError, source_ + ": missing key '" + key + "'");
  return it->second;
}

std::vector<std::string> KeyValueFile::keys() const {
  std::vector<std::string> out;
  for (const auto& [k, _] : entries_) out.push_back(k);
  return out;
}

void KeyValueFile::fail_at(const std::string& key, const std::string& message) const {
  const auto it = entries_.find(key);
  const std::string where =
      it == entries_.end() ? source_ : source_ + ":" + std::to_string(it->second.line);
  fail(ErrorKind::ParseError, where + ": " + key + ": " + message);
}

std::string KeyValueFile::get_string(const std::string& key) const { return entry(key).value; }

std::string KeyValueFile::get_string(const std::string& key, const std::string& fallback) const {
  return has(key) ? entry(key).value : fallback;
}

long long KeyValueFile::get_int(const std::string& key) const {
  const auto& e = entry(key);
  return parse_int(e.value, source_ + ":" + std::to_string(e.line));
}

long long KeyValueFile::get_int(const std::string& key, long long fallback) const {
  return has(key) ? get_int(key) : fallback;
}

double KeyValueFile::get_double(const std::string& key) const {
  const auto& e = entry(key);
  return parse_double(e.value, source_ + ":" + std::to_string(e.line));
}

double KeyValueFile::get_double(const std::string& key, double fallback) const {
  return has(key) ? get_double(key) : fallback;
}

bool KeyValueFile::get_bool(const std::string& key) const {
  const auto& v = entry(key).value;
  if (v == "true" || v == "yes" || v == "1") return true;
  if (v == "false" || v == "no" || v == "0") return false;
  fail_at(key, "expected a boolean, got '" + v + "'");
}

bool KeyValueFile::get_bool(const std::string& key, bool fallback) const {
  return has(key) ? get_bool(key) : fallback;
}

std::vector<std::string> KeyValueFile::get_words(const std::string& key) const {
  return split_words(entry(key).value);
}

std::vector<double> KeyValueFile::get_doubles(const std::string& key) const {
  const auto& e = entry(key);
  std::vector<double> out;
  for (const auto& w : split_words(e.value)) {
    out.push_back(parse_double(w, source_ + ":" + std::to_string(e.line)));
  }
  return out;
}

std::vector<long long> KeyValueFile::get_ints(const std::string& key) const {
  const auto& e = entry(key);
  std::vector<long long> out;
  for (const auto& w : split_words(e.value)) {
    out.push_back(parse_int(w, source_ + ":" + std::to_string(e.line)));
  }
  return out;
}

}  // namespace mrlp
