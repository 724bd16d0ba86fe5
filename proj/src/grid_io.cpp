#include "mrlp/grid_io.hpp"

#include <cstdio>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>

#include "mrlp/error.hpp"

namespace mrlp {

namespace {

constexpr char kMagic[5] = {'H', 'W', 'G', 'F', '1'};

template <class T>
void put(std::ostream& out, T v) {
  out.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <class T>
T get(std::istream& in) {
  T v{};
  in.read(reinterpret_cast<char*>(&v), sizeof(T));
  if (!in) fail(ErrorKind::IoError, "truncated grid function file");
  return v;
}

}  // namespace

void write_grid_function(std::ostream& out, const GridFunction& f) {
  out.write(kMagic, sizeof(kMagic));
  put<std::uint32_t>(out, static_cast<std::uint32_t>(f.dim()));
  put<std::int32_t>(out, f.depth());
  for (int j = 0; j < f.dim(); ++j) put<std::int64_t>(out, f.box().origin()[j]);
  for (int j = 0; j < f.dim(); ++j) put<std::int64_t>(out, f.box().extent(j));
  for (const auto& z : f.values()) {
    put<double>(out, z.real());
    put<double>(out, z.imag());
  }
  if (!out) fail(ErrorKind::IoError, "failed writing grid function");
}

GridFunction read_grid_function(std::istream& in) {
  char magic[5];
  in.read(magic, sizeof(magic));
  if (!in || std::memcmp(magic, kMagic, sizeof(kMagic)) != 0) {
    fail(ErrorKind::IoError, "not an HWGF1 grid function");
  }
  const auto d = static_cast<int>(get<std::uint32_t>(in));
  if (d < 1 || d > kMaxDim) fail(ErrorKind::IoError, "bad dimension in grid function file");
  const int depth = get<std::int32_t>(in);
  MultiIndex origin(d);
  std::array<std::int64_t, kMaxDim> shape{};
  for (int j = 0; j < d; ++j) origin[j] = get<std::int64_t>(in);
  for (int j = 0; j < d; ++j) shape[static_cast<std::size_t>(j)] = get<std::int64_t>(in);
  Box box(origin, shape);
  std::vector<Complex> data(box.size());
  for (auto& z : data) {
    const double re = get<double>(in);
    const double im = get<double>(in);
    z = {re, im};
  }
  return GridFunction(depth, box, std::move(data));
}

void save_grid_function(const std::string& path, const GridFunction& f) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorKind::IoError, "cannot write " + path);
  write_grid_function(out, f);
}

GridFunction load_grid_function(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::IoError, "cannot open " + path);
  return read_grid_function(in);
}

void write_grid_csv(std::ostream& out, const GridFunction& f) {
  if (f.dim() == 1) {
    out << "x,re,im\n";
    const auto v = f.values();
    for (std::int64_t i = 0; i < f.box().extent(0); ++i) {
      const auto& z = v[static_cast<std::size_t>(i)];
      out << format_double(f.coordinate(f.box().origin()[0] + i)) << ',' << format_double(z.real())
          << ',' << format_double(z.imag()) << '\n';
    }
  } else if (f.dim() == 2) {
    out << "x1,x2,re,im\n";
    const auto v = f.values();
    std::size_t lin = 0;
    for (std::int64_t i = 0; i < f.box().extent(0); ++i) {
      for (std::int64_t k = 0; k < f.box().extent(1); ++k, ++lin) {
        out << format_double(f.coordinate(f.box().origin()[0] + i)) << ','
            << format_double(f.coordinate(f.box().origin()[1] + k)) << ','
            << format_double(v[lin].real()) << ',' << format_double(v[lin].imag()) << '\n';
      }
    }
  } else {
    fail(ErrorKind::InvalidArgument, "CSV export supports d = 1 or 2");
  }
}

std::uint64_t fnv1a64(std::span<const unsigned char> bytes, std::uint64_t seed) {
  std::uint64_t h = seed;
  for (unsigned char b : bytes) {
    h ^= b;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + "\"";
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace mrlp
