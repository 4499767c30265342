#include "uscpol/spectral_map.hpp"

#include <bit>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>

#include "uscpol/errors.hpp"

namespace uscpol {

namespace {

constexpr char kMagic[8] = {'U', 'S', 'C', 'P', 'O', 'L', 'v', '1'};

void append(std::string& s, double v) {
  char buf[32];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 9);
  if (ec != std::errc()) throw NumericalError("number formatting failed");
  s.append(buf, end);
}

const char* parse_double(const char* first, const char* last, double& v, std::size_t row) {
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr == first)
    throw ParseError(row, 1, "malformed number '" + std::string(first, last) + "'");
  return ptr;
}

double parse_exact(std::string_view cell, std::size_t row) {
  double v = 0.0;
  const char* end = parse_double(cell.data(), cell.data() + cell.size(), v, row);
  if (end != cell.data() + cell.size()) throw ParseError(row, 1, "trailing text in '" + std::string(cell) + "'");
  return v;
}

cplx parse_complex(std::string_view cell, std::size_t row) {
  if (cell.empty() || cell.back() != 'i') throw ParseError(row, 1, "complex cell must end in 'i': '" + std::string(cell) + "'");
  const char* first = cell.data();
  const char* last = cell.data() + cell.size() - 1;
  double re = 0.0;
  double im = 0.0;
  const char* mid = parse_double(first, last, re, row);
  if (mid == last || (*mid != '+' && *mid != '-'))
    throw ParseError(row, 1, "missing imaginary part in '" + std::string(cell) + "'");
  // from_chars rejects a leading '+'
  const char* im_first = *mid == '+' ? mid + 1 : mid;
  const char* end = parse_double(im_first, last, im, row);
  if (end != last) throw ParseError(row, 1, "trailing text in '" + std::string(cell) + "'");
  return {re, im};
}

std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> cells;
  std::size_t pos = 0;
  while (true) {
    const std::size_t comma = line.find(',', pos);
    cells.push_back(line.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos));
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  return cells;
}

void put_u32(std::ostream& out, std::uint32_t v) {
  unsigned char b[4];
  for (int i = 0; i < 4; ++i) b[i] = static_cast<unsigned char>(v >> (8 * i));
  out.write(reinterpret_cast<const char*>(b), 4);
}

void put_f64(std::ostream& out, double v) {
  std::uint64_t bits = std::bit_cast<std::uint64_t>(v);
  unsigned char b[8];
  for (int i = 0; i < 8; ++i) b[i] = static_cast<unsigned char>(bits >> (8 * i));
  out.write(reinterpret_cast<const char*>(b), 8);
}

void read_exact(std::istream& in, unsigned char* b, std::size_t n) {
  in.read(reinterpret_cast<char*>(b), static_cast<std::streamsize>(n));
  if (static_cast<std::size_t>(in.gcount()) != n) throw ConfigError("binary map is truncated");
}

std::uint32_t get_u32(std::istream& in) {
  unsigned char b[4];
  read_exact(in, b, 4);
  std::uint32_t v = 0;
  for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(b[i]) << (8 * i);
  return v;
}

double get_f64(std::istream& in) {
  unsigned char b[8];
  read_exact(in, b, 8);
  std::uint64_t v = 0;
  for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(b[i]) << (8 * i);
  return std::bit_cast<double>(v);
}

}  // namespace

void validate_map(const SpectralMap& map) {
  if (map.k.empty() || map.omega.empty()) throw ConfigError("spectral map has an empty grid");
  if (map.values.size() != map.k.size() * map.omega.size())
    throw ConfigError("spectral map has " + std::to_string(map.values.size()) + " values for a " +
                      std::to_string(map.k.size()) + " x " + std::to_string(map.omega.size()) + " grid");
  auto increasing = [](const std::vector<double>& g) {
    for (std::size_t i = 0; i < g.size(); ++i) {
      if (!std::isfinite(g[i])) return false;
      if (i > 0 && !(g[i] > g[i - 1])) return false;
    }
    return true;
  };
  if (!increasing(map.k)) throw ConfigError("spectral map k grid is not strictly increasing");
  if (!increasing(map.omega)) throw ConfigError("spectral map omega grid is not strictly increasing");
}

void write_map_csv(std::ostream& out, const SpectralMap& map) {
  validate_map(map);
  std::string line = "k/omega";
  for (double w : map.omega) {
    line += ',';
    append(line, w);
  }
  out << line << '\n';
  for (std::size_t i = 0; i < map.k.size(); ++i) {
    line.clear();
    append(line, map.k[i]);
    for (std::size_t j = 0; j < map.omega.size(); ++j) {
      const cplx v = map.at(i, j);
      line += ',';
      append(line, v.real());
      if (!std::signbit(v.imag())) line += '+';
      append(line, v.imag());
      line += 'i';
    }
    out << line << '\n';
  }
}

SpectralMap read_map_csv(std::istream& in) {
  SpectralMap map;
  std::string line;
  std::size_t row = 0;
  if (!std::getline(in, line)) throw ParseError(1, 1, "empty spectral map");
  ++row;
  auto header = split(line);
  if (header.empty() || header[0] != "k/omega") throw ParseError(1, 1, "header must start with 'k/omega'");
  for (std::size_t j = 1; j < header.size(); ++j) map.omega.push_back(parse_exact(header[j], row));
  while (std::getline(in, line)) {
    ++row;
    if (line.empty()) continue;
    auto cells = split(line);
    if (cells.size() != map.omega.size() + 1)
      throw ParseError(row, 1, "expected " + std::to_string(map.omega.size() + 1) + " cells, found " +
                                   std::to_string(cells.size()));
    map.k.push_back(parse_exact(cells[0], row));
    for (std::size_t j = 1; j < cells.size(); ++j) map.values.push_back(parse_complex(cells[j], row));
  }
  validate_map(map);
  return map;
}

void write_map_binary(std::ostream& out, const SpectralMap& map) {
  validate_map(map);
  out.write(kMagic, sizeof kMagic);
  put_u32(out, static_cast<std::uint32_t>(map.k.size()));
  put_u32(out, static_cast<std::uint32_t>(map.omega.size()));
  for (double k : map.k) put_f64(out, k);
  for (double w : map.omega) put_f64(out, w);
  for (const cplx& v : map.values) {
    put_f64(out, v.real());
    put_f64(out, v.imag());
  }
}

SpectralMap read_map_binary(std::istream& in) {
  char magic[sizeof kMagic];
  in.read(magic, sizeof magic);
  if (in.gcount() != static_cast<std::streamsize>(sizeof magic) || std::memcmp(magic, kMagic, sizeof magic) != 0)
    throw ConfigError("not a spectral map file (bad magic)");
  const std::uint32_t nk = get_u32(in);
  const std::uint32_t nw = get_u32(in);
  if (nk == 0 || nw == 0) throw ConfigError("spectral map has an empty grid");
  SpectralMap map;
  map.k.resize(nk);
  map.omega.resize(nw);
  for (auto& k : map.k) k = get_f64(in);
  for (auto& w : map.omega) w = get_f64(in);
  map.values.resize(static_cast<std::size_t>(nk) * nw);
  for (auto& v : map.values) {
    const double re = get_f64(in);
    const double im = get_f64(in);
    v = {re, im};
  }
  if (in.peek() != std::char_traits<char>::eof()) throw ConfigError("trailing bytes after spectral map");
  validate_map(map);
  return map;
}

std::vector<double> magnitude(const SpectralMap& map) {
  std::vector<double> out(map.values.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = std::abs(map.values[i]);
  return out;
}

}  // namespace uscpol
