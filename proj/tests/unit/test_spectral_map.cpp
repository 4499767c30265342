#include <gtest/gtest.h>

#include <cmath>
#include <sstream>
#include <string>

#include "uscpol/classical.hpp"
#include "uscpol/errors.hpp"
#include "uscpol/spectral_map.hpp"

using namespace uscpol;

namespace {

SpectralMap sample_map() {
  SystemParams p;
  p.Omega_d = 1.0;
  p.omega_e = 0.7;
  p.Omega_e = 0.2;
  return transmission_map(p, {0.2, 0.9, 1.3}, {0.5, 0.62, 0.7, 0.81, 1.4});
}

}  // namespace

TEST(SpectralMapCsv, RoundTripsToNineDigits) {
  const SpectralMap m = sample_map();
  std::stringstream s;
  write_map_csv(s, m);
  const SpectralMap back = read_map_csv(s);
  ASSERT_EQ(back.k.size(), m.k.size());
  ASSERT_EQ(back.omega.size(), m.omega.size());
  EXPECT_EQ(back.k, m.k);
  EXPECT_EQ(back.omega, m.omega);
  for (std::size_t i = 0; i < m.values.size(); ++i) EXPECT_LE(std::abs(back.values[i] - m.values[i]), 1e-8 * std::abs(m.values[i]) + 1e-300);
}

TEST(SpectralMapCsv, HeaderAndCellFormat) {
  SpectralMap m;
  m.k = {0.5};
  m.omega = {1.0, 2.0};
  m.values = {{0.25, -0.5}, {1.0, 0.0}};
  std::stringstream s;
  write_map_csv(s, m);
  std::string header, row;
  std::getline(s, header);
  std::getline(s, row);
  EXPECT_EQ(header, "k/omega,1,2");
  EXPECT_EQ(row, "0.5,0.25-0.5i,1+0i");
}

TEST(SpectralMapCsv, MalformedInputs) {
  auto parse = [](const std::string& text) {
    std::istringstream in(text);
    return read_map_csv(in);
  };
  EXPECT_THROW(parse(""), ParseError);
  EXPECT_THROW(parse("k,1,2\n"), ParseError);
  EXPECT_THROW(parse("k/omega,1,2\n0.5,1+0i\n"), ParseError);
  EXPECT_THROW(parse("k/omega,1,2\n0.5,1+0i,2+0\n"), ParseError);
  EXPECT_THROW(parse("k/omega,1,2\n0.5,1+0i,abc\n"), ParseError);
  EXPECT_THROW(parse("k/omega,2,1\n0.5,1+0i,1+0i\n"), ConfigError);
  try {
    parse("k/omega,1\n0.1,1+0i\n0.2,1+xi\n");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3u);
  }
}

TEST(SpectralMapBinary, RoundTripIsExact) {
  const SpectralMap m = sample_map();
  std::stringstream s;
  write_map_binary(s, m);
  const std::string bytes = s.str();
  EXPECT_EQ(bytes.substr(0, 8), "USCPOLv1");
  EXPECT_EQ(bytes.size(), 8u + 8u + 8u * (3 + 5) + 16u * 15);
  EXPECT_EQ(static_cast<unsigned char>(bytes[8]), 3u);
  EXPECT_EQ(static_cast<unsigned char>(bytes[12]), 5u);
  const SpectralMap back = read_map_binary(s);
  EXPECT_EQ(back.k, m.k);
  EXPECT_EQ(back.omega, m.omega);
  EXPECT_EQ(back.values, m.values);
}

TEST(SpectralMapBinary, RejectsCorruptFiles) {
  std::stringstream s;
  write_map_binary(s, sample_map());
  const std::string good = s.str();
  auto read = [](const std::string& bytes) {
    std::istringstream in(bytes);
    return read_map_binary(in);
  };
  std::string magic = good;
  magic[0] = 'X';
  EXPECT_THROW(read(magic), ConfigError);
  EXPECT_THROW(read(good.substr(0, good.size() - 3)), ConfigError);
  EXPECT_THROW(read(good + "x"), ConfigError);
  EXPECT_THROW(read(""), ConfigError);
}

TEST(SpectralMapValidate, GridChecks) {
  SpectralMap m = sample_map();
  EXPECT_NO_THROW(validate_map(m));
  m.values.pop_back();
  EXPECT_THROW(validate_map(m), ConfigError);
  SpectralMap e;
  EXPECT_THROW(validate_map(e), ConfigError);
  SpectralMap dup = sample_map();
  dup.k[1] = dup.k[0];
  EXPECT_THROW(validate_map(dup), ConfigError);
}

TEST(SpectralMapMagnitude, Modulus) {
  SpectralMap m;
  m.k = {1.0};
  m.omega = {1.0, 2.0};
  m.values = {{3.0, 4.0}, {0.0, -2.0}};
  EXPECT_EQ(magnitude(m), (std::vector<double>{5.0, 2.0}));
}
