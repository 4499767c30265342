#include <gtest/gtest.h>

#include <cmath>
#include <string>
#include <vector>

#include "sampling.hpp"
#include "uscpol/errors.hpp"
#include "uscpol/potential.hpp"

using namespace uscpol;
using uscpol::testing::rel_diff;

namespace {

SystemParams center_panel() {
  SystemParams p;
  p.Omega_d = 1.0;
  p.omega_e = 1.2;
  p.Omega_e = 0.1;
  return p;
}

std::vector<double> log_grid(double lo, double hi, int n) {
  std::vector<double> r;
  for (int i = 0; i < n; ++i) r.push_back(lo * std::pow(hi / lo, static_cast<double>(i) / (n - 1)));
  return r;
}

const double kCenter = 1.0 + (std::sqrt(2.0) - 1.0) / 2.0;

}  // namespace

TEST(GapProbe, DivisorPlacesFrequencyInGap) {
  const SystemParams p = center_panel();
  EXPECT_NEAR(gap_probe_frequency(p, 2.0), kCenter, 1e-15);
  EXPECT_NEAR(gap_probe_frequency(p, 5.0), 1.0 + (std::sqrt(2.0) - 1.0) / 5.0, 1e-15);
  EXPECT_NEAR(gap_probe_frequency(p, 1.1), 1.0 + (std::sqrt(2.0) - 1.0) / 1.1, 1e-15);
}

TEST(HankelOracle, HighPrecisionReference) {
  // adaptive quadrature at 30 digits
  const auto u = effective_potential_hankel(center_panel(), kCenter, {0.1, 1.0, 3.0});
  EXPECT_LT(rel_diff(u[0], -1.524702659132), 1e-9);
  EXPECT_LT(rel_diff(u[1], -0.1204281980986), 1e-9);
  EXPECT_LT(rel_diff(u[2], -0.006583169860088), 1e-8);
}

TEST(EffectivePotential, AgreesWithHankelOracle) {
  const SystemParams p = center_panel();
  const auto r = log_grid(0.05, 5.0, 40);
  for (double div : {5.0, 2.0, 1.1}) {
    const double w = gap_probe_frequency(p, div);
    const auto dft = effective_potential(p, w, r);
    const auto ref = effective_potential_hankel(p, w, r);
    for (std::size_t i = 0; i < r.size(); ++i) EXPECT_LT(rel_diff(dft.u[i], ref[i]), 1e-2) << "r=" << r[i];
  }
}

TEST(EffectivePotential, CenterPanelScaling) {
  const SystemParams p = center_panel();
  const auto r = log_grid(0.05, 6.0, 200);
  const auto prof = effective_potential(p, kCenter, r);
  EXPECT_NEAR(loglog_slope(prof.r, prof.u, 0.1, 1.0), -1.0, 0.3);
  EXPECT_NEAR(loglog_slope(prof.r, prof.u, 3.0, 6.0), -4.0, 0.3);
  for (double u : prof.u) EXPECT_LT(u, 0.0);
}

TEST(EffectivePotential, NormalizationRecord) {
  const SystemParams p = center_panel();
  const auto r = log_grid(0.05, 6.0, 50);
  const auto prof = effective_potential(p, gap_probe_frequency(p, 5.0), r);
  EXPECT_NEAR(prof.reference_omega, kCenter, 1e-15);
  const auto center = effective_potential(p, kCenter, r);
  double mx = 0.0;
  for (double u : center.u) mx = std::max(mx, std::abs(u));
  EXPECT_NEAR(prof.reference_max, mx, 1e-12 * mx);
  ASSERT_EQ(prof.u_normalized.size(), r.size());
  for (std::size_t i = 0; i < r.size(); ++i) EXPECT_DOUBLE_EQ(prof.u_normalized[i], prof.u[i] / mx);
}

TEST(EffectivePotential, BareCavityGivesZero) {
  SystemParams p = center_panel();
  p.Omega_d = 0.0;
  const auto prof = effective_potential(p, 0.5, {0.1, 1.0, 5.0});
  for (double u : prof.u) EXPECT_EQ(u, 0.0);
}

TEST(EffectivePotential, FrequencyOutsideGap) {
  const SystemParams p = center_panel();
  EXPECT_THROW(effective_potential(p, 0.9, {1.0}), DomainError);
  EXPECT_THROW(effective_potential(p, std::sqrt(2.0), {1.0}), DomainError);
  EXPECT_THROW(effective_potential_hankel(p, 1.5, {1.0}), DomainError);
}

TEST(EffectivePotential, InvalidGrids) {
  const SystemParams p = center_panel();
  EXPECT_THROW(effective_potential(p, kCenter, {0.0}), DomainError);
  EXPECT_THROW(effective_potential(p, kCenter, {0.05, 500.0}), ResolutionError);
  try {
    effective_potential(p, kCenter, {0.05, 500.0});
  } catch (const ResolutionError& e) {
    EXPECT_NE(std::string(e.what()).find("fft_size"), std::string::npos);
  }
  PotentialOptions small;
  small.fft_size = 1000;
  EXPECT_THROW(effective_potential(p, kCenter, {1.0}, small), DomainError);
}

TEST(EffectivePotential, ThreadCountDoesNotChangeBits) {
  const SystemParams p = center_panel();
  const auto r = log_grid(0.05, 6.0, 64);
  PotentialOptions one, many;
  one.threads = 1;
  many.threads = 4;
  const auto a = effective_potential(p, kCenter, r, one);
  const auto b = effective_potential(p, kCenter, r, many);
  ASSERT_EQ(a.u.size(), b.u.size());
  for (std::size_t i = 0; i < a.u.size(); ++i) EXPECT_EQ(a.u[i], b.u[i]);
  const auto ha = effective_potential_hankel(p, kCenter, {0.3, 2.0}, 1);
  const auto hb = effective_potential_hankel(p, kCenter, {0.3, 2.0}, 3);
  EXPECT_EQ(ha, hb);
}

TEST(EffectivePotential, DecaysToZeroFarAway) {
  const SystemParams p = center_panel();
  const auto u = effective_potential_hankel(p, kCenter, {0.05, 50.0});
  EXPECT_LT(std::abs(u[1]), 1e-6 * std::abs(u[0]));
}

TEST(LogLogSlope, ExactPowerLaw) {
  const auto r = log_grid(0.1, 10.0, 30);
  std::vector<double> u;
  for (double x : r) u.push_back(-3.0 * std::pow(x, -2.5));
  EXPECT_NEAR(loglog_slope(r, u, 0.2, 5.0), -2.5, 1e-12);
  EXPECT_THROW(loglog_slope(r, u, 20.0, 30.0), DomainError);
}
