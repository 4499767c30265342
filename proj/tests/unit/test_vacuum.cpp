#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "sampling.hpp"
#include "uscpol/errors.hpp"
#include "uscpol/hopfield.hpp"
#include "uscpol/vacuum.hpp"

using namespace uscpol;
using uscpol::testing::rel_diff;

namespace {

constexpr double kPhi = std::numbers::phi;
const double kSqrt5 = std::sqrt(5.0);

SystemParams dressed(double Omega_d, double omega_e = 1.0, double Omega_e = 0.1) {
  SystemParams p;
  p.Omega_d = Omega_d;
  p.omega_e = omega_e;
  p.Omega_e = Omega_e;
  return p;
}

// n = (sqrt(1 + Omega^2/4) - 1)/2 at omega_k = omega_d = 1
double resonant_population(double Omega_d) { return 0.5 * (std::sqrt(1.0 + 0.25 * Omega_d * Omega_d) - 1.0); }

}  // namespace

TEST(DisplacementFluctuations, BareVacuumIsExactlyOne) {
  for (double wk : {1e-3, 0.5, 1.0, 7.0, 1e3}) EXPECT_EQ(displacement_fluctuations(dressed(0.0), wk), 1.0);
}

TEST(DisplacementFluctuations, GoldenRatioPoint) {
  // (1/phi) sin^2 + phi cos^2 = 3/sqrt5
  EXPECT_NEAR(displacement_fluctuations(dressed(1.0), 1.0), 3.0 / kSqrt5, 1e-15);
  EXPECT_NEAR(displacement_fluctuations(dressed(1.0), 1.0), 1.3416, 1e-4);
}

TEST(DisplacementFluctuations, TwoRoutesAgreeProperty) {
  uscpol::testing::Sampler s(17);
  for (int i = 0; i < 3000; ++i) {
    const SystemParams p = dressed(s.uniform(0.0, 2.0), s.log_uniform(0.05, 5.0), s.uniform(0.01, 0.3));
    const double wk = s.log_uniform(1e-3, 1e3);
    EXPECT_LT(rel_diff(displacement_fluctuations(p, wk), displacement_fluctuations_from_rabi(p, wk)), 1e-12);
  }
}

TEST(DisplacementFluctuations, ZeroWavevectorIsExcluded) {
  EXPECT_THROW(displacement_fluctuations(dressed(1.0), 0.0), DomainError);
  EXPECT_THROW(efield_fluctuations(dressed(1.0), 0.0), DomainError);
  EXPECT_THROW(virtual_populations(dressed(1.0), 0.0), DomainError);
  EXPECT_THROW(displacement_fluctuations_from_rabi(dressed(1.0, 1.0, 0.0), 1.0), DomainError);
}

TEST(ZeroPointAmplitudes, BareCavity) {
  const auto below = zero_point_amplitudes(dressed(0.0, 0.5), 0.5);
  EXPECT_NEAR(below.lower, 1.0, 1e-15);
  EXPECT_EQ(below.upper, 0.0);
  const auto above = zero_point_amplitudes(dressed(0.0, 2.0), 2.0);
  EXPECT_EQ(above.lower, 0.0);
  EXPECT_NEAR(above.upper, 1.0, 1e-15);
}

TEST(ZeroPointAmplitudes, GoldenRatioShares) {
  const auto z = zero_point_amplitudes(dressed(1.0, 1.0), 1.0);
  EXPECT_NEAR(z.lower, kPhi * (5.0 + kSqrt5) / 10.0, 1e-14);
  EXPECT_NEAR(z.upper, (5.0 - kSqrt5) / (10.0 * kPhi), 1e-14);
  EXPECT_NEAR(z.lower, 1.1708, 1e-4);
  EXPECT_NEAR(z.upper, 0.1708, 1e-4);
}

TEST(ZeroPointAmplitudes, SharesSumToDisplacement) {
  uscpol::testing::Sampler s(19);
  for (int i = 0; i < 500; ++i) {
    const SystemParams p = dressed(s.uniform(0.0, 2.0), s.log_uniform(0.05, 5.0));
    const double wk = s.log_uniform(1e-3, 1e2);
    const auto z = zero_point_amplitudes(p, wk);
    EXPECT_LT(rel_diff((z.lower + z.upper) * p.omega_e / wk, displacement_fluctuations(p, wk)), 1e-12);
  }
}

TEST(EfieldFluctuations, ReferenceValues) {
  EXPECT_EQ(efield_fluctuations(dressed(0.0), 0.3), 1.0);
  EXPECT_NEAR(efield_fluctuations(dressed(1.0), 1.0), 6.0 / kSqrt5, 1e-14);
  EXPECT_NEAR(efield_fluctuations(dressed(1.0), 1.0), 2.6832, 1e-4);
}

TEST(EfieldFluctuations, ExpandedFormAgrees) {
  uscpol::testing::Sampler s(23);
  for (int i = 0; i < 2000; ++i) {
    const SystemParams p = dressed(s.uniform(0.0, 2.0));
    const double wk = s.log_uniform(1e-3, 1e3);
    EXPECT_LT(rel_diff(efield_fluctuations(p, wk), efield_fluctuations_expanded(p, wk)), 1e-12);
  }
}

TEST(VirtualPopulations, EmptyVacuum) {
  const auto n = virtual_populations(dressed(0.0), 0.7);
  EXPECT_NEAR(n.photon, 0.0, 1e-15);
  EXPECT_NEAR(n.dresser, 0.0, 1e-15);
}

TEST(VirtualPopulations, ResonantClosedForm) {
  const auto n = virtual_populations(dressed(1.0), 1.0);
  EXPECT_NEAR(n.photon, resonant_population(1.0), 1e-14);
  EXPECT_NEAR(n.photon, 0.059017, 1e-6);
  for (double Od : {0.1, 0.5, 1.0, 2.0}) {
    const auto m = virtual_populations(dressed(Od), 1.0);
    EXPECT_NEAR(m.photon, m.dresser, 1e-14);
    EXPECT_NEAR(m.photon, resonant_population(Od), 1e-14);
  }
}

TEST(VirtualPopulations, NonNegativeProperty) {
  uscpol::testing::Sampler s(29);
  for (int i = 0; i < 2000; ++i) {
    const auto n = virtual_populations(dressed(s.uniform(0.0, 2.0)), s.log_uniform(1e-3, 1e3));
    EXPECT_GE(n.photon, 0.0);
    EXPECT_GE(n.dresser, 0.0);
  }
}

TEST(ZeroPointShift, BareAndResonant) {
  const auto bare = zero_point_shift(dressed(0.0), 0.4);
  EXPECT_EQ(bare.dw_zp, 0.0);
  EXPECT_EQ(bare.n_int, 0.0);

  const auto z = zero_point_shift(dressed(1.0), 1.0);
  EXPECT_NEAR(z.dw_zp, kSqrt5 / 2.0 - 1.0, 1e-15);
  EXPECT_NEAR(z.dw_zp, 0.1180, 1e-4);
  EXPECT_NEAR(z.n_int, 0.0, 1e-12);
  EXPECT_NEAR(z.dw_zp, 2.0 * virtual_populations(dressed(1.0), 1.0).photon, 1e-14);
}

TEST(ZeroPointShift, DecompositionRoutesAgree) {
  uscpol::testing::Sampler s(31);
  for (int i = 0; i < 1000; ++i) {
    const SystemParams p = dressed(s.uniform(0.01, 2.0));
    const double wk = s.log_uniform(1e-2, 1e2);
    const auto z = zero_point_shift(p, wk);
    const auto f = polariton_frequencies(p, wk);
    EXPECT_NEAR(z.dw_zp, 0.5 * (f.upper + f.lower) - 0.5 * (wk + 1.0), 1e-12 * (1.0 + wk));
    EXPECT_NEAR(zero_point_shift_from_populations(p, wk, z.n_int), z.dw_zp, 1e-12 * (1.0 + wk));
  }
}

TEST(ZeroPointShift, MonotoneInCoupling) {
  for (double wk : {0.2, 1.0, 3.0}) {
    double prev = 0.0;
    for (int i = 1; i <= 40; ++i) {
      const double dw = zero_point_shift(dressed(0.05 * i), wk).dw_zp;
      EXPECT_GE(dw, 0.0);
      EXPECT_GT(dw, prev);
      prev = dw;
    }
  }
}

TEST(VacuumObservables, BareVacuumReduction) {
  const auto v = vacuum_observables(dressed(0.0, 0.5), 0.5);
  EXPECT_EQ(v.d2_ratio, 1.0);
  EXPECT_EQ(v.e2_ratio, 1.0);
  EXPECT_NEAR(v.dzp_lp, 1.0, 1e-15);
  EXPECT_EQ(v.dzp_up, 0.0);
  EXPECT_NEAR(v.n_ph, 0.0, 1e-15);
  EXPECT_NEAR(v.n_d, 0.0, 1e-15);
  EXPECT_EQ(v.n_int, 0.0);
  EXPECT_EQ(v.dw_zp, 0.0);
}
