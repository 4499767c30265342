#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <string>

#include "sampling.hpp"
#include "uscpol/errors.hpp"
#include "uscpol/params.hpp"

using namespace uscpol;

namespace {

DopingInput reference_doping() {
  DopingInput d;
  d.n_2d = 1e16;
  d.f_osc = 1.0;
  d.L_c = 2e-6;
  d.m_eff = 0.067 * codata::electron_mass;
  return d;
}

}  // namespace

TEST(RabiFromDoping, ZeroDensityGivesZero) {
  DopingInput d = reference_doping();
  d.n_2d = 0.0;
  EXPECT_EQ(rabi_from_doping(d), 0.0);
}

TEST(RabiFromDoping, SquareRootLawInDensity) {
  DopingInput d = reference_doping();
  const double base = rabi_from_doping(d);
  d.n_2d *= 2.0;
  EXPECT_NEAR(rabi_from_doping(d) / base, std::sqrt(2.0), 1e-14);
}

TEST(RabiFromDoping, GaAsReferenceValue) {
  // sqrt(f e^2 n / (eps0 m L)) at 30 digits
  EXPECT_LT(uscpol::testing::rel_diff(rabi_from_doping(reference_doping()), 15411294932369.6332925), 1e-14);
}

TEST(RabiFromDoping, Monotonicity) {
  const DopingInput d = reference_doping();
  const double base = rabi_from_doping(d);
  DopingInput up = d;
  up.n_2d *= 1.1;
  EXPECT_GT(rabi_from_doping(up), base);
  up = d;
  up.f_osc = 0.5;
  EXPECT_LT(rabi_from_doping(up), base);
  up = d;
  up.L_c *= 1.1;
  EXPECT_LT(rabi_from_doping(up), base);
  up = d;
  up.m_eff *= 1.1;
  EXPECT_LT(rabi_from_doping(up), base);
}

TEST(RabiFromDoping, RejectsNonPositiveInputs) {
  DopingInput d = reference_doping();
  d.L_c = 0.0;
  EXPECT_THROW(rabi_from_doping(d), DomainError);
  d = reference_doping();
  d.m_eff = -1.0;
  EXPECT_THROW(rabi_from_doping(d), DomainError);
  d = reference_doping();
  d.n_2d = -1.0;
  EXPECT_THROW(rabi_from_doping(d), DomainError);
  d = reference_doping();
  d.f_osc = 1.5;
  EXPECT_THROW(rabi_from_doping(d), DomainError);
}

TEST(LoadConfig, MinimalDocumentFillsLinewidthDefaults) {
  const Config c = load_config("Omega_d=1.0\nomega_e=0.5\nOmega_e=0.1\n");
  EXPECT_EQ(c.params.omega_d, 1.0);
  EXPECT_EQ(c.params.Omega_d, 1.0);
  EXPECT_EQ(c.params.omega_e, 0.5);
  EXPECT_EQ(c.params.Omega_e, 0.1);
  EXPECT_EQ(c.params.gamma_c, 0.01);
  EXPECT_EQ(c.params.kappa_d, 0.05);
  EXPECT_EQ(c.params.kappa_e, 0.05);
  EXPECT_FALSE(c.k_grid.has_value());
}

TEST(LoadConfig, EmptyDocumentListsRequiredKeys) {
  try {
    load_config("");
    FAIL() << "expected ValidationError";
  } catch (const ValidationError& e) {
    const std::string msg = e.what();
    EXPECT_NE(msg.find("Omega_d"), std::string::npos);
    EXPECT_NE(msg.find("omega_e"), std::string::npos);
    EXPECT_NE(msg.find("Omega_e"), std::string::npos);
  }
}

TEST(LoadConfig, NegativeCouplingNamesInvariant) {
  try {
    load_config("Omega_d=-1\nomega_e=0.5\nOmega_e=0.1\n");
    FAIL() << "expected ValidationError";
  } catch (const ValidationError& e) {
    EXPECT_NE(std::string(e.what()).find("Omega_d"), std::string::npos);
  }
}

TEST(LoadConfig, ParseErrorsCarryLineAndColumn) {
  try {
    load_config("Omega_d = 1\n# comment\n  omega_e = 0.5x\nOmega_e = 0.1\n");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3u);
    EXPECT_EQ(e.column(), 13u);
  }
  EXPECT_THROW(load_config("Omega_d 1\n"), ParseError);
  EXPECT_THROW(load_config("Omega_d = 1\nOmega_d = 2\nomega_e=1\nOmega_e=0\n"), ParseError);
  EXPECT_THROW(load_config("Omega_d = 1\nomega_e=1\nOmega_e=0\ncolour = red\n"), ParseError);
  EXPECT_THROW(load_config("Omega_d = 1\nomega_e=1\nOmega_e=0\nk_grid = 1:0:10\n"), ParseError);
  EXPECT_THROW(load_config("Omega_d = 1\nomega_e=1\nOmega_e=0\nk_grid = 0:1:1\n"), ParseError);
  EXPECT_THROW(load_config("Omega_d = 1\nomega_e=1\nOmega_e=0\nloss_model = ohmic\n"), ParseError);
}

TEST(LoadConfig, GridsAndLists) {
  const Config c = load_config(
      "Omega_d = 1\nomega_e = 0.7\nOmega_e = 0.2\n"
      "k_grid = 0.02:4:400\nr_grid = 0.05:6:200:log\nomega_e_list = 0.2:0.95:20, 1.5, 2.9\n"
      "loss_model = dresser\nfft_size = 4096\n");
  ASSERT_TRUE(c.k_grid.has_value());
  EXPECT_EQ(c.k_grid->count, 400u);
  const auto ks = c.k_grid->points();
  EXPECT_EQ(ks.front(), 0.02);
  EXPECT_EQ(ks.back(), 4.0);
  ASSERT_TRUE(c.r_grid.has_value());
  EXPECT_TRUE(c.r_grid->log);
  EXPECT_NEAR(c.r_grid->points()[199], 6.0, 1e-12);
  EXPECT_EQ(c.omega_e_values().size(), 22u);
  EXPECT_EQ(c.loss_model, LossModelKind::dresser_dominated);
  EXPECT_EQ(c.fft_size, 4096u);
  EXPECT_THROW(load_config("Omega_d = 1\nomega_e=1\nOmega_e=0\nfft_size = 1000\n"), ValidationError);
}

TEST(LoadConfig, SerializeRoundTripProperty) {
  uscpol::testing::Sampler s(7);
  for (int i = 0; i < 200; ++i) {
    Config c;
    c.params.Omega_d = s.uniform(0.0, 2.0);
    c.params.omega_e = s.log_uniform(1e-3, 10.0);
    c.params.Omega_e = s.uniform(0.0, 0.5);
    c.params.gamma_c = s.uniform(0.0, 0.1);
    c.params.kappa_d = s.uniform(0.0, 0.1);
    c.params.kappa_e = s.uniform(0.0, 0.1);
    c.k_grid = Grid{s.uniform(0.001, 1.0), s.uniform(2.0, 5.0), 17, i % 2 == 0};
    if (i % 3 == 0) {
      const double single = s.uniform(1.5, 3.0);
      c.omega_e_list = {Grid{0.1, 0.9, 5, false}, Grid{single, single, 1, false}};
    }
    c.loss_model = static_cast<LossModelKind>(i % 3);
    c.potential_oracle = i % 2 == 1;
    const Config back = load_config(serialize(c));
    EXPECT_EQ(back, c) << serialize(c);
    EXPECT_EQ(serialize(back), serialize(c));
  }
}

TEST(LoadConfig, WeakEmitterAdvisory) {
  Config c = load_config("Omega_d = 1\nomega_e = 0.5\nOmega_e = 0.2\n");
  EXPECT_EQ(config_warnings(c).size(), 1u);
  c = load_config("Omega_d = 1\nomega_e = 0.5\nOmega_e = 0.1\n");
  EXPECT_TRUE(config_warnings(c).empty());
}
