#pragma once

#include "uscpol/hopfield.hpp"
#include "uscpol/params.hpp"

namespace uscpol {

struct PolaritonWidths {
  double lower = 0.0;
  double upper = 0.0;
};

struct PurcellRates {
  double lower = 0.0;
  double upper = 0.0;
};

struct EmissionPoint {
  double k = 0.0;
  double theta = 0.0;
  double gamma_lp = 0.0;
  double gamma_up = 0.0;
  double Gamma_lp = 0.0;
  double Gamma_up = 0.0;
  bool weak_lp = true;  // gamma_lp >= 3 Omega_lp
  bool weak_up = true;
};

// Ohmic dressed loss rates: cavity (gamma c^2, gamma s^2), dresser
// (kappa_d s^2, kappa_d c^2), combined is the sum.
PolaritonWidths polariton_linewidths(const SystemParams& p, double omega_k, LossModelKind model);

// Rates for an emitter tuned into resonance with each branch at this omega_k,
// from the closed forms of each loss model. Throws StrongCouplingError when a
// dressed linewidth vanishes.
PurcellRates purcell_rates(const SystemParams& p, double omega_k, LossModelKind model);

// Omega_b^2 / (2 gamma_b) with Omega_b evaluated at omega_e = omega_b.
double purcell_rate_general(const SystemParams& p, double omega_k, Branch b, LossModelKind model);

// Emitter-polariton coupling with the emitter tuned to the branch frequency.
double resonant_branch_rabi(const SystemParams& p, double omega_k, Branch b);

EmissionPoint emission_point(const SystemParams& p, double k, LossModelKind model, const LinearDispersion& disp = {});

}  // namespace uscpol
