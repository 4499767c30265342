#pragma once

#include "uscpol/params.hpp"

namespace uscpol {

struct ZeroPointShares {
  double lower = 0.0;
  double upper = 0.0;
};

struct VirtualPopulations {
  double photon = 0.0;
  double dresser = 0.0;
};

struct ZeroPointShift {
  double dw_zp = 0.0;
  double n_int = 0.0;
};

struct VacuumObservables {
  double k = 0.0;
  double d2_ratio = 0.0;
  double e2_ratio = 0.0;
  double dzp_lp = 0.0;
  double dzp_up = 0.0;
  double n_ph = 0.0;
  double n_d = 0.0;
  double n_int = 0.0;
  double dw_zp = 0.0;
};

// <D_k^2> in units of eps0 E_k^2: (omega_k/omega_up) sin^2 + (omega_k/omega_lp) cos^2.
double displacement_fluctuations(const SystemParams& p, double omega_k);

// Same quantity from the emitter-polariton couplings:
// (omega_e/omega_k) (Omega_lp^2 + Omega_up^2) / Omega_e^2. Requires Omega_e > 0.
double displacement_fluctuations_from_rabi(const SystemParams& p, double omega_k);

ZeroPointShares zero_point_amplitudes(const SystemParams& p, double omega_k);

double efield_fluctuations(const SystemParams& p, double omega_k);

// Displacement plus dresser-polarization terms summed separately.
double efield_fluctuations_expanded(const SystemParams& p, double omega_k);

VirtualPopulations virtual_populations(const SystemParams& p, double omega_k);

ZeroPointShift zero_point_shift(const SystemParams& p, double omega_k);

// omega_k N_ph + omega_d N_d + Omega_d N_int for a supplied interaction term.
double zero_point_shift_from_populations(const SystemParams& p, double omega_k, double n_int);

VacuumObservables vacuum_observables(const SystemParams& p, double k, const LinearDispersion& disp = {});

}  // namespace uscpol
