#pragma once

#include <complex>
#include <string>
#include <vector>

#include "uscpol/emission.hpp"
#include "uscpol/hopfield.hpp"
#include "uscpol/params.hpp"

namespace uscpol {

inline constexpr double kPoleGuard = 1e-9;

// Per-k TM0 correlator
// (1/2)(omega_e/Omega_e^2) sum_b Omega_b^2 / (omega - omega_b - i gamma_b/2).
// Throws PoleError for a lossless branch with |omega - omega_b| < kPoleGuard.
std::complex<double> correlator_tm0_fourier(const SystemParams& p, double omega_k, double omega,
                                            const PolaritonWidths& widths = {});

// Lossless bracket of the compact correlator:
// (omega_k^2/omega_lp^2) cos^2 omega_lp/(omega - omega_lp) + (omega_k^2/omega_up^2) sin^2 omega_up/(omega - omega_up).
double correlator_bracket(const SystemParams& p, double omega_k, double omega);

// Fourier kernel K_omega(k). Throws PoleError near omega_lp, omega_up or omega_d.
double kernel_K(const SystemParams& p, double omega_k, double omega);

// Large-k expansion K = sum_n A_n (omega_d / k)^n for omega inside the gap.
struct KernelTail {
  double a1 = 0.0;
  double a2 = 0.0;
  double a3 = 0.0;
};
KernelTail kernel_tail(const SystemParams& p, double omega);

// dK/dk at k = 0+: the coefficient of the |k| cusp.
double kernel_cusp_slope(const SystemParams& p, double omega);

bool in_gap(const SystemParams& p, double omega);

struct EmitterShiftCoefficients {
  SystemParams params;
  double electrostatic = 0.0;     // coefficient of (b + b^dag)(b + b^dag)
  double kernel_prefactor = 0.0;  // Omega_e^2 / (4 omega_e)
  bool has_gap = false;

  // Omega_e^2/(4 omega_e) K_{omega_e}(k); zero when there is no gap.
  double kernel(double omega_k) const;
};

// Throws PoleError when omega_e equals omega_d.
EmitterShiftCoefficients emitter_shift_coefficients(const SystemParams& p);

struct TripletLeg {
  Branch branch = Branch::lower;
  double k = 0.0;
};

// Product Omega_l1 Omega_l2 Omega_l3 / Omega_e^3; negative k uses |k|.
double chi2_effective(const SystemParams& p, const TripletLeg& a, const TripletLeg& b, const TripletLeg& c,
                      const LinearDispersion& disp = {});

struct PhaseMatchedTriplet {
  TripletLeg l1, l2, l3;
  double mismatch = 0.0;  // omega_1 + omega_2 - omega_3
  double chi2_scale = 0.0;
};

// Collinear three-wave matches on a 1D grid: k1 + k2 = k3 on the grid and
// |omega_1 + omega_2 - omega_3| < tol_omega. Legs with zero frequency are
// skipped. Ordered pairs (k1, k2) are both reported.
std::vector<PhaseMatchedTriplet> find_phase_matched_triplets(const SystemParams& p, const std::vector<double>& k_grid,
                                                             double tol_omega, const LinearDispersion& disp = {});

}  // namespace uscpol
