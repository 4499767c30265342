#pragma once

#include <cstddef>
#include <vector>

#include "uscpol/params.hpp"

namespace uscpol {

struct PotentialOptions {
  std::size_t fft_size = 2048;    // N, power of two >= 1024
  double decay_threshold = 1e-6;  // |remainder(k_max)| relative to its maximum
  bool normalize = true;          // also compute the center-panel reference
  std::size_t threads = 1;
};

struct PotentialProfile {
  double omega = 0.0;
  std::vector<double> r;
  std::vector<double> u;             // raw U(r)
  std::vector<double> u_normalized;  // u / reference_max (empty if not normalized)
  double reference_omega = 0.0;
  double reference_max = 0.0;  // max |U| of the center-panel configuration on r
  double k_max = 0.0;
  double dk = 0.0;
};

// omega_d + (omega_d_bar - omega_d) / divisor; divisor 2 is the gap center.
double gap_probe_frequency(const SystemParams& p, double divisor);

// U(r) = (1/2) int d^2k/(2 pi)^2 K_omega(k) exp(i k.r) on a square N x N grid.
// The |k| cusp and the 1/k, 1/k^2, 1/k^3 tail of K are subtracted and added
// back through their exact transforms; the smooth remainder goes through the
// DFT. Throws DomainError if omega is outside the gap and ResolutionError if
// the grid cannot hold both the kernel decay and the requested r range.
// With Omega_d = 0 there is no gap and U is identically zero.
PotentialProfile effective_potential(const SystemParams& p, double omega, const std::vector<double>& r,
                                     const PotentialOptions& opt = {});

// Reference route: (1/4 pi) int_0^inf k K(k) J0(k r) dk by adaptive
// Gauss-Kronrod between the zeros of J0 with epsilon-algorithm summation.
std::vector<double> effective_potential_hankel(const SystemParams& p, double omega, const std::vector<double>& r,
                                               std::size_t threads = 1);

// Least-squares slope of log|U| against log r over r in [r_lo, r_hi].
double loglog_slope(const std::vector<double>& r, const std::vector<double>& u, double r_lo, double r_hi);

}  // namespace uscpol
