#pragma once

#include <array>
#include <complex>
#include <vector>

#include "uscpol/emission.hpp"
#include "uscpol/hopfield.hpp"
#include "uscpol/params.hpp"

namespace uscpol {

using cplx = std::complex<double>;
using Matrix3c = std::array<std::array<cplx, 3>, 3>;

// Coordinates (A, X_d, X_e); losses enter as (omega + i gamma/2)^2.
Matrix3c dynamical_matrix(const SystemParams& p, double omega_k, double omega);
cplx determinant(const Matrix3c& m);

// T = gamma omega_k [M^-1]_00; zero when gamma_c = 0.
cplx transmission(const SystemParams& p, double omega_k, double omega);

// Complex transmission on a (k, omega) grid, row-major with k as the row.
struct SpectralMap {
  std::vector<double> k;
  std::vector<double> omega;
  std::vector<cplx> values;

  const cplx& at(std::size_t ik, std::size_t iw) const { return values[ik * omega.size() + iw]; }
  cplx& at(std::size_t ik, std::size_t iw) { return values[ik * omega.size() + iw]; }
};

SpectralMap transmission_map(const SystemParams& p, const std::vector<double>& k_grid,
                             const std::vector<double>& omega_grid, std::size_t threads = 1,
                             const LinearDispersion& disp = {});

// 1 / (1 - Omega_d^2/(wd_bar^2 - w^2 - i kappa_d w) - Omega_e^2/(we_bar^2 - w^2 - i kappa_e w))
cplx permittivity_hopfield(const SystemParams& p, double omega);

// Two-slab susceptibility-matrix form, losses as omega_a^2 - omega^2 - i kappa_a omega.
cplx permittivity_matrix(const SystemParams& p, double omega);

// 1 + Omega_d^2/(omega_d^2 - omega^2) + Omega_e^2/(omega_e^2 - omega^2), lossy as above.
cplx permittivity_independent(const SystemParams& p, double omega);

struct PermittivityResult {
  double omega = 0.0;
  cplx eps_hopfield;
  cplx eps_matrix;
};
PermittivityResult permittivity(const SystemParams& p, double omega);

// Positive lossless poles of the matrix permittivity, ascending.
std::vector<double> permittivity_poles(const SystemParams& p);

// Positive solutions of omega^2 eps(omega) = omega_k^2 for the lossless
// matrix form; linewidths in p are ignored. Ascending, at most three.
std::vector<double> classical_dispersion_roots(const SystemParams& p, double omega_k);

// Emitter damping from the field and dresser susceptibilities expanded at the
// polariton pole. Requires |omega_e - omega_branch(omega_k)| < 1e-6.
double classical_purcell(const SystemParams& p, Branch b, double omega_k, LossModelKind model);

}  // namespace uscpol
