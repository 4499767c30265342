#pragma once

#include <array>
#include <string_view>

#include "uscpol/params.hpp"

namespace uscpol {

enum class Branch { lower, upper };

std::string_view to_string(Branch b);

struct PolaritonFrequencies {
  double lower = 0.0;
  double upper = 0.0;
};

// cos^2 and sin^2 of the hybridization angle, both computed without
// cancellation so that they stay accurate over many decades of k.
struct HopfieldAngle {
  double cos2 = 1.0;
  double sin2 = 0.0;

  double theta() const;
  double tan() const;
};

struct RabiPair {
  double lower = 0.0;
  double upper = 0.0;
};

struct BranchPoint {
  double k = 0.0;
  double omega_k = 0.0;
  double omega_lp = 0.0;
  double omega_up = 0.0;
  double theta = 0.0;
  double Omega_lp = 0.0;
  double Omega_up = 0.0;
};

struct ThreeModeSpectrum {
  double omega_k = 0.0;
  std::array<double, 3> omega{};                     // ascending
  std::array<std::array<double, 3>, 3> weights{};    // [branch] -> (photon, dresser, emitter)

  // 0 photon, 1 dresser, 2 emitter; ties resolve in that order.
  int dominant(int branch) const;
};

PolaritonFrequencies polariton_frequencies(const SystemParams& p, double omega_k);
double branch_frequency(const SystemParams& p, double omega_k, Branch b);

HopfieldAngle hopfield_angle(const SystemParams& p, double omega_k);
double mixing_angle(const SystemParams& p, double omega_k);

// cos^2(theta) = (omega_up^2 - omega_k^2) / (omega_up^2 - omega_lp^2).
double cos2_from_frequencies(const SystemParams& p, double omega_k);

// Omega_b^2 / Omega_e^2 = (omega_k^2 / (omega_e omega_b)) * {cos^2, sin^2}.
RabiPair rabi_shares(const SystemParams& p, double omega_k);

// Emitter-polariton vacuum Rabi frequencies.
RabiPair emitter_polariton_rabi(const SystemParams& p, double omega_k);

BranchPoint branch_point(const SystemParams& p, double k, const LinearDispersion& disp = {});

ThreeModeSpectrum three_mode_spectrum(const SystemParams& p, double omega_k);

// k such that the branch frequency equals omega_e. Throws GapError when
// omega_e lies in [omega_d, omega_d_bar], RangeError when it is out of range.
double resonant_wavevector(const SystemParams& p, Branch b, const LinearDispersion& disp = {});

// Symmetric 3x3 eigenproblem by cyclic Jacobi rotations. Eigenvalues are
// returned ascending with eigenvectors as columns of `vectors`.
struct SymmetricEigen3 {
  std::array<double, 3> values{};
  std::array<std::array<double, 3>, 3> vectors{};
};
SymmetricEigen3 jacobi_eigen(const std::array<std::array<double, 3>, 3>& a);

}  // namespace uscpol
