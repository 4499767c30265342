#pragma once

#include <string>
#include <vector>

#include "uscpol/classical.hpp"
#include "uscpol/hopfield.hpp"
#include "uscpol/params.hpp"

namespace uscpol {

struct Peak {
  double omega = 0.0;
  double height = 0.0;
  double prominence = 0.0;
};

struct PeakSet {
  double k = 0.0;
  std::vector<Peak> peaks;  // ascending in omega
};

// Local maxima of `column` (|T|^2 on a uniform omega grid) whose topographic
// prominence is at least min_prominence, refined by a three-point parabola.
PeakSet detect_peaks(const std::vector<double>& omega, const std::vector<double>& column, double min_prominence,
                     double k = 0.0);

struct TomographyRecord {
  Branch branch = Branch::lower;
  double omega_e = 0.0;
  double k_x = 0.0;
  double omega_plus = 0.0;
  double omega_minus = 0.0;
  double omega_bar = 0.0;  // (omega_plus + omega_minus) / 2
  double Omega_bar = 0.0;  // (omega_plus - omega_minus) / 2
  bool at_edge = false;    // minimum sits on the boundary of the paired k-range
};

struct AnticrossingOptions {
  double window = 1.0;           // peaks must lie within omega_e +- window
  double rel_prominence = 1e-3;  // prominence threshold relative to the column maximum
  double threshold = 0.0;        // smallest resolvable Omega_bar
};

// Minimal splitting of the doublet straddling omega_e over the k columns of
// the map. Throws ResolvabilityError when no doublet is found or the minimal
// half-splitting is below options.threshold.
TomographyRecord minimal_anticrossing(const SpectralMap& map, double omega_e, Branch branch,
                                      const AnticrossingOptions& options);

struct ReconstructionCurve {
  std::vector<double> k;
  std::vector<double> tan_reconstructed;
  std::vector<double> tan_analytic;
  std::vector<double> relative_error;

  double median_error() const;
};

struct TomographyOptions {
  double rel_prominence = 1e-3;
  double window = 0.0;  // 0 selects 2 max(Omega_e, gamma_c, kappa_d, kappa_e)
  std::size_t samples = 50;  // common k grid across the branch overlap
  std::size_t threads = 1;
  LinearDispersion dispersion{};
};

struct TomographyResult {
  std::vector<TomographyRecord> lower;  // sorted by k_x
  std::vector<TomographyRecord> upper;
  ReconstructionCurve curve;
  std::vector<std::string> diagnostics;
};

// Sweeps omega_e, simulates a transmission map per value, collects minimal
// anticrossings per branch and forms tan(theta) on a uniform grid spanning
// the k-range both branches cover.
TomographyResult tomography_sweep(const SystemParams& p, const std::vector<double>& omega_e_values,
                                  const std::vector<double>& k_grid, const std::vector<double>& omega_grid,
                                  const TomographyOptions& options = {});

// Same reduction starting from records measured elsewhere.
ReconstructionCurve reconstruct(const SystemParams& p, std::vector<TomographyRecord> lower,
                                std::vector<TomographyRecord> upper, std::size_t samples = 50,
                                const LinearDispersion& disp = {});

}  // namespace uscpol
