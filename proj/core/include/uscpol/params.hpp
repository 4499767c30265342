#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace uscpol {

// Frequencies, couplings and linewidths in units of the dresser frequency.
// Lengths are in r0 = c / omega_d, so the cavity light line is omega_k = |k|.
struct SystemParams {
  double omega_d = 1.0;
  double Omega_d = 0.0;
  double omega_e = 0.0;
  double Omega_e = 0.0;
  double gamma_c = 0.01;
  double kappa_d = 0.05;
  double kappa_e = 0.05;

  double omega_d_bar() const;  // sqrt(omega_d^2 + Omega_d^2), upper gap edge
  double omega_e_bar() const;  // sqrt(omega_e^2 + Omega_e^2)

  bool operator==(const SystemParams&) const = default;
};

// Throws ValidationError naming the first violated invariant.
void validate(const SystemParams& p);

// True when Omega_e stays below ratio * omega_e.
bool weak_emitter(const SystemParams& p, double ratio = 0.3);

// Linear TM0 dispersion omega_k = c |k|.
struct LinearDispersion {
  double c = 1.0;
  double frequency(double k) const;
  double wavevector(double omega_k) const;
};

struct Grid {
  double start = 0.0;
  double stop = 0.0;
  std::size_t count = 2;
  bool log = false;

  std::vector<double> points() const;
  double step() const;  // linear step; 0 for log grids
  bool operator==(const Grid&) const = default;
};

namespace codata {
inline constexpr double elementary_charge = 1.602176634e-19;   // C
inline constexpr double vacuum_permittivity = 8.8541878128e-12;  // F/m
inline constexpr double electron_mass = 9.1093837015e-31;        // kg
}  // namespace codata

struct DopingInput {
  double n_2d = 0.0;   // sheet density, m^-2
  double f_osc = 1.0;  // oscillator strength
  double L_c = 0.0;    // cavity height, m
  double m_eff = 0.0;  // effective mass, kg
};

// Omega = sqrt(f e^2 n / (eps0 m L_c)) in rad/s. A zero density gives zero.
double rabi_from_doping(const DopingInput& d);

enum class LossModelKind { cavity_dominated, dresser_dominated, combined };

std::string_view to_string(LossModelKind kind);
LossModelKind parse_loss_model(std::string_view text);

// Everything a run needs: physics plus sampling choices.
struct Config {
  SystemParams params;
  std::optional<Grid> k_grid;
  std::optional<Grid> omega_grid;
  std::optional<Grid> r_grid;
  std::vector<Grid> omega_e_list;
  LossModelKind loss_model = LossModelKind::cavity_dominated;
  std::size_t fft_size = 2048;
  double tol_omega = 1e-3;
  double min_prominence = 1e-3;
  bool potential_oracle = false;

  std::vector<double> omega_e_values() const;
  bool operator==(const Config&) const = default;
};

// Parses `key = value` lines; `#` starts a comment. Omega_d, omega_e and
// Omega_e are required. Throws ParseError or ValidationError.
Config load_config(std::string_view text);
Config load_config_file(const std::string& path);

// Canonical text form; load_config(serialize(c)) == c.
std::string serialize(const Config& c);

// Non-fatal advisories for a parsed configuration.
std::vector<std::string> config_warnings(const Config& c);

std::string format_number(double v);  // shortest round-trip representation

}  // namespace uscpol
