#include "uscpol/vacuum.hpp"

#include "uscpol/errors.hpp"
#include "uscpol/hopfield.hpp"

namespace uscpol {

namespace {

void require_positive(double omega_k) {
  if (!(omega_k > 0.0)) throw DomainError("vacuum observables require omega_k > 0");
}

}  // namespace

double displacement_fluctuations(const SystemParams& p, double omega_k) {
  require_positive(omega_k);
  const auto f = polariton_frequencies(p, omega_k);
  const auto a = hopfield_angle(p, omega_k);
  return omega_k / f.upper * a.sin2 + omega_k / f.lower * a.cos2;
}

double displacement_fluctuations_from_rabi(const SystemParams& p, double omega_k) {
  require_positive(omega_k);
  if (!(p.Omega_e > 0.0)) throw DomainError("Rabi-coupling form requires Omega_e > 0");
  const auto r = emitter_polariton_rabi(p, omega_k);
  return p.omega_e / omega_k * (r.lower * r.lower + r.upper * r.upper) / (p.Omega_e * p.Omega_e);
}

ZeroPointShares zero_point_amplitudes(const SystemParams& p, double omega_k) {
  const auto s = rabi_shares(p, omega_k);
  return {s.lower, s.upper};
}

double efield_fluctuations(const SystemParams& p, double omega_k) {
  require_positive(omega_k);
  return (1.0 + p.Omega_d * p.Omega_d / (p.omega_d * omega_k)) * displacement_fluctuations(p, omega_k);
}

double efield_fluctuations_expanded(const SystemParams& p, double omega_k) {
  require_positive(omega_k);
  const auto f = polariton_frequencies(p, omega_k);
  const auto a = hopfield_angle(p, omega_k);
  const double r = p.Omega_d * p.Omega_d / (p.omega_d * p.omega_d);
  return omega_k / f.upper * a.sin2 + omega_k / f.lower * a.cos2 +
         r * (f.lower / omega_k * a.sin2 + f.upper / omega_k * a.cos2);
}

VirtualPopulations virtual_populations(const SystemParams& p, double omega_k) {
  require_positive(omega_k);
  const auto f = polariton_frequencies(p, omega_k);
  const auto a = hopfield_angle(p, omega_k);
  const double wk2 = omega_k * omega_k;
  const double wd2 = p.omega_d * p.omega_d;
  const double lp2 = f.lower * f.lower;
  const double up2 = f.upper * f.upper;
  VirtualPopulations n;
  n.photon = a.sin2 / (4.0 * omega_k) * (up2 + wk2) / f.upper + a.cos2 / (4.0 * omega_k) * (lp2 + wk2) / f.lower - 0.5;
  n.dresser =
      a.sin2 / (4.0 * p.omega_d) * (lp2 + wd2) / f.lower + a.cos2 / (4.0 * p.omega_d) * (up2 + wd2) / f.upper - 0.5;
  return n;
}

ZeroPointShift zero_point_shift(const SystemParams& p, double omega_k) {
  require_positive(omega_k);
  const auto f = polariton_frequencies(p, omega_k);
  ZeroPointShift z;
  z.dw_zp = 0.5 * (f.upper + f.lower) - 0.5 * (omega_k + p.omega_d);
  if (p.Omega_d == 0.0) return {0.0, 0.0};
  const auto n = virtual_populations(p, omega_k);
  z.n_int = (z.dw_zp - omega_k * n.photon - p.omega_d * n.dresser) / p.Omega_d;
  return z;
}

double zero_point_shift_from_populations(const SystemParams& p, double omega_k, double n_int) {
  const auto n = virtual_populations(p, omega_k);
  return omega_k * n.photon + p.omega_d * n.dresser + p.Omega_d * n_int;
}

VacuumObservables vacuum_observables(const SystemParams& p, double k, const LinearDispersion& disp) {
  const double wk = disp.frequency(k);
  VacuumObservables v;
  v.k = k;
  v.d2_ratio = displacement_fluctuations(p, wk);
  v.e2_ratio = efield_fluctuations(p, wk);
  const auto zp = zero_point_amplitudes(p, wk);
  v.dzp_lp = zp.lower;
  v.dzp_up = zp.upper;
  const auto n = virtual_populations(p, wk);
  v.n_ph = n.photon;
  v.n_d = n.dresser;
  const auto z = zero_point_shift(p, wk);
  v.n_int = z.n_int;
  v.dw_zp = z.dw_zp;
  return v;
}

}  // namespace uscpol
