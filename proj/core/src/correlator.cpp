#include "uscpol/correlator.hpp"

#include <algorithm>
#include <cmath>

#include "uscpol/errors.hpp"

namespace uscpol {

namespace {

void pole_check(double omega, double pole, const char* name) {
  if (std::abs(omega - pole) < kPoleGuard)
    throw PoleError(std::string("omega = ") + format_number(omega) + " sits on the " + name + " pole");
}

}  // namespace

std::complex<double> correlator_tm0_fourier(const SystemParams& p, double omega_k, double omega,
                                            const PolaritonWidths& widths) {
  const auto f = polariton_frequencies(p, omega_k);
  const auto s = rabi_shares(p, omega_k);
  if (widths.lower == 0.0 && s.lower != 0.0) pole_check(omega, f.lower, "lower-polariton");
  if (widths.upper == 0.0 && s.upper != 0.0) pole_check(omega, f.upper, "upper-polariton");
  using C = std::complex<double>;
  const C i(0.0, 1.0);
  C sum = 0.0;
  if (s.lower != 0.0) sum += p.omega_e * s.lower / (omega - f.lower - i * (0.5 * widths.lower));
  if (s.upper != 0.0) sum += p.omega_e * s.upper / (omega - f.upper - i * (0.5 * widths.upper));
  return 0.5 * sum;
}

double correlator_bracket(const SystemParams& p, double omega_k, double omega) {
  const auto f = polariton_frequencies(p, omega_k);
  const auto a = hopfield_angle(p, omega_k);
  const double wd2 = p.omega_d * p.omega_d;
  // omega_k^2/omega_lp^2 = omega_up^2/omega_d^2 and omega_k^2/omega_up^2 = omega_lp^2/omega_d^2
  const double wl = f.upper * f.upper / wd2 * a.cos2;
  const double wu = f.lower * f.lower / wd2 * a.sin2;
  double out = 0.0;
  if (wl != 0.0) {
    pole_check(omega, f.lower, "lower-polariton");
    out += wl * f.lower / (omega - f.lower);
  }
  if (wu != 0.0) {
    pole_check(omega, f.upper, "upper-polariton");
    out += wu * f.upper / (omega - f.upper);
  }
  return out;
}

double kernel_K(const SystemParams& p, double omega_k, double omega) {
  const auto f = polariton_frequencies(p, omega_k);
  const auto a = hopfield_angle(p, omega_k);
  const double wd2 = p.omega_d * p.omega_d;
  const double wl = f.upper * f.upper / wd2 * a.cos2;
  const double wd = p.Omega_d * p.Omega_d / wd2;
  const double wu = f.lower * f.lower / wd2 * a.sin2;
  double out = 0.0;
  if (wl != 0.0) {
    pole_check(omega, f.lower, "lower-polariton");
    out += wl * omega / (omega - f.lower);
  }
  if (wd != 0.0) {
    pole_check(omega, p.omega_d, "dresser");
    out -= wd * omega / (omega - p.omega_d);
  }
  if (wu != 0.0) {
    pole_check(omega, f.upper, "upper-polariton");
    out += wu * omega / (omega - f.upper);
  }
  return out;
}

KernelTail kernel_tail(const SystemParams& p, double omega) {
  const double w = omega / p.omega_d;
  const double o2 = (p.Omega_d / p.omega_d) * (p.Omega_d / p.omega_d);
  KernelTail t;
  t.a1 = -w;
  t.a2 = -w * (o2 * o2 - 4.0 * o2 * w + 4.0 * o2 + 2.0 * w * w * w - 4.0 * w * w + 2.0 * w) / (2.0 * (w - 1.0) * (w - 1.0));
  t.a3 = w * (5.0 * o2 - 2.0 * w * w) / 2.0;
  return t;
}

double kernel_cusp_slope(const SystemParams& p, double omega) { return p.omega_d_bar() / (p.omega_d * omega); }

bool in_gap(const SystemParams& p, double omega) { return p.Omega_d > 0.0 && omega > p.omega_d && omega < p.omega_d_bar(); }

double EmitterShiftCoefficients::kernel(double omega_k) const {
  if (!has_gap) return 0.0;
  return kernel_prefactor * kernel_K(params, omega_k, params.omega_e);
}

EmitterShiftCoefficients emitter_shift_coefficients(const SystemParams& p) {
  if (std::abs(p.omega_e - p.omega_d) < kPoleGuard)
    throw PoleError("omega_e coincides with the dresser frequency");
  EmitterShiftCoefficients c;
  c.params = p;
  c.electrostatic =
      -(p.Omega_e * p.Omega_e / (4.0 * p.omega_e * p.omega_d)) * p.Omega_d * p.Omega_d / (p.omega_d - p.omega_e);
  c.kernel_prefactor = p.Omega_e * p.Omega_e / (4.0 * p.omega_e);
  c.has_gap = p.Omega_d > 0.0;
  return c;
}

namespace {

double leg_ratio(const SystemParams& p, const TripletLeg& leg, const LinearDispersion& disp) {
  const double wk = disp.frequency(leg.k);
  if (wk == 0.0) return 0.0;
  const auto s = rabi_shares(p, wk);
  return std::sqrt(leg.branch == Branch::lower ? s.lower : s.upper);
}

}  // namespace

double chi2_effective(const SystemParams& p, const TripletLeg& a, const TripletLeg& b, const TripletLeg& c,
                      const LinearDispersion& disp) {
  return leg_ratio(p, a, disp) * leg_ratio(p, b, disp) * leg_ratio(p, c, disp);
}

std::vector<PhaseMatchedTriplet> find_phase_matched_triplets(const SystemParams& p, const std::vector<double>& k_grid,
                                                             double tol_omega, const LinearDispersion& disp) {
  if (k_grid.empty()) throw DomainError("phase matching needs a non-empty k grid");
  if (!(tol_omega >= 0.0)) throw DomainError("tol_omega must be >= 0");

  std::vector<double> sorted = k_grid;
  std::sort(sorted.begin(), sorted.end());
  double scale = 0.0;
  for (double k : sorted) scale = std::max(scale, std::abs(k));
  const double match_tol = 1e-9 * std::max(scale, 1.0);

  auto find_on_grid = [&](double k) -> const double* {
    auto it = std::lower_bound(sorted.begin(), sorted.end(), k - match_tol);
    if (it != sorted.end() && std::abs(*it - k) <= match_tol) return &*it;
    return nullptr;
  };

  const Branch branches[] = {Branch::lower, Branch::upper};
  std::vector<PhaseMatchedTriplet> out;
  for (double k1 : k_grid) {
    for (double k2 : k_grid) {
      const double* k3 = find_on_grid(k1 + k2);
      if (!k3) continue;
      const auto f1 = polariton_frequencies(p, disp.frequency(k1));
      const auto f2 = polariton_frequencies(p, disp.frequency(k2));
      const auto f3 = polariton_frequencies(p, disp.frequency(*k3));
      for (Branch b1 : branches) {
        const double w1 = b1 == Branch::lower ? f1.lower : f1.upper;
        if (w1 == 0.0) continue;
        for (Branch b2 : branches) {
          const double w2 = b2 == Branch::lower ? f2.lower : f2.upper;
          if (w2 == 0.0) continue;
          for (Branch b3 : branches) {
            const double w3 = b3 == Branch::lower ? f3.lower : f3.upper;
            if (w3 == 0.0) continue;
            const double mismatch = w1 + w2 - w3;
            if (!(std::abs(mismatch) < tol_omega)) continue;
            PhaseMatchedTriplet t;
            t.l1 = {b1, k1};
            t.l2 = {b2, k2};
            t.l3 = {b3, *k3};
            t.mismatch = mismatch;
            t.chi2_scale = chi2_effective(p, t.l1, t.l2, t.l3, disp);
            out.push_back(t);
          }
        }
      }
    }
  }
  return out;
}

}  // namespace uscpol
