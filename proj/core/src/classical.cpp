#include "uscpol/classical.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "uscpol/errors.hpp"
#include "uscpol/parallel.hpp"

namespace uscpol {

namespace {

const cplx I(0.0, 1.0);

}  // namespace

Matrix3c dynamical_matrix(const SystemParams& p, double omega_k, double omega) {
  const cplx wg = omega + I * (0.5 * p.gamma_c);
  const cplx wd = omega + I * (0.5 * p.kappa_d);
  const cplx we = omega + I * (0.5 * p.kappa_e);
  Matrix3c m{};
  m[0][0] = omega_k * omega_k - wg * wg;
  m[0][1] = I * (omega * p.Omega_d);
  m[0][2] = I * (omega * p.Omega_e);
  m[1][0] = -I * (omega * p.Omega_d);
  m[1][1] = p.omega_d * p.omega_d - wd * wd;
  m[1][2] = -p.Omega_d * p.Omega_e;
  m[2][0] = -I * (omega * p.Omega_e);
  m[2][1] = -p.Omega_d * p.Omega_e;
  m[2][2] = p.omega_e * p.omega_e - we * we;
  return m;
}

cplx determinant(const Matrix3c& m) {
  return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
         m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

cplx transmission(const SystemParams& p, double omega_k, double omega) {
  if (p.gamma_c == 0.0) return 0.0;
  const Matrix3c m = dynamical_matrix(p, omega_k, omega);
  const cplx det = determinant(m);
  const cplx cof = m[1][1] * m[2][2] - m[1][2] * m[2][1];
  if (det == cplx(0.0) || !std::isfinite(std::abs(det)))
    throw SingularityError("dynamical matrix is singular at omega_k = " + format_number(omega_k) +
                           ", omega = " + format_number(omega));
  return p.gamma_c * omega_k * cof / det;
}

SpectralMap transmission_map(const SystemParams& p, const std::vector<double>& k_grid,
                             const std::vector<double>& omega_grid, std::size_t threads, const LinearDispersion& disp) {
  SpectralMap map;
  map.k = k_grid;
  map.omega = omega_grid;
  map.values.resize(k_grid.size() * omega_grid.size());
  parallel_for(k_grid.size(), threads, [&](std::size_t i) {
    const double wk = disp.frequency(k_grid[i]);
    for (std::size_t j = 0; j < omega_grid.size(); ++j) map.at(i, j) = transmission(p, wk, omega_grid[j]);
  });
  return map;
}

namespace {

bool lossless(const SystemParams& p) { return p.kappa_d == 0.0 && p.kappa_e == 0.0; }

void pole_guard(const SystemParams& p, cplx den, double scale, double omega) {
  if (lossless(p) && std::abs(den) <= 1e-14 * scale)
    throw PoleError("permittivity pole at omega = " + format_number(omega));
}

// Lossless matrix-form permittivity without pole checks.
double eps_matrix_real(const SystemParams& p, double x) {
  const double ud = p.omega_d * p.omega_d - x;
  const double ue = p.omega_e * p.omega_e - x;
  const double dd = p.Omega_d * p.Omega_d;
  const double de = p.Omega_e * p.Omega_e;
  return 1.0 + (dd * ue + de * ud + 2.0 * dd * de) / (ud * ue - dd * de);
}

}  // namespace

cplx permittivity_hopfield(const SystemParams& p, double omega) {
  const double w2 = omega * omega;
  const cplx vd = p.omega_d_bar() * p.omega_d_bar() - w2 - I * (p.kappa_d * omega);
  const cplx ve = p.omega_e_bar() * p.omega_e_bar() - w2 - I * (p.kappa_e * omega);
  const double dd = p.Omega_d * p.Omega_d;
  const double de = p.Omega_e * p.Omega_e;
  // A vanishing inner denominator is a zero of epsilon, not a pole.
  if ((dd != 0.0 && vd == cplx(0.0)) || (de != 0.0 && ve == cplx(0.0))) return 0.0;
  cplx bracket = 1.0;
  if (dd != 0.0) bracket -= dd / vd;
  if (de != 0.0) bracket -= de / ve;
  pole_guard(p, bracket, 1.0, omega);
  return 1.0 / bracket;
}

cplx permittivity_matrix(const SystemParams& p, double omega) {
  const double w2 = omega * omega;
  const cplx ud = p.omega_d * p.omega_d - w2 - I * (p.kappa_d * omega);
  const cplx ue = p.omega_e * p.omega_e - w2 - I * (p.kappa_e * omega);
  const double dd = p.Omega_d * p.Omega_d;
  const double de = p.Omega_e * p.Omega_e;
  const cplx den = ud * ue - dd * de;
  const double scale = (p.omega_d * p.omega_d + w2) * (p.omega_e * p.omega_e + w2) + dd * de;
  pole_guard(p, den, scale, omega);
  return 1.0 + (dd * ue + de * ud + 2.0 * dd * de) / den;
}

cplx permittivity_independent(const SystemParams& p, double omega) {
  const double w2 = omega * omega;
  const cplx ud = p.omega_d * p.omega_d - w2 - I * (p.kappa_d * omega);
  const cplx ue = p.omega_e * p.omega_e - w2 - I * (p.kappa_e * omega);
  cplx eps = 1.0;
  if (p.Omega_d != 0.0) eps += p.Omega_d * p.Omega_d / ud;
  if (p.Omega_e != 0.0) eps += p.Omega_e * p.Omega_e / ue;
  return eps;
}

PermittivityResult permittivity(const SystemParams& p, double omega) {
  return {omega, permittivity_hopfield(p, omega), permittivity_matrix(p, omega)};
}

std::vector<double> permittivity_poles(const SystemParams& p) {
  const double a = p.omega_d * p.omega_d;
  const double b = p.omega_e * p.omega_e;
  const double c = p.Omega_d * p.Omega_d * p.Omega_e * p.Omega_e;
  // x^2 - (a + b) x + a b - c = 0, solved without cancellation
  const double disc = std::sqrt((a - b) * (a - b) + 4.0 * c);
  const double x_hi = 0.5 * (a + b + disc);
  const double x_lo = x_hi > 0.0 ? (a * b - c) / x_hi : 0.0;
  std::vector<double> out;
  if (x_lo > 0.0) out.push_back(std::sqrt(x_lo));
  if (x_hi > 0.0 && x_hi != x_lo) out.push_back(std::sqrt(x_hi));
  return out;
}

std::vector<double> classical_dispersion_roots(const SystemParams& p, double omega_k) {
  const double k2 = omega_k * omega_k;
  auto f = [&](double w) { return w * w * eps_matrix_real(p, w * w) - k2; };

  // Gershgorin bound on the largest eigenvalue of the quantum quadratic form.
  const double bound2 = std::max({p.omega_d * p.omega_d + p.Omega_d * p.Omega_d + p.Omega_d * omega_k,
                                  p.omega_e * p.omega_e + p.Omega_e * p.Omega_e + p.Omega_e * omega_k,
                                  k2 + (p.Omega_d + p.Omega_e) * omega_k});
  std::vector<double> edges{0.0};
  for (double pole : permittivity_poles(p)) edges.push_back(pole);
  edges.push_back(1.01 * std::sqrt(bound2) + 1e-3 * p.omega_d);
  std::sort(edges.begin(), edges.end());

  std::vector<double> roots;
  for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
    double lo = edges[i];
    double hi = edges[i + 1];
    const double span = hi - lo;
    if (!(span > 0.0)) continue;
    lo += 1e-13 * std::max(span, hi);
    hi -= 1e-13 * std::max(span, hi);
    double flo = f(lo);
    double fhi = f(hi);
    if (!std::isfinite(flo) || !std::isfinite(fhi))
      throw NumericalError("dispersion bracket [" + format_number(lo) + ", " + format_number(hi) +
                           "] has non-finite endpoints");
    if (flo == 0.0 && lo > 0.0) {
      roots.push_back(lo);
      continue;
    }
    if ((flo < 0.0) == (fhi < 0.0)) continue;
    for (int it = 0; it < 200; ++it) {
      const double mid = 0.5 * (lo + hi);
      if (mid <= lo || mid >= hi) break;
      const double fm = f(mid);
      if (fm == 0.0) {
        lo = hi = mid;
        break;
      }
      if ((fm < 0.0) == (flo < 0.0)) {
        lo = mid;
        flo = fm;
      } else {
        hi = mid;
      }
    }
    roots.push_back(0.5 * (lo + hi));
  }
  if (roots.size() > 3) throw NumericalError("more than three dispersion roots bracketed");
  return roots;
}

double classical_purcell(const SystemParams& p, Branch b, double omega_k, LossModelKind model) {
  const auto f = polariton_frequencies(p, omega_k);
  const double wb = b == Branch::lower ? f.lower : f.upper;
  if (!(std::abs(p.omega_e - wb) < 1e-6))
    throw PreconditionError("emitter at " + format_number(p.omega_e) + " is not resonant with the " +
                            std::string(to_string(b)) + " branch at " + format_number(wb));
  const auto widths = polariton_linewidths(p, omega_k, model);
  const double gb = b == Branch::lower ? widths.lower : widths.upper;
  if (!(gb > 0.0)) throw StrongCouplingError("dressed linewidth vanishes");

  // chi_E and chi_d share the denominator (omega_b^2 - omega^2)(omega_o^2 - omega^2);
  // only the resonant factor is lifted to -i gamma_b omega_b.
  // omega_d_bar^2 - omega_b^2 = (delta -+ s)/2 and omega_o^2 - omega_b^2 = +-s, in stable form
  const double x = wb * wb;
  const double delta = p.omega_d_bar() * p.omega_d_bar() - omega_k * omega_k;
  const double g2 = 4.0 * p.Omega_d * p.Omega_d * omega_k * omega_k;
  const double s = std::hypot(delta, 2.0 * p.Omega_d * omega_k);
  double gap_b = 0.0;
  if (b == Branch::lower)
    gap_b = delta >= 0.0 ? 0.5 * (delta + s) : 0.5 * g2 / (s - delta);
  else
    gap_b = delta <= 0.0 ? 0.5 * (delta - s) : -0.5 * g2 / (s + delta);
  const double split = b == Branch::lower ? s : -s;
  const double num_field = x * gap_b;
  const double num_dresser = p.Omega_d * p.Omega_d * omega_k * omega_k;
  const cplx pole = -I * (gb * wb) * split;
  const cplx chi = (num_field + num_dresser) / pole;
  return p.Omega_e * p.Omega_e * chi.imag() / (2.0 * p.omega_e);
}

}  // namespace uscpol
