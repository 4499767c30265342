#include "uscpol/hopfield.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "uscpol/errors.hpp"

namespace uscpol {

std::string_view to_string(Branch b) { return b == Branch::lower ? "lp" : "up"; }

double HopfieldAngle::theta() const { return std::atan2(std::sqrt(sin2), std::sqrt(cos2)); }

double HopfieldAngle::tan() const { return std::sqrt(sin2 / cos2); }

int ThreeModeSpectrum::dominant(int branch) const {
  const auto& w = weights[static_cast<std::size_t>(branch)];
  int best = 0;
  for (int i = 1; i < 3; ++i)
    if (w[static_cast<std::size_t>(i)] > w[static_cast<std::size_t>(best)]) best = i;
  return best;
}

namespace {

struct TwoMode {
  double omega_x;  // omega_d^2 + Omega_d^2
  double omega_a;  // omega_k^2
  double g;        // Omega_d omega_k
  double delta;    // omega_x - omega_a
  double s;        // sqrt(delta^2 + 4 g^2)
};

TwoMode two_mode(const SystemParams& p, double omega_k) {
  if (!(omega_k >= 0.0)) throw DomainError("omega_k must be >= 0");
  TwoMode t;
  t.omega_x = p.omega_d * p.omega_d + p.Omega_d * p.Omega_d;
  t.omega_a = omega_k * omega_k;
  t.g = p.Omega_d * omega_k;
  t.delta = t.omega_x - t.omega_a;
  t.s = std::hypot(t.delta, 2.0 * t.g);
  return t;
}

}  // namespace

PolaritonFrequencies polariton_frequencies(const SystemParams& p, double omega_k) {
  const TwoMode t = two_mode(p, omega_k);
  if (t.g == 0.0) {
    const double matter = std::sqrt(t.omega_x);
    return {std::min(omega_k, matter), std::max(omega_k, matter)};
  }
  const double up2 = 0.5 * (t.omega_x + t.omega_a + t.s);
  const double upper = std::sqrt(up2);
  // omega_lp omega_up = omega_k omega_d avoids cancellation in the minus root.
  const double lower = upper > 0.0 ? omega_k * p.omega_d / upper : 0.0;
  return {lower, upper};
}

double branch_frequency(const SystemParams& p, double omega_k, Branch b) {
  const auto f = polariton_frequencies(p, omega_k);
  return b == Branch::lower ? f.lower : f.upper;
}

HopfieldAngle hopfield_angle(const SystemParams& p, double omega_k) {
  const TwoMode t = two_mode(p, omega_k);
  if (t.s == 0.0) return {0.5, 0.5};
  HopfieldAngle a;
  if (t.delta >= 0.0) {
    a.cos2 = (t.s + t.delta) / (2.0 * t.s);
    a.sin2 = 2.0 * t.g * t.g / (t.s * (t.s + t.delta));
  } else {
    a.sin2 = (t.s - t.delta) / (2.0 * t.s);
    a.cos2 = 2.0 * t.g * t.g / (t.s * (t.s - t.delta));
  }
  return a;
}

double mixing_angle(const SystemParams& p, double omega_k) { return hopfield_angle(p, omega_k).theta(); }

double cos2_from_frequencies(const SystemParams& p, double omega_k) {
  const auto f = polariton_frequencies(p, omega_k);
  const double up2 = f.upper * f.upper;
  const double lp2 = f.lower * f.lower;
  if (up2 == lp2) return 0.5;
  return (up2 - omega_k * omega_k) / (up2 - lp2);
}

RabiPair rabi_shares(const SystemParams& p, double omega_k) {
  if (!(p.omega_e > 0.0)) throw DomainError("omega_e must be > 0");
  if (omega_k == 0.0) return {0.0, 0.0};
  const auto f = polariton_frequencies(p, omega_k);
  const auto a = hopfield_angle(p, omega_k);
  const double k2 = omega_k * omega_k;
  return {k2 / (p.omega_e * f.lower) * a.cos2, k2 / (p.omega_e * f.upper) * a.sin2};
}

RabiPair emitter_polariton_rabi(const SystemParams& p, double omega_k) {
  const RabiPair s = rabi_shares(p, omega_k);
  return {p.Omega_e * std::sqrt(s.lower), p.Omega_e * std::sqrt(s.upper)};
}

BranchPoint branch_point(const SystemParams& p, double k, const LinearDispersion& disp) {
  BranchPoint bp;
  bp.k = k;
  bp.omega_k = disp.frequency(k);
  const auto f = polariton_frequencies(p, bp.omega_k);
  bp.omega_lp = f.lower;
  bp.omega_up = f.upper;
  bp.theta = mixing_angle(p, bp.omega_k);
  const auto r = emitter_polariton_rabi(p, bp.omega_k);
  bp.Omega_lp = r.lower;
  bp.Omega_up = r.upper;
  return bp;
}

SymmetricEigen3 jacobi_eigen(const std::array<std::array<double, 3>, 3>& input) {
  auto a = input;
  std::array<std::array<double, 3>, 3> v{};
  for (int i = 0; i < 3; ++i) v[i][i] = 1.0;

  for (int sweep = 0; sweep < 64; ++sweep) {
    const double off = std::abs(a[0][1]) + std::abs(a[0][2]) + std::abs(a[1][2]);
    if (off == 0.0) break;
    for (int pi = 0; pi < 2; ++pi) {
      for (int qi = pi + 1; qi < 3; ++qi) {
        const double apq = a[pi][qi];
        if (apq == 0.0) continue;
        const double app = a[pi][pi];
        const double aqq = a[qi][qi];
        const double g = 100.0 * std::abs(apq);
        if (sweep > 3 && std::abs(app) + g == std::abs(app) && std::abs(aqq) + g == std::abs(aqq)) {
          a[pi][qi] = a[qi][pi] = 0.0;
          continue;
        }
        const double theta = (aqq - app) / (2.0 * apq);
        const double t = std::copysign(1.0, theta) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        const double tau = s / (1.0 + c);
        a[pi][pi] = app - t * apq;
        a[qi][qi] = aqq + t * apq;
        a[pi][qi] = a[qi][pi] = 0.0;
        const int r = 3 - pi - qi;
        const double arp = a[r][pi];
        const double arq = a[r][qi];
        a[r][pi] = a[pi][r] = arp - s * (arq + tau * arp);
        a[r][qi] = a[qi][r] = arq + s * (arp - tau * arq);
        for (int i = 0; i < 3; ++i) {
          const double vip = v[i][pi];
          const double viq = v[i][qi];
          v[i][pi] = vip - s * (viq + tau * vip);
          v[i][qi] = viq + s * (vip - tau * viq);
        }
      }
    }
  }

  std::array<int, 3> order{0, 1, 2};
  std::sort(order.begin(), order.end(), [&](int x, int y) { return a[x][x] < a[y][y]; });
  SymmetricEigen3 out;
  for (int j = 0; j < 3; ++j) {
    out.values[j] = a[order[j]][order[j]];
    for (int i = 0; i < 3; ++i) out.vectors[i][j] = v[i][order[j]];
  }
  return out;
}

ThreeModeSpectrum three_mode_spectrum(const SystemParams& p, double omega_k) {
  if (!(omega_k >= 0.0)) throw DomainError("omega_k must be >= 0");
  // coordinates: 0 dresser, 1 emitter, 2 photon
  std::array<std::array<double, 3>, 3> m{};
  m[0][0] = p.omega_d * p.omega_d + p.Omega_d * p.Omega_d;
  m[1][1] = p.omega_e * p.omega_e + p.Omega_e * p.Omega_e;
  m[2][2] = omega_k * omega_k;
  m[0][2] = m[2][0] = p.Omega_d * omega_k;
  m[1][2] = m[2][1] = p.Omega_e * omega_k;

  const SymmetricEigen3 eig = jacobi_eigen(m);
  ThreeModeSpectrum out;
  out.omega_k = omega_k;
  for (int j = 0; j < 3; ++j) {
    out.omega[j] = std::sqrt(std::max(eig.values[j], 0.0));
    const double d = eig.vectors[0][j], e = eig.vectors[1][j], a = eig.vectors[2][j];
    const double norm = a * a + d * d + e * e;
    out.weights[j] = {a * a / norm, d * d / norm, e * e / norm};
  }
  return out;
}

double resonant_wavevector(const SystemParams& p, Branch b, const LinearDispersion& disp) {
  const double w = p.omega_e;
  const double lo_edge = p.omega_d;
  const double hi_edge = p.omega_d_bar();
  auto gap = [&] {
    return GapError(lo_edge, hi_edge,
                    "omega_e = " + format_number(w) + " lies in the polariton gap [" + format_number(lo_edge) + ", " +
                        format_number(hi_edge) + "]");
  };
  if (!(w > 0.0)) throw RangeError("omega_e must be > 0");
  if (b == Branch::lower && w >= lo_edge) {
    if (w <= hi_edge) throw gap();
    throw RangeError("omega_e above the lower-branch range (0, " + format_number(lo_edge) + ")");
  }
  if (b == Branch::upper && w <= hi_edge) {
    if (w >= lo_edge) throw gap();
    throw RangeError("omega_e below the upper-branch range (" + format_number(hi_edge) + ", inf)");
  }

  auto f = [&](double wk) { return branch_frequency(p, wk, b) - w; };
  double lo = 0.0;
  double hi = std::max(w, p.omega_d);
  while (f(hi) < 0.0) {
    lo = hi;
    hi *= 2.0;
    if (!std::isfinite(hi)) throw RangeError("resonant wavevector not bracketed");
  }
  for (int it = 0; it < 2000 && hi - lo > 4.0 * std::numeric_limits<double>::epsilon() * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    (f(mid) < 0.0 ? lo : hi) = mid;
  }
  return disp.wavevector(0.5 * (lo + hi));
}

}  // namespace uscpol
