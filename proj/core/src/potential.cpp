#include "uscpol/potential.hpp"

#include <fftw3.h>

#include <algorithm>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/bessel.hpp>
#include <cmath>
#include <mutex>
#include <numbers>

#include "uscpol/correlator.hpp"
#include "uscpol/errors.hpp"
#include "uscpol/parallel.hpp"

namespace uscpol {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// K split into an exactly transformable part and a smooth, fast-decaying remainder.
struct KernelSplit {
  SystemParams p;
  double omega;
  KernelTail t;
  double a;      // tail regulator wavevector
  double c3;     // 1/k^3 coefficient of the regulated tail
  double b;      // cusp decay length
  double slope;  // |k| coefficient

  KernelSplit(const SystemParams& params, double w) : p(params), omega(w), t(kernel_tail(params, w)) {
    a = p.omega_d;
    b = 1.0 / p.omega_d;
    // A1/sqrt(k^2+a^2) contributes -A1 a^2/(2k^3); compensate in the third term.
    c3 = t.a3 + t.a1 * (a * a) / (2.0 * p.omega_d * p.omega_d);
    slope = kernel_cusp_slope(p, w);
  }

  double analytic_k(double k) const {
    const double wd = p.omega_d;
    const double q = k * k + a * a;
    const double sq = std::sqrt(q);
    return wd * t.a1 / sq + wd * wd * t.a2 / q + wd * wd * wd * c3 / (q * sq) - (slope / b) * std::exp(-b * k);
  }

  double remainder(double k) const { return kernel_K(p, k, omega) - analytic_k(k); }

  // Exact transform of analytic_k, without the overall 1/2.
  double analytic_r(double r) const {
    const double wd = p.omega_d;
    const double e = std::exp(-a * r);
    return (wd * t.a1 * e / r + wd * wd * t.a2 * std::cyl_bessel_k(0.0, a * r) + wd * wd * wd * c3 * e / a -
            slope / std::pow(b * b + r * r, 1.5)) /
           kTwoPi;
  }
};

// Smallest wavevector beyond which |remainder| stays below threshold * max.
double decay_wavevector(const KernelSplit& s, double threshold) {
  const double wd = s.p.omega_d;
  double peak = 0.0;
  for (int i = 0; i <= 4000; ++i) peak = std::max(peak, std::abs(s.remainder(wd * 0.005 * i)));
  if (peak == 0.0) return wd;
  const double limit = threshold * peak;
  auto below = [&](double k) {
    for (double f : {1.0, 1.25, 1.5, 2.0, 3.0})
      if (std::abs(s.remainder(f * k)) >= limit) return false;
    return true;
  };
  for (double k = wd; k < 1e5 * wd; k *= 1.01)
    if (below(k)) return k;
  throw ResolutionError("kernel remainder does not decay below the DFT threshold");
}

std::mutex& fftw_planner_mutex() {
  static std::mutex m;
  return m;
}

struct FftwBuffers {
  double* in = nullptr;
  fftw_complex* out = nullptr;
  fftw_plan plan = nullptr;

  explicit FftwBuffers(std::size_t n) {
    std::lock_guard lock(fftw_planner_mutex());
    in = fftw_alloc_real(n * n);
    out = fftw_alloc_complex(n * (n / 2 + 1));
    if (!in || !out) throw NumericalError("FFT buffer allocation failed");
    const int ni = static_cast<int>(n);
    plan = fftw_plan_dft_r2c_2d(ni, ni, in, out, FFTW_ESTIMATE);
    if (!plan) throw NumericalError("FFT planning failed");
  }
  ~FftwBuffers() {
    std::lock_guard lock(fftw_planner_mutex());
    if (plan) fftw_destroy_plan(plan);
    fftw_free(in);
    fftw_free(out);
  }
  FftwBuffers(const FftwBuffers&) = delete;
  FftwBuffers& operator=(const FftwBuffers&) = delete;
};

struct RawProfile {
  std::vector<double> u;
  double k_max = 0.0;
  double dk = 0.0;
};

RawProfile dft_profile(const SystemParams& p, double omega, const std::vector<double>& r, const PotentialOptions& opt) {
  RawProfile out;
  out.u.assign(r.size(), 0.0);
  if (p.Omega_d == 0.0) return out;
  if (!in_gap(p, omega))
    throw DomainError("omega = " + format_number(omega) + " is outside the polariton gap (" + format_number(p.omega_d) +
                      ", " + format_number(p.omega_d_bar()) + ")");
  const std::size_t n = opt.fft_size;
  if (n < 1024 || (n & (n - 1)) != 0) throw DomainError("fft_size must be a power of two >= 1024");
  if (r.empty()) return out;
  double r_min = r.front(), r_max = r.front();
  for (double x : r) {
    if (!(x > 0.0)) throw DomainError("potential radii must be positive");
    r_min = std::min(r_min, x);
    r_max = std::max(r_max, x);
  }

  const KernelSplit split(p, omega);
  const double k_req = decay_wavevector(split, opt.decay_threshold);
  const double half = static_cast<double>(n / 2);
  const double k_room = half * kTwoPi / (8.0 * r_max);  // box of 8 r_max
  const double k_max = std::max(k_req, k_room);
  const double dk = k_max / half;
  const double dx = kTwoPi / (static_cast<double>(n) * dk);
  const double box = static_cast<double>(n) * dx;
  if (box < 4.0 * r_max)
    throw ResolutionError("DFT box " + format_number(box) + " too small for r up to " + format_number(r_max) +
                          " with k_max " + format_number(k_req) + "; increase fft_size");
  out.k_max = k_max;
  out.dk = dk;

  const std::size_t m = n / 2 + 1;
  std::vector<double> table(m * m);
  parallel_for(m, opt.threads, [&](std::size_t i) {
    for (std::size_t j = i; j < m; ++j) {
      const double k = dk * std::hypot(static_cast<double>(i), static_cast<double>(j));
      table[i * m + j] = split.remainder(k);
    }
  });
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < i; ++j) table[i * m + j] = table[j * m + i];

  FftwBuffers buf(n);
  auto fold = [n](std::size_t i) { return i <= n / 2 ? i : n - i; };
  parallel_for(n, opt.threads, [&](std::size_t i) {
    const std::size_t fi = fold(i);
    double* row = buf.in + i * n;
    for (std::size_t j = 0; j < n; ++j) row[j] = table[fi * m + fold(j)];
  });
  fftw_execute(buf.plan);

  const double norm = dk * dk / (kTwoPi * kTwoPi);
  const std::size_t cols = n / 2 + 1;
  std::vector<double> g(n / 2 + 1);
  for (std::size_t i = 0; i <= n / 2; ++i) g[i] = buf.out[i * cols][0] * norm;

  auto sample = [&](long idx) { return g[static_cast<std::size_t>(std::abs(idx))]; };
  for (std::size_t q = 0; q < r.size(); ++q) {
    const double t = r[q] / dx;
    const long i0 = static_cast<long>(std::floor(t));
    const double f = t - static_cast<double>(i0);
    const double y0 = sample(i0 - 1), y1 = sample(i0), y2 = sample(i0 + 1), y3 = sample(i0 + 2);
    const double remainder = -f * (f - 1.0) * (f - 2.0) / 6.0 * y0 + (f + 1.0) * (f - 1.0) * (f - 2.0) / 2.0 * y1 -
                             (f + 1.0) * f * (f - 2.0) / 2.0 * y2 + (f + 1.0) * f * (f - 1.0) / 6.0 * y3;
    out.u[q] = 0.5 * (split.analytic_r(r[q]) + remainder);
  }
  return out;
}

double wynn_epsilon(const std::vector<double>& s) {
  const std::size_t n = s.size();
  if (n < 3) return s.empty() ? 0.0 : s.back();
  std::vector<double> prev(n + 1, 0.0);
  std::vector<double> cur(s.begin(), s.end());
  double best = s.back();
  for (std::size_t col = 1; col < n; ++col) {
    std::vector<double> next(n - col);
    for (std::size_t i = 0; i + col < n; ++i) {
      const double diff = cur[i + 1] - cur[i];
      if (diff == 0.0) return cur[i + 1];
      next[i] = prev[i + 1] + 1.0 / diff;
    }
    prev = cur;
    cur = next;
    if (col % 2 == 0) best = cur.back();
  }
  return best;
}

}  // namespace

double gap_probe_frequency(const SystemParams& p, double divisor) {
  return p.omega_d + (p.omega_d_bar() - p.omega_d) / divisor;
}

PotentialProfile effective_potential(const SystemParams& p, double omega, const std::vector<double>& r,
                                     const PotentialOptions& opt) {
  PotentialProfile prof;
  prof.omega = omega;
  prof.r = r;
  RawProfile raw = dft_profile(p, omega, r, opt);
  prof.u = std::move(raw.u);
  prof.k_max = raw.k_max;
  prof.dk = raw.dk;
  if (!opt.normalize) return prof;

  prof.reference_omega = gap_probe_frequency(p, 2.0);
  std::vector<double> ref;
  if (prof.reference_omega == omega || p.Omega_d == 0.0) {
    ref = prof.u;
  } else {
    ref = dft_profile(p, prof.reference_omega, r, opt).u;
  }
  for (double v : ref) prof.reference_max = std::max(prof.reference_max, std::abs(v));
  prof.u_normalized.resize(prof.u.size());
  for (std::size_t i = 0; i < prof.u.size(); ++i)
    prof.u_normalized[i] = prof.reference_max > 0.0 ? prof.u[i] / prof.reference_max : 0.0;
  return prof;
}

std::vector<double> effective_potential_hankel(const SystemParams& p, double omega, const std::vector<double>& r,
                                               std::size_t threads) {
  std::vector<double> out(r.size(), 0.0);
  if (p.Omega_d == 0.0) return out;
  if (!in_gap(p, omega)) throw DomainError("omega = " + format_number(omega) + " is outside the polariton gap");
  using boost::math::quadrature::gauss_kronrod;
  const double k_asym = 40.0 * p.omega_d;
  constexpr int kTerms = 40;

  parallel_for(r.size(), threads, [&](std::size_t q) {
    const double rr = r[q];
    if (!(rr > 0.0)) throw DomainError("potential radii must be positive");
    auto f = [&](double k) { return k * kernel_K(p, k, omega) * std::cyl_bessel_j(0.0, k * rr); };
    auto segment = [&](double a, double b) { return gauss_kronrod<double, 61>::integrate(f, a, b, 6, 1e-11); };

    double head = 0.0;
    double left = 0.0;
    unsigned zero = 1;
    for (;; ++zero) {
      const double right = boost::math::cyl_bessel_j_zero(0.0, zero) / rr;
      // split long segments so the kernel structure near k ~ omega_d is resolved
      const int pieces = std::max(1, static_cast<int>(std::ceil((right - left) / (2.0 * p.omega_d))));
      for (int i = 0; i < pieces; ++i)
        head += segment(left + (right - left) * i / pieces, left + (right - left) * (i + 1) / pieces);
      left = right;
      if (left > k_asym) break;
    }
    std::vector<double> partial;
    double sum = head;
    partial.push_back(sum);
    for (int t = 0; t < kTerms; ++t) {
      const double right = boost::math::cyl_bessel_j_zero(0.0, ++zero) / rr;
      sum += segment(left, right);
      partial.push_back(sum);
      left = right;
    }
    out[q] = wynn_epsilon(partial) / (2.0 * kTwoPi);
  });
  return out;
}

double loglog_slope(const std::vector<double>& r, const std::vector<double>& u, double r_lo, double r_hi) {
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  std::size_t n = 0;
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (r[i] < r_lo || r[i] > r_hi || u[i] == 0.0) continue;
    const double x = std::log(r[i]);
    const double y = std::log(std::abs(u[i]));
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++n;
  }
  if (n < 2) throw DomainError("slope fit needs at least two points in the window");
  const double dn = static_cast<double>(n);
  return (dn * sxy - sx * sy) / (dn * sxx - sx * sx);
}

}  // namespace uscpol
