#include "uscpol/tomography.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <mutex>
#include <optional>

#include "uscpol/errors.hpp"
#include "uscpol/parallel.hpp"

namespace uscpol {

PeakSet detect_peaks(const std::vector<double>& omega, const std::vector<double>& column, double min_prominence,
                     double k) {
  const std::size_t n = column.size();
  if (n < 3) throw DomainError("peak detection needs at least 3 samples");
  if (omega.size() != n) throw DomainError("omega grid and column lengths differ");
  if (!(min_prominence >= 0.0)) throw DomainError("min_prominence must be >= 0");
  for (double v : column)
    if (!std::isfinite(v)) throw NumericalError("non-finite sample in transmission column");
  const double step = (omega.back() - omega.front()) / static_cast<double>(n - 1);
  if (!(step > 0.0)) throw DomainError("omega grid must be increasing");
  for (std::size_t i = 1; i < n; ++i)
    if (std::abs(omega[i] - omega[i - 1] - step) > 1e-6 * step) throw DomainError("omega grid must be uniform");

  PeakSet out;
  out.k = k;
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const double y = column[i];
    if (!(y > column[i - 1] && y >= column[i + 1])) continue;
    // plateau: accept once, at its left end, only if it drops afterwards
    std::size_t j = i;
    while (j + 1 < n && column[j + 1] == y) ++j;
    if (j + 1 == n) continue;
    if (!(column[j + 1] < y)) continue;

    double left_min = y;
    for (std::size_t l = i; l-- > 0;) {
      if (column[l] > y) break;
      left_min = std::min(left_min, column[l]);
    }
    double right_min = y;
    for (std::size_t r = j + 1; r < n; ++r) {
      if (column[r] > y) break;
      right_min = std::min(right_min, column[r]);
    }
    const double prominence = y - std::max(left_min, right_min);
    if (prominence < min_prominence || prominence <= 0.0) continue;

    Peak pk{omega[i], y, prominence};
    if (j == i) {
      const double ym = column[i - 1];
      const double yp = column[i + 1];
      const double curv = ym - 2.0 * y + yp;
      if (curv < 0.0) {
        const double d = 0.5 * (ym - yp) / curv;
        pk.omega = omega[i] + d * step;
        pk.height = y - 0.25 * (ym - yp) * d;
      }
    } else {
      pk.omega = 0.5 * (omega[i] + omega[j]);
    }
    out.peaks.push_back(pk);
    i = j;
  }
  return out;
}

TomographyRecord minimal_anticrossing(const SpectralMap& map, double omega_e, Branch branch,
                                      const AnticrossingOptions& options) {
  if (map.k.empty() || map.omega.size() < 3) throw DomainError("spectral map is too small");
  if (!(options.window > 0.0)) throw DomainError("window must be > 0");

  struct Pair {
    double minus;
    double plus;
  };
  std::vector<std::optional<Pair>> pairs(map.k.size());
  std::vector<double> column(map.omega.size());
  for (std::size_t ik = 0; ik < map.k.size(); ++ik) {
    double peak_max = 0.0;
    for (std::size_t j = 0; j < column.size(); ++j) {
      column[j] = std::norm(map.at(ik, j));
      peak_max = std::max(peak_max, column[j]);
    }
    if (!(peak_max > 0.0)) continue;
    const PeakSet ps = detect_peaks(map.omega, column, options.rel_prominence * peak_max, map.k[ik]);
    std::optional<double> below;
    std::optional<double> above;
    for (const Peak& pk : ps.peaks) {
      if (std::abs(pk.omega - omega_e) > options.window) continue;
      if (pk.omega < omega_e) below = pk.omega;
      if (pk.omega > omega_e && !above) above = pk.omega;
    }
    if (below && above) pairs[ik] = Pair{*below, *above};
  }

  std::size_t first = map.k.size();
  std::size_t last = 0;
  std::size_t best = map.k.size();
  for (std::size_t ik = 0; ik < pairs.size(); ++ik) {
    if (!pairs[ik]) continue;
    first = std::min(first, ik);
    last = ik;
    if (best == map.k.size() || pairs[ik]->plus - pairs[ik]->minus < pairs[best]->plus - pairs[best]->minus)
      best = ik;
  }
  if (best == map.k.size())
    throw ResolvabilityError("no doublet within " + format_number(options.window) + " of omega_e = " +
                             format_number(omega_e));

  TomographyRecord rec;
  rec.branch = branch;
  rec.omega_e = omega_e;
  rec.k_x = map.k[best];
  rec.omega_minus = pairs[best]->minus;
  rec.omega_plus = pairs[best]->plus;
  rec.omega_bar = 0.5 * (rec.omega_plus + rec.omega_minus);
  rec.Omega_bar = 0.5 * (rec.omega_plus - rec.omega_minus);
  rec.at_edge = best == first || best == last;
  if (rec.Omega_bar < options.threshold)
    throw ResolvabilityError("splitting " + format_number(rec.Omega_bar) + " at omega_e = " + format_number(omega_e) +
                             " is below the resolvability threshold " + format_number(options.threshold));
  return rec;
}

double ReconstructionCurve::median_error() const {
  if (relative_error.empty()) return std::numeric_limits<double>::quiet_NaN();
  std::vector<double> e = relative_error;
  std::sort(e.begin(), e.end());
  const std::size_t m = e.size() / 2;
  return e.size() % 2 ? e[m] : 0.5 * (e[m - 1] + e[m]);
}

namespace {

struct Sample {
  double k;
  double value;  // omega_bar * Omega_bar
};

std::vector<Sample> products(const std::vector<TomographyRecord>& recs) {
  std::vector<Sample> s;
  for (const auto& r : recs) {
    if (!s.empty() && s.back().k == r.k_x) {
      s.back().value = 0.5 * (s.back().value + r.omega_bar * r.Omega_bar);
      continue;
    }
    s.push_back({r.k_x, r.omega_bar * r.Omega_bar});
  }
  return s;
}

double interpolate(const std::vector<Sample>& s, double k) {
  auto it = std::lower_bound(s.begin(), s.end(), k, [](const Sample& a, double x) { return a.k < x; });
  if (it == s.end()) return s.back().value;
  if (it->k == k || it == s.begin()) return it->value;
  const Sample& b = *it;
  const Sample& a = *(it - 1);
  const double t = (k - a.k) / (b.k - a.k);
  return a.value + t * (b.value - a.value);
}

void sort_records(std::vector<TomographyRecord>& r) {
  std::stable_sort(r.begin(), r.end(), [](const TomographyRecord& a, const TomographyRecord& b) {
    return a.k_x < b.k_x || (a.k_x == b.k_x && a.omega_e < b.omega_e);
  });
}

}  // namespace

ReconstructionCurve reconstruct(const SystemParams& p, std::vector<TomographyRecord> lower,
                                std::vector<TomographyRecord> upper, std::size_t samples, const LinearDispersion& disp) {
  if (samples < 2) throw DomainError("reconstruction needs at least 2 common k samples");
  if (lower.size() < 2) throw CoverageError("lower branch has " + std::to_string(lower.size()) + " valid records");
  if (upper.size() < 2) throw CoverageError("upper branch has " + std::to_string(upper.size()) + " valid records");
  sort_records(lower);
  sort_records(upper);
  const auto lp = products(lower);
  const auto up = products(upper);
  const double k_lo = std::max(lp.front().k, up.front().k);
  const double k_hi = std::min(lp.back().k, up.back().k);
  if (!(k_hi > k_lo)) throw CoverageError("branches share no k-range");

  std::vector<double> ks(samples);
  for (std::size_t i = 0; i < samples; ++i)
    ks[i] = k_lo + (k_hi - k_lo) * static_cast<double>(i) / static_cast<double>(samples - 1);

  ReconstructionCurve c;
  for (double k : ks) {
    const double rec = interpolate(up, k) / interpolate(lp, k);
    const double ana = hopfield_angle(p, disp.frequency(k)).tan();
    c.k.push_back(k);
    c.tan_reconstructed.push_back(rec);
    c.tan_analytic.push_back(ana);
    c.relative_error.push_back(std::abs(rec - ana) / ana);
  }
  return c;
}

TomographyResult tomography_sweep(const SystemParams& p, const std::vector<double>& omega_e_values,
                                  const std::vector<double>& k_grid, const std::vector<double>& omega_grid,
                                  const TomographyOptions& options) {
  if (omega_e_values.empty()) throw DomainError("omega_e list is empty");
  if (k_grid.empty() || omega_grid.size() < 3) throw DomainError("tomography grids are too small");

  const double widest = std::max({p.gamma_c, p.kappa_d, p.kappa_e});
  AnticrossingOptions ac;
  ac.window = options.window > 0.0 ? options.window : 2.0 * std::max(p.Omega_e, widest);
  ac.rel_prominence = options.rel_prominence;
  ac.threshold = 0.5 * widest;

  const std::size_t n = omega_e_values.size();
  std::vector<std::optional<TomographyRecord>> found(n);
  std::vector<std::string> notes(n);
  parallel_for(n, options.threads, [&](std::size_t i) {
    SystemParams q = p;
    q.omega_e = omega_e_values[i];
    const std::string tag = "omega_e = " + format_number(q.omega_e) + ": ";
    Branch b;
    if (q.omega_e < q.omega_d) {
      b = Branch::lower;
    } else if (q.omega_e > q.omega_d_bar()) {
      b = Branch::upper;
    } else {
      notes[i] = tag + "inside the polariton gap, skipped";
      return;
    }
    try {
      const SpectralMap map = transmission_map(q, k_grid, omega_grid, 1, options.dispersion);
      TomographyRecord rec = minimal_anticrossing(map, q.omega_e, b, ac);
      if (rec.at_edge) {
        notes[i] = tag + "minimal splitting at the edge of the paired k-range (k = " + format_number(rec.k_x) +
                   "), skipped";
        return;
      }
      found[i] = rec;
    } catch (const ResolvabilityError& e) {
      notes[i] = tag + e.what();
    } catch (const DomainError& e) {
      notes[i] = tag + e.what();
    }
  });

  TomographyResult out;
  for (std::size_t i = 0; i < n; ++i) {
    if (!notes[i].empty()) out.diagnostics.push_back(notes[i]);
    if (!found[i]) continue;
    (found[i]->branch == Branch::lower ? out.lower : out.upper).push_back(*found[i]);
  }
  sort_records(out.lower);
  sort_records(out.upper);
  out.curve = reconstruct(p, out.lower, out.upper, options.samples, options.dispersion);
  return out;
}

}  // namespace uscpol
