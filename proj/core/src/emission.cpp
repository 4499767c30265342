#include "uscpol/emission.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "uscpol/errors.hpp"

namespace uscpol {

PolaritonWidths polariton_linewidths(const SystemParams& p, double omega_k, LossModelKind model) {
  const auto a = hopfield_angle(p, omega_k);
  const PolaritonWidths cavity{p.gamma_c * a.cos2, p.gamma_c * a.sin2};
  const PolaritonWidths dresser{p.kappa_d * a.sin2, p.kappa_d * a.cos2};
  switch (model) {
    case LossModelKind::cavity_dominated: return cavity;
    case LossModelKind::dresser_dominated: return dresser;
    case LossModelKind::combined: return {cavity.lower + dresser.lower, cavity.upper + dresser.upper};
  }
  return cavity;
}

namespace {

void guard(double width, Branch b) {
  if (!(width > 0.0))
    throw StrongCouplingError("dressed " + std::string(to_string(b)) +
                              " linewidth vanishes; the rate needs a strong-coupling treatment");
}

}  // namespace

double resonant_branch_rabi(const SystemParams& p, double omega_k, Branch b) {
  SystemParams q = p;
  q.omega_e = branch_frequency(p, omega_k, b);
  if (!(q.omega_e > 0.0)) return 0.0;
  const auto r = emitter_polariton_rabi(q, omega_k);
  return b == Branch::lower ? r.lower : r.upper;
}

PurcellRates purcell_rates(const SystemParams& p, double omega_k, LossModelKind model) {
  const auto w = polariton_linewidths(p, omega_k, model);
  guard(w.lower, Branch::lower);
  guard(w.upper, Branch::upper);
  if (model == LossModelKind::combined)
    return {purcell_rate_general(p, omega_k, Branch::lower, model),
            purcell_rate_general(p, omega_k, Branch::upper, model)};

  const auto f = polariton_frequencies(p, omega_k);
  const auto a = hopfield_angle(p, omega_k);
  const double e2 = p.Omega_e * p.Omega_e;
  const double rl = omega_k / f.lower;
  const double ru = omega_k / f.upper;
  if (model == LossModelKind::cavity_dominated)
    return {e2 / (2.0 * p.gamma_c) * rl * rl, e2 / (2.0 * p.gamma_c) * ru * ru};
  return {e2 / (2.0 * p.kappa_d) * rl * rl * (a.cos2 / a.sin2), e2 / (2.0 * p.kappa_d) * ru * ru * (a.sin2 / a.cos2)};
}

double purcell_rate_general(const SystemParams& p, double omega_k, Branch b, LossModelKind model) {
  const auto w = polariton_linewidths(p, omega_k, model);
  const double width = b == Branch::lower ? w.lower : w.upper;
  guard(width, b);
  const double rabi = resonant_branch_rabi(p, omega_k, b);
  return rabi * rabi / (2.0 * width);
}

EmissionPoint emission_point(const SystemParams& p, double k, LossModelKind model, const LinearDispersion& disp) {
  const double wk = disp.frequency(k);
  EmissionPoint e;
  e.k = k;
  e.theta = mixing_angle(p, wk);
  const auto w = polariton_linewidths(p, wk, model);
  e.gamma_lp = w.lower;
  e.gamma_up = w.upper;
  try {
    const auto g = purcell_rates(p, wk, model);
    e.Gamma_lp = g.lower;
    e.Gamma_up = g.upper;
  } catch (const StrongCouplingError&) {
    auto one = [&](Branch b) {
      try {
        return purcell_rate_general(p, wk, b, model);
      } catch (const StrongCouplingError&) {
        return std::numeric_limits<double>::infinity();
      }
    };
    e.Gamma_lp = one(Branch::lower);
    e.Gamma_up = one(Branch::upper);
  }
  e.weak_lp = !(w.lower < 3.0 * resonant_branch_rabi(p, wk, Branch::lower));
  e.weak_up = !(w.upper < 3.0 * resonant_branch_rabi(p, wk, Branch::upper));
  return e;
}

}  // namespace uscpol
