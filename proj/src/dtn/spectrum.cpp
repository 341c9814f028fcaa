#include "dtnlab/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "dtnlab/errors.hpp"
#include "dtnlab/harmonics.hpp"
#include "dtnlab/special_functions.hpp"

namespace dtnlab {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kBoundaryRelTol = 1e-12;
}  // namespace

std::vector<DirichletEigenvalue> dirichlet_spectrum(int d, int j_max,
                                                    double E_max) {
  if (d < 2) throw ParameterError("dirichlet_spectrum: d must be >= 2");
  if (j_max < 0) throw ParameterError("dirichlet_spectrum: j_max must be >= 0");
  std::vector<DirichletEigenvalue> out;
  if (!(E_max > 0.0)) return out;
  const double x_max = std::sqrt(E_max);
  for (int j = 0; j <= j_max; ++j) {
    const Order a = Order::from_degree(j, d);
    if (a.value() >= x_max) break;
    const long mult = harmonic_dim(j, d);
    for (double z : bessel_j_zeros_below(a, x_max)) {
      out.push_back({z * z, j, mult});
    }
  }
  std::sort(out.begin(), out.end(),
            [](const DirichletEigenvalue& x, const DirichletEigenvalue& y) {
              return x.value < y.value || (x.value == y.value && x.j < y.j);
            });
  return out;
}

std::vector<DirichletEigenvalue> dirichlet_spectrum_complete(int d,
                                                             double E_max) {
  const int j_max = static_cast<int>(std::ceil(std::sqrt(std::max(E_max, 0.0)))) + 1;
  return dirichlet_spectrum(d, j_max, E_max);
}

double spectrum_distance(cplx E, const std::vector<DirichletEigenvalue>& spec) {
  double best = kInf;
  for (const auto& ev : spec) best = std::min(best, std::abs(E - ev.value));
  return best;
}

double spectrum_distance(cplx E, int d) {
  // Any eigenvalue above |E| + lambda_1 + 1 is farther than lambda_1.
  const double reach = 2.0 * std::abs(E) + 40.0;
  return spectrum_distance(E, dirichlet_spectrum_complete(d, reach));
}

std::string to_string(Regularity r) {
  switch (r) {
    case Regularity::Certified:
      return "certified";
    case Regularity::NecessaryOnly:
      return "necessary-only";
    case Regularity::Violated:
    default:
      return "violated";
  }
}

SigmaCheck sigma_regular_check(Interval I, double sigma, int d,
                               bool real_potentials) {
  if (!(sigma > 0.0)) throw ParameterError("sigma must be > 0");
  if (!(I.a <= I.b)) throw ParameterError("interval needs a <= b");
  // Reach far enough that the lowest eigenvalue is always included.
  const double E_max = std::max(I.b, 0.0) + 2.0 * sigma + 40.0;
  const auto spec = dirichlet_spectrum_complete(d, E_max);
  SigmaCheck out;
  out.distance = kInf;
  for (const auto& ev : spec) {
    const double dist = std::max({I.a - ev.value, 0.0, ev.value - I.b});
    if (dist < out.distance) {
      out.distance = dist;
      out.witness = ev;
    }
  }
  if (std::abs(out.distance - sigma) <= kBoundaryRelTol * sigma) {
    out.verdict = Regularity::NecessaryOnly;
  } else if (out.distance < sigma) {
    out.verdict = Regularity::Violated;
  } else {
    out.verdict =
        real_potentials ? Regularity::Certified : Regularity::NecessaryOnly;
  }
  return out;
}

SigmaCheck sigma_regular_check(const EnergyIntervalSet& S, int d,
                               bool real_potentials) {
  SigmaCheck worst;
  worst.distance = kInf;
  bool first = true;
  for (const Interval& I : S.intervals()) {
    const SigmaCheck c = sigma_regular_check(I, S.sigma(), d, real_potentials);
    if (first || static_cast<int>(c.verdict) > static_cast<int>(worst.verdict) ||
        (c.verdict == worst.verdict && c.distance < worst.distance)) {
      worst = c;
      first = false;
    }
  }
  return worst;
}

double resolvent_bound(double sigma, double v_sup, double dist) {
  if (!(sigma > 0.0)) throw ParameterError("sigma must be > 0");
  if (v_sup < 0.0) throw ParameterError("v_sup must be >= 0");
  if (v_sup > (2.0 / 3.0) * sigma * (1.0 + 1e-12)) {
    throw ParameterError("resolvent_bound needs ||v|| <= 2 sigma / 3");
  }
  const double denom = dist - v_sup;
  if (!(denom > 0.0)) {
    throw RegularityError("resolvent denominator dist - ||v|| is not positive",
                          denom);
  }
  return 1.0 / denom;
}

}  // namespace dtnlab
