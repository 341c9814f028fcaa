#include "dtnlab/energy.hpp"

#include <cmath>
#include <numbers>

#include "dtnlab/errors.hpp"

namespace dtnlab {

ComplexEnergy ComplexEnergy::from_energy(cplx E) {
  if (!std::isfinite(E.real()) || !std::isfinite(E.imag())) {
    throw ParameterError("energy must be finite");
  }
  return {E, std::sqrt(E)};
}

std::vector<double> chebyshev_lobatto(double a, double b, int n) {
  if (n < 1) throw ParameterError("chebyshev_lobatto: n must be >= 1");
  if (a == b || n == 1) return {0.5 * (a + b)};
  std::vector<double> x(n);
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  for (int i = 0; i < n; ++i) {
    x[i] = mid - half * std::cos(std::numbers::pi * i / (n - 1));
  }
  // Pin the endpoints exactly.
  x.front() = a;
  x.back() = b;
  return x;
}

EnergyIntervalSet::EnergyIntervalSet(std::vector<Interval> intervals,
                                     double sigma, int grid_points_per_interval)
    : intervals_(std::move(intervals)),
      sigma_(sigma),
      points_(grid_points_per_interval) {
  if (intervals_.empty()) throw ParameterError("energy set has no intervals");
  for (const Interval& I : intervals_) {
    if (!(I.a <= I.b) || !std::isfinite(I.a) || !std::isfinite(I.b)) {
      throw ParameterError("energy interval needs finite a <= b");
    }
  }
  if (!(sigma_ > 0.0)) throw ParameterError("sigma must be > 0");
  if (points_ < 2) throw ParameterError("need >= 2 grid points per interval");
}

std::vector<std::vector<double>> EnergyIntervalSet::interval_grids() const {
  std::vector<std::vector<double>> out;
  out.reserve(intervals_.size());
  for (const Interval& I : intervals_) {
    out.push_back(chebyshev_lobatto(I.a, I.b, points_));
  }
  return out;
}

std::vector<double> EnergyIntervalSet::grid() const {
  std::vector<double> out;
  for (const auto& g : interval_grids()) out.insert(out.end(), g.begin(), g.end());
  return out;
}

EnergyIntervalSet EnergyIntervalSet::refined() const {
  return EnergyIntervalSet(intervals_, sigma_, 2 * points_ - 1);
}

}  // namespace dtnlab
