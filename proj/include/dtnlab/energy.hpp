#pragma once

#include <complex>
#include <vector>

namespace dtnlab {

using cplx = std::complex<double>;

// E together with k = sqrt(E) on the principal branch (Re k >= 0, so k is
// holomorphic in E off the negative real axis and k > 0 for E > 0).
struct ComplexEnergy {
  cplx E{0.0, 0.0};
  cplx k{0.0, 0.0};

  static ComplexEnergy from_energy(cplx E);
  static ComplexEnergy real(double E) { return from_energy(cplx(E, 0.0)); }
};

struct Interval {
  double a = 0.0;
  double b = 0.0;
};

// n Chebyshev-Lobatto nodes on [a, b], ascending, endpoints included.
std::vector<double> chebyshev_lobatto(double a, double b, int n);

// S = union of closed intervals, with regularity margin sigma and the
// per-interval sampling density used for sup-over-S quantities.
class EnergyIntervalSet {
 public:
  EnergyIntervalSet(std::vector<Interval> intervals, double sigma,
                    int grid_points_per_interval = 33);

  const std::vector<Interval>& intervals() const noexcept { return intervals_; }
  double sigma() const noexcept { return sigma_; }
  int grid_points_per_interval() const noexcept { return points_; }

  // Nodes of each interval (a single node for a point interval).
  std::vector<std::vector<double>> interval_grids() const;
  // All nodes, interval by interval.
  std::vector<double> grid() const;
  // 2n - 1 points per interval; contains every current node.
  EnergyIntervalSet refined() const;

 private:
  std::vector<Interval> intervals_;
  double sigma_;
  int points_;
};

}  // namespace dtnlab
