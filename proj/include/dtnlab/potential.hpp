#pragma once

// Potentials on the unit disk/ball: v(r, theta) = sum_n g_n(r) e^{i n theta}.
// A radial potential is the single mode n = 0 (and is the only kind
// accepted in d = 3).

#include <complex>
#include <functional>
#include <map>
#include <string>
#include <vector>

namespace dtnlab {

using cplx = std::complex<double>;
using RadialProfile = std::function<cplx(double)>;

// exp(1 - 1/(1 - t^2)) for |t| < 1, else 0; peak value 1 at t = 0.
double smooth_bump(double t);

class Potential {
 public:
  enum class Kind { Radial, AngularFourier };

  static Potential zero();
  static Potential radial(RadialProfile g, double support_radius, bool is_real,
                          double sup_norm, std::vector<double> breakpoints = {},
                          std::string label = "radial");
  static Potential fourier(std::map<int, RadialProfile> modes,
                           double support_radius, bool is_real, double sup_norm,
                           std::vector<double> breakpoints = {},
                           std::string label = "fourier");

  // v == c on the whole disk. Oracle only (its support is not in B(0,1/3)).
  static Potential constant(cplx c);
  // c on [0, r1], 0 outside; flagged as oracle when r1 > 1/3.
  static Potential step(cplx c, double r1);
  // amplitude * smooth_bump((r - center)/half_width).
  static Potential radial_bump(cplx amplitude, double center, double half_width);
  // (sigma/3) n^{-m} e^{i n theta} phi(r), phi the bump centred at 7/24 with
  // half-width 1/24, so supp v lies in the annulus 1/4 < r < 1/3.
  static Potential counterexample(int n, double m, double sigma);

  Kind kind() const noexcept { return kind_; }
  const std::map<int, RadialProfile>& modes() const noexcept { return modes_; }
  // g_0 for a radial potential.
  const RadialProfile& profile() const;
  double support_radius() const noexcept { return support_radius_; }
  // v vanishes for r < inner_radius (0 when unknown).
  double inner_radius() const noexcept { return inner_radius_; }
  bool is_real() const noexcept { return is_real_; }
  double sup_norm() const noexcept { return sup_norm_; }
  bool is_oracle() const noexcept { return oracle_; }
  bool is_zero() const noexcept { return modes_.empty(); }
  const std::string& label() const noexcept { return label_; }
  // Radii in (0, 1) where a profile is not smooth; ODE steps stop there.
  const std::vector<double>& breakpoints() const noexcept { return breakpoints_; }

  cplx value(double r, double theta) const;

  // Mark (or unmark) as an oracle potential exempt from the support rule.
  Potential as_oracle(bool flag = true) const;
  Potential with_inner_radius(double r) const;
  // ParameterError when supp v is not inside B(0, 1/3) and v is no oracle.
  void require_small_support() const;

 private:
  Potential finish(double support_radius, bool is_real, double sup_norm,
                   std::vector<double> breakpoints, std::string label);

  Kind kind_ = Kind::Radial;
  std::map<int, RadialProfile> modes_;
  double support_radius_ = 0.0;
  double inner_radius_ = 0.0;
  bool is_real_ = true;
  double sup_norm_ = 0.0;
  bool oracle_ = false;
  std::vector<double> breakpoints_;
  std::string label_ = "zero";
};

}  // namespace dtnlab
