#include "dtnlab/potential.hpp"

#include <algorithm>
#include <cmath>

#include "dtnlab/errors.hpp"

namespace dtnlab {

namespace {
constexpr double kSmallSupport = 1.0 / 3.0;
constexpr double kSupportSlack = 1e-12;

std::vector<double> clean_breakpoints(std::vector<double> b) {
  std::erase_if(b, [](double r) { return !(r > 0.0 && r < 1.0); });
  std::sort(b.begin(), b.end());
  b.erase(std::unique(b.begin(), b.end()), b.end());
  return b;
}
}  // namespace

double smooth_bump(double t) {
  const double u = 1.0 - t * t;
  if (u <= 0.0) return 0.0;
  return std::exp(1.0 - 1.0 / u);
}

Potential Potential::zero() { return Potential{}; }

Potential Potential::radial(RadialProfile g, double support_radius,
                            bool is_real, double sup_norm,
                            std::vector<double> breakpoints, std::string label) {
  if (!g) throw ParameterError("radial potential needs a profile");
  Potential p;
  p.kind_ = Kind::Radial;
  p.modes_[0] = std::move(g);
  return p.finish(support_radius, is_real, sup_norm, std::move(breakpoints),
                  std::move(label));
}

Potential Potential::fourier(std::map<int, RadialProfile> modes,
                             double support_radius, bool is_real,
                             double sup_norm, std::vector<double> breakpoints,
                             std::string label) {
  for (const auto& [n, g] : modes) {
    if (!g) throw ParameterError("fourier potential: empty mode profile");
    if (is_real && n != 0 && !modes.contains(-n)) {
      throw ParameterError("real potential needs g_{-n} = conj(g_n)");
    }
  }
  Potential p;
  p.kind_ = Kind::AngularFourier;
  p.modes_ = std::move(modes);
  return p.finish(support_radius, is_real, sup_norm, std::move(breakpoints),
                  std::move(label));
}

Potential Potential::finish(double support_radius, bool is_real,
                            double sup_norm, std::vector<double> breakpoints,
                            std::string label) {
  if (!(support_radius > 0.0 && support_radius <= 1.0)) {
    throw ParameterError("support radius must lie in (0, 1]");
  }
  if (!(sup_norm >= 0.0) || !std::isfinite(sup_norm)) {
    throw ParameterError("sup norm must be finite and >= 0");
  }
  support_radius_ = support_radius;
  is_real_ = is_real;
  sup_norm_ = sup_norm;
  breakpoints.push_back(support_radius);
  breakpoints_ = clean_breakpoints(std::move(breakpoints));
  label_ = std::move(label);
  return *this;
}

Potential Potential::constant(cplx c) {
  Potential p = radial([c](double) { return c; }, 1.0, c.imag() == 0.0,
                       std::abs(c), {}, "constant");
  p.oracle_ = true;
  return p;
}

Potential Potential::step(cplx c, double r1) {
  if (!(r1 > 0.0 && r1 <= 1.0)) throw ParameterError("step radius in (0, 1]");
  Potential p = radial([c, r1](double r) { return r <= r1 ? c : cplx(0.0, 0.0); },
                       r1, c.imag() == 0.0, std::abs(c), {r1}, "step");
  p.oracle_ = r1 > kSmallSupport + kSupportSlack;
  return p;
}

Potential Potential::radial_bump(cplx amplitude, double center,
                                 double half_width) {
  if (!(half_width > 0.0) || center < 0.0) {
    throw ParameterError("bump needs half_width > 0 and center >= 0");
  }
  const double support = center + half_width;
  // A bump centred at the origin is a smooth function of |x|; otherwise
  // it is an annulus and its peak value is still |amplitude|.
  Potential p = radial(
      [amplitude, center, half_width](double r) {
        return amplitude * smooth_bump((r - center) / half_width);
      },
      std::min(support, 1.0), amplitude.imag() == 0.0, std::abs(amplitude),
      {std::max(center - half_width, 0.0), support}, "radial_bump");
  return p.with_inner_radius(std::max(center - half_width, 0.0));
}

Potential Potential::counterexample(int n, double m, double sigma) {
  if (n < 1) throw ParameterError("counterexample: n must be >= 1");
  if (!(m > 0.0)) throw ParameterError("counterexample: m must be > 0");
  if (!(sigma > 0.0)) throw ParameterError("counterexample: sigma must be > 0");
  constexpr double kCenter = 7.0 / 24.0;
  constexpr double kHalfWidth = 1.0 / 24.0;
  const double amp = (sigma / 3.0) * std::pow(static_cast<double>(n), -m);
  std::map<int, RadialProfile> modes;
  modes[n] = [amp](double r) {
    return cplx(amp * smooth_bump((r - kCenter) / kHalfWidth), 0.0);
  };
  return fourier(std::move(modes), kCenter + kHalfWidth, false, amp,
                 {kCenter - kHalfWidth, kCenter + kHalfWidth},
                 "counterexample_n" + std::to_string(n))
      .with_inner_radius(kCenter - kHalfWidth);
}

const RadialProfile& Potential::profile() const {
  static const RadialProfile kZeroProfile = [](double) { return cplx(0.0, 0.0); };
  if (modes_.empty()) return kZeroProfile;
  if (kind_ != Kind::Radial) {
    throw ParameterError("potential is not radial");
  }
  return modes_.at(0);
}

cplx Potential::value(double r, double theta) const {
  cplx v(0.0, 0.0);
  for (const auto& [n, g] : modes_) v += g(r) * std::polar(1.0, n * theta);
  return v;
}

Potential Potential::as_oracle(bool flag) const {
  Potential p = *this;
  p.oracle_ = flag;
  return p;
}

Potential Potential::with_inner_radius(double r) const {
  if (!(r >= 0.0 && r < support_radius_ + kSupportSlack)) {
    throw ParameterError("inner radius must lie in [0, support radius)");
  }
  Potential p = *this;
  p.inner_radius_ = r;
  return p;
}

void Potential::require_small_support() const {
  if (is_zero() || oracle_) return;
  if (support_radius_ > kSmallSupport + kSupportSlack) {
    throw ParameterError("potential support must lie in B(0, 1/3)");
  }
}

}  // namespace dtnlab
