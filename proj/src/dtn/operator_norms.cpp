#include "dtnlab/operator_norms.hpp"

#include <algorithm>
#include <cmath>

#include "dtnlab/errors.hpp"

namespace dtnlab {

OperatorNorm hs_operator_norm(const Eigen::MatrixXcd& a,
                              const std::vector<int>& degrees, int d, double s) {
  if (s < 0.0) throw ParameterError("hs_operator_norm: s must be >= 0");
  const auto n = a.rows();
  if (a.cols() != n || static_cast<Eigen::Index>(degrees.size()) != n) {
    throw ParameterError("hs_operator_norm: shape mismatch");
  }
  OperatorNorm out;
  if (n == 0) return out;
  Eigen::VectorXd w(n);
  for (Eigen::Index i = 0; i < n; ++i) w(i) = std::pow(1.0 + degrees[i], s);
  const Eigen::MatrixXcd weighted = w.asDiagonal() * a * w.asDiagonal();
  double sup = 0.0;
  for (Eigen::Index c = 0; c < n; ++c) {
    for (Eigen::Index r = 0; r < n; ++r) {
      const double l = std::max(degrees[r], degrees[c]);
      sup = std::max(sup, std::pow(1.0 + l, 2.0 * s + d) * std::abs(a(r, c)));
    }
  }
  out.bound = 4.0 * sup;
  if (sup == 0.0) return out;
  Eigen::BDCSVD<Eigen::MatrixXcd> svd(weighted);
  out.norm = svd.singularValues()(0);
  return out;
}

OperatorNorm hs_operator_norm(const DtnMatrix& m, double s) {
  return hs_operator_norm(m.A, m.degrees(), m.d, s);
}

double weighted_sup(const DtnMatrix& m, double s) {
  const std::vector<int> deg = m.degrees();
  double sup = 0.0;
  for (Eigen::Index c = 0; c < m.A.cols(); ++c) {
    for (Eigen::Index r = 0; r < m.A.rows(); ++r) {
      const double l = std::max(deg[r], deg[c]);
      sup = std::max(sup, std::pow(1.0 + l, 2.0 * s + m.d) * std::abs(m.A(r, c)));
    }
  }
  return sup;
}

double xss_norm(const EnergyCurveMatrix& curve, double s) {
  double sup = 0.0;
  for (const DtnMatrix& m : curve.samples) sup = std::max(sup, weighted_sup(m, s));
  return sup;
}

std::vector<double> level_maxima(const DtnMatrix& m) {
  std::vector<double> lv(m.j_max + 1, 0.0);
  const std::vector<int> deg = m.degrees();
  for (Eigen::Index c = 0; c < m.A.cols(); ++c) {
    for (Eigen::Index r = 0; r < m.A.rows(); ++r) {
      const int l = std::max(deg[r], deg[c]);
      lv[l] = std::max(lv[l], std::abs(m.A(r, c)));
    }
  }
  return lv;
}

namespace {

std::vector<double> curve_levels(const EnergyCurveMatrix& curve) {
  std::vector<double> lv;
  for (const DtnMatrix& m : curve.samples) {
    const std::vector<double> l = level_maxima(m);
    if (lv.size() < l.size()) lv.resize(l.size(), 0.0);
    for (std::size_t i = 0; i < l.size(); ++i) lv[i] = std::max(lv[i], l[i]);
  }
  return lv;
}

double tail_from_rho(double rho, int j_max, int d, double s) {
  const double a = 2.0 * s + d;
  // (1+l)^a 2^{-l} peaks near l = a/ln 2 - 1.
  const int l_peak = static_cast<int>(std::ceil(a / std::log(2.0)));
  double sup = 0.0;
  for (int l = j_max + 1; l <= std::max(j_max + 1, l_peak + 1); ++l) {
    sup = std::max(sup, std::exp(a * std::log1p(l) - l * std::log(2.0)));
  }
  return 4.0 * rho * sup;
}

double rho_raw(const std::vector<double>& lv) {
  double rho = 0.0;
  for (std::size_t l = 0; l < lv.size(); ++l) {
    rho = std::max(rho, lv[l] * std::ldexp(1.0, static_cast<int>(l)));
  }
  return rho;
}

}  // namespace

double tail_bound_for(const DtnMatrix& m, double s) {
  return tail_from_rho(rho_raw(level_maxima(m)), m.j_max, m.d, s);
}

double tail_bound_for(const EnergyCurveMatrix& curve, double s) {
  if (curve.samples.empty()) return 0.0;
  const DtnMatrix& m0 = curve.samples.front();
  return tail_from_rho(rho_raw(curve_levels(curve)), m0.j_max, m0.d, s);
}

DecayFit decay_fit_levels(std::vector<double> lv, double scale,
                          const DecayFitOptions& opt) {
  if (!(scale > 0.0)) throw ParameterError("decay_fit: scale must be > 0");
  DecayFit fit;
  fit.level_max = std::move(lv);
  const auto& L = fit.level_max;
  const auto peak_it = std::max_element(L.begin(), L.end());
  if (peak_it == L.end() || *peak_it == 0.0) return fit;
  fit.defined = true;
  fit.rho_hat = rho_raw(L) / scale;
  const double floor = std::max(opt.abs_floor, opt.rel_floor * *peak_it);
  // Fit from the peak level over the contiguous run above the noise floor.
  const int first = static_cast<int>(peak_it - L.begin());
  int last = first;
  while (last + 1 < static_cast<int>(L.size()) && L[last + 1] > floor) ++last;
  fit.fit_first = first;
  fit.fit_last = last;
  if (last == first) {
    fit.slope = 0.0;
    return fit;
  }
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const int n = last - first + 1;
  for (int l = first; l <= last; ++l) {
    const double y = std::log2(L[l]);
    sx += l;
    sy += y;
    sxx += static_cast<double>(l) * l;
    sxy += l * y;
  }
  fit.slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  return fit;
}

DecayFit decay_fit(const DtnMatrix& m, double scale, const DecayFitOptions& opt) {
  return decay_fit_levels(level_maxima(m), scale, opt);
}

DecayFit decay_fit(const EnergyCurveMatrix& curve, double scale,
                   const DecayFitOptions& opt) {
  return decay_fit_levels(curve_levels(curve), scale, opt);
}

}  // namespace dtnlab
