#include <cmath>
#include <map>

#include "dtnlab/entropy.hpp"
#include "dtnlab/errors.hpp"
#include "dtnlab/harmonics.hpp"

namespace dtnlab {

int l_delta_s(double s, int d, double delta, double rho_hat) {
  if (!(delta > 0.0) || !(rho_hat > 0.0)) {
    throw ParameterError("l_delta_s: delta and rho_hat must be > 0");
  }
  const double p = 2.0 * s + d;
  // Concave in l like the holo-net condition.
  const auto psi = [&](long l) {
    return p * std::log1p(static_cast<double>(l)) + std::log(4.0 * rho_hat) -
           l * std::log(2.0) - std::log(delta);
  };
  const double apex = p / std::log(2.0) - 1.0;
  long last_bad = -1;
  for (long l = 0;; ++l) {
    if (psi(l) > 0.0) last_bad = l;
    else if (l >= apex) break;
    if (l > 10'000'000) throw ParameterError("l_delta_s out of range");
  }
  return static_cast<int>(last_bad + 1);
}

ImageNetSize dtn_image_net_size(const EnergyIntervalSet& S, double s, int d,
                                double delta, double rho_hat) {
  if (!(delta > 0.0 && delta < std::exp(-1.0))) {
    throw ParameterError("image net: delta must lie in (0, 1/e)");
  }
  ImageNetSize out;
  out.l_delta_s = l_delta_s(s, d, delta, rho_hat);
  const double p = 2.0 * s + d;
  for (int l = 0; l < 100000; ++l) {
    const double v = std::exp(p * std::log1p(l) + std::log(4.0 * rho_hat) - l * std::log(2.0));
    out.net_C = std::max(out.net_C, v);
    if (l > p / std::log(2.0) + 2.0 && v < 1e-3 * out.net_C) break;
  }
  const int L = out.l_delta_s;
  out.tuple_bound = 8.0 * std::pow(1.0 + L, 2.0 * d - 2.0);

  std::vector<long> level_count(L + 1);
  long prev = 0;
  long cum = 0;
  for (int l = 0; l <= L; ++l) {
    cum += harmonic_dim(l, d);
    level_count[l] = cum * cum - prev;
    prev = cum * cum;
  }
  out.tuple_count = prev;

  for (const Interval& I : S.intervals()) {
    const double gamma = gamma_for_reach(I, S.sigma() / 6.0 * (1.0 - 1e-9));
    out.gammas.push_back(gamma);
    for (int l = 0; l <= L; ++l) {
      const double dl = std::pow(1.0 + l, -p) * delta;
      const HoloNet net = build_holo_net(I, gamma, out.net_C, dl);
      out.log_cardinality += static_cast<double>(level_count[l]) * net.log_cardinality();
    }
  }
  out.eta = out.log_cardinality / std::pow(std::log(1.0 / delta), 2.0 * d);
  return out;
}

}  // namespace dtnlab
