#include "dtnlab/harmonics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "dtnlab/errors.hpp"

namespace dtnlab {

namespace {

long binom(long n, long k) {
  if (n < 0 || k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  long r = 1;
  for (long i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace

long harmonic_dim(int j, int d) {
  if (j < 0) throw ParameterError("harmonic_dim: j must be >= 0");
  if (d < 2) throw ParameterError("harmonic_dim: d must be >= 2");
  return binom(j + d - 1, d - 1) - binom(j + d - 3, d - 1);
}

HarmonicIndex HarmonicIndex::make(int j, int p, int d) {
  if (p < 1 || p > harmonic_dim(j, d)) {
    throw ParameterError("HarmonicIndex: slot p out of range");
  }
  return {j, p, d};
}

std::vector<HarmonicIndex> enumerate_harmonics(int j_max, int d) {
  std::vector<HarmonicIndex> out;
  for (int j = 0; j <= j_max; ++j) {
    const long pj = harmonic_dim(j, d);
    for (int p = 1; p <= pj; ++p) out.push_back({j, p, d});
  }
  return out;
}

double basis_eval_angle(int j, int p, double theta) {
  using std::numbers::pi;
  if (j == 0) {
    if (p != 1) throw ParameterError("basis_eval: slot p out of range");
    return 1.0 / std::sqrt(2.0 * pi);
  }
  if (p == 1) return std::cos(j * theta) / std::sqrt(pi);
  if (p == 2) return std::sin(j * theta) / std::sqrt(pi);
  throw ParameterError("basis_eval: slot p out of range");
}

double basis_eval(const HarmonicIndex& idx, const std::vector<double>& omega) {
  if (static_cast<int>(omega.size()) != idx.d) {
    throw ParameterError("basis_eval: point has wrong dimension");
  }
  if (idx.d == 2) {
    return basis_eval_angle(idx.j, idx.p, std::atan2(omega[1], omega[0]));
  }
  if (idx.d == 3) {
    if (idx.p < 1 || idx.p > 2 * idx.j + 1) {
      throw ParameterError("basis_eval: slot p out of range");
    }
    const double norm =
        std::sqrt(omega[0] * omega[0] + omega[1] * omega[1] + omega[2] * omega[2]);
    const double polar = std::acos(std::clamp(omega[2] / norm, -1.0, 1.0));
    const double azimuth = std::atan2(omega[1], omega[0]);
    const int m = idx.p - idx.j - 1;
    const unsigned l = static_cast<unsigned>(idx.j);
    if (m == 0) return std::sph_legendre(l, 0, polar);
    const double y = std::sph_legendre(l, static_cast<unsigned>(std::abs(m)), polar);
    // Undo the Condon-Shortley phase so every f_jp is a plain polynomial
    // restriction with positive leading coefficient.
    const double cs = (std::abs(m) % 2 == 0) ? 1.0 : -1.0;
    return std::sqrt(2.0) * cs * y *
           (m > 0 ? std::cos(m * azimuth) : std::sin(-m * azimuth));
  }
  throw CapabilityError("basis_eval: only d = 2 and d = 3 are supported");
}

CoeffSeq::CoeffSeq(int d, int j_max) : d_(d), j_max_(j_max) {
  if (d < 2) throw ParameterError("CoeffSeq: d must be >= 2");
  if (j_max < 0) throw ParameterError("CoeffSeq: j_max must be >= 0");
}

void CoeffSeq::set(const HarmonicIndex& idx, std::complex<double> c) {
  if (idx.d != d_) throw ParameterError("CoeffSeq: dimension mismatch");
  if (idx.j > j_max_) throw ParameterError("CoeffSeq: degree above j_max");
  (void)HarmonicIndex::make(idx.j, idx.p, idx.d);
  entries_[idx] = c;
}

std::complex<double> CoeffSeq::get(const HarmonicIndex& idx) const {
  const auto it = entries_.find(idx);
  return it == entries_.end() ? std::complex<double>{} : it->second;
}

double hs_norm(const CoeffSeq& c, double s) {
  if (s < 0.0) throw ParameterError("hs_norm: s must be >= 0");
  double acc = 0.0;
  for (const auto& [idx, v] : c.entries()) {
    acc += std::pow(1.0 + idx.j, 2.0 * s) * std::norm(v);
  }
  return std::sqrt(acc);
}

}  // namespace dtnlab
