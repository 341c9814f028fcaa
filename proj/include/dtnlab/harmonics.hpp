#pragma once

// Real orthonormal spherical harmonics f_jp on S^{d-1} (d = 2, 3), their
// multiplicities, and the weighted H^s norm on coefficient sequences.

#include <complex>
#include <map>
#include <vector>

namespace dtnlab {

// Dimension of degree-j spherical harmonics in R^d:
// binom(j+d-1, d-1) - binom(j+d-3, d-1), with binom(n, k) = 0 for n < 0.
long harmonic_dim(int j, int d);

struct HarmonicIndex {
  int j = 0;  // degree
  int p = 1;  // slot in [1, harmonic_dim(j, d)]
  int d = 2;

  // Throws ParameterError unless the invariant 1 <= p <= p_j holds.
  static HarmonicIndex make(int j, int p, int d);

  friend auto operator<=>(const HarmonicIndex&, const HarmonicIndex&) = default;
};

// All indices with degree <= j_max, ordered by (j, p).
std::vector<HarmonicIndex> enumerate_harmonics(int j_max, int d);

// f_jp(omega) for a unit vector omega. d = 2: f_01 = 1/sqrt(2 pi),
// f_j1 = cos(j theta)/sqrt(pi), f_j2 = sin(j theta)/sqrt(pi).
// d = 3: real spherical harmonics, slot p <-> m = p - j - 1 in [-j, j]
// (m > 0 cosine, m < 0 sine type). Other d: CapabilityError.
double basis_eval(const HarmonicIndex& idx, const std::vector<double>& omega);
// d = 2 convenience form on the angle theta.
double basis_eval_angle(int j, int p, double theta);

class CoeffSeq {
 public:
  CoeffSeq(int d, int j_max);

  void set(const HarmonicIndex& idx, std::complex<double> c);
  std::complex<double> get(const HarmonicIndex& idx) const;
  const std::map<HarmonicIndex, std::complex<double>>& entries() const {
    return entries_;
  }
  int d() const noexcept { return d_; }
  int j_max() const noexcept { return j_max_; }

 private:
  int d_;
  int j_max_;
  std::map<HarmonicIndex, std::complex<double>> entries_;
};

// (sum (1+j)^{2s} |c_jp|^2)^{1/2}
double hs_norm(const CoeffSeq& c, double s);

}  // namespace dtnlab
