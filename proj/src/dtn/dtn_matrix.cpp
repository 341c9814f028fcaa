#include "dtnlab/dtn_matrix.hpp"

#include "dtnlab/errors.hpp"

namespace dtnlab {

DtnMatrix DtnMatrix::zeros(int d, int j_max, const ComplexEnergy& E) {
  DtnMatrix m;
  m.d = d;
  m.j_max = j_max;
  m.energy = E;
  m.basis = enumerate_harmonics(j_max, d);
  const auto n = static_cast<Eigen::Index>(m.basis.size());
  m.A = Eigen::MatrixXcd::Zero(n, n);
  return m;
}

int DtnMatrix::index_of(const HarmonicIndex& idx) const {
  if (idx.d != d || idx.j < 0 || idx.j > j_max) {
    throw ParameterError("DtnMatrix: index outside the truncation");
  }
  // Basis is ordered by (j, p); offset of degree j is sum_{l<j} p_l.
  int offset = 0;
  for (int l = 0; l < idx.j; ++l) offset += static_cast<int>(harmonic_dim(l, d));
  if (idx.p < 1 || idx.p > harmonic_dim(idx.j, d)) {
    throw ParameterError("DtnMatrix: slot p out of range");
  }
  return offset + idx.p - 1;
}

cplx DtnMatrix::entry(const HarmonicIndex& jp, const HarmonicIndex& iq) const {
  return A(index_of(iq), index_of(jp));
}

std::vector<int> DtnMatrix::degrees() const {
  std::vector<int> out;
  out.reserve(basis.size());
  for (const auto& b : basis) out.push_back(b.j);
  return out;
}

DtnMatrix operator-(const DtnMatrix& a, const DtnMatrix& b) {
  if (a.d != b.d || a.j_max != b.j_max) {
    throw ParameterError("DtnMatrix difference: shape mismatch");
  }
  DtnMatrix out = a;
  out.A = a.A - b.A;
  out.warnings.insert(out.warnings.end(), b.warnings.begin(), b.warnings.end());
  return out;
}

}  // namespace dtnlab
