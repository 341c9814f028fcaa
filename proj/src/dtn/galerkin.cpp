#include "dtnlab/galerkin.hpp"

#include <cmath>
#include <vector>

#include "dtnlab/chebyshev.hpp"
#include "dtnlab/errors.hpp"

namespace dtnlab {

namespace {

using Eigen::MatrixXcd;
using Eigen::VectorXcd;
using Lu = Eigen::PartialPivLU<MatrixXcd>;

// Collocation pieces for one parity p = +-1.
struct Folded {
  Eigen::MatrixXd D2;   // M x M
  Eigen::MatrixXd D;    // M x M
  Eigen::VectorXd bnd;  // -(D2[k,0] + p D2[k,N]) - (D[k,0] + p D[k,N])/r_k
  Eigen::RowVectorXd read;  // D[0,l] + p D[0,N-l]
  double read_bnd = 0.0;    // D[0,0] + p D[0,N]
};

Folded fold(const ChebyshevGrid& g, int M, int p) {
  const int N = g.N;
  Folded f;
  f.D2.resize(M, M);
  f.D.resize(M, M);
  f.bnd.resize(M);
  f.read.resize(M);
  for (int k = 1; k <= M; ++k) {
    for (int l = 1; l <= M; ++l) {
      f.D2(k - 1, l - 1) = g.D2(k, l) + p * g.D2(k, N - l);
      f.D(k - 1, l - 1) = g.D(k, l) + p * g.D(k, N - l);
    }
    f.bnd(k - 1) = -(g.D2(k, 0) + p * g.D2(k, N)) -
                   (g.D(k, 0) + p * g.D(k, N)) / g.x(k);
  }
  for (int l = 1; l <= M; ++l) f.read(l - 1) = g.D(0, l) + p * g.D(0, N - l);
  f.read_bnd = g.D(0, 0) + p * g.D(0, N);
  return f;
}

struct Workspace {
  int M = 0;
  int J = 0;
  Eigen::VectorXd r;
  Folded even, odd;
  const Folded& parity(int j) const { return (j % 2 == 0) ? even : odd; }
};

MatrixXcd free_operator(const Workspace& w, int j, cplx E) {
  const Folded& f = w.parity(j);
  MatrixXcd L = f.D2.cast<cplx>();
  for (int k = 0; k < w.M; ++k) {
    L.row(k) += (f.D.row(k) / w.r(k)).cast<cplx>();
    L(k, k) += E - static_cast<double>(j) * j / (w.r(k) * w.r(k));
  }
  return L;
}

cplx readout(const Workspace& w, int j, const VectorXcd& u, double boundary) {
  const Folded& f = w.parity(j);
  return f.read.cast<cplx>().dot(u) + f.read_bnd * boundary;
}

Eigen::VectorXcd sample(const RadialProfile& g, const Eigen::VectorXd& r) {
  VectorXcd out(r.size());
  for (int k = 0; k < r.size(); ++k) out(k) = g(r(k));
  return out;
}

void check_rcond(const Lu& lu, const GalerkinOptions& opt, double& min_rcond) {
  const double rc = lu.rcond();
  min_rcond = std::min(min_rcond, rc);
  if (!(rc > opt.rcond_floor)) {
    throw ConditioningError(
        "collocation system is singular: E is numerically an eigenvalue", rc);
  }
}

double cut_mode_leak(const Eigen::MatrixXcd& lambda, int J) {
  double leak = 0.0;
  for (int j0 = -J + 1; j0 <= J - 1; ++j0) {
    for (int i : {-J, J}) leak = std::max(leak, std::abs(lambda(J + i, J + j0)));
  }
  return leak;
}

}  // namespace

GalerkinSolution galerkin_solve(const Potential& v, const ComplexEnergy& E,
                                int j_max, const GalerkinOptions& opt) {
  if (j_max < 0) throw ParameterError("j_max must be >= 0");
  GalerkinSolution sol = opt.method == CoupledMethod::Collocation
                             ? collocation_solve(v, E, j_max, opt)
                             : log_derivative_solve(v, E, j_max, opt);
  sol.leak = cut_mode_leak(sol.lambda, j_max);
  return sol;
}

GalerkinSolution collocation_solve(const Potential& v, const ComplexEnergy& E,
                                   int j_max, const GalerkinOptions& opt) {
  if (j_max < 0) throw ParameterError("j_max must be >= 0");
  if (opt.r_points < 4) throw ParameterError("r_points must be >= 4");
  Workspace w;
  w.M = opt.r_points;
  w.J = j_max;
  const ChebyshevGrid g = chebyshev_grid(2 * w.M + 1);
  w.r = g.x.segment(1, w.M);
  w.even = fold(g, w.M, +1);
  w.odd = fold(g, w.M, -1);
  const int J = w.J;
  const int size = 2 * J + 1;

  GalerkinSolution sol;
  sol.J = J;
  sol.phi0 = MatrixXcd::Zero(size, size);
  sol.phi = MatrixXcd::Zero(size, size);

  // Free operators depend on j only through j^2: one LU per |j|.
  std::vector<Lu> free_lu(J + 1);
  std::vector<VectorXcd> free_u(J + 1);
  for (int j = 0; j <= J; ++j) {
    free_lu[j].compute(free_operator(w, j, E.E));
    check_rcond(free_lu[j], opt, sol.min_rcond);
    free_u[j] = free_lu[j].solve(w.parity(j).bnd.cast<cplx>());
    const cplx val = readout(w, j, free_u[j], 1.0);
    sol.phi0(J + j, J + j) = val;
    sol.phi0(J - j, J - j) = val;
  }

  // Sampled mode profiles.
  std::vector<std::pair<int, VectorXcd>> coupling;
  VectorXcd g0 = VectorXcd::Zero(w.M);
  bool has_pos = false, has_neg = false;
  for (const auto& [n, prof] : v.modes()) {
    if (n == 0) {
      g0 = sample(prof, w.r);
    } else if (std::abs(n) <= 2 * J) {
      coupling.emplace_back(n, sample(prof, w.r));
      (n > 0 ? has_pos : has_neg) = true;
    }
  }
  const bool has_diag = g0.cwiseAbs().maxCoeff() > 0.0;

  if (!(has_pos && has_neg)) {
    sol.triangular = true;
    std::vector<Lu> own_lu;
    if (has_diag) {
      own_lu.resize(J + 1);
      for (int j = 0; j <= J; ++j) {
        MatrixXcd A = free_operator(w, j, E.E);
        A.diagonal() -= g0;
        own_lu[j].compute(A);
        check_rcond(own_lu[j], opt, sol.min_rcond);
      }
    }
    const auto solve = [&](int j, const VectorXcd& rhs) -> VectorXcd {
      const int a = std::abs(j);
      return has_diag ? own_lu[a].solve(rhs) : free_lu[a].solve(rhs);
    };
    const int dir = has_neg ? -1 : 1;
    std::vector<VectorXcd> u(size);
    std::vector<bool> live(size);
    for (int j0 = -J; j0 <= J; ++j0) {
      std::fill(live.begin(), live.end(), false);
      u[J + j0] = has_diag ? solve(j0, w.parity(j0).bnd.cast<cplx>())
                           : free_u[std::abs(j0)];
      live[J + j0] = true;
      sol.phi(J + j0, J + j0) = readout(w, j0, u[J + j0], 1.0);
      for (int j = j0 + dir; j >= -J && j <= J; j += dir) {
        VectorXcd rhs = VectorXcd::Zero(w.M);
        bool any = false;
        for (const auto& [n, gn] : coupling) {
          const int src = j - n;
          if (src < -J || src > J || !live[J + src]) continue;
          rhs += gn.cwiseProduct(u[J + src]);
          any = true;
        }
        if (!any) continue;
        u[J + j] = solve(j, rhs);
        live[J + j] = true;
        sol.phi(J + j, J + j0) = readout(w, j, u[J + j], 0.0);
      }
    }
  } else {
    // Dense coupled system, block (j, j) = L_j - G_0, (j, j-n) = -G_n.
    const int M = w.M;
    MatrixXcd A = MatrixXcd::Zero(size * M, size * M);
    MatrixXcd B = MatrixXcd::Zero(size * M, size);
    for (int j = -J; j <= J; ++j) {
      const int row = (J + j) * M;
      A.block(row, row, M, M) = free_operator(w, j, E.E);
      A.block(row, row, M, M).diagonal() -= g0;
      for (const auto& [n, gn] : coupling) {
        const int src = j - n;
        if (src < -J || src > J) continue;
        A.block(row, (J + src) * M, M, M).diagonal() -= gn;
      }
      B.block(row, J + j, M, 1) = w.parity(j).bnd.cast<cplx>();
    }
    Lu lu(A);
    check_rcond(lu, opt, sol.min_rcond);
    const MatrixXcd U = lu.solve(B);
    for (int j0 = -J; j0 <= J; ++j0) {
      for (int i = -J; i <= J; ++i) {
        sol.phi(J + i, J + j0) =
            readout(w, i, U.block((J + i) * M, J + j0, M, 1),
                    i == j0 ? 1.0 : 0.0);
      }
    }
  }

  if (v.is_zero()) sol.phi = sol.phi0;
  sol.lambda = sol.phi - sol.phi0;
  return sol;
}

Eigen::MatrixXcd exponential_to_real(const Eigen::MatrixXcd& m_exp, int J) {
  const int size = 2 * J + 1;
  if (m_exp.rows() != size || m_exp.cols() != size) {
    throw ParameterError("exponential_to_real: size mismatch");
  }
  const double h = 1.0 / std::sqrt(2.0);
  MatrixXcd U = MatrixXcd::Zero(size, size);
  U(J, 0) = 1.0;
  int col = 1;
  for (int j = 1; j <= J; ++j) {
    U(J + j, col) = h;  // cos
    U(J - j, col) = h;
    ++col;
    U(J + j, col) = cplx(0.0, -h);  // sin
    U(J - j, col) = cplx(0.0, h);
    ++col;
  }
  return U.adjoint() * m_exp * U;
}

}  // namespace dtnlab
