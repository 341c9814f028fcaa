#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <random>

#include "dtnlab/entropy.hpp"
#include "dtnlab/errors.hpp"

namespace dtnlab {

namespace {

constexpr double kCube = 1.0 / 6.0;  // members live in [-1/6, 1/6]^d
constexpr long kMaxCells = 50'000'000;

double cached_cm_norm(int d, int k) {
  static std::mutex mu;
  static std::map<std::pair<int, int>, double> cache;
  std::lock_guard lock(mu);
  const auto key = std::make_pair(d, k);
  if (auto it = cache.find(key); it != cache.end()) return it->second;
  const double v = cell_bump_cm_norm(d, k);
  cache.emplace(key, v);
  return v;
}

// Catmull-Rom interpolation of a uniform table on [0, R].
struct RadialTable {
  double R = 0.0;
  std::vector<cplx> y;
  cplx operator()(double r) const {
    const int n = static_cast<int>(y.size());
    if (r >= R) return y.back();
    const double h = R / (n - 1);
    const double s = std::max(r, 0.0) / h;
    const int i = std::min(static_cast<int>(s), n - 2);
    const double t = s - i;
    const auto at = [&](int k) { return y[std::clamp(k, 0, n - 1)]; };
    const cplx p0 = at(i - 1), p1 = at(i), p2 = at(i + 1), p3 = at(i + 2);
    return p1 + 0.5 * t * (p2 - p0 +
                           t * (2.0 * p0 - 5.0 * p1 + 4.0 * p2 - p3 +
                                t * (3.0 * (p1 - p2) + p3 - p0)));
  }
};

}  // namespace

EpsDiscreteFamily EpsDiscreteFamily::build(int d, double m, double eps,
                                           double beta) {
  if (d < 2 || d > 3) throw ParameterError("eps family: d must be 2 or 3");
  if (!(m > 0.0) || !std::isfinite(m)) throw ParameterError("eps family: m must be > 0");
  if (!(beta > 0.0) || !std::isfinite(beta)) {
    throw ParameterError("eps family: beta must be > 0");
  }
  EpsDiscreteFamily f;
  f.d_ = d;
  f.m_ = m;
  f.eps_ = eps;
  f.beta_ = beta;
  f.k_ = static_cast<int>(std::ceil(m - 1e-12));
  f.bump_cm_ = cached_cm_norm(d, f.k_);
  const double mu = f.mu();
  if (!(eps > 0.0) || !(eps < mu * beta)) {
    throw ParameterError("eps family: need 0 < eps < mu*beta (mu = " +
                         std::to_string(mu) + ")");
  }
  const double n_real = std::pow(mu * beta / eps, 1.0 / m);
  if (!(n_real < 1e6)) throw ParameterError("eps family: too many cells per axis");
  f.N_ = std::max(1, static_cast<int>(std::floor(n_real * (1.0 + 1e-14))));
  // Guard against the 1e-14 nudge pushing N over the admissible value.
  if (eps * std::pow(f.N_, m) * f.bump_cm_ > 0.5 * beta * (1.0 + 1e-12)) --f.N_;
  f.N_ = std::max(f.N_, 1);
  f.cells_ = 1;
  for (int i = 0; i < d; ++i) f.cells_ *= f.N_;
  return f;
}

double EpsDiscreteFamily::log_pattern_count() const noexcept {
  return static_cast<double>(cells_) * std::numbers::ln2;
}

double EpsDiscreteFamily::log_count_lower_bound() const noexcept {
  return std::pow(2.0, -d_ - 1) * std::pow(mu() * beta_ / eps_, d_ / m_);
}

double EpsDiscreteFamily::cm_budget() const noexcept {
  return eps_ * std::pow(N_, m_) * bump_cm_;
}

std::vector<int> EpsDiscreteFamily::pattern(std::uint64_t seed) const {
  if (cells_ > kMaxCells) throw CapabilityError("eps family: too many cells to sample");
  std::mt19937_64 rng(seed);
  std::vector<int> s(cells_);
  std::uint64_t bits = 0;
  int left = 0;
  for (long c = 0; c < cells_; ++c) {
    if (left == 0) {
      bits = rng();
      left = 64;
    }
    s[c] = (bits & 1u) ? 1 : -1;
    bits >>= 1;
    --left;
  }
  return s;
}

double EpsDiscreteFamily::cell_center(int i) const {
  return -kCube + (i + 0.5) * cell_width();
}

double EpsDiscreteFamily::member_derivative(const std::vector<int>& signs,
                                            const double* x,
                                            const std::vector<int>& alpha) const {
  if (static_cast<long>(signs.size()) != cells_) {
    throw ParameterError("eps family: pattern size mismatch");
  }
  const double w = cell_width();
  long cell = 0, stride = 1;
  double prod = eps_;
  for (int k = 0; k < d_; ++k) {
    const double xk = x[k];
    if (!(xk > -kCube && xk < kCube)) return 0.0;
    const int i = std::min(static_cast<int>((xk + kCube) / w), N_ - 1);
    const int a = alpha.empty() ? 0 : alpha[k];
    const double y = N_ * (xk - cell_center(i));
    const double v = a == 0 ? cell_bump_1d(y) : cell_bump_jet(y, a)[a];
    if (v == 0.0) return 0.0;
    prod *= v * std::pow(static_cast<double>(N_), a);
    cell += i * stride;
    stride *= N_;
  }
  return signs[cell] * prod;
}

double EpsDiscreteFamily::member_value(const std::vector<int>& signs,
                                       const double* x) const {
  return member_derivative(signs, x, {});
}

namespace {

// Calls fn(x) on a grid of per_cell points per axis in each cell.
template <class Fn>
void for_each_grid_point(int d, int N, double w, int per_cell, Fn&& fn) {
  const int per_axis = N * per_cell;
  std::vector<double> axis(per_axis);
  for (int i = 0; i < N; ++i) {
    for (int q = 0; q < per_cell; ++q) {
      const double off = per_cell == 1 ? 0.5 : static_cast<double>(q) / (per_cell - 1);
      axis[i * per_cell + q] = -kCube + (i + off) * w;
    }
  }
  // Shared cell faces would sit exactly on the boundary; nudge inward.
  for (double& a : axis) a = std::clamp(a, -kCube + 1e-15, kCube - 1e-15);
  std::vector<int> idx(d, 0);
  double x[3];
  while (true) {
    for (int k = 0; k < d; ++k) x[k] = axis[idx[k]];
    fn(x);
    int k = 0;
    while (k < d && ++idx[k] == per_axis) idx[k++] = 0;
    if (k == d) break;
  }
}

}  // namespace

double EpsDiscreteFamily::sup_distance(const std::vector<int>& a,
                                       const std::vector<int>& b,
                                       int per_cell) const {
  double out = 0.0;
  for_each_grid_point(d_, N_, cell_width(), per_cell, [&](const double* x) {
    out = std::max(out, std::abs(member_value(a, x) - member_value(b, x)));
  });
  return out;
}

double EpsDiscreteFamily::sup_norm(const std::vector<int>& signs, int per_cell) const {
  double out = 0.0;
  for_each_grid_point(d_, N_, cell_width(), per_cell, [&](const double* x) {
    out = std::max(out, std::abs(member_value(signs, x)));
  });
  return out;
}

double EpsDiscreteFamily::measured_cm_norm(const std::vector<int>& signs, int k,
                                           int per_cell) const {
  std::vector<std::vector<int>> alphas;
  std::vector<int> a(d_, 0);
  while (true) {
    int total = 0;
    for (int v : a) total += v;
    if (total <= k) alphas.push_back(a);
    int i = 0;
    while (i < d_ && ++a[i] > k) a[i++] = 0;
    if (i == d_) break;
  }
  double out = 0.0;
  for_each_grid_point(d_, N_, cell_width(), per_cell, [&](const double* x) {
    for (const auto& al : alphas) {
      out = std::max(out, std::abs(member_derivative(signs, x, al)));
    }
  });
  return out;
}

Potential EpsDiscreteFamily::as_potential(const std::vector<int>& signs,
                                          int n_cut, double* residual) const {
  if (d_ != 2) throw CapabilityError("angular re-expansion needs d = 2");
  if (n_cut < 0) throw ParameterError("n_cut must be >= 0");
  const double R = std::sqrt(2.0) * kCube;
  const int nr = 401;
  const int nt = std::max(512, 8 * n_cut);
  std::vector<std::vector<cplx>> tab(2 * n_cut + 1, std::vector<cplx>(nr));
  std::vector<double> fv(nt);
  for (int i = 0; i < nr; ++i) {
    const double r = R * i / (nr - 1);
    for (int q = 0; q < nt; ++q) {
      const double th = 2.0 * std::numbers::pi * q / nt;
      const double x[2] = {r * std::cos(th), r * std::sin(th)};
      fv[q] = member_value(signs, x);
    }
    for (int n = -n_cut; n <= n_cut; ++n) {
      cplx acc = 0.0;
      for (int q = 0; q < nt; ++q) {
        acc += fv[q] * std::polar(1.0, -2.0 * std::numbers::pi * n * q / nt);
      }
      tab[n + n_cut][i] = acc / static_cast<double>(nt);
    }
  }
  std::map<int, RadialProfile> modes;
  std::vector<std::shared_ptr<RadialTable>> tables;
  for (int n = -n_cut; n <= n_cut; ++n) {
    auto t = std::make_shared<RadialTable>();
    t->R = R;
    t->y = tab[n + n_cut];
    modes[n] = [t](double r) { return (*t)(r); };
    tables.push_back(t);
  }
  if (residual != nullptr) {
    double res = 0.0;
    for (int i = 0; i < 40; ++i) {
      const double r = R * (i + 0.5) / 40.0;
      for (int q = 0; q < 64; ++q) {
        const double th = 2.0 * std::numbers::pi * (q + 0.37) / 64.0;
        const double x[2] = {r * std::cos(th), r * std::sin(th)};
        cplx sum = 0.0;
        for (int n = -n_cut; n <= n_cut; ++n) {
          sum += (*tables[n + n_cut])(r) * std::polar(1.0, n * th);
        }
        res = std::max(res, std::abs(sum - member_value(signs, x)));
      }
    }
    *residual = res;
  }
  return Potential::fourier(std::move(modes), R, true, eps_, {}, "eps-family member");
}

}  // namespace dtnlab
