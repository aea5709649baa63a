#include "imexdg/gmres.hpp"

#include <cmath>
#include <string>

namespace imexdg {
namespace {

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double norm(std::span<const double> a) { return std::sqrt(dot(a, a)); }

}  // namespace

GmresStats gmres(const LinearOperator& op, std::span<const double> rhs, std::vector<double>& x,
                 const GmresConfig& cfg) {
  const std::size_t n = op.size;
  if (rhs.size() != n) throw std::invalid_argument("gmres: rhs size does not match operator");
  if (cfg.restart < 1 || cfg.max_iterations < 1 || !(cfg.rel_tol > 0.0)) {
    throw std::invalid_argument("gmres: invalid configuration");
  }
  for (double v : rhs) {
    if (!std::isfinite(v)) throw std::invalid_argument("gmres: non-finite right-hand side");
  }
  x.resize(n, 0.0);

  GmresStats stats;
  const double rhs_norm = norm(rhs);
  if (rhs_norm == 0.0) {
    std::fill(x.begin(), x.end(), 0.0);
    stats.history.push_back(0.0);
    return stats;
  }
  const double target = cfg.rel_tol * rhs_norm;
  const int m = cfg.restart;

  std::vector<std::vector<double>> basis(m + 1, std::vector<double>(n));
  std::vector<double> h(static_cast<std::size_t>(m + 1) * m, 0.0);
  auto H = [&](int i, int j) -> double& { return h[static_cast<std::size_t>(i) * m + j]; };
  std::vector<double> cs(m), sn(m), g(m + 1), y(m);
  std::vector<double> r(n);

  for (;;) {
    op.apply(x, r);
    for (std::size_t i = 0; i < n; ++i) r[i] = rhs[i] - r[i];
    double beta = norm(r);
    stats.rel_residual = beta / rhs_norm;
    if (stats.history.empty()) stats.history.push_back(stats.rel_residual);
    if (beta <= target) return stats;
    if (stats.iterations >= cfg.max_iterations) {
      throw GmresError("gmres did not converge in " + std::to_string(stats.iterations) +
                           " iterations (relative residual " +
                           std::to_string(stats.rel_residual) + ")",
                       stats.history);
    }

    for (std::size_t i = 0; i < n; ++i) basis[0][i] = r[i] / beta;
    std::fill(g.begin(), g.end(), 0.0);
    g[0] = beta;

    int k = 0;
    for (; k < m && stats.iterations < cfg.max_iterations; ++k) {
      op.apply(basis[k], basis[k + 1]);
      auto& v = basis[k + 1];
      for (int i = 0; i <= k; ++i) {
        const double hik = dot(v, basis[i]);
        H(i, k) = hik;
        for (std::size_t q = 0; q < n; ++q) v[q] -= hik * basis[i][q];
      }
      const double hnext = norm(v);
      H(k + 1, k) = hnext;
      if (hnext > 0.0) {
        for (std::size_t q = 0; q < n; ++q) v[q] /= hnext;
      }
      for (int i = 0; i < k; ++i) {
        const double t = cs[i] * H(i, k) + sn[i] * H(i + 1, k);
        H(i + 1, k) = -sn[i] * H(i, k) + cs[i] * H(i + 1, k);
        H(i, k) = t;
      }
      const double denom = std::hypot(H(k, k), H(k + 1, k));
      cs[k] = H(k, k) / denom;
      sn[k] = H(k + 1, k) / denom;
      H(k, k) = denom;
      H(k + 1, k) = 0.0;
      g[k + 1] = -sn[k] * g[k];
      g[k] = cs[k] * g[k];

      ++stats.iterations;
      stats.history.push_back(std::abs(g[k + 1]) / rhs_norm);
      if (std::abs(g[k + 1]) <= target || hnext == 0.0) {
        ++k;
        break;
      }
    }

    // Back substitution on the k x k triangle, then x += V y.
    for (int i = k - 1; i >= 0; --i) {
      double s = g[i];
      for (int j = i + 1; j < k; ++j) s -= H(i, j) * y[j];
      y[i] = s / H(i, i);
    }
    for (int j = 0; j < k; ++j) {
      for (std::size_t q = 0; q < n; ++q) x[q] += y[j] * basis[j][q];
    }
  }
}

}  // namespace imexdg
