#include "imexdg/basis.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace imexdg {
namespace {

// Legendre polynomial P_n and its derivative at x (three-term recurrence).
void legendre(int n, double x, double& p, double& dp) {
  double p0 = 1.0;
  double p1 = x;
  if (n == 0) {
    p = 1.0;
    dp = 0.0;
    return;
  }
  for (int k = 2; k <= n; ++k) {
    const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
    p0 = p1;
    p1 = pk;
  }
  p = p1;
  dp = n * (x * p1 - p0) / (x * x - 1.0);
}

}  // namespace

TensorBasis::TensorBasis(int degree) : degree_(degree) {
  if (degree < 1 || degree > kMaxDegree) {
    throw std::invalid_argument("polynomial degree must be in [1, 8]");
  }
  const int n = degree + 1;
  nodes_.resize(n);
  weights_.resize(n);

  for (int i = 0; i < (n + 1) / 2; ++i) {
    // Chebyshev-like initial guess for the i-th largest root.
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double p = 0.0;
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      legendre(n, x, p, dp);
      const double dx = p / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    legendre(n, x, p, dp);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    nodes_[i] = -x;
    nodes_[n - 1 - i] = x;
    weights_[i] = w;
    weights_[n - 1 - i] = w;
  }
  if (n % 2 == 1) nodes_[n / 2] = 0.0;

  // Barycentric weights give the differentiation matrix directly.
  std::vector<double> bary(n, 1.0);
  for (int j = 0; j < n; ++j) {
    for (int k = 0; k < n; ++k) {
      if (k != j) bary[j] /= (nodes_[j] - nodes_[k]);
    }
  }
  d1_.assign(static_cast<std::size_t>(n) * n, 0.0);
  for (int i = 0; i < n; ++i) {
    double diag = 0.0;
    for (int j = 0; j < n; ++j) {
      if (j == i) continue;
      const double v = bary[j] / bary[i] / (nodes_[i] - nodes_[j]);
      d1_[i * n + j] = v;
      diag -= v;
    }
    d1_[i * n + i] = diag;
  }

  trace_minus_ = values(-1.0);
  trace_plus_ = values(1.0);
}

std::vector<double> TensorBasis::values(double x) const {
  const int n = n1d();
  std::vector<double> out(n, 1.0);
  for (int j = 0; j < n; ++j) {
    for (int k = 0; k < n; ++k) {
      if (k != j) out[j] *= (x - nodes_[k]) / (nodes_[j] - nodes_[k]);
    }
  }
  return out;
}

std::vector<double> TensorBasis::derivatives(double x) const {
  const int n = n1d();
  std::vector<double> out(n, 0.0);
  for (int j = 0; j < n; ++j) {
    double sum = 0.0;
    for (int m = 0; m < n; ++m) {
      if (m == j) continue;
      double term = 1.0 / (nodes_[j] - nodes_[m]);
      for (int k = 0; k < n; ++k) {
        if (k != j && k != m) term *= (x - nodes_[k]) / (nodes_[j] - nodes_[k]);
      }
      sum += term;
    }
    out[j] = sum;
  }
  return out;
}

TensorBasis gauss_legendre(int degree) { return TensorBasis(degree); }

}  // namespace imexdg
