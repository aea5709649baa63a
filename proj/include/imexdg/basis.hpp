#pragma once

#include <vector>

namespace imexdg {

/// 1D nodal Lagrange basis on the Gauss-Legendre points of [-1,1].
///
/// The 2D basis is the tensor product of this one; quadrature is collocated
/// with the nodes, so every mass-type operator is diagonal.
class TensorBasis {
 public:
  explicit TensorBasis(int degree);

  int degree() const { return degree_; }
  int n1d() const { return degree_ + 1; }
  int n2d() const { return n1d() * n1d(); }

  const std::vector<double>& nodes() const { return nodes_; }
  const std::vector<double>& weights() const { return weights_; }

  /// D1[i * n1d + j] = l_j'(xi_i).
  double d1(int i, int j) const { return d1_[i * n1d() + j]; }
  const std::vector<double>& d1() const { return d1_; }

  /// l_j(-1) and l_j(+1).
  const std::vector<double>& trace_minus() const { return trace_minus_; }
  const std::vector<double>& trace_plus() const { return trace_plus_; }

  /// All basis functions evaluated at x.
  std::vector<double> values(double x) const;
  /// All basis-function derivatives evaluated at x.
  std::vector<double> derivatives(double x) const;

 private:
  int degree_;
  std::vector<double> nodes_;
  std::vector<double> weights_;
  std::vector<double> d1_;
  std::vector<double> trace_minus_;
  std::vector<double> trace_plus_;
};

inline constexpr int kMaxDegree = 8;

TensorBasis gauss_legendre(int degree);

}  // namespace imexdg
