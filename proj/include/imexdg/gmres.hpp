#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <stdexcept>
#include <vector>

namespace imexdg {

/// A square linear map applied matrix-free: out = op(in).
struct LinearOperator {
  std::size_t size = 0;
  std::function<void(std::span<const double>, std::span<double>)> apply;
};

struct GmresConfig {
  double rel_tol = 1e-12;
  int restart = 30;
  int max_iterations = 2000;
};

struct GmresStats {
  int iterations = 0;
  double rel_residual = 0.0;
  /// Relative residual estimate after every inner iteration (index 0 is the
  /// initial residual).
  std::vector<double> history;
};

class GmresError : public std::runtime_error {
 public:
  GmresError(const std::string& what, std::vector<double> history)
      : std::runtime_error(what), history_(std::move(history)) {}
  const std::vector<double>& history() const { return history_; }

 private:
  std::vector<double> history_;
};

/// Restarted GMRES(m) with modified Gram-Schmidt and Givens rotations.
/// Solves op(x) = rhs to ||rhs - op(x)|| <= rel_tol ||rhs||, starting from
/// the contents of x. Throws GmresError when max_iterations is exhausted.
GmresStats gmres(const LinearOperator& op, std::span<const double> rhs, std::vector<double>& x,
                 const GmresConfig& cfg);

}  // namespace imexdg
