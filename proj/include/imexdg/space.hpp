#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <vector>

#include "imexdg/basis.hpp"
#include "imexdg/mesh.hpp"

namespace imexdg {

using ScalarField = std::vector<double>;

/// Three-component velocity-space dof vector, stored component-blocked.
struct VectorField {
  std::vector<double> u;
  std::vector<double> v;
  std::vector<double> w;

  VectorField() = default;
  explicit VectorField(std::size_t n) : u(n, 0.0), v(n, 0.0), w(n, 0.0) {}

  std::size_t size() const { return u.size(); }
  std::vector<double>& operator[](int c) { return c == 0 ? u : (c == 1 ? v : w); }
  const std::vector<double>& operator[](int c) const { return c == 0 ? u : (c == 1 ? v : w); }
};

/// Map between (element, i, j) and flat scalar dof indices; i runs along x
/// and is fastest within an element.
class DofLayout {
 public:
  DofLayout(int num_elements, int n1d) : num_elements_(num_elements), n1d_(n1d) {}

  int n1d() const { return n1d_; }
  int per_element() const { return n1d_ * n1d_; }
  std::size_t size() const { return static_cast<std::size_t>(num_elements_) * per_element(); }

  std::size_t index(int e, int i, int j) const {
    return static_cast<std::size_t>(e) * per_element() + static_cast<std::size_t>(j) * n1d_ + i;
  }
  std::array<int, 3> triple(std::size_t k) const {
    const int e = static_cast<int>(k / per_element());
    const int local = static_cast<int>(k % per_element());
    return {e, local % n1d_, local / n1d_};
  }

 private:
  int num_elements_;
  int n1d_;
};

/// Mesh + basis + layout, plus the collocated quadrature weights
/// w_i w_j |J| at every node (the unweighted diagonal mass matrix).
class DgSpace {
 public:
  DgSpace(ChannelMesh mesh, int degree);

  const ChannelMesh& mesh() const { return mesh_; }
  const TensorBasis& basis() const { return basis_; }
  const DofLayout& layout() const { return layout_; }
  std::size_t size() const { return layout_.size(); }
  int n1d() const { return basis_.n1d(); }

  const std::vector<double>& mass() const { return mass_; }

  /// Physical coordinates of a dof.
  std::array<double, 2> node_coords(std::size_t k) const;

  /// Nodal interpolant of a function of (x, z).
  template <class F>
  ScalarField interpolate(F&& fn) const {
    ScalarField out(size());
    for (std::size_t k = 0; k < out.size(); ++k) {
      const auto xz = node_coords(k);
      out[k] = fn(xz[0], xz[1]);
    }
    return out;
  }

  /// Element containing a physical point and the point's reference coords.
  /// Points on interior element boundaries go to the upper/right element.
  struct Located {
    int element;
    double xi;
    double eta;
  };
  Located locate(double x, double z) const;

 private:
  ChannelMesh mesh_;
  TensorBasis basis_;
  DofLayout layout_;
  std::vector<double> mass_;
};

/// Tensor-product Lagrange evaluation of a nodal field on one element.
double eval_at_point(const DgSpace& space, std::span<const double> field, int element,
                     double xi, double eta);

/// Exact x-derivative (physical units) of the local polynomial at a point.
double eval_dx_at_point(const DgSpace& space, std::span<const double> field, int element,
                        double xi, double eta);

/// Quadrature-weighted sum of a nodal field (integral over the domain).
double integrate(const DgSpace& space, std::span<const double> field);

}  // namespace imexdg
