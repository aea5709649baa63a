#include "imexdg/space.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace imexdg {

DgSpace::DgSpace(ChannelMesh mesh, int degree)
    : mesh_(std::move(mesh)),
      basis_(degree),
      layout_(mesh_.num_elements(), degree + 1),
      mass_(layout_.size()) {
  const int n = n1d();
  const double det = mesh_.jacobian_det();
  const auto& w = basis_.weights();
  for (int e = 0; e < mesh_.num_elements(); ++e) {
    for (int j = 0; j < n; ++j) {
      for (int i = 0; i < n; ++i) mass_[layout_.index(e, i, j)] = w[i] * w[j] * det;
    }
  }
}

std::array<double, 2> DgSpace::node_coords(std::size_t k) const {
  const auto [e, i, j] = layout_.triple(k);
  const auto o = mesh_.origin(e);
  const auto& xi = basis_.nodes();
  return {o[0] + 0.5 * (xi[i] + 1.0) * mesh_.hx(), o[1] + 0.5 * (xi[j] + 1.0) * mesh_.hz()};
}

DgSpace::Located DgSpace::locate(double x, double z) const {
  if (x < 0.0 || x > mesh_.lx() || z < 0.0 || z > mesh_.lz()) {
    throw std::out_of_range("point outside the channel");
  }
  const int ex = std::min(static_cast<int>(x / mesh_.hx()), mesh_.nx() - 1);
  const int ez = std::min(static_cast<int>(z / mesh_.hz()), mesh_.nz() - 1);
  const double xi = std::clamp(2.0 * (x - ex * mesh_.hx()) / mesh_.hx() - 1.0, -1.0, 1.0);
  const double eta = std::clamp(2.0 * (z - ez * mesh_.hz()) / mesh_.hz() - 1.0, -1.0, 1.0);
  return {mesh_.element(ex, ez), xi, eta};
}

namespace {

void check_reference(double xi, double eta) {
  if (!(std::abs(xi) <= 1.0) || !(std::abs(eta) <= 1.0)) {
    throw std::out_of_range("reference coordinates must lie in [-1,1]^2");
  }
}

double contract(const DgSpace& space, std::span<const double> field, int element,
                const std::vector<double>& lx, const std::vector<double>& lz) {
  const int n = space.n1d();
  const std::size_t base = space.layout().index(element, 0, 0);
  double sum = 0.0;
  for (int j = 0; j < n; ++j) {
    double row = 0.0;
    for (int i = 0; i < n; ++i) row += lx[i] * field[base + j * n + i];
    sum += lz[j] * row;
  }
  return sum;
}

// Exact node hit returns the coefficient itself, without roundoff.
int node_index(const std::vector<double>& nodes, double x) {
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (nodes[i] == x) return static_cast<int>(i);
  }
  return -1;
}

}  // namespace

double eval_at_point(const DgSpace& space, std::span<const double> field, int element,
                     double xi, double eta) {
  check_reference(xi, eta);
  if (element < 0 || element >= space.mesh().num_elements()) {
    throw std::out_of_range("element id out of range");
  }
  const auto& nodes = space.basis().nodes();
  const int ni = node_index(nodes, xi);
  const int nj = node_index(nodes, eta);
  if (ni >= 0 && nj >= 0) return field[space.layout().index(element, ni, nj)];
  return contract(space, field, element, space.basis().values(xi), space.basis().values(eta));
}

double eval_dx_at_point(const DgSpace& space, std::span<const double> field, int element,
                        double xi, double eta) {
  check_reference(xi, eta);
  const double scale = 2.0 / space.mesh().hx();
  return scale * contract(space, field, element, space.basis().derivatives(xi),
                          space.basis().values(eta));
}

double integrate(const DgSpace& space, std::span<const double> field) {
  const auto& m = space.mass();
  double sum = 0.0;
  for (std::size_t k = 0; k < m.size(); ++k) sum += m[k] * field[k];
  return sum;
}

}  // namespace imexdg
