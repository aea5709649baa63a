#pragma once

#include <array>
#include <vector>

namespace imexdg {

/// Local face of the reference quadrilateral [-1,1]^2.
enum class LocalFace { left = 0, right = 1, bottom = 2, top = 3 };

enum class FaceKind { interior, periodic, wall_bottom, wall_top };

struct FaceSide {
  int element = -1;
  LocalFace local = LocalFace::left;
};

/// One geometric face. `normal` points from `minus` into `plus`. Wall faces
/// have no plus side and their normal is the outward normal of `minus`.
struct Face {
  FaceSide minus;
  FaceSide plus;
  bool has_plus = false;
  std::array<double, 2> normal{0.0, 0.0};
  FaceKind kind = FaceKind::interior;
};

/// Structured channel of axis-aligned quadrilaterals, periodic in x and
/// bounded by walls at z = 0 and z = lz. Elements are numbered
/// e = ez * nx + ex.
class ChannelMesh {
 public:
  ChannelMesh(int nx, int nz, double lx, double lz);

  int nx() const { return nx_; }
  int nz() const { return nz_; }
  double lx() const { return lx_; }
  double lz() const { return lz_; }
  double hx() const { return lx_ / nx_; }
  double hz() const { return lz_ / nz_; }
  int num_elements() const { return nx_ * nz_; }

  int element(int ex, int ez) const { return ez * nx_ + ex; }
  int column(int e) const { return e % nx_; }
  int row(int e) const { return e / nx_; }

  /// Lower-left corner of element e.
  std::array<double, 2> origin(int e) const {
    return {column(e) * hx(), row(e) * hz()};
  }

  /// Determinant of the affine reference-to-physical map.
  double jacobian_det() const { return hx() * hz() / 4.0; }

  /// Face index touching element e on side `local`.
  int face_of(int e, LocalFace local) const {
    return element_faces_[4 * e + static_cast<int>(local)];
  }

  /// The opposite side of a face; element == -1 on walls.
  FaceSide neighbor(FaceSide side) const;

  const std::vector<Face>& faces() const { return faces_; }

 private:
  int nx_;
  int nz_;
  double lx_;
  double lz_;
  std::vector<Face> faces_;
  std::vector<int> element_faces_;
};

ChannelMesh build_mesh(int nx, int nz, double lx, double lz);

/// Smallest element diameter (diagonal of the rectangle).
double min_diameter(const ChannelMesh& mesh);

}  // namespace imexdg
