#include "imexdg/mesh.hpp"

#include <cmath>
#include <stdexcept>

namespace imexdg {

ChannelMesh::ChannelMesh(int nx, int nz, double lx, double lz)
    : nx_(nx), nz_(nz), lx_(lx), lz_(lz) {
  if (nx < 1 || nz < 1) {
    throw std::invalid_argument("channel mesh needs at least one element per direction");
  }
  if (!(lx > 0.0) || !(lz > 0.0)) {
    throw std::invalid_argument("channel mesh extents must be positive");
  }

  element_faces_.assign(4 * static_cast<std::size_t>(num_elements()), -1);
  auto attach = [this](FaceSide s, int face) {
    element_faces_[4 * s.element + static_cast<int>(s.local)] = face;
  };

  // Vertical faces: the face on the right of (ex, ez), periodic wrap at ex = nx-1.
  for (int ez = 0; ez < nz_; ++ez) {
    for (int ex = 0; ex < nx_; ++ex) {
      Face f;
      f.minus = {element(ex, ez), LocalFace::right};
      f.plus = {element((ex + 1) % nx_, ez), LocalFace::left};
      f.has_plus = true;
      f.normal = {1.0, 0.0};
      f.kind = (ex + 1 == nx_) ? FaceKind::periodic : FaceKind::interior;
      const int id = static_cast<int>(faces_.size());
      faces_.push_back(f);
      attach(f.minus, id);
      attach(f.plus, id);
    }
  }

  // Horizontal faces, bottom wall to top wall.
  for (int level = 0; level <= nz_; ++level) {
    for (int ex = 0; ex < nx_; ++ex) {
      Face f;
      if (level == 0) {
        f.minus = {element(ex, 0), LocalFace::bottom};
        f.normal = {0.0, -1.0};
        f.kind = FaceKind::wall_bottom;
      } else if (level == nz_) {
        f.minus = {element(ex, nz_ - 1), LocalFace::top};
        f.normal = {0.0, 1.0};
        f.kind = FaceKind::wall_top;
      } else {
        f.minus = {element(ex, level - 1), LocalFace::top};
        f.plus = {element(ex, level), LocalFace::bottom};
        f.has_plus = true;
        f.normal = {0.0, 1.0};
        f.kind = FaceKind::interior;
      }
      const int id = static_cast<int>(faces_.size());
      faces_.push_back(f);
      attach(f.minus, id);
      if (f.has_plus) attach(f.plus, id);
    }
  }
}

FaceSide ChannelMesh::neighbor(FaceSide side) const {
  const Face& f = faces_[face_of(side.element, side.local)];
  if (!f.has_plus) return {-1, side.local};
  const bool is_minus = f.minus.element == side.element && f.minus.local == side.local;
  return is_minus ? f.plus : f.minus;
}

ChannelMesh build_mesh(int nx, int nz, double lx, double lz) {
  return ChannelMesh(nx, nz, lx, lz);
}

double min_diameter(const ChannelMesh& mesh) {
  return std::hypot(mesh.hx(), mesh.hz());
}

}  // namespace imexdg
