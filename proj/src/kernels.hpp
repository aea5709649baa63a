#pragma once

// Sum-factorized volume and face kernels shared by the matrix-free operators.
// Face terms are gathered per element (each element computes the fluxes on
// its own four faces and writes only its own dofs), so loops never race.

#include <algorithm>
#include <array>
#include <cstddef>
#include <type_traits>

#include "imexdg/space.hpp"

namespace imexdg::detail {

constexpr int kMaxN = kMaxDegree + 1;

inline std::array<double, 2> outward_normal(LocalFace lf) {
  switch (lf) {
    case LocalFace::left: return {-1.0, 0.0};
    case LocalFace::right: return {1.0, 0.0};
    case LocalFace::bottom: return {0.0, -1.0};
    case LocalFace::top: return {0.0, 1.0};
  }
  return {0.0, 0.0};
}

inline LocalFace opposite(LocalFace lf) {
  switch (lf) {
    case LocalFace::left: return LocalFace::right;
    case LocalFace::right: return LocalFace::left;
    case LocalFace::bottom: return LocalFace::top;
    case LocalFace::top: return LocalFace::bottom;
  }
  return lf;
}

/// Neighbor element across a local face, -1 for walls.
inline int structured_neighbor(const ChannelMesh& mesh, int e, LocalFace lf) {
  const int ex = mesh.column(e);
  const int ez = mesh.row(e);
  switch (lf) {
    case LocalFace::left: return mesh.element((ex + mesh.nx() - 1) % mesh.nx(), ez);
    case LocalFace::right: return mesh.element((ex + 1) % mesh.nx(), ez);
    case LocalFace::bottom: return ez == 0 ? -1 : mesh.element(ex, ez - 1);
    case LocalFace::top: return ez + 1 == mesh.nz() ? -1 : mesh.element(ex, ez + 1);
  }
  return -1;
}

/// Trace coefficients l_a(+-1) for a face.
inline const double* face_coeffs(const TensorBasis& basis, LocalFace lf) {
  return (lf == LocalFace::left || lf == LocalFace::bottom) ? basis.trace_minus().data()
                                                            : basis.trace_plus().data();
}

template <class Fn>
decltype(auto) dispatch_n(int n, Fn&& fn) {
  switch (n) {
    case 2: return fn(std::integral_constant<int, 2>{});
    case 3: return fn(std::integral_constant<int, 3>{});
    case 4: return fn(std::integral_constant<int, 4>{});
    case 5: return fn(std::integral_constant<int, 5>{});
    case 6: return fn(std::integral_constant<int, 6>{});
    case 7: return fn(std::integral_constant<int, 7>{});
    case 8: return fn(std::integral_constant<int, 8>{});
    default: return fn(std::integral_constant<int, 9>{});
  }
}

template <int N, bool Vertical>
inline void trace_n(const double* f, const double* c, double* out) {
  if constexpr (Vertical) {
    for (int b = 0; b < N; ++b) {
      double s = 0.0;
      for (int a = 0; a < N; ++a) s += c[a] * f[b * N + a];
      out[b] = s;
    }
  } else {
    for (int a = 0; a < N; ++a) out[a] = 0.0;
    for (int b = 0; b < N; ++b) {
      for (int a = 0; a < N; ++a) out[a] += c[b] * f[b * N + a];
    }
  }
}

template <int N, bool Vertical>
inline void scatter_n(double* f, const double* c, const double* vals) {
  if constexpr (Vertical) {
    for (int b = 0; b < N; ++b) {
      for (int a = 0; a < N; ++a) f[b * N + a] -= vals[b] * c[a];
    }
  } else {
    for (int b = 0; b < N; ++b) {
      for (int a = 0; a < N; ++a) f[b * N + a] -= vals[a] * c[b];
    }
  }
}

template <int N, std::size_t NIn, std::size_t NOut, class Flux>
void face_terms_n(const DgSpace& sp, const std::array<const double*, NIn>& in,
                  const std::array<double, NIn>& parity, const std::array<double*, NOut>& out,
                  Flux& flux) {
  const ChannelMesh& mesh = sp.mesh();
  const auto& w = sp.basis().weights();
  constexpr int P = N * N;
  double tin[NIn][N];
  double tex[NIn][N];
  double contrib[NOut][N];
  double vin[NIn];
  double vex[NIn];
  double fout[NOut];

  auto one_face = [&](int e, auto vert, LocalFace lf) {
    constexpr bool V = decltype(vert)::value;
    const auto nrm = outward_normal(lf);
    const int nb = structured_neighbor(mesh, e, lf);
    const double half_len = 0.5 * (V ? mesh.hz() : mesh.hx());
    const double* cin = face_coeffs(sp.basis(), lf);
    const double* cex = face_coeffs(sp.basis(), opposite(lf));
    for (std::size_t f = 0; f < NIn; ++f) {
      trace_n<N, V>(in[f] + static_cast<std::size_t>(e) * P, cin, tin[f]);
      if (nb >= 0) {
        trace_n<N, V>(in[f] + static_cast<std::size_t>(nb) * P, cex, tex[f]);
      } else {
        for (int q = 0; q < N; ++q) tex[f][q] = parity[f] * tin[f][q];
      }
    }
    for (int q = 0; q < N; ++q) {
      for (std::size_t f = 0; f < NIn; ++f) {
        vin[f] = tin[f][q];
        vex[f] = tex[f][q];
      }
      flux(vin, vex, nrm[0], nrm[1], fout);
      for (std::size_t o = 0; o < NOut; ++o) contrib[o][q] = fout[o] * w[q] * half_len;
    }
    for (std::size_t o = 0; o < NOut; ++o) {
      if (out[o] != nullptr) scatter_n<N, V>(out[o] + static_cast<std::size_t>(e) * P, cin, contrib[o]);
    }
  };

  for (int e = 0; e < mesh.num_elements(); ++e) {
    one_face(e, std::true_type{}, LocalFace::left);
    one_face(e, std::true_type{}, LocalFace::right);
    one_face(e, std::false_type{}, LocalFace::bottom);
    one_face(e, std::false_type{}, LocalFace::top);
  }
}

/// Adds  -int_{dK} Fhat_n psi  for every element and test function.
///
/// `in` are the nodal fields whose traces the flux needs; on wall faces the
/// exterior trace is parity[f] * interior trace (mirror state). The flux
/// functor receives (interior values, exterior values, nx, nz, out values)
/// and must return the normal numerical flux seen from the interior element.
template <std::size_t NIn, std::size_t NOut, class Flux>
void face_terms(const DgSpace& sp, const std::array<const double*, NIn>& in,
                const std::array<double, NIn>& parity, const std::array<double*, NOut>& out,
                Flux&& flux) {
  dispatch_n(sp.n1d(), [&](auto nc) { face_terms_n<decltype(nc)::value>(sp, in, parity, out, flux); });
}

template <int N>
void volume_terms_n(const DgSpace& sp, const double* fx, const double* fz, double* out,
                    double scale) {
  const ChannelMesh& mesh = sp.mesh();
  constexpr int P = N * N;
  double d1[P];
  std::copy(sp.basis().d1().begin(), sp.basis().d1().end(), d1);
  const double* m = sp.mass().data();
  const double sx = scale * 2.0 / mesh.hx();
  const double sz = scale * 2.0 / mesh.hz();
  double tmp[P];
  for (int e = 0; e < mesh.num_elements(); ++e) {
    const std::size_t base = static_cast<std::size_t>(e) * P;
    double* o = out + base;
    const double* me = m + base;
    if (fx != nullptr) {
      const double* f = fx + base;
      for (int k = 0; k < P; ++k) tmp[k] = me[k] * f[k];
      for (int j = 0; j < N; ++j) {
        for (int i = 0; i < N; ++i) {
          double s = 0.0;
          for (int a = 0; a < N; ++a) s += d1[a * N + i] * tmp[j * N + a];
          o[j * N + i] += sx * s;
        }
      }
    }
    if (fz != nullptr) {
      const double* f = fz + base;
      for (int k = 0; k < P; ++k) tmp[k] = me[k] * f[k];
      for (int j = 0; j < N; ++j) {
        for (int i = 0; i < N; ++i) {
          double s = 0.0;
          for (int b = 0; b < N; ++b) s += d1[b * N + j] * tmp[b * N + i];
          o[j * N + i] += sz * s;
        }
      }
    }
  }
}

/// out(i,j) += scale * int_K (Fx d_x psi_ij + Fz d_z psi_ij), with nodal
/// flux components and collocated quadrature. Either component may be null.
inline void volume_terms(const DgSpace& sp, const double* fx, const double* fz, double* out,
                         double scale) {
  dispatch_n(sp.n1d(), [&](auto nc) { volume_terms_n<decltype(nc)::value>(sp, fx, fz, out, scale); });
}

}  // namespace imexdg::detail
