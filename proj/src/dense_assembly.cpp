#include "imexdg/dense_assembly.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

namespace imexdg {

std::vector<double> DenseMatrix::multiply(std::span<const double> x) const {
  if (x.size() != cols) throw std::invalid_argument("DenseMatrix::multiply: size mismatch");
  std::vector<double> y(rows, 0.0);
  for (std::size_t i = 0; i < rows; ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < cols; ++j) s += data[i * cols + j] * x[j];
    y[i] = s;
  }
  return y;
}

std::vector<double> flatten(const VectorField& v) {
  std::vector<double> x;
  x.reserve(3 * v.size());
  x.insert(x.end(), v.u.begin(), v.u.end());
  x.insert(x.end(), v.v.begin(), v.v.end());
  x.insert(x.end(), v.w.begin(), v.w.end());
  return x;
}

VectorField unflatten(std::span<const double> x) {
  const std::size_t n = x.size() / 3;
  VectorField v(n);
  for (std::size_t k = 0; k < n; ++k) {
    v.u[k] = x[k];
    v.v[k] = x[n + k];
    v.w[k] = x[2 * n + k];
  }
  return v;
}

namespace {

// Basis functions of one element evaluated at a reference point.
struct PointBasis {
  std::vector<double> val;
  std::vector<double> gx;
  std::vector<double> gz;
};

PointBasis point_basis(const DgSpace& sp, double xi, double eta) {
  const int n = sp.n1d();
  const auto lx = sp.basis().values(xi);
  const auto lz = sp.basis().values(eta);
  const auto dx = sp.basis().derivatives(xi);
  const auto dz = sp.basis().derivatives(eta);
  const double sx = 2.0 / sp.mesh().hx();
  const double sz = 2.0 / sp.mesh().hz();
  PointBasis pb;
  pb.val.resize(n * n);
  pb.gx.resize(n * n);
  pb.gz.resize(n * n);
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      pb.val[j * n + i] = lx[i] * lz[j];
      pb.gx[j * n + i] = sx * dx[i] * lz[j];
      pb.gz[j * n + i] = sz * lx[i] * dz[j];
    }
  }
  return pb;
}

double eval(const DgSpace& sp, std::span<const double> f, int e, const PointBasis& pb) {
  const std::size_t base = sp.layout().index(e, 0, 0);
  double s = 0.0;
  for (std::size_t k = 0; k < pb.val.size(); ++k) s += f[base + k] * pb.val[k];
  return s;
}

struct PointState {
  double rho = 0.0;
  std::array<double, 3> u{};
  double p = 0.0;
};

PointState state_at(const DgSpace& sp, const PrimitiveField& s, int e, const PointBasis& pb) {
  PointState st;
  st.rho = eval(sp, s.rho, e, pb);
  st.u = {eval(sp, s.vel.u, e, pb), eval(sp, s.vel.v, e, pb), eval(sp, s.vel.w, e, pb)};
  st.p = eval(sp, s.p, e, pb);
  return st;
}

// Slip-wall ghost: normal velocity reversed, thermodynamics copied.
PointState mirror(const PointState& s, const std::array<double, 2>& n) {
  PointState g = s;
  const double un = s.u[0] * n[0] + s.u[2] * n[1];
  g.u[0] -= 2.0 * un * n[0];
  g.u[2] -= 2.0 * un * n[1];
  return g;
}

std::array<double, 2> face_point(LocalFace lf, double t) {
  switch (lf) {
    case LocalFace::left: return {-1.0, t};
    case LocalFace::right: return {1.0, t};
    case LocalFace::bottom: return {t, -1.0};
    case LocalFace::top: return {t, 1.0};
  }
  return {0.0, 0.0};
}

double face_half_length(const DgSpace& sp, LocalFace lf) {
  return 0.5 * ((lf == LocalFace::left || lf == LocalFace::right) ? sp.mesh().hz()
                                                                  : sp.mesh().hx());
}

// Visits every element quadrature point with (element, basis, weight).
template <class Fn>
void for_each_volume_point(const DgSpace& sp, Fn&& fn) {
  const int n = sp.n1d();
  const auto& x = sp.basis().nodes();
  const auto& w = sp.basis().weights();
  const double det = sp.mesh().jacobian_det();
  for (int e = 0; e < sp.mesh().num_elements(); ++e) {
    for (int b = 0; b < n; ++b) {
      for (int a = 0; a < n; ++a) {
        const PointBasis pb = point_basis(sp, x[a], x[b]);
        fn(e, pb, w[a] * w[b] * det);
      }
    }
  }
}

// One face quadrature point: both sides' bases (plus is absent on walls).
struct FacePoint {
  const Face* face;
  PointBasis minus;
  PointBasis plus;
  double weight;
};

template <class Fn>
void for_each_face_point(const DgSpace& sp, Fn&& fn) {
  const int n = sp.n1d();
  const auto& x = sp.basis().nodes();
  const auto& w = sp.basis().weights();
  for (const Face& f : sp.mesh().faces()) {
    const double hl = face_half_length(sp, f.minus.local);
    for (int q = 0; q < n; ++q) {
      FacePoint fp;
      fp.face = &f;
      const auto rm = face_point(f.minus.local, x[q]);
      fp.minus = point_basis(sp, rm[0], rm[1]);
      if (f.has_plus) {
        const auto rp = face_point(f.plus.local, x[q]);
        fp.plus = point_basis(sp, rp[0], rp[1]);
      }
      fp.weight = w[q] * hl;
      fn(fp);
    }
  }
}

void check_guard(const DgSpace& sp) {
  if (sp.mesh().num_elements() > kDenseMaxElements || sp.basis().degree() > kDenseMaxDegree) {
    throw std::length_error("dense assembly is limited to 16 elements and degree 3");
  }
}

std::size_t gidx(const DgSpace& sp, int e, std::size_t local) {
  return sp.layout().index(e, 0, 0) + local;
}

}  // namespace

DenseMatrix dense_assemble(OperatorTag tag, const DgSpace& sp, const PrimitiveField& state,
                           const GasConstants& gas, const StageContext& ctx) {
  check_guard(sp);
  const std::size_t n = sp.size();
  const std::size_t np = sp.layout().per_element();
  const double c = ctx.coef();
  const double hs = gas.gamma / (gas.gamma - 1.0);

  switch (tag) {
    case OperatorTag::mass_rho:
    case OperatorTag::coriolis: {
      DenseMatrix m(3 * n, 3 * n);
      const double beta = ctx.beta();
      for_each_volume_point(sp, [&](int e, const PointBasis& pb, double wq) {
        const double rho = eval(sp, state.rho, e, pb);
        for (std::size_t i = 0; i < np; ++i) {
          for (std::size_t j = 0; j < np; ++j) {
            const double v = wq * rho * pb.val[i] * pb.val[j];
            const std::size_t gi = gidx(sp, e, i);
            const std::size_t gj = gidx(sp, e, j);
            if (tag == OperatorTag::mass_rho) {
              for (std::size_t comp = 0; comp < 3; ++comp) m(comp * n + gi, comp * n + gj) += v;
            } else {
              // (k x e_x) = e_y, (k x e_y) = -e_x.
              m(n + gi, gj) += beta * v;
              m(gi, n + gj) -= beta * v;
            }
          }
        }
      });
      return m;
    }
    case OperatorTag::energy_mass: {
      DenseMatrix m(n, n);
      for_each_volume_point(sp, [&](int e, const PointBasis& pb, double wq) {
        for (std::size_t i = 0; i < np; ++i) {
          for (std::size_t j = 0; j < np; ++j) {
            m(gidx(sp, e, i), gidx(sp, e, j)) += wq * pb.val[i] * pb.val[j] / (gas.gamma - 1.0);
          }
        }
      });
      return m;
    }
    case OperatorTag::gravity_coupling: {
      DenseMatrix m(n, 3 * n);
      for_each_volume_point(sp, [&](int e, const PointBasis& pb, double wq) {
        const double rho = eval(sp, state.rho, e, pb);
        for (std::size_t i = 0; i < np; ++i) {
          for (std::size_t j = 0; j < np; ++j) {
            m(gidx(sp, e, i), 2 * n + gidx(sp, e, j)) +=
                ctx.gravity * c * wq * rho * pb.val[i] * pb.val[j];
          }
        }
      });
      return m;
    }
    case OperatorTag::pressure_gradient: {
      DenseMatrix m(3 * n, n);
      for_each_volume_point(sp, [&](int e, const PointBasis& pb, double wq) {
        for (std::size_t i = 0; i < np; ++i) {
          for (std::size_t j = 0; j < np; ++j) {
            const std::size_t gi = gidx(sp, e, i);
            const std::size_t gj = gidx(sp, e, j);
            m(gi, gj) -= c * wq * pb.gx[i] * pb.val[j];
            m(2 * n + gi, gj) -= c * wq * pb.gz[i] * pb.val[j];
          }
        }
      });
      for_each_face_point(sp, [&](const FacePoint& fp) {
        const Face& f = *fp.face;
        const auto nrm = f.normal;
        // {{psi_j}} [[phi_i]], [[phi]] = phi^- . n - phi^+ . n.
        struct Side {
          int e;
          const PointBasis* pb;
          double sign;
        };
        std::vector<Side> sides{{f.minus.element, &fp.minus, 1.0}};
        if (f.has_plus) sides.push_back({f.plus.element, &fp.plus, -1.0});
        const double avg_w = f.has_plus ? 0.5 : 1.0;
        for (const Side& test : sides) {
          for (const Side& trial : sides) {
            for (std::size_t i = 0; i < np; ++i) {
              for (std::size_t j = 0; j < np; ++j) {
                const double v = c * fp.weight * avg_w * trial.pb->val[j] * test.sign *
                                 test.pb->val[i];
                const std::size_t gi = gidx(sp, test.e, i);
                const std::size_t gj = gidx(sp, trial.e, j);
                m(gi, gj) += v * nrm[0];
                m(2 * n + gi, gj) += v * nrm[1];
              }
            }
          }
        }
      });
      return m;
    }
    case OperatorTag::enthalpy_div: {
      DenseMatrix m(n, 3 * n);
      for_each_volume_point(sp, [&](int e, const PointBasis& pb, double wq) {
        const double hr = hs * eval(sp, state.p, e, pb);
        for (std::size_t i = 0; i < np; ++i) {
          for (std::size_t j = 0; j < np; ++j) {
            const std::size_t gi = gidx(sp, e, i);
            const std::size_t gj = gidx(sp, e, j);
            m(gi, gj) -= c * wq * hr * pb.val[j] * pb.gx[i];
            m(gi, 2 * n + gj) -= c * wq * hr * pb.val[j] * pb.gz[i];
          }
        }
      });
      for_each_face_point(sp, [&](const FacePoint& fp) {
        const Face& f = *fp.face;
        const auto nrm = f.normal;
        const double hr_m = hs * eval(sp, state.p, f.minus.element, fp.minus);
        if (!f.has_plus) {
          // {{h rho phi_j}} with the mirrored trial function: only the
          // tangential part survives, which is orthogonal to n.
          for (std::size_t i = 0; i < np; ++i) {
            for (std::size_t j = 0; j < np; ++j) {
              for (int comp : {0, 2}) {
                std::array<double, 2> e_c{comp == 0 ? 1.0 : 0.0, comp == 2 ? 1.0 : 0.0};
                const double en = e_c[0] * nrm[0] + e_c[1] * nrm[1];
                std::array<double, 2> ghost{e_c[0] - 2.0 * en * nrm[0], e_c[1] - 2.0 * en * nrm[1]};
                const double avg_n = 0.5 * ((e_c[0] + ghost[0]) * nrm[0] + (e_c[1] + ghost[1]) * nrm[1]);
                const double v = c * fp.weight * hr_m * fp.minus.val[j] * avg_n * fp.minus.val[i];
                m(gidx(sp, f.minus.element, i), comp * n + gidx(sp, f.minus.element, j)) += v;
              }
            }
          }
          return;
        }
        const double hr_p = hs * eval(sp, state.p, f.plus.element, fp.plus);
        struct Side {
          int e;
          const PointBasis* pb;
          double sign;
          double hr;
        };
        const Side sides[2] = {{f.minus.element, &fp.minus, 1.0, hr_m},
                               {f.plus.element, &fp.plus, -1.0, hr_p}};
        for (const Side& test : sides) {
          for (const Side& trial : sides) {
            for (std::size_t i = 0; i < np; ++i) {
              for (std::size_t j = 0; j < np; ++j) {
                const double v = c * fp.weight * 0.5 * trial.hr * trial.pb->val[j] * test.sign *
                                 test.pb->val[i];
                const std::size_t gi = gidx(sp, test.e, i);
                const std::size_t gj = gidx(sp, trial.e, j);
                m(gi, gj) += v * nrm[0];
                m(gi, 2 * n + gj) += v * nrm[1];
              }
            }
          }
        }
      });
      return m;
    }
  }
  throw std::invalid_argument("unknown operator tag");
}

namespace {

// Conservative variables and their fluxes at a point.
struct PointFluxes {
  double ke;
  double un;
  double rho_e;
};

PointFluxes point_fluxes(const PointState& s, const std::array<double, 2>& n,
                         const GasConstants& gas) {
  return {0.5 * (s.u[0] * s.u[0] + s.u[1] * s.u[1] + s.u[2] * s.u[2]),
          s.u[0] * n[0] + s.u[2] * n[1], s.p / (gas.gamma - 1.0)};
}

// Adds value * (psi^- - psi^+) to a test-space vector, i.e. value . [[psi]]
// for a value directed along n.
void add_jump_test(const DgSpace& sp, const FacePoint& fp, double value, std::vector<double>& out) {
  const Face& f = *fp.face;
  const std::size_t np = sp.layout().per_element();
  for (std::size_t i = 0; i < np; ++i) out[gidx(sp, f.minus.element, i)] += value * fp.minus.val[i];
  if (f.has_plus) {
    for (std::size_t i = 0; i < np; ++i) out[gidx(sp, f.plus.element, i)] -= value * fp.plus.val[i];
  }
}

void check_oracle_size(const DgSpace& sp) { check_guard(sp); }

}  // namespace

Tendency reference_nonstiff_tendency(const DgSpace& sp, const PrimitiveField& s,
                                     const GasConstants& gas) {
  check_oracle_size(sp);
  const std::size_t np = sp.layout().per_element();
  Tendency t(sp.size());
  for_each_volume_point(sp, [&](int e, const PointBasis& pb, double wq) {
    const PointState st = state_at(sp, s, e, pb);
    const double ke = 0.5 * (st.u[0] * st.u[0] + st.u[1] * st.u[1] + st.u[2] * st.u[2]);
    for (std::size_t i = 0; i < np; ++i) {
      const double grad_dot_u = st.u[0] * pb.gx[i] + st.u[2] * pb.gz[i];
      const std::size_t gi = gidx(sp, e, i);
      t.rho[gi] += wq * st.rho * grad_dot_u;
      for (int c = 0; c < 3; ++c) t.mom[c][gi] += wq * st.rho * st.u[c] * grad_dot_u;
      t.energy[gi] += wq * ke * st.rho * grad_dot_u;
    }
  });
  for_each_face_point(sp, [&](const FacePoint& fp) {
    const Face& f = *fp.face;
    const PointState sm = state_at(sp, s, f.minus.element, fp.minus);
    const PointState spl =
        f.has_plus ? state_at(sp, s, f.plus.element, fp.plus) : mirror(sm, f.normal);
    const auto fm = point_fluxes(sm, f.normal, gas);
    const auto fpl = point_fluxes(spl, f.normal, gas);
    const double lam = std::max(std::abs(fm.un), std::abs(fpl.un));
    const double wq = fp.weight;
    // -({{F}}.n + lambda/2 (q^- - q^+)) (psi^- - psi^+)
    const double frho = 0.5 * (sm.rho * fm.un + spl.rho * fpl.un) + 0.5 * lam * (sm.rho - spl.rho);
    add_jump_test(sp, fp, -wq * frho, t.rho);
    for (int c = 0; c < 3; ++c) {
      const double fm_c = 0.5 * (sm.rho * sm.u[c] * fm.un + spl.rho * spl.u[c] * fpl.un) +
                          0.5 * lam * (sm.rho * sm.u[c] - spl.rho * spl.u[c]);
      add_jump_test(sp, fp, -wq * fm_c, t.mom[c]);
    }
    const double fe = 0.5 * (fm.ke * sm.rho * fm.un + fpl.ke * spl.rho * fpl.un) +
                      0.5 * lam * (sm.rho * fm.ke - spl.rho * fpl.ke);
    add_jump_test(sp, fp, -wq * fe, t.energy);
  });
  return t;
}

Tendency reference_stiff_tendency(const DgSpace& sp, const PrimitiveField& s,
                                  const GasConstants& gas) {
  check_oracle_size(sp);
  const std::size_t np = sp.layout().per_element();
  const double hs = gas.gamma / (gas.gamma - 1.0);
  Tendency t(sp.size());
  for_each_volume_point(sp, [&](int e, const PointBasis& pb, double wq) {
    const PointState st = state_at(sp, s, e, pb);
    for (std::size_t i = 0; i < np; ++i) {
      const std::size_t gi = gidx(sp, e, i);
      t.mom.u[gi] += wq * st.p * pb.gx[i];
      t.mom.w[gi] += wq * st.p * pb.gz[i];
      t.energy[gi] += wq * hs * st.p * (st.u[0] * pb.gx[i] + st.u[2] * pb.gz[i]);
      // -g rho k - f rho k x u, and the work -g rho w.
      t.mom.u[gi] += wq * gas.coriolis * st.rho * st.u[1] * pb.val[i];
      t.mom.v[gi] -= wq * gas.coriolis * st.rho * st.u[0] * pb.val[i];
      t.mom.w[gi] -= wq * gas.gravity * st.rho * pb.val[i];
      t.energy[gi] -= wq * gas.gravity * st.rho * st.u[2] * pb.val[i];
    }
  });
  for_each_face_point(sp, [&](const FacePoint& fp) {
    const Face& f = *fp.face;
    const PointState sm = state_at(sp, s, f.minus.element, fp.minus);
    const PointState spl =
        f.has_plus ? state_at(sp, s, f.plus.element, fp.plus) : mirror(sm, f.normal);
    const auto fm = point_fluxes(sm, f.normal, gas);
    const auto fpl = point_fluxes(spl, f.normal, gas);
    const double lam = std::max(std::abs(fm.un), std::abs(fpl.un));
    const double wq = fp.weight;
    const double pavg = 0.5 * (sm.p + spl.p);
    add_jump_test(sp, fp, -wq * pavg * f.normal[0], t.mom.u);
    add_jump_test(sp, fp, -wq * pavg * f.normal[1], t.mom.w);
    const double fe = 0.5 * hs * (sm.p * fm.un + spl.p * fpl.un) + 0.5 * lam * (fm.rho_e - fpl.rho_e);
    add_jump_test(sp, fp, -wq * fe, t.energy);
  });
  return t;
}

VectorField reference_gravity_vector(const DgSpace& sp, const ScalarField& rho,
                                     const StageContext& ctx) {
  check_oracle_size(sp);
  const std::size_t np = sp.layout().per_element();
  VectorField out(sp.size());
  for_each_volume_point(sp, [&](int e, const PointBasis& pb, double wq) {
    const double r = eval(sp, rho, e, pb);
    for (std::size_t i = 0; i < np; ++i) {
      out.w[gidx(sp, e, i)] += ctx.coef() * ctx.gravity * wq * r * pb.val[i];
    }
  });
  return out;
}

ScalarField reference_energy_jump_penalty(const DgSpace& sp, const PrimitiveField& s,
                                          const GasConstants& gas) {
  check_oracle_size(sp);
  ScalarField out(sp.size(), 0.0);
  for_each_face_point(sp, [&](const FacePoint& fp) {
    const Face& f = *fp.face;
    const PointState sm = state_at(sp, s, f.minus.element, fp.minus);
    const PointState spl =
        f.has_plus ? state_at(sp, s, f.plus.element, fp.plus) : mirror(sm, f.normal);
    const auto fm = point_fluxes(sm, f.normal, gas);
    const auto fpl = point_fluxes(spl, f.normal, gas);
    const double lam = std::max(std::abs(fm.un), std::abs(fpl.un));
    add_jump_test(sp, fp, fp.weight * 0.5 * lam * (fm.rho_e - fpl.rho_e), out);
  });
  return out;
}

namespace {

// int q psi_i for a nodal conserved component.
std::vector<double> reference_mass_term(const DgSpace& sp, const ScalarField& q) {
  const std::size_t np = sp.layout().per_element();
  std::vector<double> out(sp.size(), 0.0);
  for_each_volume_point(sp, [&](int e, const PointBasis& pb, double wq) {
    const double v = eval(sp, q, e, pb);
    for (std::size_t i = 0; i < np; ++i) out[gidx(sp, e, i)] += wq * v * pb.val[i];
  });
  return out;
}

}  // namespace

VectorField reference_momentum_rhs(const DgSpace& sp, const GasConstants& gas,
                                   const ConservedField& qn, std::span<const PrimitiveField> stages,
                                   const StageContext& ctx) {
  VectorField f(sp.size());
  f.u = reference_mass_term(sp, qn.rho_u);
  f.v = reference_mass_term(sp, qn.rho_v);
  f.w = reference_mass_term(sp, qn.rho_w);
  for (int m = 0; m + 1 < ctx.stage; ++m) {
    const Tendency ns = reference_nonstiff_tendency(sp, stages[m], gas);
    const Tendency st = reference_stiff_tendency(sp, stages[m], gas);
    const double ae = ctx.explicit_row[m] * ctx.dt;
    const double ai = ctx.implicit_row[m] * ctx.dt;
    for (int c = 0; c < 3; ++c) {
      for (std::size_t k = 0; k < sp.size(); ++k) f[c][k] += ae * ns.mom[c][k] + ai * st.mom[c][k];
    }
  }
  return f;
}

ScalarField reference_energy_rhs(const DgSpace& sp, const GasConstants& gas,
                                 const ConservedField& qn, std::span<const PrimitiveField> stages,
                                 const PrimitiveField& iterate, const StageContext& ctx) {
  ScalarField g = reference_mass_term(sp, qn.rho_e);
  for (int m = 0; m + 1 < ctx.stage; ++m) {
    const Tendency ns = reference_nonstiff_tendency(sp, stages[m], gas);
    const Tendency st = reference_stiff_tendency(sp, stages[m], gas);
    const double ae = ctx.explicit_row[m] * ctx.dt;
    const double ai = ctx.implicit_row[m] * ctx.dt;
    for (std::size_t k = 0; k < sp.size(); ++k) g[k] += ae * ns.energy[k] + ai * st.energy[k];
  }
  const ScalarField pen = reference_energy_jump_penalty(sp, iterate, gas);
  for (std::size_t k = 0; k < sp.size(); ++k) g[k] -= ctx.coef() * pen[k];
  return g;
}

}  // namespace imexdg
