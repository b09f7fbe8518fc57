#include "cilba/kinematics.hpp"

#include "cilba/so3.hpp"

namespace cilba {

VecX FullState::flatten() const {
  VecX x(dim());
  x.segment<3>(0) = s;
  x.segment<3>(3) = bg;
  x.segment<3>(6) = v;
  x.segment<3>(9) = ba;
  x.segment<3>(12) = p;
  for (size_t k = 0; k < edges.size(); ++k) {
    const int off = edge_offset(static_cast<int>(k));
    x.segment<2>(off) = edges[k].u;
    x.segment<2>(off + 2) = edges[k].lambda;
  }
  for (size_t k = 0; k < planes.size(); ++k) {
    const int off = plane_offset(static_cast<int>(k));
    x.segment<2>(off) = planes[k].u;
    x(off + 2) = planes[k].oa;
  }
  return x;
}

FullState FullState::unflatten(const VecX& x, int num_edges, int num_planes) {
  if (x.size() != 15 + 4 * num_edges + 3 * num_planes) {
    throw InvalidArgument("FullState::unflatten: dimension mismatch");
  }
  FullState out;
  out.s = x.segment<3>(0);
  out.bg = x.segment<3>(3);
  out.v = x.segment<3>(6);
  out.ba = x.segment<3>(9);
  out.p = x.segment<3>(12);
  out.edges.resize(num_edges);
  out.planes.resize(num_planes);
  for (int k = 0; k < num_edges; ++k) {
    const int off = out.edge_offset(k);
    out.edges[k].u = x.segment<2>(off);
    out.edges[k].lambda = x.segment<2>(off + 2);
  }
  for (int k = 0; k < num_planes; ++k) {
    const int off = out.plane_offset(k);
    out.planes[k].u = x.segment<2>(off);
    out.planes[k].oa = x(off + 2);
  }
  return out;
}

Mat3 cgr_kinematics_jacobian(const Vec3& s) {
  require_finite(s, "cgr_kinematics_jacobian");
  return 0.5 * (Mat3::Identity() + s * s.transpose() + skew(s));
}

Mat3 cgr_kinematics_jacobian_inv(const Vec3& s) {
  require_finite(s, "cgr_kinematics_jacobian_inv");
  return 2.0 / (1.0 + s.squaredNorm()) * (Mat3::Identity() - skew(s));
}

Mat3 cgr_to_rotation(const Vec3& s) {
  require_finite(s, "cgr_to_rotation");
  const double n2 = s.squaredNorm();
  return ((1.0 - n2) * Mat3::Identity() + 2.0 * s * s.transpose() -
          2.0 * skew(s)) /
         (1.0 + n2);
}

Vec3 rotation_to_cgr(const Mat3& c) {
  require_finite(c, "rotation_to_cgr");
  const double tr = c.trace();
  // tr = (3 - |s|^2) / (1 + |s|^2); the chart blows up at angle pi where
  // tr -> -1.
  const double angle =
      std::acos(std::clamp(0.5 * (tr - 1.0), -1.0, 1.0));
  if (angle >= M_PI - 1e-6) {
    throw ChartSingularity("rotation_to_cgr: rotation angle too close to pi");
  }
  const Mat3 diff = c - c.transpose();
  const Vec3 w(diff(2, 1), diff(0, 2), diff(1, 0));
  return -w / (1.0 + tr);
}

Mat3 apply_body_rotation(const Mat3& c, const Vec3& theta) {
  return so3_exp(-theta) * c;
}

VecX continuous_dynamics(const FullState& x, const Vec3& omega,
                         const Vec3& accel, const Vec3& gravity) {
  require_finite(omega, "continuous_dynamics");
  require_finite(accel, "continuous_dynamics");
  const Mat3 c = cgr_to_rotation(x.s);
  VecX dx = VecX::Zero(x.dim());
  dx.segment<3>(0) = cgr_kinematics_jacobian(x.s) * (omega - x.bg);
  dx.segment<3>(6) = gravity + c.transpose() * (accel - x.ba);
  dx.segment<3>(12) = x.v;
  return dx;
}

namespace {

struct PoseVel {
  Mat3 c;
  Vec3 v;
  Vec3 p;
};

PoseVel rk4_step(const PoseVel& y, const Vec3& omega_hat, const Vec3& acc_hat,
                 const Vec3& gravity, double h) {
  const auto deriv = [&](const PoseVel& z) {
    PoseVel d;
    d.c = -skew(omega_hat) * z.c;
    d.v = gravity + z.c.transpose() * acc_hat;
    d.p = z.v;
    return d;
  };
  const auto advance = [](const PoseVel& z, const PoseVel& d, double a) {
    return PoseVel{z.c + a * d.c, z.v + a * d.v, z.p + a * d.p};
  };
  const PoseVel k1 = deriv(y);
  const PoseVel k2 = deriv(advance(y, k1, 0.5 * h));
  const PoseVel k3 = deriv(advance(y, k2, 0.5 * h));
  const PoseVel k4 = deriv(advance(y, k3, h));
  PoseVel out;
  out.c = y.c + (h / 6.0) * (k1.c + 2.0 * k2.c + 2.0 * k3.c + k4.c);
  out.v = y.v + (h / 6.0) * (k1.v + 2.0 * k2.v + 2.0 * k3.v + k4.v);
  out.p = y.p + (h / 6.0) * (k1.p + 2.0 * k2.p + 2.0 * k3.p + k4.p);
  out.c = orthonormalize_rotation(out.c);
  return out;
}

}  // namespace

FullState propagate(const FullState& x, const std::vector<ImuSample>& samples,
                    const Vec3& gravity) {
  if (samples.empty()) {
    throw InvalidArgument("propagate: needs at least one sample");
  }
  for (size_t i = 1; i < samples.size(); ++i) {
    if (!(samples[i].t > samples[i - 1].t)) {
      throw InvalidArgument("propagate: timestamps must be strictly increasing");
    }
  }
  PoseVel y{cgr_to_rotation(x.s), x.v, x.p};
  for (size_t i = 0; i + 1 < samples.size(); ++i) {
    const double h = samples[i + 1].t - samples[i].t;
    y = rk4_step(y, samples[i].omega - x.bg, samples[i].accel - x.ba, gravity,
                 h);
  }
  FullState out = x;
  out.s = rotation_to_cgr(y.c);
  out.v = y.v;
  out.p = y.p;
  return out;
}

Vec4 observe_plane(const FullState& x, int k) {
  if (k < 0 || k >= static_cast<int>(x.planes.size())) {
    throw InvalidArgument("observe_plane: feature index out of range");
  }
  const Mat3 c = cgr_to_rotation(x.s);
  const Vec3 n = plane_normal(x.planes[k].u);
  Vec4 h;
  h.head<3>() = c * n;
  h(3) = x.p.dot(n) + x.planes[k].oa;
  return h;
}

Vec6 observe_edge(const FullState& x, int k) {
  if (k < 0 || k >= static_cast<int>(x.edges.size())) {
    throw InvalidArgument("observe_edge: feature index out of range");
  }
  const Mat3 c = cgr_to_rotation(x.s);
  const EdgeEmbedding emb = edge_embed(x.edges[k]);
  Vec6 h;
  h.head<3>() = c * emb.l;
  h.tail<3>() = c * emb.moment + c * emb.l.cross(x.p);
  return h;
}

}  // namespace cilba
