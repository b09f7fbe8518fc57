#include "cilba/sp_geometry.hpp"

#include <Eigen/Dense>

namespace cilba {

double BallMargin::derivative_bound() const {
  return std::sqrt(9.0 + 8.0 * delta + 4.0 * delta * delta);
}

Vec3 sphere_point(const Vec2& u) {
  require_finite(u, "sphere_point");
  const double d = 1.0 + u.squaredNorm();
  return Vec3(2.0 * u.x() / d, 2.0 * u.y() / d, 1.0 - 2.0 / d);
}

Vec2 sphere_chart(const Vec3& x, double margin) {
  require_finite(x, "sphere_chart");
  const double w = 1.0 - x.z();
  if (w < margin) {
    throw DegenerateRepresentation(
        "sphere_chart: point too close to the north pole; flip the sign of "
        "the feature first");
  }
  return Vec2(x.x() / w, x.y() / w);
}

Vec3 plane_normal(const Vec2& u_s) { return sphere_point(u_s); }

SpPlane plane_from_geometric(const Vec3& n, double oa) {
  require_finite(n, "plane_from_geometric");
  require_finite(oa, "plane_from_geometric");
  if (std::abs(n.norm() - 1.0) > 1e-6) {
    throw InvalidGeometry("plane_from_geometric: normal must be unit length");
  }
  return SpPlane{sphere_chart(n), oa};
}

Vec3 edge_gamma_sum(const Vec2& u, const Vec2& lambda) {
  const Vec3 gamma1(0.0, 1.0, u.y());
  const Vec3 gamma2(-1.0, 0.0, -u.x());
  return lambda.x() * gamma1 + lambda.y() * gamma2;
}

Mat32 edge_gamma_sum_jacobian(const Vec2& lambda) {
  Mat32 g = Mat32::Zero();
  g(2, 0) = -lambda.y();
  g(2, 1) = lambda.x();
  return g;
}

Mat32 edge_tangents(const Vec2& u) {
  const Vec3 l = sphere_point(u);
  Mat32 t;
  t.col(0) = l.cross(Vec3(0.0, 1.0, u.y()));
  t.col(1) = l.cross(Vec3(-1.0, 0.0, -u.x()));
  return t;
}

EdgeEmbedding edge_embed(const SpEdge& e) {
  require_finite(e.u, "edge_embed");
  require_finite(e.lambda, "edge_embed");
  EdgeEmbedding emb;
  emb.l = sphere_point(e.u);
  const Mat32 t = edge_tangents(e.u);
  emb.t1 = t.col(0);
  emb.t2 = t.col(1);
  emb.moment = e.lambda.x() * emb.t1 + e.lambda.y() * emb.t2;
  return emb;
}

namespace {

Vec2 solve_moment_coefficients(const Vec2& u, const Vec3& moment) {
  const Mat32 t = edge_tangents(u);
  const Mat2 gram = t.transpose() * t;
  return gram.ldlt().solve(t.transpose() * moment);
}

}  // namespace

SpEdge edge_from_geometric(const Vec3& l, const Vec3& moment) {
  require_finite(l, "edge_from_geometric");
  require_finite(moment, "edge_from_geometric");
  if (std::abs(l.norm() - 1.0) > 1e-6) {
    throw InvalidGeometry("edge_from_geometric: direction must be unit length");
  }
  const double m_norm = moment.norm();
  if (std::abs(l.dot(moment)) > 1e-8 * std::max(m_norm, 1e-300)) {
    throw InvalidGeometry(
        "edge_from_geometric: moment must be orthogonal to the direction");
  }
  SpEdge e;
  e.u = sphere_chart(l);
  e.lambda = solve_moment_coefficients(e.u, moment);
  return e;
}

TangentMap tangent_map(const Vec2& u) {
  require_finite(u, "tangent_map");
  const double d = 1.0 + u.squaredNorm();
  const double s = 2.0 / (d * d);
  Mat32 h;
  h << 1.0 + u.y() * u.y() - u.x() * u.x(), -2.0 * u.x() * u.y(),
      -2.0 * u.x() * u.y(), 1.0 + u.x() * u.x() - u.y() * u.y(),
      2.0 * u.x(), 2.0 * u.y();
  h *= s;
  TangentMap map;
  map.H = h;
  const Mat2 gram = h.transpose() * h;
  map.Hplus = gram.ldlt().solve(h.transpose());
  return map;
}

Mat32 edge_moment_jacobian_u(const Vec2& u, const Vec2& lambda) {
  const Vec3 l = sphere_point(u);
  const Vec3 x = edge_gamma_sum(u, lambda);
  const Mat32 h = tangent_map(u).H;
  return -skew(x) * h + skew(l) * edge_gamma_sum_jacobian(lambda);
}

Mat32 edge_tangent_jacobian(const Vec2& u, int which) {
  if (which != 0 && which != 1) {
    throw InvalidArgument("edge_tangent_jacobian: index must be 0 or 1");
  }
  const Vec3 l = sphere_point(u);
  const Mat32 h = tangent_map(u).H;
  Vec3 gamma;
  Mat32 dgamma = Mat32::Zero();
  if (which == 0) {
    gamma = Vec3(0.0, 1.0, u.y());
    dgamma(2, 1) = 1.0;
  } else {
    gamma = Vec3(-1.0, 0.0, -u.x());
    dgamma(2, 0) = -1.0;
  }
  return -skew(gamma) * h + skew(l) * dgamma;
}

SpPlane clamp_ball(const SpPlane& plane, const BallMargin& margin) {
  const double r2 = plane.u.squaredNorm();
  const double limit = 1.0 + margin.delta;
  if (r2 <= limit * limit) {
    return plane;
  }
  return SpPlane{-plane.u / r2, -plane.oa};
}

SpEdge clamp_ball(const SpEdge& edge, const BallMargin& margin) {
  const double r2 = edge.u.squaredNorm();
  const double limit = 1.0 + margin.delta;
  if (r2 <= limit * limit) {
    return edge;
  }
  const EdgeEmbedding emb = edge_embed(edge);
  SpEdge flipped;
  flipped.u = -edge.u / r2;
  flipped.lambda = solve_moment_coefficients(flipped.u, -emb.moment);
  return flipped;
}

}  // namespace cilba
