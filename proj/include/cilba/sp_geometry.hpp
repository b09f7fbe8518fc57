#pragma once

#include "cilba/types.hpp"

namespace cilba {

// Features live on the stereographic chart of S^2 \ N:
//   u -> ( 2 u_x / D,  2 u_y / D,  1 - 2 / D ),   D = 1 + |u|^2,
// so u = 0 maps to the south pole and the unit circle maps to the equator.
// A plane is (u_s, OA) with unit normal n(u_s) and signed intercept OA; an
// edge is (u_l, Lambda) with unit direction l(u_l) and origin moment
// Lambda_x T1(u_l) + Lambda_y T2(u_l), where T1, T2 span the plane normal
// to l.

struct SpPlane {
  Vec2 u = Vec2::Zero();
  double oa = 0.0;
};

struct SpEdge {
  Vec2 u = Vec2::Zero();
  Vec2 lambda = Vec2::Zero();
};

struct TangentMap {
  Mat32 H;      // d(sphere point)/du, rank 2 everywhere
  Mat23 Hplus;  // (H^T H)^{-1} H^T
};

// Chart radius margin. Representations are clamped back to |u| <= 1 + delta
// by switching to the antipodal chart point; the embedding derivatives stay
// below sqrt(9 + 8 delta + 4 delta^2) on that ball.
struct BallMargin {
  double delta = 0.2;
  double derivative_bound() const;
};

Vec3 sphere_point(const Vec2& u);
// Inverse chart; the point must be at least `margin` away from the north
// pole in z (throws DegenerateRepresentation otherwise).
Vec2 sphere_chart(const Vec3& x, double margin = 1e-9);

Vec3 plane_normal(const Vec2& u_s);
SpPlane plane_from_geometric(const Vec3& n, double oa);

struct EdgeEmbedding {
  Vec3 l;
  Vec3 moment;  // tau * d
  Vec3 t1;
  Vec3 t2;
};

EdgeEmbedding edge_embed(const SpEdge& e);
SpEdge edge_from_geometric(const Vec3& l, const Vec3& moment);

TangentMap tangent_map(const Vec2& u);

// Columns [T1 T2]; identical to (1 + |u|^2)/2 times the tangent map.
Mat32 edge_tangents(const Vec2& u);

// gamma_1 = (0, 1, u_y), gamma_2 = -(1, 0, u_x); their Lambda-weighted sum
// X satisfies moment = [l x] X.
Vec3 edge_gamma_sum(const Vec2& u, const Vec2& lambda);

// d(gamma sum)/du as a 3x2 matrix: rows are zero except the last,
// which is (-Lambda_y, Lambda_x).
Mat32 edge_gamma_sum_jacobian(const Vec2& lambda);

// d(moment)/du at fixed Lambda: -[X x] H + [l x] d(gamma sum)/du.
Mat32 edge_moment_jacobian_u(const Vec2& u, const Vec2& lambda);

// d(T_i)/du for the embedding-derivative bound checks.
Mat32 edge_tangent_jacobian(const Vec2& u, int which);

SpPlane clamp_ball(const SpPlane& plane, const BallMargin& margin = {});
SpEdge clamp_ball(const SpEdge& edge, const BallMargin& margin = {});

}  // namespace cilba
