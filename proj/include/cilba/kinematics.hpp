#pragma once

#include "cilba/sp_geometry.hpp"
#include "cilba/types.hpp"

#include <vector>

namespace cilba {

// Frame conventions used throughout:
//   C maps global-frame vectors into the IMU frame; p and v are the IMU
//   position and velocity in the global frame. A point measured in the IMU
//   frame maps to the global frame as q = C^T p_imu + p.
// The CGR vector s parameterizes C with the half-angle-tangent chart whose
// kinematics are ds/dt = 0.5 (I + s s^T + [s x]) omega for body rates omega.

struct ImuState {
  Mat3 C = Mat3::Identity();
  Vec3 bg = Vec3::Zero();
  Vec3 v = Vec3::Zero();
  Vec3 ba = Vec3::Zero();
  Vec3 p = Vec3::Zero();
};

struct ImuSample {
  double t = 0.0;
  Vec3 omega = Vec3::Zero();
  Vec3 accel = Vec3::Zero();
};

// Minimal-chart state used by the observability machinery. Flattened layout:
// [s, bg, v, ba, p | edges (u_l, Lambda) ... | planes (u_s, OA) ...],
// dimension 15 + 4m + 3n.
struct FullState {
  Vec3 s = Vec3::Zero();
  Vec3 bg = Vec3::Zero();
  Vec3 v = Vec3::Zero();
  Vec3 ba = Vec3::Zero();
  Vec3 p = Vec3::Zero();
  std::vector<SpEdge> edges;
  std::vector<SpPlane> planes;

  int dim() const {
    return 15 + 4 * static_cast<int>(edges.size()) +
           3 * static_cast<int>(planes.size());
  }
  int edge_offset(int k) const { return 15 + 4 * k; }
  int plane_offset(int k) const {
    return 15 + 4 * static_cast<int>(edges.size()) + 3 * k;
  }

  VecX flatten() const;
  static FullState unflatten(const VecX& x, int num_edges, int num_planes);
};

Mat3 cgr_kinematics_jacobian(const Vec3& s);      // ds/dtheta
Mat3 cgr_kinematics_jacobian_inv(const Vec3& s);  // dtheta/ds, closed form

Mat3 cgr_to_rotation(const Vec3& s);
Vec3 rotation_to_cgr(const Mat3& c);

// Body-frame increment: C <- Exp(-[theta x]) C, matching the CGR kinematics.
Mat3 apply_body_rotation(const Mat3& c, const Vec3& theta);

// State derivative of the full chart state for inputs (omega, accel);
// feature and bias rows are identically zero.
VecX continuous_dynamics(const FullState& x, const Vec3& omega,
                         const Vec3& accel, const Vec3& gravity);

// RK4 with zero-order hold between samples; sample i is held over
// [t_i, t_{i+1}], so the last sample only marks the end of integration.
FullState propagate(const FullState& x, const std::vector<ImuSample>& samples,
                    const Vec3& gravity);

Vec4 observe_plane(const FullState& x, int k);
Vec6 observe_edge(const FullState& x, int k);

}  // namespace cilba
