#pragma once

#include "cilba/types.hpp"

#include <algorithm>
#include <cmath>

namespace cilba {

// Scalar coefficient triples for matrix functions of the form
//   M(theta) = a I + b [theta x] + c [theta x]^2
// with a, b, c functions of |theta|. Series branches keep everything smooth
// through theta = 0.

namespace so3_detail {

constexpr double kSmallAngle = 1e-4;

inline double sinc(double t) {
  if (std::abs(t) < kSmallAngle) {
    const double t2 = t * t;
    return 1.0 - t2 / 6.0 + t2 * t2 / 120.0;
  }
  return std::sin(t) / t;
}

// (1 - cos t) / t^2
inline double cos1(double t) {
  if (std::abs(t) < kSmallAngle) {
    const double t2 = t * t;
    return 0.5 - t2 / 24.0 + t2 * t2 / 720.0;
  }
  return (1.0 - std::cos(t)) / (t * t);
}

// (t - sin t) / t^3
inline double tms(double t) {
  if (std::abs(t) < kSmallAngle) {
    const double t2 = t * t;
    return 1.0 / 6.0 - t2 / 120.0 + t2 * t2 / 5040.0;
  }
  return (t - std::sin(t)) / (t * t * t);
}

// (cos t - 1 + t^2/2) / t^4
inline double cm1(double t) {
  if (std::abs(t) < kSmallAngle) {
    const double t2 = t * t;
    return 1.0 / 24.0 - t2 / 720.0 + t2 * t2 / 40320.0;
  }
  return (std::cos(t) - 1.0 + 0.5 * t * t) / (t * t * t * t);
}

// d/dt of cos1
inline double cos1_d(double t) {
  if (std::abs(t) < kSmallAngle) {
    return -t / 12.0 + t * t * t / 180.0;
  }
  return (t * std::sin(t) - 2.0 * (1.0 - std::cos(t))) / (t * t * t);
}

// d/dt of tms
inline double tms_d(double t) {
  if (std::abs(t) < kSmallAngle) {
    return -t / 60.0 + t * t * t / 1260.0;
  }
  return ((1.0 - std::cos(t)) * t - 3.0 * (t - std::sin(t))) / (t * t * t * t);
}

// d/dt of cm1
inline double cm1_d(double t) {
  if (std::abs(t) < kSmallAngle) {
    return -t / 360.0 + t * t * t / 10080.0;
  }
  return ((t - std::sin(t)) * t - 4.0 * (std::cos(t) - 1.0 + 0.5 * t * t)) /
         (t * t * t * t * t);
}

}  // namespace so3_detail

inline Mat3 so3_exp(const Vec3& theta) {
  const double t = theta.norm();
  const Mat3 s = skew(theta);
  return Mat3::Identity() + so3_detail::sinc(t) * s + so3_detail::cos1(t) * s * s;
}

inline Vec3 so3_log(const Mat3& rot) {
  const double cos_t = std::clamp((rot.trace() - 1.0) * 0.5, -1.0, 1.0);
  const double t = std::acos(cos_t);
  Vec3 w(rot(2, 1) - rot(1, 2), rot(0, 2) - rot(2, 0), rot(1, 0) - rot(0, 1));
  if (t < 1e-8) {
    return 0.5 * w;
  }
  if (M_PI - t < 1e-6) {
    // Axis from the dominant column of R + I; sign fixed by the skew part.
    const Mat3 b = rot + Mat3::Identity();
    int col = 0;
    b.colwise().norm().maxCoeff(&col);
    Vec3 axis = b.col(col).normalized();
    if (axis.dot(w) < 0.0) axis = -axis;
    return t * axis;
  }
  return (t / (2.0 * std::sin(t))) * w;
}

// Left Jacobian: d/dE Log(Exp(E) Exp(theta)) at E = 0 is J_l(theta)^{-1}.
inline Mat3 so3_left_jacobian(const Vec3& theta) {
  const double t = theta.norm();
  const Mat3 s = skew(theta);
  return Mat3::Identity() + so3_detail::cos1(t) * s + so3_detail::tms(t) * s * s;
}

inline Mat3 so3_right_jacobian(const Vec3& theta) {
  return so3_left_jacobian(-theta);
}

inline Mat3 so3_left_jacobian_inv(const Vec3& theta) {
  const double t = theta.norm();
  const Mat3 s = skew(theta);
  double c;
  if (t < so3_detail::kSmallAngle) {
    c = 1.0 / 12.0 + t * t / 720.0;
  } else {
    c = 1.0 / (t * t) - (1.0 + std::cos(t)) / (2.0 * t * std::sin(t));
  }
  return Mat3::Identity() - 0.5 * s + c * s * s;
}

inline Mat3 so3_right_jacobian_inv(const Vec3& theta) {
  return so3_left_jacobian_inv(-theta);
}

// integral_0^1 Exp(s theta) ds = J_l(theta); the h-scaled forms below are the
// exact zero-order-hold propagation kernels over one sample interval.
//   integral_0^h Exp(tau [w x]) dtau           = h   Vh(h w)
//   integral_0^h integral_0^t Exp(tau) dtau dt = h^2 Ph(h w)
inline Mat3 so3_zoh_vel_kernel(const Vec3& psi) { return so3_left_jacobian(psi); }

inline Mat3 so3_zoh_pos_kernel(const Vec3& psi) {
  const double t = psi.norm();
  const Mat3 s = skew(psi);
  return 0.5 * Mat3::Identity() + so3_detail::tms(t) * s + so3_detail::cm1(t) * s * s;
}

namespace so3_detail {

// Derivative of (a I + b(t) [psi x] + c(t) [psi x]^2) v with respect to psi.
inline Mat3 coeff_fun_dir_derivative(const Vec3& psi, const Vec3& v, double b,
                                     double c, double db, double dc) {
  const double t = psi.norm();
  const Mat3 s = skew(psi);
  Mat3 out = -b * skew(v) - c * (s * skew(v) + skew(s * v));
  if (t > 1e-12) {
    const Vec3 radial = psi / t;
    out += (db * (s * v) + dc * (s * (s * v))) * radial.transpose();
  }
  return out;
}

}  // namespace so3_detail

// d(J_l(psi) v)/d psi
inline Mat3 so3_zoh_vel_kernel_dir_derivative(const Vec3& psi, const Vec3& v) {
  const double t = psi.norm();
  return so3_detail::coeff_fun_dir_derivative(psi, v, so3_detail::cos1(t),
                                              so3_detail::tms(t),
                                              so3_detail::cos1_d(t),
                                              so3_detail::tms_d(t));
}

// d(Ph(psi) v)/d psi
inline Mat3 so3_zoh_pos_kernel_dir_derivative(const Vec3& psi, const Vec3& v) {
  const double t = psi.norm();
  return so3_detail::coeff_fun_dir_derivative(psi, v, so3_detail::tms(t),
                                              so3_detail::cm1(t),
                                              so3_detail::tms_d(t),
                                              so3_detail::cm1_d(t));
}

// Nearest rotation matrix in the Frobenius sense.
inline Mat3 orthonormalize_rotation(const Mat3& m) {
  Eigen::JacobiSVD<Mat3> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  Mat3 r = svd.matrixU() * svd.matrixV().transpose();
  if (r.determinant() < 0.0) {
    Mat3 d = Mat3::Identity();
    d(2, 2) = -1.0;
    r = svd.matrixU() * d * svd.matrixV().transpose();
  }
  return r;
}

}  // namespace cilba
