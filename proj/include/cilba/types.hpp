#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <stdexcept>
#include <string>

namespace cilba {

using Vec2 = Eigen::Vector2d;
using Vec3 = Eigen::Vector3d;
using Vec4 = Eigen::Vector4d;
using Vec6 = Eigen::Matrix<double, 6, 1>;
using Vec9 = Eigen::Matrix<double, 9, 1>;
using Vec15 = Eigen::Matrix<double, 15, 1>;
using VecX = Eigen::VectorXd;
using Mat2 = Eigen::Matrix2d;
using Mat3 = Eigen::Matrix3d;
using Mat9 = Eigen::Matrix<double, 9, 9>;
using Mat15 = Eigen::Matrix<double, 15, 15>;
using Mat23 = Eigen::Matrix<double, 2, 3>;
using Mat32 = Eigen::Matrix<double, 3, 2>;
using MatX = Eigen::MatrixXd;
using RowVec3 = Eigen::RowVector3d;

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct InvalidArgument : Error {
  using Error::Error;
};
struct DegenerateRepresentation : Error {
  using Error::Error;
};
struct InvalidGeometry : Error {
  using Error::Error;
};
struct SingularParameterization : Error {
  using Error::Error;
};
struct ChartSingularity : Error {
  using Error::Error;
};
struct InvalidScenario : Error {
  using Error::Error;
};
struct InvalidConfig : Error {
  using Error::Error;
};
struct UnsupportedOperation : Error {
  using Error::Error;
};
struct InternalInvariantViolation : Error {
  using Error::Error;
};
struct IoError : Error {
  using Error::Error;
};

inline Mat3 skew(const Vec3& w) {
  Mat3 s;
  s << 0.0, -w.z(), w.y(), w.z(), 0.0, -w.x(), -w.y(), 0.0, w.x();
  return s;
}

template <typename Derived>
void require_finite(const Eigen::MatrixBase<Derived>& m, const char* what) {
  if (!m.allFinite()) {
    throw InvalidArgument(std::string(what) + ": non-finite input");
  }
}

inline void require_finite(double x, const char* what) {
  if (!std::isfinite(x)) {
    throw InvalidArgument(std::string(what) + ": non-finite input");
  }
}

}  // namespace cilba
