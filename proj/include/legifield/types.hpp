// Common dense types.

#pragma once

#include <Eigen/Dense>

namespace legifield {

template <typename Scalar> using Vector2 = Eigen::Matrix<Scalar, 2, 1>;
template <typename Scalar> using Vector3 = Eigen::Matrix<Scalar, 3, 1>;
template <typename Scalar> using Matrix2 = Eigen::Matrix<Scalar, 2, 2>;

using Vec2 = Vector2<double>;
using Vec3 = Vector3<double>;
using Mat2 = Matrix2<double>;

using ObjectId = int;

} // namespace legifield
