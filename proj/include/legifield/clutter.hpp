// Clutteredness of a table-top scene.
//
// Object positions are summarised by a bivariate Gaussian p and compared with
// a uniform distribution q over the workspace rectangle:
//
//   h(p)     = 1/2 ln((2 pi e)^2 det S)      differential entropy
//   h(p, q)  = ln V                          cross entropy, V = workspace area
//   D(p||q)  = max(0, h(p, q) - h(p))
//   xi       = exp(-D)                       in (0, 1], 1 = uncluttered
//
// A Gaussian has unbounded support, so D against a bounded uniform is only
// finite once p is restricted to the box. The closed form above treats p as
// (almost) fully inside the box; the clamp absorbs the case where p is wider
// than the box.

#pragma once

#include <cmath>
#include <numbers>

#include "legifield/error.hpp"
#include "legifield/scene.hpp"
#include "legifield/types.hpp"

namespace legifield {

/// Ridge added to the sample covariance, m^2.
inline constexpr double kCovarianceRidge = 1e-6;

template <typename Scalar> struct GaussianFit {
  Vector2<Scalar> mean = Vector2<Scalar>::Zero();
  Matrix2<Scalar> covariance = Matrix2<Scalar>::Identity();
  static constexpr int dimension = 2;
};

template <typename Scalar> struct ClutterResult {
  GaussianFit<Scalar> fit;
  Scalar entropy_p{};
  Scalar cross_entropy_pq{};
  Scalar divergence{};
  Scalar xi{};
};

/// Sample mean and (N-1) covariance of object positions plus ridge * I.
template <typename Scalar = double>
GaussianFit<Scalar> fit_gaussian(const Scene& scene, Scalar ridge = Scalar(kCovarianceRidge))
{
  const auto n = static_cast<Eigen::Index>(scene.objects.size());
  if (n < 2) {
    throw DegenerateSceneError("clutteredness needs at least 2 objects, got " +
                               std::to_string(n));
  }
  Eigen::Matrix<Scalar, Eigen::Dynamic, 2> pts(n, 2);
  for (Eigen::Index i = 0; i < n; ++i) {
    pts.row(i) = scene.objects[static_cast<std::size_t>(i)].position.template cast<Scalar>();
  }
  GaussianFit<Scalar> fit;
  fit.mean = pts.colwise().mean().transpose();
  const auto centered = pts.rowwise() - fit.mean.transpose();
  fit.covariance = (centered.transpose() * centered) / Scalar(n - 1);
  fit.covariance += ridge * Matrix2<Scalar>::Identity();
  return fit;
}

template <typename Scalar> Scalar differential_entropy(const GaussianFit<Scalar>& fit)
{
  using std::log;
  const Scalar two_pi_e = Scalar(2) * std::numbers::pi_v<Scalar> * std::numbers::e_v<Scalar>;
  return Scalar(0.5) * (Scalar(fit.dimension) * log(two_pi_e) + log(fit.covariance.determinant()));
}

/// Cross entropy of p (restricted to the box) against the uniform on the box.
/// q is constant on its support, so the Gaussian mass drops out: ln V.
template <typename Scalar>
Scalar cross_entropy_uniform(const GaussianFit<Scalar>& /*fit*/, const WorkspaceBounds& bounds)
{
  using std::log;
  return log(Scalar(bounds.area()));
}

template <typename Scalar>
Scalar kl_divergence(const GaussianFit<Scalar>& fit, const WorkspaceBounds& bounds)
{
  const Scalar d = cross_entropy_uniform(fit, bounds) - differential_entropy(fit);
  return d > Scalar(0) ? d : Scalar(0);
}

template <typename Scalar = double> ClutterResult<Scalar> clutteredness(const Scene& scene)
{
  using std::exp;
  ClutterResult<Scalar> r;
  r.fit = fit_gaussian<Scalar>(scene);
  r.entropy_p = differential_entropy(r.fit);
  r.cross_entropy_pq = cross_entropy_uniform(r.fit, scene.bounds);
  const Scalar raw = r.cross_entropy_pq - r.entropy_p;
  r.divergence = raw > Scalar(0) ? raw : Scalar(0);
  r.xi = exp(-r.divergence);
  return r;
}

} // namespace legifield
