#ifndef FUZEV_ELLIPSOID_HPP
#define FUZEV_ELLIPSOID_HPP

#include <Eigen/Dense>
#include <vector>

#include "fuzev/random.hpp"

namespace fuzev {

// { u : (u - center)^T shape^{-1} (u - center) <= scale }. The shape matrix is
// the sample covariance of the fitted points; scale is the largest member
// Mahalanobis form value times the enlargement factor.
class Ellipsoid {
 public:
  Ellipsoid(Eigen::VectorXd center, Eigen::MatrixXd shape, double scale);

  const Eigen::VectorXd& center() const { return center_; }
  const Eigen::MatrixXd& shape() const { return shape_; }
  double scale() const { return scale_; }
  int dim() const { return static_cast<int>(center_.size()); }

  double mahalanobis2(const Eigen::VectorXd& u) const;
  bool contains(const Eigen::VectorXd& u) const { return mahalanobis2(u) <= scale_; }
  double log_volume() const { return log_volume_; }

  // Uniform draw: isotropic ball deviate pushed through the shape Cholesky.
  Eigen::VectorXd sample(RandomStream& rng) const;

 private:
  Eigen::VectorXd center_;
  Eigen::MatrixXd shape_;
  double scale_;
  Eigen::MatrixXd chol_;  // lower Cholesky factor of shape
  double log_volume_;
};

// Covariance-based bounding ellipsoid of the given points (one per row).
// Singular covariance falls back to a growing diagonal ridge.
Ellipsoid bounding_ellipsoid(const Eigen::MatrixXd& points, double enlargement);

// Recursive 2-means split: a split is kept iff the children jointly shave the
// parent volume below split_threshold and each child keeps >= d+1 points.
std::vector<Ellipsoid> multi_decompose(const Eigen::MatrixXd& points,
                                       double enlargement, double split_threshold,
                                       RandomStream& rng);

}  // namespace fuzev

#endif
