#include "fuzev/ellipsoid.hpp"

#include <cmath>

#include "fuzev/errors.hpp"
#include "fuzev/numerics.hpp"

namespace fuzev {

Ellipsoid::Ellipsoid(Eigen::VectorXd center, Eigen::MatrixXd shape, double scale)
    : center_(std::move(center)), shape_(std::move(shape)), scale_(scale) {
  Eigen::LLT<Eigen::MatrixXd> llt(shape_);
  if (llt.info() != Eigen::Success)
    throw SpecError("ellipsoid: shape matrix is not positive definite");
  chol_ = llt.matrixL();
  double log_det_half = 0.0;
  for (int j = 0; j < dim(); ++j) log_det_half += std::log(chol_(j, j));
  log_volume_ = unit_ball_log_volume(dim()) + 0.5 * dim() * std::log(scale_) + log_det_half;
}

double Ellipsoid::mahalanobis2(const Eigen::VectorXd& u) const {
  const Eigen::VectorXd w =
      chol_.triangularView<Eigen::Lower>().solve(u - center_);
  return w.squaredNorm();
}

Eigen::VectorXd Ellipsoid::sample(RandomStream& rng) const {
  const int d = dim();
  Eigen::VectorXd z(d);
  double norm2 = 0.0;
  do {
    for (int j = 0; j < d; ++j) z[j] = rng.gauss();
    norm2 = z.squaredNorm();
  } while (norm2 == 0.0);
  const double radius = std::pow(rng.uniform_positive(), 1.0 / d) / std::sqrt(norm2);
  return center_ + std::sqrt(scale_) * (chol_ * (radius * z));
}

Ellipsoid bounding_ellipsoid(const Eigen::MatrixXd& points, double enlargement) {
  const int n = static_cast<int>(points.rows());
  const int d = static_cast<int>(points.cols());
  if (n < 1 || d < 1) throw SpecError("bounding_ellipsoid: needs points");
  if (enlargement < 1.0) throw SpecError("bounding_ellipsoid: enlargement must be >= 1");

  const Eigen::VectorXd center = points.colwise().mean();
  const Eigen::MatrixXd centered = points.rowwise() - center.transpose();
  Eigen::MatrixXd cov = Eigen::MatrixXd::Zero(d, d);
  if (n > 1) cov = (centered.transpose() * centered) / static_cast<double>(n - 1);

  // Ridge until the factorization goes through; covers n <= d and collinear sets.
  double ridge = 0.0;
  for (int attempt = 0; attempt < 64; ++attempt) {
    Eigen::LLT<Eigen::MatrixXd> llt(cov + ridge * Eigen::MatrixXd::Identity(d, d));
    if (llt.info() == Eigen::Success && (cov.diagonal().array() + ridge > 0.0).all()) break;
    ridge = (ridge == 0.0) ? std::max(1e-12, 1e-12 * cov.trace() / d) : ridge * 10.0;
  }
  if (ridge > 0.0) cov += ridge * Eigen::MatrixXd::Identity(d, d);

  Ellipsoid unit_scale(center, cov, 1.0);
  double max_m2 = 0.0;
  for (int i = 0; i < n; ++i)
    max_m2 = std::max(max_m2, unit_scale.mahalanobis2(points.row(i)));
  double scale = max_m2 * enlargement;
  if (scale <= 0.0) scale = 1e-12;  // all points coincide
  return Ellipsoid(center, cov, scale);
}

namespace {

// Lloyd iterations with two centers seeded from random member points.
// Returns false when a cluster empties or the centers coincide.
bool two_means(const Eigen::MatrixXd& points, RandomStream& rng,
               std::vector<int>& assignment) {
  const int n = static_cast<int>(points.rows());
  const std::uint64_t i0 = rng.integer(static_cast<std::uint64_t>(n));
  std::uint64_t i1 = rng.integer(static_cast<std::uint64_t>(n));
  for (int tries = 0; i1 == i0 && tries < 16; ++tries)
    i1 = rng.integer(static_cast<std::uint64_t>(n));
  if (i1 == i0) return false;

  Eigen::VectorXd c0 = points.row(static_cast<Eigen::Index>(i0));
  Eigen::VectorXd c1 = points.row(static_cast<Eigen::Index>(i1));
  assignment.assign(static_cast<std::size_t>(n), 0);

  for (int iter = 0; iter < 100; ++iter) {
    bool changed = false;
    int n0 = 0;
    for (int i = 0; i < n; ++i) {
      const double d0 = (points.row(i).transpose() - c0).squaredNorm();
      const double d1 = (points.row(i).transpose() - c1).squaredNorm();
      const int label = (d0 <= d1) ? 0 : 1;
      if (label != assignment[static_cast<std::size_t>(i)]) changed = true;
      assignment[static_cast<std::size_t>(i)] = label;
      n0 += (label == 0);
    }
    if (n0 == 0 || n0 == n) return false;
    if (!changed && iter > 0) break;
    Eigen::VectorXd s0 = Eigen::VectorXd::Zero(points.cols());
    Eigen::VectorXd s1 = Eigen::VectorXd::Zero(points.cols());
    for (int i = 0; i < n; ++i)
      (assignment[static_cast<std::size_t>(i)] == 0 ? s0 : s1) += points.row(i).transpose();
    c0 = s0 / n0;
    c1 = s1 / (n - n0);
  }
  return true;
}

void decompose_recursive(const Eigen::MatrixXd& points, double enlargement,
                         double split_threshold, RandomStream& rng,
                         std::vector<Ellipsoid>& out) {
  const int n = static_cast<int>(points.rows());
  const int d = static_cast<int>(points.cols());
  Ellipsoid parent = bounding_ellipsoid(points, enlargement);
  if (n < 2 * (d + 1)) {
    out.push_back(std::move(parent));
    return;
  }

  std::vector<int> assignment;
  if (!two_means(points, rng, assignment)) {
    out.push_back(std::move(parent));
    return;
  }
  int n0 = 0;
  for (int a : assignment) n0 += (a == 0);
  const int n1 = n - n0;
  if (n0 < d + 1 || n1 < d + 1) {
    out.push_back(std::move(parent));
    return;
  }

  Eigen::MatrixXd child0(n0, d), child1(n1, d);
  int k0 = 0, k1 = 0;
  for (int i = 0; i < n; ++i) {
    if (assignment[static_cast<std::size_t>(i)] == 0)
      child0.row(k0++) = points.row(i);
    else
      child1.row(k1++) = points.row(i);
  }

  const Ellipsoid e0 = bounding_ellipsoid(child0, enlargement);
  const Ellipsoid e1 = bounding_ellipsoid(child1, enlargement);
  const double children_log_vol = log_add_exp(e0.log_volume(), e1.log_volume());
  if (children_log_vol < parent.log_volume() + std::log(split_threshold)) {
    decompose_recursive(child0, enlargement, split_threshold, rng, out);
    decompose_recursive(child1, enlargement, split_threshold, rng, out);
    return;
  }
  out.push_back(std::move(parent));
}

}  // namespace

std::vector<Ellipsoid> multi_decompose(const Eigen::MatrixXd& points, double enlargement,
                                       double split_threshold, RandomStream& rng) {
  if (!(split_threshold > 0.0 && split_threshold <= 1.0))
    throw SpecError("multi_decompose: split threshold must lie in (0,1]");
  std::vector<Ellipsoid> out;
  decompose_recursive(points, enlargement, split_threshold, rng, out);
  return out;
}

}  // namespace fuzev
