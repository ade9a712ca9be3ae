#pragma once

#include <Eigen/Dense>

#include <stdexcept>
#include <string>

namespace pmlda {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;
using Array2D = Eigen::ArrayXXd;

// Read-only views so callers can pass blocks/columns without copies.
using VectorRef = Eigen::Ref<const Eigen::VectorXd>;
using MatrixRef = Eigen::Ref<const Eigen::MatrixXd>;

// Tolerance for |sum(z) - 1| when validating simplex inputs.
inline constexpr double kSimplexTol = 1e-9;

// Memberships and proportions are kept at least this far from the boundary;
// log z terms diverge there.
inline constexpr double kInteriorEps = 1e-9;

inline bool is_simplex(const VectorRef& z, double tol = kSimplexTol)
{
  if (z.size() == 0)
    return false;
  if ((z.array() < 0.0).any())
    return false;
  return std::abs(z.sum() - 1.0) <= tol;
}

inline bool is_open_simplex(const VectorRef& z, double tol = kSimplexTol)
{
  return is_simplex(z, tol) && (z.array() > 0.0).all();
}

inline bool is_interior_simplex(const VectorRef& z, double eps = kInteriorEps,
                                double tol = kSimplexTol)
{
  return is_simplex(z, tol) && (z.array() >= eps).all();
}

inline void check_simplex(const VectorRef& z, const std::string& what,
                          double tol = kSimplexTol)
{
  if (!is_simplex(z, tol))
    throw std::domain_error(what + ": not on the probability simplex");
}

inline void check_open_simplex(const VectorRef& z, const std::string& what,
                               double tol = kSimplexTol)
{
  if (!is_open_simplex(z, tol))
    throw std::domain_error(what + ": not on the open probability simplex");
}

inline void check_interior_simplex(const VectorRef& z, const std::string& what,
                                   double eps = kInteriorEps)
{
  if (!is_interior_simplex(z, eps))
    throw std::domain_error(what + ": membership has a boundary component");
}

/* Push a simplex vector into the interior: raise any component below eps to
 * eps and take the added mass from the largest component. Keeps the sum
 * unchanged (to rounding) and every component >= eps, unlike a plain
 * clamp-and-renormalize, which can push clamped entries back below eps. */
inline Vector clamp_interior(const VectorRef& z, double eps = kInteriorEps)
{
  Vector v = z;
  double deficit = 0.0;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (v[i] < eps) {
      deficit += eps - v[i];
      v[i] = eps;
    }
  }
  if (deficit > 0.0) {
    Eigen::Index imax;
    v.maxCoeff(&imax);
    v[imax] -= deficit;
  }
  return v;
}

}  // namespace pmlda
