#pragma once

#include "pmlda/topics.hpp"
#include "pmlda/types.hpp"

#include <iosfwd>
#include <vector>

namespace pmlda {

struct UnifiedHyper {
  Vector alpha;          // Dirichlet prior on the mixing proportion, length K
  double lambda = 1.0;   // exponential rate on the scaling factor
  double fuzzifier = 1.0;
  Eigen::Index dim = 1;  // data dimensionality p
};

void validate(const UnifiedHyper& h);

// Gaussian prior on cluster prototypes with a diagonal covariance.
struct PrototypePrior {
  Vector mean;                 // mu_y
  Vector covariance_diagonal;  // diag of Sigma_y, positive
};

void validate(const PrototypePrior& p);

struct GridRange {
  double lo = 0.0;
  double hi = 1.0;
  double step = 0.05;
};

struct GridSpec {
  GridRange x_range;              // data value sweep
  GridRange z_range;              // first-topic membership sweep
  std::vector<double> m_values;   // fuzzifier settings
  std::vector<double> s_values;   // scaling-factor settings
};

void validate(const GridSpec& spec);

std::vector<double> grid_points(const GridRange& r);

/* log of the membership prior evaluated at z: the precision-product
 * normalizer times prod_k z_k^(-m p / 2) times Dir(z | s * pi). Boundary
 * memberships (any component below the interior tolerance) are rejected. */
double log_fcp(const VectorRef& z, double s, const VectorRef& pi,
               const TopicParams& topics, double fuzzifier, Eigen::Index dim);

/* Joint log likelihood of data, memberships, mixing proportion and scaling
 * factor:
 *   sum_{n,k} [ -p/2 log(2 pi sigma^2) - z_nk^m ||x_n - mu_k||^2 / (2 sigma^2) ]
 *   + sum_n log Dir(z_n | s pi) + log Dir(pi | alpha) + log lambda - lambda s.
 * The -p/2 log(2 pi sigma^2) constant is included once per point per topic.
 * X is p x N (one column per point), Z is K x N. */
double log_unified_joint(const MatrixRef& X, const MatrixRef& Z,
                         const VectorRef& pi, double s, const TopicParams& topics,
                         const UnifiedHyper& hyper);

/* Proportional joint of the prototype-prior clustering model:
 *   -1/2 sum_{n,k} z_nk^m ||x_n - mu_k||^2 / sigma^2
 *   + sum_{n,k} (alpha_k - 1) log z_nk
 *   - 1/2 sum_k (mu_k - mu_y)^T Sigma_y^{-1} (mu_k - mu_y),
 * returned up to that proportionality (normalizing constants dropped). */
double log_bfc_joint(const MatrixRef& X, const MatrixRef& Z, const TopicParams& topics,
                     const PrototypePrior& prior, const VectorRef& alpha,
                     double fuzzifier);

/* Log-likelihood surfaces over (x, z1) for every (m, s) cell, evaluated with
 * a single data point and K=2 topics; boundary z values are clamped to
 * [1e-6, 1-1e-6] before the log terms. cell(mi, si) has one row per x value
 * and one column per z1 value. */
struct LikelihoodGrid {
  GridSpec spec;
  std::vector<double> xs;
  std::vector<double> zs;
  std::vector<Matrix> cells;  // indexed mi * s_count + si

  const Matrix& cell(std::size_t mi, std::size_t si) const
  {
    return cells[mi * spec.s_values.size() + si];
  }
};

LikelihoodGrid likelihood_grid(const GridSpec& spec, const TopicParams& topics,
                               const UnifiedHyper& hyper, const VectorRef& pi);

/* CSV rendering: header "m,s,x,z1,loglik", (m,s) cells in spec order, rows
 * row-major over (x, z1), values with 17 significant digits. */
void write_grid_csv(const LikelihoodGrid& grid, std::ostream& out);

}  // namespace pmlda
