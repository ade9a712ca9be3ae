#include "pmlda/unified.hpp"

#include "pmlda/blend.hpp"
#include "pmlda/distributions.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>

namespace pmlda {

namespace {

constexpr double kLogTwoPi = 1.8378770664093454835606594728112;
constexpr double kGridClamp = 1e-6;

std::string fmt17(double v)
{
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

void validate(const UnifiedHyper& h)
{
  if (h.alpha.size() == 0 || !(h.alpha.array() > 0.0).all())
    throw std::invalid_argument("UnifiedHyper: alpha must be positive");
  if (!(h.lambda > 0.0))
    throw std::invalid_argument("UnifiedHyper: lambda must be positive");
  if (h.dim < 1)
    throw std::invalid_argument("UnifiedHyper: dimensionality must be positive");
}

void validate(const PrototypePrior& p)
{
  if (p.mean.size() == 0 || p.mean.size() != p.covariance_diagonal.size())
    throw std::invalid_argument("PrototypePrior: mean/covariance size mismatch");
  if (!(p.covariance_diagonal.array() > 0.0).all())
    throw std::invalid_argument("PrototypePrior: covariance diagonal must be positive");
}

void validate(const GridSpec& spec)
{
  auto check_range = [](const GridRange& r, const char* what) {
    if (!(r.step > 0.0) || !(r.lo < r.hi))
      throw std::invalid_argument(std::string("GridSpec: bad range for ") + what);
  };
  check_range(spec.x_range, "x");
  check_range(spec.z_range, "z");
  if (spec.m_values.empty() || spec.s_values.empty())
    throw std::invalid_argument("GridSpec: m and s value lists must be non-empty");
  for (double s : spec.s_values)
    if (!(s > 0.0))
      throw std::invalid_argument("GridSpec: s values must be positive");
}

std::vector<double> grid_points(const GridRange& r)
{
  std::vector<double> pts;
  const auto n = static_cast<std::size_t>(std::floor((r.hi - r.lo) / r.step + 0.5)) + 1;
  pts.reserve(n);
  for (std::size_t i = 0; i < n; ++i)
    pts.push_back(r.lo + static_cast<double>(i) * r.step);
  return pts;
}

double log_fcp(const VectorRef& z, double s, const VectorRef& pi,
               const TopicParams& topics, double fuzzifier, Eigen::Index dim)
{
  if (!(s > 0.0))
    throw std::domain_error("log_fcp: scaling factor must be positive");
  check_interior_simplex(z, "log_fcp");
  check_simplex(pi, "log_fcp: pi");

  const BlendWeights w{z, fuzzifier};
  const double log_z_sum = z.array().log().sum();
  return log_precision_product_normalizer(w, topics) -
         0.5 * fuzzifier * static_cast<double>(dim) * log_z_sum +
         log_dirichlet_pdf(z, DirichletParams{s * pi});
}

double log_unified_joint(const MatrixRef& X, const MatrixRef& Z,
                         const VectorRef& pi, double s, const TopicParams& topics,
                         const UnifiedHyper& hyper)
{
  validate(hyper);
  validate(topics);
  const Eigen::Index n = X.cols();
  const Eigen::Index k = topics.topic_count();
  const double p = static_cast<double>(topics.dim());
  if (Z.cols() != n || Z.rows() != k || pi.size() != k || hyper.alpha.size() != k)
    throw std::invalid_argument("log_unified_joint: shape mismatch");
  if (n > 0 && X.rows() != topics.dim())
    throw std::invalid_argument("log_unified_joint: data dimensionality mismatch");
  if (!(s > 0.0))
    throw std::domain_error("log_unified_joint: scaling factor must be positive");
  check_open_simplex(pi, "log_unified_joint: pi");

  const double sigma2 = topics.variance;
  const DirichletParams membership_prior{s * pi};

  double res = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    check_interior_simplex(Z.col(i), "log_unified_joint: membership");
    for (Eigen::Index j = 0; j < k; ++j) {
      const double w = std::pow(Z(j, i), hyper.fuzzifier);
      res += -0.5 * p * (kLogTwoPi + std::log(sigma2)) -
             0.5 * w * (X.col(i) - topics.means.col(j)).squaredNorm() / sigma2;
    }
    res += log_dirichlet_pdf(Z.col(i), membership_prior);
  }

  res += log_dirichlet_pdf(pi, DirichletParams{hyper.alpha});
  res += std::log(hyper.lambda) - hyper.lambda * s;
  return res;
}

double log_bfc_joint(const MatrixRef& X, const MatrixRef& Z, const TopicParams& topics,
                     const PrototypePrior& prior, const VectorRef& alpha,
                     double fuzzifier)
{
  validate(topics);
  validate(prior);
  const Eigen::Index n = X.cols();
  const Eigen::Index k = topics.topic_count();
  if (Z.cols() != n || Z.rows() != k || alpha.size() != k)
    throw std::invalid_argument("log_bfc_joint: shape mismatch");
  if (n > 0 && X.rows() != topics.dim())
    throw std::invalid_argument("log_bfc_joint: data dimensionality mismatch");
  if (prior.mean.size() != topics.dim())
    throw std::invalid_argument("log_bfc_joint: prototype prior dimensionality mismatch");

  const double sigma2 = topics.variance;
  double res = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    check_interior_simplex(Z.col(i), "log_bfc_joint: membership");
    for (Eigen::Index j = 0; j < k; ++j) {
      const double w = std::pow(Z(j, i), fuzzifier);
      res += -0.5 * w * (X.col(i) - topics.means.col(j)).squaredNorm() / sigma2;
      res += (alpha[j] - 1.0) * std::log(Z(j, i));
    }
  }
  for (Eigen::Index j = 0; j < k; ++j) {
    const Vector d = topics.means.col(j) - prior.mean;
    res += -0.5 * (d.array().square() / prior.covariance_diagonal.array()).sum();
  }
  return res;
}

LikelihoodGrid likelihood_grid(const GridSpec& spec, const TopicParams& topics,
                               const UnifiedHyper& hyper, const VectorRef& pi)
{
  validate(spec);
  validate(topics);
  if (topics.topic_count() != 2)
    throw std::invalid_argument("likelihood_grid: requires exactly two topics");

  LikelihoodGrid grid;
  grid.spec = spec;
  grid.xs = grid_points(spec.x_range);
  grid.zs = grid_points(spec.z_range);
  grid.cells.resize(spec.m_values.size() * spec.s_values.size());

  for (std::size_t mi = 0; mi < spec.m_values.size(); ++mi) {
    for (std::size_t si = 0; si < spec.s_values.size(); ++si) {
      Matrix cell(grid.xs.size(), grid.zs.size());
      UnifiedHyper h = hyper;
      h.fuzzifier = spec.m_values[mi];
      const double s = spec.s_values[si];
      for (std::size_t xi = 0; xi < grid.xs.size(); ++xi) {
        Matrix x(topics.dim(), 1);
        x(0, 0) = grid.xs[xi];
        for (std::size_t zi = 0; zi < grid.zs.size(); ++zi) {
          const double z1 =
              std::min(1.0 - kGridClamp, std::max(kGridClamp, grid.zs[zi]));
          Matrix z(2, 1);
          z(0, 0) = z1;
          z(1, 0) = 1.0 - z1;
          cell(static_cast<Eigen::Index>(xi), static_cast<Eigen::Index>(zi)) =
              log_unified_joint(x, z, pi, s, topics, h);
        }
      }
      grid.cells[mi * spec.s_values.size() + si] = std::move(cell);
    }
  }
  return grid;
}

void write_grid_csv(const LikelihoodGrid& grid, std::ostream& out)
{
  out << "m,s,x,z1,loglik\n";
  for (std::size_t mi = 0; mi < grid.spec.m_values.size(); ++mi) {
    for (std::size_t si = 0; si < grid.spec.s_values.size(); ++si) {
      const Matrix& cell = grid.cell(mi, si);
      for (std::size_t xi = 0; xi < grid.xs.size(); ++xi) {
        for (std::size_t zi = 0; zi < grid.zs.size(); ++zi) {
          out << fmt17(grid.spec.m_values[mi]) << ',' << fmt17(grid.spec.s_values[si])
              << ',' << fmt17(grid.xs[xi]) << ',' << fmt17(grid.zs[zi]) << ','
              << fmt17(cell(static_cast<Eigen::Index>(xi), static_cast<Eigen::Index>(zi)))
              << '\n';
        }
      }
    }
  }
}

}  // namespace pmlda
