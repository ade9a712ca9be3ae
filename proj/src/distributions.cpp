#include "pmlda/distributions.hpp"

#include <cmath>
#include <stdexcept>

namespace pmlda {

namespace {
constexpr double kLogTwoPi = 1.8378770664093454835606594728112;
}

void validate(const DirichletParams& p)
{
  if (p.concentration.size() == 0)
    throw std::invalid_argument("DirichletParams: empty concentration");
  if (!(p.concentration.array() > 0.0).all() || !p.concentration.allFinite())
    throw std::invalid_argument("DirichletParams: concentration must be positive and finite");
}

void validate(const IsotropicGaussian& g)
{
  if (g.mean.size() == 0 || !g.mean.allFinite())
    throw std::invalid_argument("IsotropicGaussian: mean must be non-empty and finite");
  if (!(g.variance > 0.0) || !std::isfinite(g.variance))
    throw std::invalid_argument("IsotropicGaussian: variance must be positive");
}

void validate(const ExponentialParams& p)
{
  if (!(p.rate > 0.0) || !std::isfinite(p.rate))
    throw std::invalid_argument("ExponentialParams: rate must be positive");
}

double log_gamma(double x)
{
  if (!(x > 0.0))
    throw std::domain_error("log_gamma: argument must be positive");
  return std::lgamma(x);
}

double log_dirichlet_pdf(const VectorRef& z, const DirichletParams& p)
{
  validate(p);
  if (z.size() != p.concentration.size())
    throw std::domain_error("log_dirichlet_pdf: length mismatch");
  check_open_simplex(z, "log_dirichlet_pdf");

  double res = log_gamma(p.concentration.sum());
  for (Eigen::Index k = 0; k < z.size(); ++k) {
    res -= log_gamma(p.concentration[k]);
    res += (p.concentration[k] - 1.0) * std::log(z[k]);
  }
  return res;
}

Vector sample_dirichlet(const DirichletParams& p, RngStream& rng)
{
  validate(p);
  const Eigen::Index k = p.concentration.size();
  Vector lg(k);
  for (Eigen::Index i = 0; i < k; ++i)
    lg[i] = rng.log_gamma_draw(p.concentration[i]);
  const double lmax = lg.maxCoeff();
  Vector v = (lg.array() - lmax).exp();
  v /= v.sum();
  return v;
}

double log_gaussian_pdf(const VectorRef& x, const IsotropicGaussian& g)
{
  validate(g);
  if (x.size() != g.mean.size())
    throw std::domain_error("log_gaussian_pdf: dimension mismatch");
  const double p = static_cast<double>(x.size());
  const double sq = (x - g.mean).squaredNorm();
  return -0.5 * p * (kLogTwoPi + std::log(g.variance)) - 0.5 * sq / g.variance;
}

Vector sample_gaussian(const IsotropicGaussian& g, RngStream& rng)
{
  validate(g);
  const double sd = std::sqrt(g.variance);
  Vector x(g.mean.size());
  for (Eigen::Index i = 0; i < x.size(); ++i)
    x[i] = g.mean[i] + sd * rng.normal();
  return x;
}

double log_exponential_pdf(double x, const ExponentialParams& p)
{
  validate(p);
  if (!(x >= 0.0))
    throw std::domain_error("log_exponential_pdf: support is x >= 0");
  return std::log(p.rate) - p.rate * x;
}

double sample_exponential(const ExponentialParams& p, RngStream& rng)
{
  validate(p);
  return -std::log(rng.uniform_open()) / p.rate;
}

double log_diagonal_gaussian_pdf(const VectorRef& x, const VectorRef& mean,
                                 const VectorRef& variance_diagonal)
{
  if (x.size() != mean.size() || x.size() != variance_diagonal.size())
    throw std::domain_error("log_diagonal_gaussian_pdf: dimension mismatch");
  if (!(variance_diagonal.array() > 0.0).all())
    throw std::domain_error("log_diagonal_gaussian_pdf: variances must be positive");
  double res = 0.0;
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    const double d = x[i] - mean[i];
    res += -0.5 * (kLogTwoPi + std::log(variance_diagonal[i])) -
           0.5 * d * d / variance_diagonal[i];
  }
  return res;
}

}  // namespace pmlda
