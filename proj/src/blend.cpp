#include "pmlda/blend.hpp"

#include "pmlda/distributions.hpp"

#include <cmath>
#include <stdexcept>

namespace pmlda {

namespace {
constexpr double kLogTwoPi = 1.8378770664093454835606594728112;
}

Vector blend_weights(const BlendWeights& z, Eigen::Index expected_k)
{
  if (z.membership.size() != expected_k)
    throw std::domain_error("blend_weights: membership length does not match topic count");
  check_simplex(z.membership, "blend_weights");

  const double m = z.fuzzifier;
  Vector w(z.membership.size());
  for (Eigen::Index k = 0; k < w.size(); ++k) {
    const double zk = z.membership[k];
    if (zk == 0.0) {
      if (m > 0.0) {
        w[k] = 0.0;
        continue;
      }
      throw std::domain_error("blend_weights: zero membership with non-positive fuzzifier");
    }
    w[k] = std::pow(zk, m);
  }
  const double s = w.sum();
  if (!std::isfinite(s) || s <= 0.0)
    throw std::domain_error("blend_weights: weight sum is not positive and finite");
  return w;
}

BlendedGaussian blend_natural(const BlendWeights& z, const TopicParams& topics,
                              bool normalize_weights)
{
  validate(topics);
  Vector u = blend_weights(z, topics.topic_count());
  if (normalize_weights)
    u /= u.sum();

  const double s = u.sum();
  const double p = static_cast<double>(topics.dim());
  const double sigma2 = topics.variance;

  BlendedGaussian b;
  b.mean = (topics.means * u) / s;
  b.precision_scale = s / sigma2;

  // Weighted spread of the topic means around the blended mean.
  double v = 0.0;
  for (Eigen::Index k = 0; k < u.size(); ++k) {
    if (u[k] == 0.0)
      continue;
    v += u[k] * (topics.means.col(k) - b.mean).squaredNorm();
  }

  // Grouped so the offset is exactly zero when s == 1 and v == 0 (vertices).
  b.log_offset = 0.5 * p * ((1.0 - s) * (kLogTwoPi + std::log(sigma2)) - std::log(s)) -
                 v / (2.0 * sigma2);
  return b;
}

double log_blend_pdf(const VectorRef& x, const BlendWeights& z,
                     const TopicParams& topics, bool normalize_weights)
{
  const BlendedGaussian b = blend_natural(z, topics, normalize_weights);
  if (x.size() != b.mean.size())
    throw std::domain_error("log_blend_pdf: dimension mismatch");
  const double p = static_cast<double>(x.size());
  return 0.5 * p * (std::log(b.precision_scale) - kLogTwoPi) -
         0.5 * b.precision_scale * (x - b.mean).squaredNorm();
}

double log_product_form(const VectorRef& x, const BlendWeights& z,
                        const TopicParams& topics, bool normalize_weights)
{
  validate(topics);
  if (x.size() != topics.dim())
    throw std::domain_error("log_product_form: dimension mismatch");
  Vector u = blend_weights(z, topics.topic_count());
  if (normalize_weights)
    u /= u.sum();

  double res = 0.0;
  for (Eigen::Index k = 0; k < u.size(); ++k) {
    if (u[k] == 0.0)
      continue;
    res += u[k] * log_gaussian_pdf(x, IsotropicGaussian{topics.means.col(k), topics.variance});
  }
  return res;
}

double fdl_normalizer(const BlendWeights& z, const TopicParams& topics)
{
  return blend_natural(z, topics, false).log_offset;
}

double log_precision_product_normalizer(const BlendWeights& z,
                                        const TopicParams& topics)
{
  validate(topics);
  if ((z.membership.array() <= 0.0).any())
    throw std::domain_error(
        "log_precision_product_normalizer: requires strictly interior membership");
  const Vector w = blend_weights(z, topics.topic_count());
  const double s = w.sum();
  const double p = static_cast<double>(topics.dim());
  const double k = static_cast<double>(topics.topic_count());
  const double sigma2 = topics.variance;
  const Vector mean = (topics.means * w) / s;

  double v = 0.0;
  for (Eigen::Index j = 0; j < w.size(); ++j)
    v += w[j] * (topics.means.col(j) - mean).squaredNorm();

  const double log_z_sum = z.membership.array().log().sum();
  return 0.5 * p *
             (z.fuzzifier * log_z_sum - (k - 1.0) * (kLogTwoPi + std::log(sigma2)) -
              std::log(s)) -
         v / (2.0 * sigma2);
}

}  // namespace pmlda
