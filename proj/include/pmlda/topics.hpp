#pragma once

#include "pmlda/types.hpp"

namespace pmlda {

/* K Gaussian topics over a p-dimensional feature space: one mean per topic
 * (columns of `means`) and a single isotropic variance shared by all topics.
 * Per-topic variances are rejected by construction — there is exactly one
 * scalar here. */
struct TopicParams {
  Matrix means;            // p x K, column k is mu_k
  double variance = 1.0;   // sigma^2, shared

  Eigen::Index dim() const { return means.rows(); }
  Eigen::Index topic_count() const { return means.cols(); }
};

inline void validate(const TopicParams& t)
{
  if (t.means.size() == 0 || !t.means.allFinite())
    throw std::invalid_argument("TopicParams: means must be non-empty and finite");
  if (!(t.variance > 0.0) || !std::isfinite(t.variance))
    throw std::invalid_argument("TopicParams: variance must be positive");
}

}  // namespace pmlda
