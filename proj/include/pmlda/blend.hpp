#pragma once

#include "pmlda/topics.hpp"
#include "pmlda/types.hpp"

namespace pmlda {

/* Membership vector plus fuzzifier. The blending weights are z_k^m, either
 * used raw (the fuzzy-likelihood path) or normalized to z_k^m / sum_j z_j^m
 * (the per-word data-generating path). */
struct BlendWeights {
  Vector membership;   // simplex vector z, length K
  double fuzzifier = 1.0;  // m
};

/* Result of convexly combining isotropic Gaussian topics in natural
 * parameters. The combined distribution is again an isotropic Gaussian,
 * with quadratic form precision_scale * I (a precision, not a covariance —
 * the blended exponent is -1/2 * sum_k w_k ||x-mu_k||^2 / sigma^2, so the
 * weight sum multiplies as an inverse variance).
 *
 * log_offset is the x-independent constant relating the weighted geometric
 * product of topic densities to the normalized blended density:
 *   sum_k w_k log N(x|mu_k, sigma^2) = log N_blended(x) + log_offset.
 */
struct BlendedGaussian {
  double precision_scale = 1.0;  // q: combined precision matrix is q * I
  Vector mean;                   // blended mean, in the convex hull of topic means
  double log_offset = 0.0;
};

/* Raw weights w_k = z_k^m. Zero components are legal for m > 0 (weight zero,
 * the topic drops out); for m <= 0 a zero component has no defined power and
 * is a domain error. A non-finite or non-positive weight sum is also a
 * domain error (reachable for negative m). */
Vector blend_weights(const BlendWeights& z, Eigen::Index expected_k);

/* Combine topics under z. With normalize_weights the weights are
 * z^m / sum z^m and the precision stays 1/sigma^2; without it the raw z^m
 * weights are used and the precision is (sum z^m)/sigma^2. */
BlendedGaussian blend_natural(const BlendWeights& z, const TopicParams& topics,
                              bool normalize_weights);

// Fully normalized log density of the blended Gaussian at x.
double log_blend_pdf(const VectorRef& x, const BlendWeights& z,
                     const TopicParams& topics, bool normalize_weights);

/* sum_k w_k log N(x|mu_k, sigma^2), computed directly from the per-topic
 * densities (an independent route from blend_natural; the two differ by
 * the constant log_offset). */
double log_product_form(const VectorRef& x, const BlendWeights& z,
                        const TopicParams& topics,
                        bool normalize_weights = false);

/* log Z such that exp(log_product_form(x) - log Z) is the normalized blended
 * density, raw-weight path. Zero at any simplex vertex (a single normalized
 * Gaussian) and, for m=1, whenever all topic means coincide. */
double fdl_normalizer(const BlendWeights& z, const TopicParams& topics);

/* log of the normalizing constant of prod_k N(x|mu_k, precision z_k^m/sigma^2)
 * where each factor carries its own (z_k^m / 2 pi sigma^2)^(p/2) normalizer.
 * This is the constant the membership-prior construction multiplies back in;
 * it diverges to -inf at simplex vertices, so interior z is required. */
double log_precision_product_normalizer(const BlendWeights& z,
                                        const TopicParams& topics);

}  // namespace pmlda
