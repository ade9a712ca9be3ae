#pragma once

#include "pmlda/corpus.hpp"
#include "pmlda/rng.hpp"
#include "pmlda/topics.hpp"

#include <utility>
#include <vector>

namespace pmlda {

/* Per-document joint log density of (pi_d, s_d, Z_d, X_d):
 *   log Dir(pi | alpha) + log lambda - lambda s
 *   + sum_n log N(x_n | blended mean, sigma^2)   [normalized z^m weights]
 *   + sum_n [ log Gamma(sum_k s pi_k) - sum_k log Gamma(s pi_k)
 *             + sum_k (s pi_k - 1) log z_nk ].
 */
double log_doc_joint(const Document& doc, const DocumentState& state,
                     const TopicParams& topics, const Hyperparams& hyper);

// Sum of log_doc_joint over the corpus: the posterior objective up to a
// constant in the latent variables.
double log_corpus_posterior(const Corpus& corpus,
                            const std::vector<DocumentState>& states,
                            const TopicParams& topics, const Hyperparams& hyper);

/* Draw a corpus from the model: per document pi ~ Dir(alpha), s ~ exp(lambda),
 * per word z ~ Dir(s pi) then x from the blended Gaussian with normalized z^m
 * weights. Membership draws are nudged onto the interior simplex before the
 * word is drawn so the returned states always satisfy the state invariants.
 * Each document consumes its own substream, making output independent of any
 * parallel scheduling and bit-stable for a fixed seed. */
std::pair<Corpus, std::vector<DocumentState>> generate_corpus(
    const Hyperparams& hyper, const TopicParams& topics,
    const std::vector<Eigen::Index>& doc_sizes, const RngStream& rng);

}  // namespace pmlda
