#pragma once

#include "pmlda/rng.hpp"
#include "pmlda/types.hpp"

#include <cstdint>
#include <vector>

namespace pmlda {

/* Fuzzy c-means state. memberships is K x N (columns are simplex vectors);
 * objective is sum_{n,k} z_nk^m d^2(x_n, c_k) with squared Euclidean d^2. */
struct FcmState {
  Matrix centroids;    // p x K
  Matrix memberships;  // K x N
  double fuzzifier = 2.0;
  double objective = 0.0;
  Eigen::Index iterations = 0;
};

double fcm_objective(const MatrixRef& points, const Matrix& centroids,
                     const Matrix& memberships, double fuzzifier);

/* Alternating minimization of the fuzzy objective: inverse-distance-ratio
 * membership updates and z^m-weighted centroid updates, started from
 * randomly chosen distinct points. Stops when the objective improves by
 * less than `tolerance` or after `max_iter` rounds. A point coinciding with
 * a centroid takes full membership in the nearest zero-distance centroid.
 * points is p x N. Requires fuzzifier > 1 and N >= K. */
FcmState fcm_fit(const MatrixRef& points, Eigen::Index k, double fuzzifier,
                 double tolerance, Eigen::Index max_iter, RngStream& rng);

struct Dictionary {
  Matrix codewords;  // p x V
  Eigen::Index size() const { return codewords.cols(); }
};

struct QuantizedCorpus {
  Dictionary dictionary;
  std::vector<std::int32_t> token_ids;  // one per input point
};

/* k-means with greedy D^2 (k-means++ style) seeding; empty clusters are
 * re-seeded to the farthest point. Each point maps to its nearest codeword
 * (ties to the lowest index). */
QuantizedCorpus kmeans_quantize(const MatrixRef& points, Eigen::Index v,
                                Eigen::Index max_iter, RngStream& rng);

/* Token corpus for discrete LDA: tokens[d] lists the token ids of document d. */
struct TokenCorpus {
  std::vector<std::vector<std::int32_t>> tokens;
  std::int32_t vocab_size = 0;
};

struct LdaState {
  std::vector<std::vector<std::int32_t>> assignments;  // topic of every token
  Matrix topic_word_counts;     // K x V
  Matrix document_topic_counts; // D x K
  Vector topic_counts;          // K
  double alpha = 1.0;
  double beta = 0.01;

  Eigen::Index topic_count() const { return topic_word_counts.rows(); }

  // Point estimates from the final counts.
  Matrix topic_word_distributions() const;     // K x V, rows sum to 1
  Matrix document_topic_distributions() const; // D x K, rows sum to 1
};

/* Collapsed Gibbs sampling over token-topic assignments with the standard
 * count-based conditional. Sequential over tokens within a chain. */
LdaState lda_fit(const TokenCorpus& corpus, Eigen::Index k, double alpha, double beta,
                 Eigen::Index iterations, RngStream& rng);

/* Crisp per-token topic labels from a fitted state: argmax over topics of
 * (n_dk + alpha)(n_kw + beta)/(n_k + V beta), ties to the lowest index.
 * Token ids outside the fitted vocabulary are a domain error. */
std::vector<std::vector<std::int32_t>> lda_segment(const TokenCorpus& corpus,
                                                   const LdaState& state);

}  // namespace pmlda
