#include "pmlda/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace pmlda {

namespace {

// Inverse-distance-ratio membership update; zero distances collapse the
// membership onto the nearest zero-distance centroid.
void fcm_update_memberships(const MatrixRef& points, const Matrix& centroids,
                            double fuzzifier, Matrix& memberships)
{
  const Eigen::Index n = points.cols();
  const Eigen::Index k = centroids.cols();
  const double expo = 1.0 / (fuzzifier - 1.0);
  Vector d2(k);
  for (Eigen::Index i = 0; i < n; ++i) {
    Eigen::Index zero_at = -1;
    for (Eigen::Index j = 0; j < k; ++j) {
      d2[j] = (points.col(i) - centroids.col(j)).squaredNorm();
      if (d2[j] == 0.0 && zero_at < 0)
        zero_at = j;
    }
    if (zero_at >= 0) {
      memberships.col(i).setZero();
      memberships(zero_at, i) = 1.0;
      continue;
    }
    for (Eigen::Index j = 0; j < k; ++j) {
      double inv = 0.0;
      for (Eigen::Index l = 0; l < k; ++l)
        inv += std::pow(d2[j] / d2[l], expo);
      memberships(j, i) = 1.0 / inv;
    }
  }
}

void fcm_update_centroids(const MatrixRef& points, const Matrix& memberships,
                          double fuzzifier, Matrix& centroids)
{
  const Eigen::Index k = centroids.cols();
  for (Eigen::Index j = 0; j < k; ++j) {
    const Eigen::ArrayXd w = memberships.row(j).array().pow(fuzzifier);
    const double total = w.sum();
    if (total > 0.0)
      centroids.col(j) = (points * w.matrix()) / total;
  }
}

std::vector<Eigen::Index> distinct_random_indices(Eigen::Index n, Eigen::Index k,
                                                  RngStream& rng)
{
  // Partial Fisher-Yates over an index vector.
  std::vector<Eigen::Index> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  for (Eigen::Index i = 0; i < k; ++i) {
    const auto j =
        i + static_cast<Eigen::Index>(rng.uniform() * static_cast<double>(n - i));
    std::swap(idx[i], idx[std::min(j, n - 1)]);
  }
  idx.resize(k);
  return idx;
}

Eigen::Index nearest_codeword(const MatrixRef& points, Eigen::Index i,
                              const Matrix& codewords)
{
  Eigen::Index best = 0;
  double best_d2 = std::numeric_limits<double>::infinity();
  for (Eigen::Index j = 0; j < codewords.cols(); ++j) {
    const double d2 = (points.col(i) - codewords.col(j)).squaredNorm();
    if (d2 < best_d2) {
      best_d2 = d2;
      best = j;
    }
  }
  return best;
}

}  // namespace

double fcm_objective(const MatrixRef& points, const Matrix& centroids,
                     const Matrix& memberships, double fuzzifier)
{
  double obj = 0.0;
  for (Eigen::Index i = 0; i < points.cols(); ++i)
    for (Eigen::Index j = 0; j < centroids.cols(); ++j)
      obj += std::pow(memberships(j, i), fuzzifier) *
             (points.col(i) - centroids.col(j)).squaredNorm();
  return obj;
}

FcmState fcm_fit(const MatrixRef& points, Eigen::Index k, double fuzzifier,
                 double tolerance, Eigen::Index max_iter, RngStream& rng)
{
  const Eigen::Index n = points.cols();
  if (!(fuzzifier > 1.0))
    throw std::invalid_argument("fcm_fit: fuzzifier must exceed 1");
  if (k < 1 || n < k)
    throw std::invalid_argument("fcm_fit: need at least K points");
  if (!(tolerance >= 0.0) || max_iter < 1)
    throw std::invalid_argument("fcm_fit: bad tolerance or iteration budget");

  FcmState state;
  state.fuzzifier = fuzzifier;
  state.centroids.resize(points.rows(), k);
  const auto seeds = distinct_random_indices(n, k, rng);
  for (Eigen::Index j = 0; j < k; ++j)
    state.centroids.col(j) = points.col(seeds[j]);

  state.memberships.resize(k, n);
  fcm_update_memberships(points, state.centroids, fuzzifier, state.memberships);
  state.objective = fcm_objective(points, state.centroids, state.memberships, fuzzifier);

  for (Eigen::Index it = 0; it < max_iter; ++it) {
    fcm_update_centroids(points, state.memberships, fuzzifier, state.centroids);
    fcm_update_memberships(points, state.centroids, fuzzifier, state.memberships);
    const double obj =
        fcm_objective(points, state.centroids, state.memberships, fuzzifier);
    const double improvement = state.objective - obj;
    state.objective = obj;
    state.iterations = it + 1;
    if (improvement < tolerance)
      break;
  }
  return state;
}

QuantizedCorpus kmeans_quantize(const MatrixRef& points, Eigen::Index v,
                                Eigen::Index max_iter, RngStream& rng)
{
  const Eigen::Index n = points.cols();
  if (v < 2)
    throw std::invalid_argument("kmeans_quantize: dictionary size must be at least 2");
  if (n < v)
    throw std::invalid_argument("kmeans_quantize: need at least V points");

  Matrix codewords(points.rows(), v);

  // D^2-weighted seeding.
  Vector d2 = Vector::Constant(n, std::numeric_limits<double>::infinity());
  const auto first =
      static_cast<Eigen::Index>(rng.uniform() * static_cast<double>(n));
  codewords.col(0) = points.col(std::min(first, n - 1));
  for (Eigen::Index j = 1; j < v; ++j) {
    for (Eigen::Index i = 0; i < n; ++i)
      d2[i] = std::min(d2[i], (points.col(i) - codewords.col(j - 1)).squaredNorm());
    const double total = d2.sum();
    Eigen::Index pick = 0;
    if (total > 0.0) {
      const double target = rng.uniform() * total;
      double acc = 0.0;
      for (Eigen::Index i = 0; i < n; ++i) {
        acc += d2[i];
        if (acc >= target) {
          pick = i;
          break;
        }
      }
    }
    codewords.col(j) = points.col(pick);
  }

  std::vector<std::int32_t> assignment(n, 0);
  for (Eigen::Index it = 0; it < max_iter; ++it) {
    bool changed = false;
    for (Eigen::Index i = 0; i < n; ++i) {
      const auto best = static_cast<std::int32_t>(nearest_codeword(points, i, codewords));
      if (best != assignment[i]) {
        assignment[i] = best;
        changed = true;
      }
    }

    Matrix sums = Matrix::Zero(points.rows(), v);
    Eigen::VectorXi counts = Eigen::VectorXi::Zero(v);
    for (Eigen::Index i = 0; i < n; ++i) {
      sums.col(assignment[i]) += points.col(i);
      counts[assignment[i]] += 1;
    }
    for (Eigen::Index j = 0; j < v; ++j) {
      if (counts[j] > 0) {
        codewords.col(j) = sums.col(j) / static_cast<double>(counts[j]);
      } else {
        // Re-seed a starved codeword at the point farthest from its codeword.
        Eigen::Index far = 0;
        double far_d2 = -1.0;
        for (Eigen::Index i = 0; i < n; ++i) {
          const double d = (points.col(i) - codewords.col(assignment[i])).squaredNorm();
          if (d > far_d2) {
            far_d2 = d;
            far = i;
          }
        }
        codewords.col(j) = points.col(far);
        changed = true;
      }
    }
    if (!changed)
      break;
  }

  QuantizedCorpus out;
  out.dictionary.codewords = std::move(codewords);
  out.token_ids.resize(n);
  for (Eigen::Index i = 0; i < n; ++i)
    out.token_ids[i] =
        static_cast<std::int32_t>(nearest_codeword(points, i, out.dictionary.codewords));
  return out;
}

Matrix LdaState::topic_word_distributions() const
{
  const Eigen::Index v = topic_word_counts.cols();
  Matrix dist = topic_word_counts.array() + beta;
  for (Eigen::Index k = 0; k < dist.rows(); ++k)
    dist.row(k) /= topic_counts[k] + static_cast<double>(v) * beta;
  return dist;
}

Matrix LdaState::document_topic_distributions() const
{
  Matrix dist = document_topic_counts.array() + alpha;
  for (Eigen::Index d = 0; d < dist.rows(); ++d)
    dist.row(d) /= dist.row(d).sum();
  return dist;
}

LdaState lda_fit(const TokenCorpus& corpus, Eigen::Index k, double alpha, double beta,
                 Eigen::Index iterations, RngStream& rng)
{
  if (k < 1)
    throw std::invalid_argument("lda_fit: topic count must be positive");
  if (!(alpha > 0.0) || !(beta > 0.0))
    throw std::invalid_argument("lda_fit: hyperparameters must be positive");
  if (corpus.vocab_size < 1 || corpus.tokens.empty())
    throw std::invalid_argument("lda_fit: empty corpus or vocabulary");
  const auto d_count = static_cast<Eigen::Index>(corpus.tokens.size());
  const Eigen::Index v = corpus.vocab_size;

  LdaState state;
  state.alpha = alpha;
  state.beta = beta;
  state.topic_word_counts = Matrix::Zero(k, v);
  state.document_topic_counts = Matrix::Zero(d_count, k);
  state.topic_counts = Vector::Zero(k);
  state.assignments.resize(corpus.tokens.size());

  for (Eigen::Index d = 0; d < d_count; ++d) {
    const auto& doc = corpus.tokens[static_cast<std::size_t>(d)];
    auto& assign = state.assignments[static_cast<std::size_t>(d)];
    assign.resize(doc.size());
    for (std::size_t i = 0; i < doc.size(); ++i) {
      const std::int32_t w = doc[i];
      if (w < 0 || w >= v)
        throw std::domain_error("lda_fit: token id outside vocabulary");
      const auto topic = std::min<Eigen::Index>(
          static_cast<Eigen::Index>(rng.uniform() * static_cast<double>(k)), k - 1);
      assign[i] = static_cast<std::int32_t>(topic);
      state.topic_word_counts(topic, w) += 1.0;
      state.document_topic_counts(d, topic) += 1.0;
      state.topic_counts[topic] += 1.0;
    }
  }

  Vector weights(k);
  const double vbeta = static_cast<double>(v) * beta;
  for (Eigen::Index it = 0; it < iterations; ++it) {
    for (Eigen::Index d = 0; d < d_count; ++d) {
      const auto& doc = corpus.tokens[static_cast<std::size_t>(d)];
      auto& assign = state.assignments[static_cast<std::size_t>(d)];
      for (std::size_t i = 0; i < doc.size(); ++i) {
        const std::int32_t w = doc[i];
        const std::int32_t old = assign[i];
        state.topic_word_counts(old, w) -= 1.0;
        state.document_topic_counts(d, old) -= 1.0;
        state.topic_counts[old] -= 1.0;

        for (Eigen::Index j = 0; j < k; ++j)
          weights[j] = (state.document_topic_counts(d, j) + alpha) *
                       (state.topic_word_counts(j, w) + beta) /
                       (state.topic_counts[j] + vbeta);
        const double target = rng.uniform() * weights.sum();
        double acc = 0.0;
        Eigen::Index pick = k - 1;
        for (Eigen::Index j = 0; j < k; ++j) {
          acc += weights[j];
          if (acc >= target) {
            pick = j;
            break;
          }
        }

        assign[i] = static_cast<std::int32_t>(pick);
        state.topic_word_counts(pick, w) += 1.0;
        state.document_topic_counts(d, pick) += 1.0;
        state.topic_counts[pick] += 1.0;
      }
    }
  }
  return state;
}

std::vector<std::vector<std::int32_t>> lda_segment(const TokenCorpus& corpus,
                                                   const LdaState& state)
{
  const Eigen::Index k = state.topic_count();
  const Eigen::Index v = state.topic_word_counts.cols();
  const double vbeta = static_cast<double>(v) * state.beta;
  if (corpus.tokens.size() != state.assignments.size())
    throw std::invalid_argument("lda_segment: corpus does not match fitted state");

  std::vector<std::vector<std::int32_t>> labels(corpus.tokens.size());
  for (std::size_t d = 0; d < corpus.tokens.size(); ++d) {
    labels[d].resize(corpus.tokens[d].size());
    for (std::size_t i = 0; i < corpus.tokens[d].size(); ++i) {
      const std::int32_t w = corpus.tokens[d][i];
      if (w < 0 || w >= v)
        throw std::domain_error("lda_segment: unknown token id");
      Eigen::Index best = 0;
      double best_score = -1.0;
      for (Eigen::Index j = 0; j < k; ++j) {
        const double score =
            (state.document_topic_counts(static_cast<Eigen::Index>(d), j) + state.alpha) *
            (state.topic_word_counts(j, w) + state.beta) / (state.topic_counts[j] + vbeta);
        if (score > best_score) {
          best_score = score;
          best = j;
        }
      }
      labels[d][i] = static_cast<std::int32_t>(best);
    }
  }
  return labels;
}

}  // namespace pmlda
