#pragma once

#include "pmlda/topics.hpp"
#include "pmlda/types.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace pmlda {

/* A document: a group of feature vectors ("words") sharing one topic
 * proportion. Words are columns of a p x N_d matrix. provenance optionally
 * records the source pixel index of each word for map rendering. */
struct Document {
  std::string id;
  Matrix words;  // p x N_d
  std::vector<std::int64_t> provenance;  // empty, or one pixel index per word

  Eigen::Index size() const { return words.cols(); }
};

struct Corpus {
  std::vector<Document> documents;
  Eigen::Index dim = 0;  // feature dimensionality p

  Eigen::Index doc_count() const { return static_cast<Eigen::Index>(documents.size()); }
  Eigen::Index word_count() const;
};

void validate(const Corpus& corpus);

struct Hyperparams {
  Vector alpha;           // Dirichlet prior on topic proportions, length K
  double lambda = 1.0;    // exponential rate on the scaling factor
  double fuzzifier = 1.0; // m
  Eigen::Index topic_count = 2;  // K
};

void validate(const Hyperparams& h);

/* Per-document latent state: topic proportion pi, scaling factor s, and one
 * membership simplex vector per word (columns of a K x N_d matrix). pi and
 * memberships are kept on the interior simplex (components >= 1e-9). */
struct DocumentState {
  Vector pi;
  double s = 1.0;
  Matrix memberships;  // K x N_d
};

void validate(const DocumentState& state, Eigen::Index topic_count,
              Eigen::Index word_count);

}  // namespace pmlda
