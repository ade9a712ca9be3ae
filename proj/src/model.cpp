#include "pmlda/model.hpp"

#include "pmlda/blend.hpp"
#include "pmlda/distributions.hpp"

#include <cmath>
#include <stdexcept>

namespace pmlda {

double log_doc_joint(const Document& doc, const DocumentState& state,
                     const TopicParams& topics, const Hyperparams& hyper)
{
  validate(hyper);
  validate(topics);
  if (topics.topic_count() != hyper.topic_count)
    throw std::invalid_argument("log_doc_joint: topic count mismatch");
  if (doc.size() > 0 && doc.words.rows() != topics.dim())
    throw std::invalid_argument("log_doc_joint: word dimensionality mismatch");
  validate(state, hyper.topic_count, doc.size());

  double res = log_dirichlet_pdf(state.pi, DirichletParams{hyper.alpha});
  res += std::log(hyper.lambda) - hyper.lambda * state.s;

  if (doc.size() == 0)
    return res;

  const DirichletParams membership_prior{state.s * state.pi};
  for (Eigen::Index n = 0; n < doc.size(); ++n) {
    const BlendWeights w{state.memberships.col(n), hyper.fuzzifier};
    res += log_blend_pdf(doc.words.col(n), w, topics, /*normalize_weights=*/true);
    res += log_dirichlet_pdf(state.memberships.col(n), membership_prior);
  }
  return res;
}

double log_corpus_posterior(const Corpus& corpus,
                            const std::vector<DocumentState>& states,
                            const TopicParams& topics, const Hyperparams& hyper)
{
  validate(corpus);
  if (states.size() != corpus.documents.size())
    throw std::invalid_argument("log_corpus_posterior: one state per document required");
  double res = 0.0;
  for (std::size_t d = 0; d < corpus.documents.size(); ++d)
    res += log_doc_joint(corpus.documents[d], states[d], topics, hyper);
  return res;
}

std::pair<Corpus, std::vector<DocumentState>> generate_corpus(
    const Hyperparams& hyper, const TopicParams& topics,
    const std::vector<Eigen::Index>& doc_sizes, const RngStream& rng)
{
  validate(hyper);
  validate(topics);
  if (topics.topic_count() != hyper.topic_count)
    throw std::invalid_argument("generate_corpus: topic count mismatch");
  if (doc_sizes.empty())
    throw std::invalid_argument("generate_corpus: need at least one document");
  for (Eigen::Index n : doc_sizes)
    if (n < 1)
      throw std::invalid_argument("generate_corpus: document sizes must be positive");

  Corpus corpus;
  corpus.dim = topics.dim();
  std::vector<DocumentState> states;
  states.reserve(doc_sizes.size());

  const DirichletParams proportion_prior{hyper.alpha};
  const ExponentialParams scale_prior{hyper.lambda};

  for (std::size_t d = 0; d < doc_sizes.size(); ++d) {
    RngStream stream = rng.substream(d);
    const Eigen::Index nd = doc_sizes[d];

    DocumentState state;
    state.pi = clamp_interior(sample_dirichlet(proportion_prior, stream));
    state.s = sample_exponential(scale_prior, stream);
    state.memberships.resize(hyper.topic_count, nd);

    Document doc;
    doc.id = "doc" + std::to_string(d);
    doc.words.resize(topics.dim(), nd);

    const DirichletParams membership_prior{state.s * state.pi};
    for (Eigen::Index n = 0; n < nd; ++n) {
      const Vector z = clamp_interior(sample_dirichlet(membership_prior, stream));
      state.memberships.col(n) = z;
      const BlendedGaussian b =
          blend_natural(BlendWeights{z, hyper.fuzzifier}, topics,
                        /*normalize_weights=*/true);
      doc.words.col(n) =
          sample_gaussian(IsotropicGaussian{b.mean, 1.0 / b.precision_scale}, stream);
    }

    corpus.documents.push_back(std::move(doc));
    states.push_back(std::move(state));
  }
  return {std::move(corpus), std::move(states)};
}

}  // namespace pmlda
