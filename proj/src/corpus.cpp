#include "pmlda/corpus.hpp"

#include <cmath>
#include <stdexcept>

namespace pmlda {

Eigen::Index Corpus::word_count() const
{
  Eigen::Index n = 0;
  for (const auto& d : documents)
    n += d.size();
  return n;
}

void validate(const Corpus& corpus)
{
  if (corpus.documents.empty())
    throw std::invalid_argument("Corpus: must contain at least one document");
  if (corpus.dim < 1)
    throw std::invalid_argument("Corpus: dimensionality must be positive");
  for (const auto& d : corpus.documents) {
    if (d.size() < 1)
      throw std::invalid_argument("Corpus: document '" + d.id + "' is empty");
    if (d.words.rows() != corpus.dim)
      throw std::invalid_argument("Corpus: document '" + d.id +
                                  "' has inconsistent dimensionality");
    if (!d.words.allFinite())
      throw std::invalid_argument("Corpus: document '" + d.id + "' has non-finite words");
    if (!d.provenance.empty() &&
        d.provenance.size() != static_cast<std::size_t>(d.size()))
      throw std::invalid_argument("Corpus: document '" + d.id +
                                  "' provenance length mismatch");
  }
}

void validate(const Hyperparams& h)
{
  if (h.topic_count < 2)
    throw std::invalid_argument("Hyperparams: topic count must be at least 2");
  if (h.alpha.size() != h.topic_count || !(h.alpha.array() > 0.0).all())
    throw std::invalid_argument("Hyperparams: alpha must be positive with length K");
  if (!(h.lambda > 0.0) || !std::isfinite(h.lambda))
    throw std::invalid_argument("Hyperparams: lambda must be positive");
  if (!std::isfinite(h.fuzzifier))
    throw std::invalid_argument("Hyperparams: fuzzifier must be finite");
}

void validate(const DocumentState& state, Eigen::Index topic_count,
              Eigen::Index word_count)
{
  if (state.pi.size() != topic_count)
    throw std::invalid_argument("DocumentState: pi length mismatch");
  check_interior_simplex(state.pi, "DocumentState: pi");
  if (!(state.s > 0.0) || !std::isfinite(state.s))
    throw std::invalid_argument("DocumentState: scaling factor must be positive");
  if (state.memberships.rows() != topic_count || state.memberships.cols() != word_count)
    throw std::invalid_argument("DocumentState: membership shape mismatch");
  for (Eigen::Index n = 0; n < state.memberships.cols(); ++n)
    check_interior_simplex(state.memberships.col(n), "DocumentState: membership");
}

}  // namespace pmlda
