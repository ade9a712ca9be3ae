#pragma once

#include "pmlda/corpus.hpp"
#include "pmlda/rng.hpp"
#include "pmlda/topics.hpp"

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

namespace pmlda {

struct SamplerConfig {
  Eigen::Index iterations = 2000;  // T
  Eigen::Index burn_in = -1;       // negative: defaults to T/2
  Eigen::Index thinning = 1;
  std::uint64_t seed = 0;
  double mu_proposal_scale = 1.0;      // f, scales the data covariance
  double sigma_proposal_jitter = 0.5;  // candidate = base * U(1-jitter, 1+jitter)
  bool parallel_documents = false;

  // Move toggles; disabling a move freezes that block of the state, which is
  // how fixed-(pi, s) membership studies are run.
  bool update_pi = true;
  bool update_s = true;
  bool update_z = true;
  bool update_topics = true;

  // Optional fixed initial values (otherwise drawn as documented in run_sampler).
  std::optional<Vector> init_pi;
  std::optional<double> init_s;
  std::optional<Matrix> init_means;  // p x K
  std::optional<double> init_variance;
};

/* Corpus-level proposal statistics, computed once before sampling: the data
 * mean, the per-axis sample variance (unbiased), and the sigma^2 candidate
 * base = half the spread of squared distances to the data mean. */
struct ProposalStats {
  Vector data_mean;
  Vector data_covariance_diagonal;
  double sigma_candidate_base = 1.0;
};

ProposalStats compute_proposal_stats(const Corpus& corpus);

struct MoveCounter {
  std::int64_t proposed = 0;
  std::int64_t accepted = 0;
  double rate() const
  {
    return proposed > 0 ? static_cast<double>(accepted) / static_cast<double>(proposed)
                        : 0.0;
  }
};

struct AcceptanceCounters {
  MoveCounter pi, s, z, mu, sigma;
};

struct Sample {
  std::vector<DocumentState> states;
  TopicParams topics;
  double log_posterior = 0.0;
  Eigen::Index iteration = 0;
};

struct SampleChain {
  std::vector<Sample> samples;
  AcceptanceCounters acceptance;
};

struct MapEstimate {
  std::vector<DocumentState> states;
  TopicParams topics;
  double log_posterior = 0.0;
  Eigen::Index iteration = 0;
};

/* Single Metropolis moves, exposed for testing. Each returns whether the
 * candidate was accepted and mutates the state in place on acceptance.
 *
 * pi and s draw candidates from their priors, so the acceptance ratio's
 * prior factor cancels against the Hastings correction and only the
 * membership-prior terms remain. z draws uniform simplex candidates
 * (constant proposal density, plain target ratio). */
bool step_pi(const Document& doc, DocumentState& state, const TopicParams& topics,
             const Hyperparams& hyper, RngStream& rng);

bool step_s(const Document& doc, DocumentState& state, const TopicParams& topics,
            const Hyperparams& hyper, RngStream& rng);

bool step_z(const VectorRef& word, Eigen::Index word_index, DocumentState& state,
            const TopicParams& topics, const Hyperparams& hyper, RngStream& rng);

/* Independence proposal mu_k ~ N(data mean, f * data covariance diagonal)
 * with the proposal-density Hastings correction. */
bool step_mu(Eigen::Index k, const Corpus& corpus,
             const std::vector<DocumentState>& states, TopicParams& topics,
             const Hyperparams& hyper, const ProposalStats& proposal, double f,
             RngStream& rng);

/* Candidate sigma^2 = base * u, u ~ U(1-jitter, 1+jitter); plain target
 * ratio; non-positive candidates are rejected outright. */
bool step_sigma(const Corpus& corpus, const std::vector<DocumentState>& states,
                TopicParams& topics, const Hyperparams& hyper,
                const ProposalStats& proposal, double jitter, RngStream& rng);

/* Full sampler: per iteration, for each document pi then s then every word's
 * membership, then each topic mean, then the shared variance. Post-burn-in
 * thinned samples are retained with a freshly evaluated log posterior; the
 * MAP estimate is the retained argmax. Per-document random streams make the
 * chain identical in sequential and parallel modes. */
std::pair<SampleChain, MapEstimate> run_sampler(const Corpus& corpus,
                                                const Hyperparams& hyper,
                                                const SamplerConfig& config);

/* Discrete distribution over first-topic membership bins: centers at
 * (i + 1/2) * width over [0, 1]. */
struct MembershipGridPosterior {
  std::vector<double> centers;
  std::vector<double> probabilities;
  double width = 0.0;
};

/* Brute-force posterior of a single word's membership for K=2 with pi and s
 * held fixed: normalized exp(per-document joint) over the z1 grid. */
MembershipGridPosterior grid_posterior_oracle(const Document& doc, const Vector& pi,
                                              double s, const TopicParams& topics,
                                              const Hyperparams& hyper,
                                              double resolution);

// Total variation between the grid posterior and a histogram of z1 samples.
double total_variation(const MembershipGridPosterior& grid,
                       const std::vector<double>& z1_samples);

/* Best-permutation Euclidean alignment of estimated topic means to reference
 * means (exhaustive over permutations; K <= 8). Returns the permutation
 * perm[j] = index of the estimated topic matched to reference topic j, and
 * the summed distance. */
std::pair<std::vector<Eigen::Index>, double> align_topics(const Matrix& estimated,
                                                          const Matrix& reference);

}  // namespace pmlda
