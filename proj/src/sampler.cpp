#include "pmlda/sampler.hpp"

#include "pmlda/blend.hpp"
#include "pmlda/distributions.hpp"
#include "pmlda/model.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#if defined(_OPENMP)
#include <omp.h>
#endif

namespace pmlda {

namespace {

// sum_n log Dir(z_n | s * pi): the only document terms that depend on pi or s.
double membership_prior_terms(const Matrix& memberships, double s, const Vector& pi)
{
  const Eigen::Index k = memberships.rows();
  const Eigen::Index nd = memberships.cols();
  const Vector conc = s * pi;
  double res = static_cast<double>(nd) * log_gamma(conc.sum());
  for (Eigen::Index j = 0; j < k; ++j) {
    res -= static_cast<double>(nd) * log_gamma(conc[j]);
    res += (conc[j] - 1.0) * memberships.row(j).array().log().sum();
  }
  return res;
}

// Data log likelihood of every word under its membership blend.
double corpus_data_loglik(const Corpus& corpus, const std::vector<DocumentState>& states,
                          const TopicParams& topics, double fuzzifier)
{
  double res = 0.0;
  for (std::size_t d = 0; d < corpus.documents.size(); ++d) {
    const Document& doc = corpus.documents[d];
    const DocumentState& state = states[d];
    for (Eigen::Index n = 0; n < doc.size(); ++n)
      res += log_blend_pdf(doc.words.col(n),
                           BlendWeights{state.memberships.col(n), fuzzifier}, topics,
                           /*normalize_weights=*/true);
  }
  return res;
}

bool metropolis_accept(double log_ratio, RngStream& rng)
{
  if (log_ratio >= 0.0)
    return true;
  return std::log(rng.uniform_open()) < log_ratio;
}

Vector uniform_simplex_draw(Eigen::Index k, RngStream& rng)
{
  return clamp_interior(sample_dirichlet(DirichletParams{Vector::Ones(k)}, rng));
}

}  // namespace

ProposalStats compute_proposal_stats(const Corpus& corpus)
{
  validate(corpus);
  const Eigen::Index n = corpus.word_count();
  if (n < 2)
    throw std::invalid_argument("compute_proposal_stats: need at least two words");

  ProposalStats stats;
  stats.data_mean = Vector::Zero(corpus.dim);
  for (const auto& doc : corpus.documents)
    stats.data_mean += doc.words.rowwise().sum();
  stats.data_mean /= static_cast<double>(n);

  Vector ss = Vector::Zero(corpus.dim);
  double max_d2 = -std::numeric_limits<double>::infinity();
  double min_d2 = std::numeric_limits<double>::infinity();
  for (const auto& doc : corpus.documents) {
    for (Eigen::Index i = 0; i < doc.size(); ++i) {
      const Vector diff = doc.words.col(i) - stats.data_mean;
      ss += diff.array().square().matrix();
      const double d2 = diff.squaredNorm();
      max_d2 = std::max(max_d2, d2);
      min_d2 = std::min(min_d2, d2);
    }
  }
  stats.data_covariance_diagonal = ss / static_cast<double>(n - 1);
  stats.sigma_candidate_base = 0.5 * (max_d2 - min_d2);

  if (!stats.data_mean.allFinite() || !stats.data_covariance_diagonal.allFinite())
    throw std::invalid_argument("compute_proposal_stats: non-finite statistics");
  return stats;
}

bool step_pi(const Document& doc, DocumentState& state, const TopicParams& topics,
             const Hyperparams& hyper, RngStream& rng)
{
  (void)doc;
  (void)topics;
  const Vector candidate =
      clamp_interior(sample_dirichlet(DirichletParams{hyper.alpha}, rng));
  // Prior proposal: joint ratio times prior correction leaves only the
  // membership-prior terms.
  const double log_ratio =
      membership_prior_terms(state.memberships, state.s, candidate) -
      membership_prior_terms(state.memberships, state.s, state.pi);
  if (metropolis_accept(log_ratio, rng)) {
    state.pi = candidate;
    return true;
  }
  return false;
}

bool step_s(const Document& doc, DocumentState& state, const TopicParams& topics,
            const Hyperparams& hyper, RngStream& rng)
{
  (void)doc;
  (void)topics;
  const double candidate = sample_exponential(ExponentialParams{hyper.lambda}, rng);
  const double log_ratio =
      membership_prior_terms(state.memberships, candidate, state.pi) -
      membership_prior_terms(state.memberships, state.s, state.pi);
  if (metropolis_accept(log_ratio, rng)) {
    state.s = candidate;
    return true;
  }
  return false;
}

bool step_z(const VectorRef& word, Eigen::Index word_index, DocumentState& state,
            const TopicParams& topics, const Hyperparams& hyper, RngStream& rng)
{
  const Eigen::Index k = state.pi.size();
  const Vector candidate = uniform_simplex_draw(k, rng);
  const Vector current = state.memberships.col(word_index);
  const DirichletParams membership_prior{state.s * state.pi};

  const double log_ratio =
      log_blend_pdf(word, BlendWeights{candidate, hyper.fuzzifier}, topics, true) +
      log_dirichlet_pdf(candidate, membership_prior) -
      log_blend_pdf(word, BlendWeights{current, hyper.fuzzifier}, topics, true) -
      log_dirichlet_pdf(current, membership_prior);
  if (metropolis_accept(log_ratio, rng)) {
    state.memberships.col(word_index) = candidate;
    return true;
  }
  return false;
}

bool step_mu(Eigen::Index k, const Corpus& corpus,
             const std::vector<DocumentState>& states, TopicParams& topics,
             const Hyperparams& hyper, const ProposalStats& proposal, double f,
             RngStream& rng)
{
  const Vector scaled_var = f * proposal.data_covariance_diagonal;
  Vector candidate(topics.dim());
  for (Eigen::Index i = 0; i < candidate.size(); ++i)
    candidate[i] = proposal.data_mean[i] + std::sqrt(scaled_var[i]) * rng.normal();

  TopicParams candidate_topics = topics;
  candidate_topics.means.col(k) = candidate;

  const double log_ratio =
      corpus_data_loglik(corpus, states, candidate_topics, hyper.fuzzifier) -
      corpus_data_loglik(corpus, states, topics, hyper.fuzzifier) +
      log_diagonal_gaussian_pdf(topics.means.col(k), proposal.data_mean, scaled_var) -
      log_diagonal_gaussian_pdf(candidate, proposal.data_mean, scaled_var);
  if (metropolis_accept(log_ratio, rng)) {
    topics.means.col(k) = candidate;
    return true;
  }
  return false;
}

bool step_sigma(const Corpus& corpus, const std::vector<DocumentState>& states,
                TopicParams& topics, const Hyperparams& hyper,
                const ProposalStats& proposal, double jitter, RngStream& rng)
{
  const double u = rng.uniform(1.0 - jitter, 1.0 + jitter);
  const double candidate = proposal.sigma_candidate_base * u;
  if (!(candidate > 0.0))
    return false;

  TopicParams candidate_topics = topics;
  candidate_topics.variance = candidate;

  const double log_ratio =
      corpus_data_loglik(corpus, states, candidate_topics, hyper.fuzzifier) -
      corpus_data_loglik(corpus, states, topics, hyper.fuzzifier);
  if (metropolis_accept(log_ratio, rng)) {
    topics.variance = candidate;
    return true;
  }
  return false;
}

std::pair<SampleChain, MapEstimate> run_sampler(const Corpus& corpus,
                                                const Hyperparams& hyper,
                                                const SamplerConfig& config)
{
  validate(corpus);
  validate(hyper);
  const Eigen::Index t_total = config.iterations;
  if (t_total < 1)
    throw std::invalid_argument("run_sampler: iterations must be positive");
  const Eigen::Index burn_in = config.burn_in < 0 ? t_total / 2 : config.burn_in;
  if (burn_in >= t_total)
    throw std::invalid_argument("run_sampler: burn-in must be smaller than iterations");
  if (config.thinning < 1)
    throw std::invalid_argument("run_sampler: thinning must be positive");

  const Eigen::Index d_count = corpus.doc_count();
  const Eigen::Index k = hyper.topic_count;
  const ProposalStats proposal = compute_proposal_stats(corpus);

  const RngStream root(config.seed, 0);
  RngStream topic_stream = root.substream(0);
  std::vector<RngStream> doc_streams;
  doc_streams.reserve(d_count);
  for (Eigen::Index d = 0; d < d_count; ++d)
    doc_streams.push_back(root.substream(static_cast<std::uint64_t>(d) + 1));

  // Initial topics: configured values, or an independence draw from the
  // proposal plus the candidate-base variance.
  TopicParams topics;
  topics.variance = config.init_variance.value_or(
      proposal.sigma_candidate_base > 0.0 ? proposal.sigma_candidate_base : 1.0);
  if (config.init_means) {
    topics.means = *config.init_means;
    if (topics.means.rows() != corpus.dim || topics.means.cols() != k)
      throw std::invalid_argument("run_sampler: init_means shape mismatch");
  } else {
    topics.means.resize(corpus.dim, k);
    const Vector scaled_var =
        config.mu_proposal_scale * proposal.data_covariance_diagonal;
    for (Eigen::Index j = 0; j < k; ++j)
      for (Eigen::Index i = 0; i < corpus.dim; ++i)
        topics.means(i, j) =
            proposal.data_mean[i] + std::sqrt(scaled_var[i]) * topic_stream.normal();
  }
  validate(topics);

  std::vector<DocumentState> states(d_count);
  for (Eigen::Index d = 0; d < d_count; ++d) {
    RngStream& stream = doc_streams[d];
    DocumentState& state = states[d];
    state.pi = config.init_pi
                   ? clamp_interior(*config.init_pi)
                   : clamp_interior(sample_dirichlet(DirichletParams{hyper.alpha}, stream));
    if (state.pi.size() != k)
      throw std::invalid_argument("run_sampler: init_pi length mismatch");
    state.s = config.init_s.value_or(
        sample_exponential(ExponentialParams{hyper.lambda}, stream));
    const Eigen::Index nd = corpus.documents[d].size();
    state.memberships.resize(k, nd);
    for (Eigen::Index n = 0; n < nd; ++n)
      state.memberships.col(n) = uniform_simplex_draw(k, stream);
  }

  SampleChain chain;
  const Eigen::Index retained =
      (t_total - burn_in + config.thinning - 1) / config.thinning;
  chain.samples.reserve(static_cast<std::size_t>(retained));

  std::vector<AcceptanceCounters> doc_counters(d_count);

  for (Eigen::Index t = 1; t <= t_total; ++t) {
#if defined(_OPENMP)
#pragma omp parallel for schedule(static) if (config.parallel_documents)
#endif
    for (Eigen::Index d = 0; d < d_count; ++d) {
      const Document& doc = corpus.documents[d];
      DocumentState& state = states[d];
      RngStream& stream = doc_streams[d];
      AcceptanceCounters& counter = doc_counters[d];

      if (config.update_pi) {
        ++counter.pi.proposed;
        counter.pi.accepted += step_pi(doc, state, topics, hyper, stream) ? 1 : 0;
      }
      if (config.update_s) {
        ++counter.s.proposed;
        counter.s.accepted += step_s(doc, state, topics, hyper, stream) ? 1 : 0;
      }
      if (config.update_z) {
        for (Eigen::Index n = 0; n < doc.size(); ++n) {
          ++counter.z.proposed;
          counter.z.accepted +=
              step_z(doc.words.col(n), n, state, topics, hyper, stream) ? 1 : 0;
        }
      }
    }

    if (config.update_topics) {
      for (Eigen::Index j = 0; j < k; ++j) {
        ++chain.acceptance.mu.proposed;
        chain.acceptance.mu.accepted +=
            step_mu(j, corpus, states, topics, hyper, proposal,
                    config.mu_proposal_scale, topic_stream)
                ? 1
                : 0;
      }
      ++chain.acceptance.sigma.proposed;
      chain.acceptance.sigma.accepted +=
          step_sigma(corpus, states, topics, hyper, proposal,
                     config.sigma_proposal_jitter, topic_stream)
              ? 1
              : 0;
    }

    if (t > burn_in && (t - burn_in - 1) % config.thinning == 0) {
      Sample sample;
      sample.states = states;
      sample.topics = topics;
      sample.iteration = t;
      sample.log_posterior = log_corpus_posterior(corpus, states, topics, hyper);
      chain.samples.push_back(std::move(sample));
    }
  }

  for (const auto& counter : doc_counters) {
    chain.acceptance.pi.proposed += counter.pi.proposed;
    chain.acceptance.pi.accepted += counter.pi.accepted;
    chain.acceptance.s.proposed += counter.s.proposed;
    chain.acceptance.s.accepted += counter.s.accepted;
    chain.acceptance.z.proposed += counter.z.proposed;
    chain.acceptance.z.accepted += counter.z.accepted;
  }

  const auto best = std::max_element(
      chain.samples.begin(), chain.samples.end(),
      [](const Sample& a, const Sample& b) { return a.log_posterior < b.log_posterior; });
  MapEstimate map;
  map.states = best->states;
  map.topics = best->topics;
  map.log_posterior = best->log_posterior;
  map.iteration = best->iteration;
  return {std::move(chain), std::move(map)};
}

MembershipGridPosterior grid_posterior_oracle(const Document& doc, const Vector& pi,
                                              double s, const TopicParams& topics,
                                              const Hyperparams& hyper,
                                              double resolution)
{
  if (hyper.topic_count != 2 || topics.topic_count() != 2)
    throw std::invalid_argument("grid_posterior_oracle: requires exactly two topics");
  if (doc.size() != 1)
    throw std::invalid_argument("grid_posterior_oracle: requires a single-word document");
  if (!(resolution > 0.0) || !(resolution < 0.5))
    throw std::invalid_argument("grid_posterior_oracle: bad resolution");

  const auto bins = static_cast<std::size_t>(std::llround(1.0 / resolution));
  MembershipGridPosterior grid;
  grid.width = 1.0 / static_cast<double>(bins);
  grid.centers.resize(bins);
  std::vector<double> logp(bins);

  DocumentState state;
  state.pi = clamp_interior(pi);
  state.s = s;
  state.memberships.resize(2, 1);
  for (std::size_t i = 0; i < bins; ++i) {
    const double c = (static_cast<double>(i) + 0.5) * grid.width;
    grid.centers[i] = c;
    state.memberships(0, 0) = c;
    state.memberships(1, 0) = 1.0 - c;
    logp[i] = log_doc_joint(doc, state, topics, hyper);
  }

  const double lmax = *std::max_element(logp.begin(), logp.end());
  double total = 0.0;
  grid.probabilities.resize(bins);
  for (std::size_t i = 0; i < bins; ++i) {
    grid.probabilities[i] = std::exp(logp[i] - lmax);
    total += grid.probabilities[i];
  }
  for (double& p : grid.probabilities)
    p /= total;
  return grid;
}

double total_variation(const MembershipGridPosterior& grid,
                       const std::vector<double>& z1_samples)
{
  if (z1_samples.empty())
    throw std::invalid_argument("total_variation: no samples");
  std::vector<double> hist(grid.probabilities.size(), 0.0);
  for (double z : z1_samples) {
    auto bin = static_cast<std::ptrdiff_t>(z / grid.width);
    bin = std::clamp<std::ptrdiff_t>(bin, 0,
                                     static_cast<std::ptrdiff_t>(hist.size()) - 1);
    hist[static_cast<std::size_t>(bin)] += 1.0;
  }
  const double n = static_cast<double>(z1_samples.size());
  double tv = 0.0;
  for (std::size_t i = 0; i < hist.size(); ++i)
    tv += std::abs(hist[i] / n - grid.probabilities[i]);
  return 0.5 * tv;
}

std::pair<std::vector<Eigen::Index>, double> align_topics(const Matrix& estimated,
                                                          const Matrix& reference)
{
  const Eigen::Index k = reference.cols();
  if (estimated.cols() != k || estimated.rows() != reference.rows())
    throw std::invalid_argument("align_topics: shape mismatch");
  if (k > 8)
    throw std::invalid_argument("align_topics: exhaustive matching supports K <= 8");

  std::vector<Eigen::Index> perm(k);
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<Eigen::Index> best = perm;
  double best_cost = std::numeric_limits<double>::infinity();
  do {
    double cost = 0.0;
    for (Eigen::Index j = 0; j < k; ++j)
      cost += (estimated.col(perm[j]) - reference.col(j)).norm();
    if (cost < best_cost) {
      best_cost = cost;
      best = perm;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return {best, best_cost};
}

}  // namespace pmlda
