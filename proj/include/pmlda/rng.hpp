#pragma once

#include <cstdint>
#include <random>

namespace pmlda {

/* Seeded random stream with an explicit stream id.
 *
 * Equal (seed, stream_id) pairs reproduce the same draw sequence bit for bit;
 * distinct stream ids give statistically independent sequences, so each
 * document or worker can own its own stream. The engine is std::mt19937_64
 * (its output sequence is fully specified by the standard) and every variate
 * transform is implemented here rather than via std::*_distribution, whose
 * algorithms are implementation-defined.
 */
class RngStream {
 public:
  RngStream(std::uint64_t seed, std::uint64_t stream_id);

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream_id() const { return stream_id_; }

  // Derive a child stream; deterministic in (seed, stream_id, child).
  RngStream substream(std::uint64_t child) const;

  std::uint64_t next_u64();

  double uniform();       // [0, 1)
  double uniform_open();  // (0, 1)
  double uniform(double lo, double hi);

  double normal();  // standard normal (Box-Muller)

  // Unit-scale gamma draw, Marsaglia-Tsang; shape > 0.
  double gamma(double shape);

  /* log of a unit-scale gamma draw. For shape < 1 the draw itself underflows
   * to zero in double precision (e.g. shape ~ 1e-3), so the boosted form
   * log G(a+1) + log(u)/a is used and stays finite. */
  double log_gamma_draw(double shape);

 private:
  std::mt19937_64 engine_;
  std::uint64_t seed_;
  std::uint64_t stream_id_;
};

}  // namespace pmlda
