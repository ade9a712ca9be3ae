#include "pmlda/rng.hpp"

#include <cmath>
#include <stdexcept>

namespace pmlda {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

std::uint64_t splitmix64(std::uint64_t& s)
{
  s += 0x9E3779B97F4A7C15ULL;
  std::uint64_t z = s;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

}  // namespace

RngStream::RngStream(std::uint64_t seed, std::uint64_t stream_id)
    : seed_(seed), stream_id_(stream_id)
{
  std::uint64_t s = seed;
  const std::uint64_t a = splitmix64(s);
  s ^= stream_id * 0xD2B74407B1CE6E93ULL;
  const std::uint64_t b = splitmix64(s);
  std::seed_seq seq{static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(a >> 32),
                    static_cast<std::uint32_t>(b), static_cast<std::uint32_t>(b >> 32)};
  engine_.seed(seq);
}

RngStream RngStream::substream(std::uint64_t child) const
{
  std::uint64_t s = stream_id_;
  const std::uint64_t mixed = splitmix64(s) ^ (child + 0x165667B19E3779F9ULL);
  return RngStream(seed_, mixed);
}

std::uint64_t RngStream::next_u64() { return engine_(); }

double RngStream::uniform()
{
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double RngStream::uniform_open()
{
  return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
}

double RngStream::uniform(double lo, double hi)
{
  return lo + (hi - lo) * uniform();
}

double RngStream::normal()
{
  const double u1 = uniform_open();
  const double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(kTwoPi * u2);
}

double RngStream::gamma(double shape)
{
  if (!(shape > 0.0))
    throw std::domain_error("RngStream::gamma: shape must be positive");
  if (shape < 1.0) {
    // Boost from shape+1, then scale by u^(1/shape).
    const double g = gamma(shape + 1.0);
    return g * std::pow(uniform_open(), 1.0 / shape);
  }
  const double d = shape - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  for (;;) {
    double x;
    double v;
    do {
      x = normal();
      v = 1.0 + c * x;
    } while (v <= 0.0);
    v = v * v * v;
    const double u = uniform_open();
    if (std::log(u) < 0.5 * x * x + d - d * v + d * std::log(v))
      return d * v;
  }
}

double RngStream::log_gamma_draw(double shape)
{
  if (!(shape > 0.0))
    throw std::domain_error("RngStream::log_gamma_draw: shape must be positive");
  if (shape < 1.0) {
    const double g = gamma(shape + 1.0);
    return std::log(g) + std::log(uniform_open()) / shape;
  }
  return std::log(gamma(shape));
}

}  // namespace pmlda
