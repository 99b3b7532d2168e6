#pragma once

#include <cstdint>

namespace stockflow {

/// Probabilities of the three quantized transport outcomes {+1, 0, -1}
/// for a probability command u_c in [-1, 1]. At most one of p_plus/p_minus
/// is nonzero.
struct OutcomeDistribution {
  double p_plus = 0.0;
  double p_zero = 1.0;
  double p_minus = 0.0;
};

/// Counter-based deterministic random stream. A draw is addressed by
/// (seed, stream, counter), so replicate r / route m / tick t can be mapped
/// to a unique reproducible sample regardless of evaluation order. Distinct
/// streams are statistically independent.
class RngStream {
 public:
  RngStream(std::uint64_t seed, std::uint64_t stream)
      : seed_(seed), stream_(stream) {}

  /// Uniform double in [0,1) at an explicit draw index; does not advance.
  double uniform_at(std::uint64_t index) const;

  /// Next uniform draw; advances the counter by one.
  double next_uniform();

  /// Derives an independent substream (e.g. per replicate or per route).
  RngStream substream(std::uint64_t id) const;

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream() const { return stream_; }
  std::uint64_t counter() const { return counter_; }
  void set_counter(std::uint64_t c) { counter_ = c; }

 private:
  std::uint64_t seed_;
  std::uint64_t stream_;
  std::uint64_t counter_ = 0;
};

/// p_plus = max(u_c,0), p_minus = max(-u_c,0), p_zero = 1 - |u_c|.
/// Throws ConfigError when |u_c| > 1.
OutcomeDistribution outcome_distribution(double u_c);

/// Draws one outcome in {-1, 0, +1}; consumes exactly one uniform.
int sample(double u_c, RngStream& rng);

/// E[T(u_c)] = u_c exactly.
double expectation(double u_c);

}  // namespace stockflow
