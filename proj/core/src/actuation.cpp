#include "stockflow/actuation.hpp"

#include <cmath>
#include <string>

#include "stockflow/errors.hpp"

namespace stockflow {

namespace {

// splitmix64 finalizer; full-period bijective mixer on 64-bit words.
std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ull;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

void check_command(double u_c) {
  if (!(std::abs(u_c) <= 1.0)) {
    throw ConfigError("probability command out of range [-1,1]: " +
                      std::to_string(u_c));
  }
}

}  // namespace

double RngStream::uniform_at(std::uint64_t index) const {
  std::uint64_t w = mix64(seed_);
  w = mix64(w ^ mix64(stream_ + 0x632be59bd9b4e019ull));
  w = mix64(w ^ mix64(index + 0x9e6c63d0a9c3f8ull));
  return static_cast<double>(w >> 11) * 0x1.0p-53;
}

double RngStream::next_uniform() { return uniform_at(counter_++); }

RngStream RngStream::substream(std::uint64_t id) const {
  return RngStream(seed_, mix64(stream_ ^ mix64(id + 0xd1342543de82ef95ull)));
}

OutcomeDistribution outcome_distribution(double u_c) {
  check_command(u_c);
  OutcomeDistribution d;
  d.p_plus = std::max(u_c, 0.0);
  d.p_minus = std::max(-u_c, 0.0);
  d.p_zero = 1.0 - std::abs(u_c);
  return d;
}

int sample(double u_c, RngStream& rng) {
  const OutcomeDistribution d = outcome_distribution(u_c);
  const double u = rng.next_uniform();
  if (u < d.p_plus) return 1;
  if (u < d.p_plus + d.p_minus) return -1;
  return 0;
}

double expectation(double u_c) {
  check_command(u_c);
  return u_c;
}

}  // namespace stockflow
