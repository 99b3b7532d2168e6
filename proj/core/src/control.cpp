#include "stockflow/control.hpp"

#include <cmath>
#include <numbers>

#include "stockflow/errors.hpp"

namespace stockflow {

NormalizerKind normalizer_from_name(const std::string& name) {
  if (name == "tanh_dz") return NormalizerKind::kTanhDeadZone;
  if (name == "atan_dz") return NormalizerKind::kAtanDeadZone;
  if (name == "sat_dz") return NormalizerKind::kSaturationDeadZone;
  if (name == "atan") return NormalizerKind::kAtanPlain;
  throw ConfigError("unknown normalizer \"" + name +
                    "\" (expected tanh_dz, atan_dz, sat_dz, atan)");
}

std::string normalizer_name(NormalizerKind kind) {
  switch (kind) {
    case NormalizerKind::kTanhDeadZone: return "tanh_dz";
    case NormalizerKind::kAtanDeadZone: return "atan_dz";
    case NormalizerKind::kSaturationDeadZone: return "sat_dz";
    case NormalizerKind::kAtanPlain: return "atan";
  }
  throw ConfigError("invalid normalizer kind");
}

void validate(const ControllerSpec& spec) {
  if (!(spec.gain > 0.0)) {
    throw ConfigError("controller gain must be positive");
  }
  if (spec.delta < 0.0) {
    throw ConfigError("dead-zone margin delta must be >= 0");
  }
  if (spec.normalizer == NormalizerKind::kSaturationDeadZone &&
      !(spec.theta_m > spec.gain * spec.delta)) {
    throw ConfigError("saturation threshold theta_m must exceed gain*delta");
  }
}

double normalize(double theta, const ControllerSpec& spec) {
  constexpr double two_over_pi = 2.0 / std::numbers::pi;
  if (spec.normalizer == NormalizerKind::kAtanPlain) {
    return two_over_pi * std::atan(theta);
  }
  if (std::abs(theta) < spec.gain * spec.delta) return 0.0;
  switch (spec.normalizer) {
    case NormalizerKind::kTanhDeadZone:
      return std::tanh(theta);
    case NormalizerKind::kAtanDeadZone:
      return two_over_pi * std::atan(theta);
    case NormalizerKind::kSaturationDeadZone:
      if (std::abs(theta) >= spec.theta_m) return theta > 0 ? 1.0 : -1.0;
      return theta / spec.theta_m;
    default:
      break;
  }
  throw ConfigError("invalid normalizer kind");
}

double controller_output(double y_c, const ControllerSpec& spec) {
  return normalize(spec.gain * y_c, spec);
}

OspCheckResult verify_osp_margin(const ControllerSpec& spec, double delta,
                                 std::span<const double> grid) {
  OspCheckResult result;
  for (double y_c : grid) {
    const double u_c = controller_output(y_c, spec);
    // E[u_a y_c] = u_c y_c, E[u_a^2] = |u_c| (exact 3-outcome moments)
    if (u_c * y_c < delta * std::abs(u_c) - 1e-12) {
      result.pass = false;
      result.witnesses.push_back(y_c);
    }
  }
  return result;
}

double estimate_passivity_index(const ControllerSpec& spec,
                                std::span<const double> y_samples,
                                RngStream& rng, double grid_step) {
  double cross = 0.0;  // mean of u_a * y_c
  double power = 0.0;  // mean of u_a^2
  for (double y_c : y_samples) {
    const double u_c = controller_output(y_c, spec);
    const int u_a = sample(u_c, rng);
    cross += u_a * y_c;
    power += u_a * u_a;
  }
  if (power == 0.0) return kPassivityIndexUnbounded;
  const double ratio = cross / power;
  return std::floor(ratio / grid_step) * grid_step;
}

}  // namespace stockflow
