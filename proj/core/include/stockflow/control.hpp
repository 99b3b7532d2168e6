#pragma once

#include <limits>
#include <span>
#include <string>
#include <vector>

#include "stockflow/actuation.hpp"

namespace stockflow {

enum class NormalizerKind {
  kTanhDeadZone,        // "tanh_dz"
  kAtanDeadZone,        // "atan_dz"
  kSaturationDeadZone,  // "sat_dz"
  kAtanPlain,           // "atan" (baseline, no dead-zone)
};

NormalizerKind normalizer_from_name(const std::string& name);
std::string normalizer_name(NormalizerKind kind);

/// Static transportation controller: u_c = f(L * y_c) with f one of the
/// bounded odd normalizers, zeroed inside the dead-zone |theta| < L*delta.
/// delta is both the dead-zone width (in y_c units) and the passivity margin
/// the cascade is designed to achieve; the plain-arctan baseline ignores it
/// in its response but keeps it as the design target for verification.
struct ControllerSpec {
  double gain = 1.0;     // L > 0
  NormalizerKind normalizer = NormalizerKind::kAtanDeadZone;
  double delta = 0.0;    // dead-zone margin, >= 0
  double theta_m = 5.0;  // saturation threshold (sat_dz only)
};

void validate(const ControllerSpec& spec);

/// The normalizer f applied to theta. Odd, |result| <= 1, zero for
/// |theta| < gain*delta (boundary inclusive on the active side).
double normalize(double theta, const ControllerSpec& spec);

/// u_c = f(gain * y_c), always in [-1, 1].
double controller_output(double y_c, const ControllerSpec& spec);

struct OspCheckResult {
  bool pass = true;
  std::vector<double> witnesses;  // grid points violating the inequality
};

/// Checks the exact-moment output-strict-passivity inequality
/// u_c * y_c >= delta * |u_c| over the given y_c grid, using
/// E[u_a] = u_c and E[u_a^2] = |u_c|.
OspCheckResult verify_osp_margin(const ControllerSpec& spec, double delta,
                                 std::span<const double> grid);

/// Sentinel returned when the actuator never fires on the sampled inputs.
inline constexpr double kPassivityIndexUnbounded =
    std::numeric_limits<double>::infinity();

/// Monte-Carlo estimate of the achieved passivity margin: the largest
/// delta-hat on a grid of the given resolution with
/// mean(u_a * y_c) >= delta-hat * mean(u_a^2) over sampled actuator runs.
double estimate_passivity_index(const ControllerSpec& spec,
                                std::span<const double> y_samples,
                                RngStream& rng, double grid_step = 0.01);

}  // namespace stockflow
