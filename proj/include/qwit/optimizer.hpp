#pragma once

#include <array>
#include <cstdint>
#include <functional>

namespace qwit {

struct OptimizerConfig {
  int grid_points_per_axis = 9;  // >= 3
  int refine_iterations = 200;
  double tolerance = 1e-8;
  std::uint64_t seed = 0;  // offsets the low-discrepancy stream
};

struct Box6 {
  std::array<double, 6> lo{};
  std::array<double, 6> hi{};
};

/// theta in [0, pi] on axes 0..2, phi in [0, 2*pi] on axes 3..5.
Box6 angle_box();

struct OptimumReport {
  double best_value = 0.0;
  std::array<double, 6> best_point{};
  std::int64_t evaluations = 0;
  bool converged = false;
};

using Objective6 = std::function<double(const std::array<double, 6>&)>;

/// Deterministic derivative-free maximization over a 6-dimensional box.
///
/// A coarse scan (the full grid when grid^6 <= 1e6, otherwise 1e6 Halton
/// points) seeds coordinate-wise golden-section ascent from the top five
/// candidates. Only improving steps are accepted, so best_value never
/// decreases and is never below the coarse-grid maximum; best_value is
/// always the objective actually evaluated at best_point. converged means
/// the search window shrank below config.tolerance before the iteration
/// cap. Identical inputs give bit-identical reports.
OptimumReport maximize_box(const Objective6& objective, const Box6& box,
                           const OptimizerConfig& config = {});

}  // namespace qwit
