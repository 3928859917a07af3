#include "qwit/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace qwit {

namespace {

constexpr std::int64_t kScanCap = 1'000'000;
constexpr int kStartCandidates = 5;
const double kInvPhi = (std::sqrt(5.0) - 1.0) / 2.0;

using Point6 = std::array<double, 6>;

struct Candidate {
  double value;
  Point6 point;
};

// Keeps the best kStartCandidates by value; on ties the earlier point wins,
// so the scan order fixes the outcome.
void offer(std::vector<Candidate>& top, double value, const Point6& point) {
  auto it = std::find_if(top.begin(), top.end(),
                         [&](const Candidate& c) { return value > c.value; });
  if (it == top.end()) {
    if (static_cast<int>(top.size()) < kStartCandidates) top.push_back({value, point});
    return;
  }
  top.insert(it, {value, point});
  if (static_cast<int>(top.size()) > kStartCandidates) top.pop_back();
}

double radical_inverse(std::uint64_t index, std::uint64_t base) {
  double result = 0.0;
  double digit_weight = 1.0 / static_cast<double>(base);
  while (index > 0) {
    result += static_cast<double>(index % base) * digit_weight;
    index /= base;
    digit_weight /= static_cast<double>(base);
  }
  return result;
}

struct Refined {
  Point6 point;
  double value;
  bool converged;
};

// Golden-section ascent of f restricted to axis d on [a, b]. Returns the
// better of the two final probes, with the value actually evaluated there.
template <typename Eval>
Candidate golden_section_axis(const Eval& f, Point6 x, int d, double a, double b,
                              double xtol) {
  double c = b - kInvPhi * (b - a);
  double e = a + kInvPhi * (b - a);
  x[d] = c;
  double fc = f(x);
  x[d] = e;
  double fe = f(x);
  while (b - a > xtol) {
    if (fc > fe) {
      b = e;
      e = c;
      fe = fc;
      c = b - kInvPhi * (b - a);
      x[d] = c;
      fc = f(x);
    } else {
      a = c;
      c = e;
      fc = fe;
      e = a + kInvPhi * (b - a);
      x[d] = e;
      fe = f(x);
    }
  }
  if (fc > fe) {
    x[d] = c;
    return {fc, x};
  }
  x[d] = e;
  return {fe, x};
}

// Coordinate-wise ascent with a shrinking per-axis window. Only improving
// moves are accepted; converged once every window is below tolerance.
template <typename Eval>
Refined refine(const Eval& f, const Box6& box, Point6 x, double fx,
               const OptimizerConfig& cfg) {
  Point6 window;
  for (int d = 0; d < 6; ++d) window[d] = (box.hi[d] - box.lo[d]) / 2.0;
  const double xtol = cfg.tolerance * 1e-2;
  bool converged = false;
  for (int iter = 0; iter < cfg.refine_iterations; ++iter) {
    const double before = fx;
    for (int d = 0; d < 6; ++d) {
      const double a = std::max(box.lo[d], x[d] - window[d]);
      const double b = std::min(box.hi[d], x[d] + window[d]);
      if (b - a <= xtol) continue;
      const Candidate best = golden_section_axis(f, x, d, a, b, xtol);
      if (best.value > fx) {
        x = best.point;
        fx = best.value;
      }
    }
    if (fx - before < cfg.tolerance) {
      double widest = 0.0;
      for (double& w : window) {
        w *= 0.5;
        widest = std::max(widest, w);
      }
      if (widest < cfg.tolerance) {
        converged = true;
        break;
      }
    }
  }
  return {x, fx, converged};
}

}  // namespace

Box6 angle_box() {
  const double pi = std::numbers::pi;
  return {{0.0, 0.0, 0.0, 0.0, 0.0, 0.0}, {pi, pi, pi, 2.0 * pi, 2.0 * pi, 2.0 * pi}};
}

OptimumReport maximize_box(const Objective6& objective, const Box6& box,
                           const OptimizerConfig& config) {
  if (config.grid_points_per_axis < 3)
    throw std::invalid_argument("maximize_box: grid_points_per_axis must be >= 3");
  if (!(config.tolerance > 0.0))
    throw std::invalid_argument("maximize_box: tolerance must be > 0");
  if (config.refine_iterations < 0)
    throw std::invalid_argument("maximize_box: refine_iterations must be >= 0");
  for (int d = 0; d < 6; ++d)
    if (!(box.lo[d] <= box.hi[d]))
      throw std::invalid_argument("maximize_box: box must satisfy lo <= hi");

  std::int64_t evaluations = 0;
  auto eval = [&](const Point6& p) {
    ++evaluations;
    return objective(p);
  };

  const std::int64_t n = config.grid_points_per_axis;
  std::int64_t grid_total = 1;
  for (int d = 0; d < 6 && grid_total <= kScanCap; ++d) grid_total *= n;

  std::vector<Candidate> top;
  top.reserve(kStartCandidates);

  if (grid_total <= kScanCap) {
    std::vector<std::array<double, 6>> axis_values(n >= 0 ? static_cast<size_t>(n) : 0);
    for (std::int64_t k = 0; k < n; ++k)
      for (int d = 0; d < 6; ++d)
        axis_values[static_cast<size_t>(k)][d] =
            box.lo[d] + static_cast<double>(k) * (box.hi[d] - box.lo[d]) /
                            static_cast<double>(n - 1);
    Point6 p;
    for (std::int64_t flat = 0; flat < grid_total; ++flat) {
      std::int64_t rest = flat;
      for (int d = 5; d >= 0; --d) {
        p[d] = axis_values[static_cast<size_t>(rest % n)][d];
        rest /= n;
      }
      offer(top, eval(p), p);
    }
  } else {
    // Halton sequence in the first six prime bases, offset by the seed.
    constexpr std::uint64_t bases[6] = {2, 3, 5, 7, 11, 13};
    Point6 p;
    for (std::int64_t i = 0; i < kScanCap; ++i) {
      const std::uint64_t index = config.seed + 1 + static_cast<std::uint64_t>(i);
      for (int d = 0; d < 6; ++d)
        p[d] = box.lo[d] + radical_inverse(index, bases[d]) * (box.hi[d] - box.lo[d]);
      offer(top, eval(p), p);
    }
  }

  OptimumReport report;
  report.best_value = top.front().value;
  report.best_point = top.front().point;
  report.converged = false;

  if (config.refine_iterations > 0) {
    for (const Candidate& start : top) {
      const Refined r = refine(eval, box, start.point, start.value, config);
      if (r.value > report.best_value) {
        report.best_value = r.value;
        report.best_point = r.point;
        report.converged = r.converged;
      } else if (r.point == report.best_point && r.value == report.best_value) {
        report.converged = report.converged || r.converged;
      }
    }
  }

  report.evaluations = evaluations;
  return report;
}

}  // namespace qwit
