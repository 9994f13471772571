#pragma once
#include <vector>

#include "equilab/dyncore.hpp"

namespace equilab {

// Certified bounds on log||F(y)|| - d log||y|| over the unit max-norm sphere:
//   upper: exact coefficient-sum bound (valid everywhere)
//   lower: grid minimum with per-face/per-component Lipschitz slack subtracted
//   combined = max(|upper|, |lower|), the one-step telescoping constant.
struct DistortionConstant {
  double upper = 0.0;
  double lower = 0.0;
  double combined = 0.0;
  double grid_h = 0.0;       // max distance of a face point to the grid
  bool heuristic = false;    // true for N >= 2 (coarser grid; flagged)
};

// One local Green-function value: value = log||F^m(x)||_v / d^m.
struct GreenValue {
  double value = 0.0;
  double error_radius = 0.0;
  BigInt place = 0;  // 0 = archimedean, otherwise the prime
  int iterations = 0;
};

struct HeightValue {
  double value = 0.0;
  double error_radius = 0.0;
  std::vector<GreenValue> breakdown;  // sums exactly to value (bookkeeping)
  // independent Weil-height cross-check h(F^k(x))/d^k at the deepest exact k
  double crosscheck_value = 0.0;
  double crosscheck_error = 0.0;
  int crosscheck_depth = 0;
  bool crosscheck_ok = false;
};

// Grid-certified distortion constants for the given lift. Throws
// CertificationFailed when the Lipschitz slack swallows the grid minimum.
DistortionConstant distortion_constant(const HomogeneousMap& F, int n_radial = 256,
                                       int n_phase = 512);

// Archimedean Green value of the point as given (its log_scale participates,
// so passing an exact point's unit representative with log_scale log||x||
// yields G(x) of that lift). error = combined / (d^m (1 - 1/d)).
GreenValue green_arch(const HomogeneousMap& F, const ProjPointC& x, int m,
                      const DistortionConstant& C);

// p-adic Green value of a primitive integer point by exact valuation
// iteration mod p^B. val_bound must bound the per-step valuation drop
// (v_p(Res) works for N = 1; 0 means good reduction and returns exactly 0).
GreenValue green_padic(const HomogeneousMap& F, const ProjPointQ& x, const BigInt& p,
                       int m, int val_bound);

// Canonical height of a rational point: sum of local Green values of the
// primitive lift over the archimedean place and all bad primes, each place
// iterated deep enough that error radii total at most target_error. Also
// cross-checked against exact Weil-height iteration.
HeightValue canonical_height(const HomogeneousMap& F, const ProjPointQ& x,
                             double target_error = 1e-9);

}  // namespace equilab
