#pragma once
#include <cstdint>
#include <vector>

#include "equilab/dyncore.hpp"
#include "equilab/roots.hpp"
#include "equilab/testfn.hpp"

namespace equilab {

struct PointCloud {
  std::vector<ProjPointC> points;
  std::uint64_t seed = 0;
  int burn_in = 0;
  // chart-0 affine coordinates of the points inside |z| <= cutoff
  std::vector<cplx> chart0_coords(double cutoff = 8.0) const;
};

struct MeasureEstimate {
  double value = 0.0;
  double std_error = 0.0;
  std::size_t n = 0;
};

struct RegularityEstimate {
  double kappa_hat = 0.0;
  double r_squared = 0.0;
  std::vector<std::pair<double, double>> levels;  // (box side, max box mass)
};

// Backward-orbit sampler for the equilibrium measure of a degree-d map of the
// projective line: each step solves the d-point fiber of the current point
// (residual-certified roots, infinity handled projectively) and picks one
// branch uniformly. Stationary for the equilibrium measure; burn_in steps are
// discarded. Construction rejects exceptional base points (their depth-3
// backward orbit has at most 3 distinct points).
class EquilibriumSampler {
 public:
  EquilibriumSampler(HomogeneousMap F, ProjPointC base, std::uint64_t seed,
                     int burn_in = 50);

  // all d preimages (with multiplicity) of a point
  std::vector<ProjPointC> preimages(const ProjPointC& w) const;

  // a fresh walk of n recorded points (after burn_in), deterministic in seed
  PointCloud sample(std::size_t n) const;

  const HomogeneousMap& map() const { return F_; }
  int degree() const { return F_.degree; }
  std::uint64_t seed() const { return seed_; }
  int burn_in() const { return burn_in_; }
  // root-finder retries observed during the last sample() call
  std::size_t retry_events() const { return retries_; }

  static constexpr double residual_threshold = 1e-8;

 private:
  std::vector<ProjPointC> preimages_seeded(const ProjPointC& w, Rng rng) const;
  HomogeneousMap F_;
  ProjPointC base_;
  std::uint64_t seed_;
  int burn_in_;
  mutable std::size_t retries_ = 0;
  std::vector<BigInt> a_, b_;  // binary coefficients of the two components
};

// Monte-Carlo integral of f against the equilibrium measure (mean and
// standard error over a fresh n-point walk).
MeasureEstimate integrate(const SmoothTestFn& f, const EquilibriumSampler& s,
                          std::size_t n);

struct InvarianceDefect {
  double defect = 0.0;       // |mean f - mean of pullback averages|
  double noise = 0.0;        // combined standard errors of the two means
  std::size_t n = 0;
};

// Balancedness check: the equilibrium measure satisfies
// int f dmu = int (1/d) sum_{phi(w)=z} f(w) dmu(z).
InvarianceDefect invariance_defect(const EquilibriumSampler& s, const SmoothTestFn& f,
                                   std::size_t n);

// Local moderation exponent: least-squares slope of log(max box mass) against
// log(box side) over dyadic levels in chart 0. Needs >= 4 usable levels.
RegularityEstimate estimate_kappa(const PointCloud& cloud, int min_level = 3,
                                  int max_level = 8);

// spec-shaped convenience: sample, estimate kappa, build the cube family
CubeFamily disjoint_cubes(const EquilibriumSampler& s, int D, double dilate,
                          std::size_t n_samples = 20000);

// Closed-form integration on the unit 2-torus (the equilibrium support of the
// diagonal power map on the projective plane): trapezoid product rule, exact
// for trigonometric polynomials below the grid order.
double torus_integrate(double (*f)(double, double), int grid_n = 256);

}  // namespace equilab
