#pragma once

#include <string>
#include <vector>

#include "equilab/measure.hpp"
#include "equilab/periodic.hpp"
#include "equilab/testfn.hpp"

namespace equilab {

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
};

// ordinary least squares y = slope * x + intercept
LineFit least_squares(const std::vector<double>& x, const std::vector<double>& y);

struct DiscrepancyRecord {
  std::string label;
  std::size_t set_size = 0;
  double average = 0.0;        // mean of f over the cloud
  MeasureEstimate integral;    // measure-side value with Monte Carlo error
  double discrepancy = 0.0;    // |average - integral.value|
  double height_bound = 0.0;   // max canonical height over the set, when known
  bool violation = false;      // set by small_point_scan against its budget
};

DiscrepancyRecord discrepancy(const PointCloud& cloud, const SmoothTestFn& f,
                              const MeasureEstimate& integral,
                              const std::string& label = "");

struct RatePoint {
  int n = 0;
  std::size_t set_size = 0;
  double discrepancy = 0.0;
  double noise_floor = 0.0;  // max(10 * integral std error, 1e-15)
  bool used = false;         // above the floor, included in the fit
};

struct RateFit {
  std::vector<RatePoint> points;
  MeasureEstimate integral;
  double lambda_hat = 0.0;  // exp(-slope) of log-discrepancy vs n
  double r_squared = 0.0;
};

// discrepancy of Per_n averages against the equilibrium integral of f for
// n in [n_min, n_max]; fits the exponential decay rate over usable points
RateFit rate_fit(const HomogeneousMap& F, const SmoothTestFn& f, int n_min, int n_max,
                 const EquilibriumSampler& sampler, std::size_t mc_samples, Rng rng);

// same fit against an externally supplied integral value (zero-noise oracle)
RateFit rate_fit_with_integral(const HomogeneousMap& F, const SmoothTestFn& f, int n_min,
                               int n_max, const MeasureEstimate& integral, Rng rng);

struct ScanInput {
  PointCloud cloud;
  std::string label;
  double height_bound = 0.0;
};

struct ScanReport {
  std::vector<DiscrepancyRecord> records;
  double epsilon = 0.0;
  double c3 = 0.0;
  double cf3 = 0.0;  // the C^3 chart norm of f multiplying the budget
  int violation_count = 0;
  // the tested bound: discrepancy <= cf3 * (height_bound / epsilon + c3 * epsilon)
  double budget(double height_bound) const;
};

// flags clouds whose discrepancy exceeds the height/epsilon budget; violators
// play the role of the excluded hypersurface, so they are counted, not errors
ScanReport small_point_scan(const std::vector<ScanInput>& clouds, const SmoothTestFn& f,
                            const MeasureEstimate& integral, double epsilon, double c3);

}  // namespace equilab
