#include "equilab/equid.hpp"

#include <algorithm>
#include <cmath>

namespace equilab {

LineFit least_squares(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2)
    throw InvalidArgument("least_squares needs two aligned samples or more");
  double n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
    syy += y[i] * y[i];
  }
  double denom = n * sxx - sx * sx;
  if (denom == 0) throw InvalidArgument("degenerate abscissae in least_squares");
  LineFit fit;
  fit.slope = (n * sxy - sx * sy) / denom;
  fit.intercept = (sy - fit.slope * sx) / n;
  double num = n * sxy - sx * sy;
  double den = denom * (n * syy - sy * sy);
  fit.r_squared = den > 0 ? num * num / den : 1.0;
  return fit;
}

DiscrepancyRecord discrepancy(const PointCloud& cloud, const SmoothTestFn& f,
                              const MeasureEstimate& integral, const std::string& label) {
  if (cloud.points.empty()) throw InvalidArgument("empty point cloud");
  DiscrepancyRecord rec;
  rec.label = label;
  rec.set_size = cloud.points.size();
  double sum = 0.0;
  for (const auto& p : cloud.points) sum += f.value_at(p);
  rec.average = sum / static_cast<double>(cloud.points.size());
  rec.integral = integral;
  rec.discrepancy = std::fabs(rec.average - integral.value);
  return rec;
}

namespace {

RateFit fit_from_records(std::vector<RatePoint> pts, const MeasureEstimate& integral) {
  RateFit out;
  out.integral = integral;
  std::vector<double> xs, ys;
  for (auto& p : pts) {
    p.used = p.discrepancy > p.noise_floor;
    if (p.used) {
      xs.push_back(static_cast<double>(p.n));
      ys.push_back(std::log(p.discrepancy));
    }
  }
  out.points = std::move(pts);
  if (xs.size() < 3)
    throw InsufficientData("fewer than 3 discrepancies above the noise floor");
  LineFit fit = least_squares(xs, ys);
  out.lambda_hat = std::exp(-fit.slope);
  out.r_squared = fit.r_squared;
  return out;
}

std::vector<RatePoint> rate_points(const HomogeneousMap& F, const SmoothTestFn& f,
                                   int n_min, int n_max, const MeasureEstimate& integral,
                                   Rng rng) {
  if (n_min < 1 || n_max < n_min) throw InvalidArgument("bad period range");
  double floor = std::max(10.0 * integral.std_error, 1e-15);
  std::vector<RatePoint> pts;
  for (int n = n_min; n <= n_max; ++n) {
    PeriodicSet ps = per_n(F, n, rng.split(static_cast<std::uint64_t>(n)));
    DiscrepancyRecord rec = discrepancy(ps.points, f, integral);
    RatePoint rp;
    rp.n = n;
    rp.set_size = rec.set_size;
    rp.discrepancy = rec.discrepancy;
    rp.noise_floor = floor;
    pts.push_back(rp);
  }
  return pts;
}

}  // namespace

RateFit rate_fit(const HomogeneousMap& F, const SmoothTestFn& f, int n_min, int n_max,
                 const EquilibriumSampler& sampler, std::size_t mc_samples, Rng rng) {
  MeasureEstimate integral = integrate(f, sampler, mc_samples);
  return fit_from_records(rate_points(F, f, n_min, n_max, integral, rng), integral);
}

RateFit rate_fit_with_integral(const HomogeneousMap& F, const SmoothTestFn& f, int n_min,
                               int n_max, const MeasureEstimate& integral, Rng rng) {
  return fit_from_records(rate_points(F, f, n_min, n_max, integral, rng), integral);
}

double ScanReport::budget(double height_bound) const {
  return cf3 * (height_bound / epsilon + c3 * epsilon);
}

ScanReport small_point_scan(const std::vector<ScanInput>& clouds, const SmoothTestFn& f,
                            const MeasureEstimate& integral, double epsilon, double c3) {
  if (epsilon <= 0) throw InvalidArgument("epsilon must be positive");
  ScanReport rep;
  rep.epsilon = epsilon;
  rep.c3 = c3;
  rep.cf3 = ck_norm(f, 3);
  for (const auto& in : clouds) {
    DiscrepancyRecord rec = discrepancy(in.cloud, f, integral, in.label);
    rec.height_bound = in.height_bound;
    rec.violation = rec.discrepancy > rep.budget(in.height_bound);
    if (rec.violation) ++rep.violation_count;
    rep.records.push_back(std::move(rec));
  }
  return rep;
}

}  // namespace equilab
