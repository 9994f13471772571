#include "equilab/measure.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace equilab {

namespace {

constexpr double kPi = 3.14159265358979323846;

double chordal(const ProjPointC& p, const ProjPointC& q) {
  cplx cross = p.coords[0] * q.coords[1] - p.coords[1] * q.coords[0];
  double np = std::sqrt(std::norm(p.coords[0]) + std::norm(p.coords[1]));
  double nq = std::sqrt(std::norm(q.coords[0]) + std::norm(q.coords[1]));
  return std::abs(cross) / (np * nq);
}

// roots of a complex-coefficient fiber polynomial with residual certification
// and coefficient reconstruction; retries with re-seeded initial guesses
std::vector<cplx> certified_roots(const std::vector<cplx>& c, Rng rng, double tol,
                                  std::size_t* retries) {
  double cmax = 0.0;
  for (const auto& a : c) cmax = std::max(cmax, std::abs(a));
  for (int attempt = 0; attempt < 5; ++attempt) {
    auto roots = aberth_roots(c, rng.split(static_cast<std::uint64_t>(attempt) + 3));
    // residuals
    double worst = 0.0;
    for (const auto& z : roots) {
      cplx v;
      if (std::abs(z) <= 1.0) {
        v = c.back();
        for (std::size_t k = c.size() - 1; k-- > 0;) v = v * z + c[k];
      } else {
        cplx w = 1.0 / z;
        v = c.front();
        for (std::size_t k = 1; k < c.size(); ++k) v = v * w + c[k];
      }
      worst = std::max(worst, std::abs(v) / cmax);
    }
    // reconstruction: lc * prod (z - r_i) must reproduce the coefficients
    std::vector<cplx> rec{1.0};  // lowest-first
    for (const auto& r : roots) {
      rec.push_back(0.0);
      for (std::size_t k = rec.size() - 1; k-- > 0;) {
        rec[k + 1] += rec[k];
        rec[k] *= -r;
      }
    }
    double recon = 0.0;
    for (std::size_t k = 0; k < c.size(); ++k)
      recon = std::max(recon, std::abs(rec[k] * c.back() - c[k]) / cmax);
    if (worst <= tol && recon <= 1e-6) return roots;
    if (retries) ++(*retries);
  }
  throw RootFindFailure("fiber root residuals stayed above threshold");
}

}  // namespace

std::vector<cplx> PointCloud::chart0_coords(double cutoff) const {
  std::vector<cplx> out;
  out.reserve(points.size());
  for (const auto& p : points) {
    if (p.is_infinity(1e-15)) continue;
    cplx z = p.affine();
    if (std::abs(z) <= cutoff) out.push_back(z);
  }
  return out;
}

EquilibriumSampler::EquilibriumSampler(HomogeneousMap F, ProjPointC base,
                                       std::uint64_t seed, int burn_in)
    : F_(std::move(F)), base_(std::move(base)), seed_(seed), burn_in_(burn_in) {
  F_.validate();
  if (F_.nvars != 2) throw Unsupported("sampler is for maps of the projective line");
  if (burn_in_ < 0) throw InvalidArgument("negative burn-in");
  a_ = F_.components[0].binary_coeffs();
  b_ = F_.components[1].binary_coeffs();

  // exceptional base points have depth-3 backward orbits with <= 3 distinct
  // points (the exceptional set of a degree->=2 morphism has at most 2)
  std::vector<ProjPointC> orbit{base_};
  std::vector<ProjPointC> frontier{base_};
  Rng rng = Rng(seed_).split(0xabcdef);
  for (int depth = 0; depth < 3; ++depth) {
    std::vector<ProjPointC> next;
    for (const auto& w : frontier) {
      auto pre = preimages_seeded(w, rng.split(static_cast<std::uint64_t>(depth) * 131 + 7));
      for (auto& p : pre) {
        bool fresh = true;
        for (const auto& q : orbit)
          if (chordal(p, q) < 1e-9) { fresh = false; break; }
        if (fresh) {
          orbit.push_back(p);
          next.push_back(p);
        }
      }
    }
    frontier = std::move(next);
  }
  if (orbit.size() <= 3)
    throw InvalidArgument("base point is exceptional (finite backward orbit)");
}

std::vector<ProjPointC> EquilibriumSampler::preimages_seeded(const ProjPointC& w, Rng rng) const {
  // fiber form: w1 * F0(z,1) - w0 * F1(z,1) = 0, infinity from degree drop
  const int d = F_.degree;
  long maxbits = 0;
  for (const auto& cc : a_) maxbits = std::max(maxbits, bit_length(cc));
  for (const auto& cc : b_) maxbits = std::max(maxbits, bit_length(cc));
  long shift = maxbits > 500 ? maxbits - 500 : 0;
  std::vector<cplx> c(static_cast<std::size_t>(d) + 1);
  for (int k = 0; k <= d; ++k)
    c[static_cast<std::size_t>(k)] = w.coords[1] * to_double_scaled(a_[static_cast<std::size_t>(k)], shift) -
                                     w.coords[0] * to_double_scaled(b_[static_cast<std::size_t>(k)], shift);
  std::size_t top = c.size();
  while (top > 1 && std::abs(c[top - 1]) < 1e-14) --top;
  int inf_mult = static_cast<int>(c.size() - top);
  std::vector<ProjPointC> out;
  if (top > 1) {
    std::vector<cplx> cc(c.begin(), c.begin() + static_cast<std::ptrdiff_t>(top));
    auto roots = certified_roots(cc, rng, residual_threshold, &retries_);
    for (const auto& z : roots) out.push_back(ProjPointC::from_affine(z));
  }
  for (int k = 0; k < inf_mult; ++k) out.push_back(ProjPointC::make({1.0, 0.0}));
  if (static_cast<int>(out.size()) != d)
    throw RootFindFailure("fiber cardinality mismatch");
  return out;
}

std::vector<ProjPointC> EquilibriumSampler::preimages(const ProjPointC& w) const {
  return preimages_seeded(w, Rng(seed_).split(0x517e57));
}

PointCloud EquilibriumSampler::sample(std::size_t n) const {
  retries_ = 0;
  PointCloud cloud;
  cloud.seed = seed_;
  cloud.burn_in = burn_in_;
  cloud.points.reserve(n);
  Rng walk(seed_);
  ProjPointC w = base_;
  const std::size_t total = n + static_cast<std::size_t>(burn_in_);
  for (std::size_t step = 0; step < total; ++step) {
    auto pre = preimages_seeded(w, walk.split(step * 2 + 1));
    std::size_t pick = walk.split(step * 2 + 2).below(pre.size());
    w = pre[pick];
    w.log_scale = 0.0;
    if (step >= static_cast<std::size_t>(burn_in_)) cloud.points.push_back(w);
  }
  return cloud;
}

MeasureEstimate integrate(const SmoothTestFn& f, const EquilibriumSampler& s, std::size_t n) {
  if (n < 2) throw InvalidArgument("need n >= 2 samples");
  PointCloud cloud = s.sample(n);
  MeasureEstimate est;
  est.n = n;
  double sum = 0.0, sumsq = 0.0;
  for (const auto& p : cloud.points) {
    double v = f.value_at(p);
    sum += v;
    sumsq += v * v;
  }
  est.value = sum / static_cast<double>(n);
  double var = std::max(0.0, sumsq / static_cast<double>(n) - est.value * est.value);
  est.std_error = std::sqrt(var / static_cast<double>(n - 1));
  return est;
}

InvarianceDefect invariance_defect(const EquilibriumSampler& s, const SmoothTestFn& f,
                                   std::size_t n) {
  if (n < 2) throw InvalidArgument("need n >= 2 samples");
  PointCloud cloud = s.sample(n);
  double sum1 = 0.0, sq1 = 0.0, sum2 = 0.0, sq2 = 0.0;
  for (const auto& p : cloud.points) {
    double v = f.value_at(p);
    auto pre = s.preimages(p);
    double pb = 0.0;
    for (const auto& q : pre) pb += f.value_at(q);
    pb /= static_cast<double>(pre.size());
    sum1 += v; sq1 += v * v;
    sum2 += pb; sq2 += pb * pb;
  }
  double m1 = sum1 / static_cast<double>(n), m2 = sum2 / static_cast<double>(n);
  double v1 = std::max(0.0, sq1 / static_cast<double>(n) - m1 * m1);
  double v2 = std::max(0.0, sq2 / static_cast<double>(n) - m2 * m2);
  InvarianceDefect out;
  out.defect = std::fabs(m1 - m2);
  out.noise = std::sqrt(v1 / static_cast<double>(n - 1)) + std::sqrt(v2 / static_cast<double>(n - 1));
  out.n = n;
  return out;
}

RegularityEstimate estimate_kappa(const PointCloud& cloud, int min_level, int max_level) {
  auto pts = cloud.chart0_coords(2.0);
  if (pts.size() < 100) throw InsufficientData("too few chart-0 samples for box counting");
  if (max_level - min_level + 1 < 4) throw InsufficientData("need at least 4 dyadic levels");

  RegularityEstimate est;
  for (int lvl = min_level; lvl <= max_level; ++lvl) {
    long boxes = 1L << lvl;
    double side = 4.0 / static_cast<double>(boxes);
    std::map<std::pair<long, long>, std::size_t> count;
    for (const auto& z : pts) {
      long ix = std::min<long>(boxes - 1, static_cast<long>((z.real() + 2.0) / side));
      long iy = std::min<long>(boxes - 1, static_cast<long>((z.imag() + 2.0) / side));
      ++count[{ix, iy}];
    }
    std::size_t peak = 0;
    for (const auto& [k, v] : count) peak = std::max(peak, v);
    est.levels.emplace_back(side, static_cast<double>(peak) / static_cast<double>(pts.size()));
  }
  // least squares log(mass) = kappa log(side) + const
  double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
  double m = static_cast<double>(est.levels.size());
  for (const auto& [side, mass] : est.levels) {
    double X = std::log(side), Y = std::log(mass);
    sx += X; sy += Y; sxx += X * X; sxy += X * Y; syy += Y * Y;
  }
  double denom = m * sxx - sx * sx;
  est.kappa_hat = (m * sxy - sx * sy) / denom;
  double r_num = (m * sxy - sx * sy);
  double r_den = std::sqrt(denom * (m * syy - sy * sy));
  est.r_squared = r_den > 0 ? (r_num / r_den) * (r_num / r_den) : 0.0;
  return est;
}

CubeFamily disjoint_cubes(const EquilibriumSampler& s, int D, double dilate,
                          std::size_t n_samples) {
  PointCloud cloud = s.sample(n_samples);
  RegularityEstimate reg = estimate_kappa(cloud);
  return disjoint_cubes(cloud.chart0_coords(2.0), reg.kappa_hat, D, dilate);
}

double torus_integrate(double (*f)(double, double), int grid_n) {
  if (grid_n < 4) throw InvalidArgument("torus grid too coarse");
  double sum = 0.0;
  for (int i = 0; i < grid_n; ++i)
    for (int j = 0; j < grid_n; ++j)
      sum += f(2 * kPi * i / grid_n, 2 * kPi * j / grid_n);
  return sum / (static_cast<double>(grid_n) * grid_n);
}

}  // namespace equilab
