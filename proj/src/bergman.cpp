#include "equilab/bergman.hpp"

#include <algorithm>
#include <cmath>

#include "equilab/parallel.hpp"

namespace equilab {

void gauss_legendre_01(int q, std::vector<double>& nodes, std::vector<double>& weights) {
  constexpr double pi = 3.14159265358979323846;
  nodes.resize(static_cast<std::size_t>(q));
  weights.resize(static_cast<std::size_t>(q));
  for (int i = 0; i < q; ++i) {
    double x = std::cos(pi * (i + 0.75) / (q + 0.5));  // Tricomi initial guess
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= q; ++k) {
        double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = q * (x * p1 - p0) / (x * x - 1.0);
      double dx = p1 / dp;
      x -= dx;
      if (std::fabs(dx) < 1e-15) break;
    }
    nodes[static_cast<std::size_t>(q - 1 - i)] = 0.5 * (x + 1.0);
    weights[static_cast<std::size_t>(q - 1 - i)] = 1.0 / ((1.0 - x * x) * dp * dp);
  }
}

namespace {

constexpr double kPi = 3.14159265358979323846;

double perturbation_at(const MetricModel& m, double u, double theta) {
  if (!m.perturbation || m.epsilon == 0.0) return 0.0;
  double su = std::sqrt(std::max(0.0, u));
  double s1 = std::sqrt(std::max(0.0, 1.0 - u));
  ProjPointC p = ProjPointC::make({cplx(su * std::cos(theta), su * std::sin(theta)), cplx(s1, 0.0)});
  return m.perturbation->value_at(p);
}

// beta-normalized weighted monomial values at (u, theta):
// w_j = exp((j/2) log u + ((n-j)/2) log(1-u) - (n eps/2) f - log_beta[j]/2) e^{ij theta}
Eigen::VectorXcd weighted_monomials(const MetricModel& metric,
                                    const std::vector<double>& log_beta, double u,
                                    double theta) {
  const int n = metric.n;
  const double lu = u > 0.0 ? std::log(u) : 0.0;
  const double l1u = u < 1.0 ? std::log(1.0 - u) : 0.0;
  const double fterm = 0.5 * n * metric.epsilon * perturbation_at(metric, u, theta);
  Eigen::VectorXcd w(n + 1);
  for (int j = 0; j <= n; ++j) {
    double a;
    if ((j > 0 && u <= 0.0) || (j < n && u >= 1.0)) {
      a = -std::numeric_limits<double>::infinity();
    } else {
      a = 0.5 * (j * lu + (n - j) * l1u) - fterm - 0.5 * log_beta[static_cast<std::size_t>(j)];
    }
    double mag = std::exp(a);
    w[j] = cplx(mag * std::cos(j * theta), mag * std::sin(j * theta));
  }
  return w;
}

Eigen::MatrixXcd assemble_gram(const MetricModel& metric, const std::vector<double>& log_beta,
                               int radial, int angular) {
  const int dim = metric.n + 1;
  std::vector<double> nodes, weights;
  gauss_legendre_01(radial, nodes, weights);
  std::vector<Eigen::MatrixXcd> slot(static_cast<std::size_t>(radial));
  parallel_for(static_cast<std::size_t>(radial), [&](std::size_t a) {
    Eigen::MatrixXcd acc = Eigen::MatrixXcd::Zero(dim, dim);
    for (int b = 0; b < angular; ++b) {
      double theta = 2.0 * kPi * b / angular;
      Eigen::VectorXcd w = weighted_monomials(metric, log_beta, nodes[a], theta);
      acc.noalias() += w * w.adjoint();
    }
    slot[a] = acc * (weights[a] / angular);
  });
  Eigen::MatrixXcd G = Eigen::MatrixXcd::Zero(dim, dim);
  for (const auto& s : slot) G += s;
  // enforce exact Hermitian symmetry against rounding
  return 0.5 * (G + Eigen::MatrixXcd(G.adjoint()));
}

}  // namespace

MetricModel MetricModel::fubini_study(int n) {
  if (n < 0) throw InvalidArgument("tensor power must be nonnegative");
  MetricModel m;
  m.n = n;
  return m;
}

MetricModel MetricModel::perturbed(int n, SmoothTestFn f, double epsilon) {
  MetricModel m = fubini_study(n);
  m.perturbation = std::move(f);
  m.epsilon = epsilon;
  return m;
}

Eigen::MatrixXcd SectionSpace::gram_monomial() const {
  const int dim_ = dim();
  Eigen::MatrixXcd G(dim_, dim_);
  for (int j = 0; j < dim_; ++j)
    for (int k = 0; k < dim_; ++k)
      G(j, k) = gram_matrix(j, k) *
                std::exp(0.5 * (log_beta[static_cast<std::size_t>(j)] +
                                log_beta[static_cast<std::size_t>(k)]));
  return G;
}

SectionSpace gram(const MetricModel& metric, int quadrature_order) {
  const int n = metric.n;
  if (quadrature_order < n + 2) throw InvalidArgument("quadrature order below n + 2");
  SectionSpace s;
  s.metric = metric;
  s.radial_order = quadrature_order;
  s.angular_order = std::max(2 * quadrature_order, n + 2);
  s.total_mass = 1.0;
  s.log_beta.resize(static_cast<std::size_t>(n) + 1);
  for (int j = 0; j <= n; ++j)
    s.log_beta[static_cast<std::size_t>(j)] =
        std::lgamma(j + 1.0) + std::lgamma(n - j + 1.0) - std::lgamma(n + 2.0);

  Eigen::MatrixXcd G1 = assemble_gram(metric, s.log_beta, s.radial_order, s.angular_order);
  Eigen::MatrixXcd G2 = assemble_gram(metric, s.log_beta, 2 * s.radial_order, 2 * s.angular_order);
  for (int j = 0; j <= n; ++j)
    for (int k = 0; k <= n; ++k) {
      double scale = std::sqrt(std::abs(G2(j, j)) * std::abs(G2(k, k)));
      double diff = std::abs(G2(j, k) - G1(j, k));
      if (diff > 1e-9 * std::max(scale, 1e-300))
        throw QuadratureUnconverged("Gram entry moved more than 1e-9 under refinement");
    }
  s.gram_matrix = std::move(G2);
  s.cholesky.compute(s.gram_matrix);
  if (s.cholesky.info() != Eigen::Success)
    throw IllConditioned("Gram matrix is not numerically positive definite");
  return s;
}

double kernel_at(const SectionSpace& space, double u, double theta) {
  Eigen::VectorXcd w = weighted_monomials(space.metric, space.log_beta, u, theta);
  Eigen::VectorXcd y = space.cholesky.matrixL().solve(w);
  return y.squaredNorm();
}

std::vector<double> bergman_kernel(const SectionSpace& space, const std::vector<cplx>& points) {
  std::vector<double> out(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    double r2 = std::norm(points[i]);
    double u = r2 / (1.0 + r2);
    out[i] = kernel_at(space, u, std::arg(points[i]));
  }
  return out;
}

double kernel_mass(const SectionSpace& space, int radial, int angular) {
  std::vector<double> nodes, weights;
  gauss_legendre_01(radial, nodes, weights);
  double total = 0.0;
  for (int a = 0; a < radial; ++a) {
    double ring = 0.0;
    for (int b = 0; b < angular; ++b)
      ring += kernel_at(space, nodes[static_cast<std::size_t>(a)], 2.0 * kPi * b / angular);
    total += weights[static_cast<std::size_t>(a)] * ring / angular;
  }
  return total;
}

double gromov_constant(const SectionSpace& space, int trials, Rng rng, int grid_u,
                       int grid_theta) {
  if (trials < 100) throw InvalidArgument("need at least 100 trials");
  const int dim = space.dim();
  double best = 0.0;
  for (int t = 0; t < trials; ++t) {
    Rng tr = rng.split(static_cast<std::uint64_t>(t) + 1);
    Eigen::VectorXcd a(dim);
    for (int j = 0; j < dim; ++j) a[j] = cplx(tr.gauss(), tr.gauss());
    double l2 = std::sqrt(std::real(cplx(a.adjoint() * (space.gram_matrix * a))));
    if (!(l2 > 0.0)) continue;
    double sup = 0.0;
    for (int i = 0; i < grid_u; ++i) {
      double u = grid_u > 1 ? static_cast<double>(i) / (grid_u - 1) : 0.0;
      for (int b = 0; b < grid_theta; ++b) {
        double theta = 2.0 * kPi * b / grid_theta;
        Eigen::VectorXcd w = weighted_monomials(space.metric, space.log_beta, u, theta);
        sup = std::max(sup, std::abs(cplx(w.transpose() * a)));
      }
    }
    best = std::max(best, sup / l2);
  }
  return best;
}

VolumeDiff volume_diff(const SectionSpace& space0, const SectionSpace& space1) {
  if (space0.metric.n != space1.metric.n)
    throw InvalidArgument("volume_diff needs equal tensor powers");
  Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXcd> ges(space1.gram_matrix,
                                                                 space0.gram_matrix);
  if (ges.info() != Eigen::Success) throw IllConditioned("generalized eigensolve failed");
  VolumeDiff out;
  for (int i = 0; i < ges.eigenvalues().size(); ++i) {
    double lam = ges.eigenvalues()[i];
    if (!(lam > 1e-13)) throw IllConditioned("generalized eigenvalue at or below 1e-13");
    out.per_eigenvalue.push_back(0.5 * std::log(lam));
    out.value += out.per_eigenvalue.back();
  }
  return out;
}

double jensen_linear_coefficient(const SectionSpace& base, const SmoothTestFn& f,
                                 int radial, int angular) {
  std::vector<double> nodes, weights;
  gauss_legendre_01(radial, nodes, weights);
  double total = 0.0;
  for (int a = 0; a < radial; ++a) {
    double u = nodes[static_cast<std::size_t>(a)];
    double ring = 0.0;
    for (int b = 0; b < angular; ++b) {
      double theta = 2.0 * kPi * b / angular;
      double su = std::sqrt(u), s1 = std::sqrt(1.0 - u);
      ProjPointC p =
          ProjPointC::make({cplx(su * std::cos(theta), su * std::sin(theta)), cplx(s1, 0.0)});
      ring += f.value_at(p) * kernel_at(base, u, theta);
    }
    total += weights[static_cast<std::size_t>(a)] * ring / angular;
  }
  return -0.5 * base.metric.n * total;
}

}  // namespace equilab
