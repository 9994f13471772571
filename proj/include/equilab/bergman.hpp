#pragma once

#include <Eigen/Dense>
#include <optional>
#include <vector>

#include "equilab/lattice.hpp"
#include "equilab/rng.hpp"
#include "equilab/testfn.hpp"

namespace equilab {

// Gauss-Legendre nodes and weights for integration over [0, 1].
void gauss_legendre_01(int q, std::vector<double>& nodes, std::vector<double>& weights);

// Hermitian metric on O(n) over P^1: the Fubini-Study weight, optionally
// multiplied by exp(-n * epsilon * f). The background measure is always the
// Fubini-Study form normalized to mass 1.
struct MetricModel {
  int n = 1;
  double epsilon = 0.0;
  std::optional<SmoothTestFn> perturbation;

  static MetricModel fubini_study(int n);
  static MetricModel perturbed(int n, SmoothTestFn f, double epsilon);
};

// H^0(P^1, O(n)) with its L^2 inner product. The stored Gram matrix is in the
// beta-normalized monomial basis e_j = x^j y^{n-j} / sqrt(j!(n-j)!/(n+1)!),
// which makes the unperturbed Fubini-Study Gram the identity.
struct SectionSpace {
  MetricModel metric;
  int radial_order = 0;   // Gauss-Legendre nodes in u = r^2/(1+r^2)
  int angular_order = 0;  // trapezoid nodes in theta
  double total_mass = 1.0;
  std::vector<double> log_beta;
  Eigen::MatrixXcd gram_matrix;          // beta-normalized basis
  Eigen::LLT<Eigen::MatrixXcd> cholesky;

  int dim() const { return metric.n + 1; }
  Eigen::MatrixXcd gram_monomial() const;  // rescaled to raw monomial coordinates
};

// Gram matrix by tensor-product quadrature; throws QuadratureUnconverged if
// doubling the order moves any entry by more than 1e-9 relative
SectionSpace gram(const MetricModel& metric, int quadrature_order);

// Bergman kernel sum |s_i(x)|^2 over an L^2-orthonormal basis, metric weight
// included; (u, theta) parametrization is exact at both poles u = 0, 1
double kernel_at(const SectionSpace& space, double u, double theta);
std::vector<double> bergman_kernel(const SectionSpace& space, const std::vector<cplx>& points);

// quadrature of the kernel against the background measure (equals dim exactly)
double kernel_mass(const SectionSpace& space, int radial, int angular);

// max over random Gaussian sections of sup-norm / L^2-norm; the sup grid
// includes both poles
double gromov_constant(const SectionSpace& space, int trials, Rng rng, int grid_u = 65,
                       int grid_theta = 64);

struct VolumeDiff {
  double value = 0.0;
  std::vector<double> per_eigenvalue;  // value is their sum
};

// sum of half-logs of the generalized eigenvalues of gram1 against gram0;
// for a constant perturbation f = c this equals -(dim/2) * n * epsilon * c
VolumeDiff volume_diff(const SectionSpace& space0, const SectionSpace& space1);

// first-order coefficient of volume_diff(base, perturbed(eps)) in eps,
// predicted by the Jensen/trace step: -(n/2) * integral of f * kernel d mu
double jensen_linear_coefficient(const SectionSpace& base, const SmoothTestFn& f,
                                 int radial, int angular);

}  // namespace equilab
