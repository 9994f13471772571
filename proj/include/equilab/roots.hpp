#pragma once
#include <complex>
#include <vector>

#include "equilab/bigint.hpp"
#include "equilab/rng.hpp"

namespace equilab {

using cplx = std::complex<double>;

struct AberthOptions {
  int max_sweeps = 400;
  double newton_tol = 1e-13;   // relative Newton-step stopping size
  double residual_tol = 1e-10; // certification threshold (relative)
};

// All complex roots of sum_k c[k] z^k (c.back() != 0 expected; exact zero
// leading coefficients must be stripped by the caller). Multiple/clustered
// roots come back as nearby points. Deterministic for a fixed rng state.
std::vector<cplx> aberth_roots(std::vector<cplx> c, Rng rng,
                               const AberthOptions& opt = {});

// Residual of a degree-(coeffs.size()-1) binary form at the projective point
// [z : 1], evaluated at the max-norm-1 representative and divided by the max
// coefficient magnitude. Scale-invariant in both the form and the point.
double form_residual(const std::vector<BigInt>& coeffs_xk, cplx z);
// Same for the point at infinity [1 : 0].
double form_residual_infinity(const std::vector<BigInt>& coeffs_xk);

// Roots of the binary form with exact integer coefficients c_k x^k y^{D-k}:
// finite roots (z values) plus the multiplicity of [1:0]. Every root is
// residual-certified; throws RootFindFailure past retries.
struct FormRoots {
  std::vector<cplx> finite;  // affine roots, |multiplicity| copies for multiple roots
  int infinity_multiplicity = 0;
  double max_residual = 0.0;
};
FormRoots binary_form_roots(const std::vector<BigInt>& coeffs_xk, Rng rng,
                            const AberthOptions& opt = {});

}  // namespace equilab
