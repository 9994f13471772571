#pragma once
#include <complex>
#include <map>
#include <string>
#include <vector>

#include "equilab/bigint.hpp"
#include "equilab/errors.hpp"

namespace equilab {

using cplx = std::complex<double>;

// Homogeneous polynomial in nvars variables with exact integer coefficients.
// Terms are kept sorted by exponent vector; every exponent vector sums to degree.
struct HomogeneousPoly {
  int nvars = 2;
  int degree = 0;
  std::vector<std::pair<std::vector<int>, BigInt>> terms;  // (exponents, coeff), coeff != 0

  static HomogeneousPoly zero(int nvars, int degree);
  static HomogeneousPoly monomial(std::vector<int> exps, BigInt coeff);
  // dense binary form from coefficients of x^d, x^{d-1}y, ..., y^d
  static HomogeneousPoly binary_form(const std::vector<BigInt>& coeffs_xd_to_yd);

  void add_term(const std::vector<int>& exps, const BigInt& coeff);
  const BigInt& coeff_of(const std::vector<int>& exps) const;  // 0 if absent

  // coefficient of x^k y^{degree-k} (binary forms only)
  BigInt binary_coeff(int k) const;
  std::vector<BigInt> binary_coeffs() const;  // index k -> coeff of x^k y^{d-k}

  bool is_zero() const { return terms.empty(); }
  BigInt max_abs_coeff() const;
  BigInt coeff_abs_sum() const;

  // Exact evaluation at an integer point.
  BigInt eval_exact(const std::vector<BigInt>& x) const;
  // Floating evaluation at a complex point; returns value * 2^scale_exp2 where
  // the scale absorbs coefficients outside double range.
  cplx eval_scaled(const std::vector<cplx>& x, long& scale_exp2) const;
  // Convenience: value as double (valid only when coefficients are moderate).
  cplx eval(const std::vector<cplx>& x) const;

  HomogeneousPoly operator*(const HomogeneousPoly& o) const;
  HomogeneousPoly operator+(const HomogeneousPoly& o) const;
  HomogeneousPoly scaled(const BigInt& c) const;
  HomogeneousPoly pow(int e) const;

  // degree-preserving sanity check
  void validate() const;
  std::string to_string() const;
};

// Polarized endomorphism lift: nvars components of common degree d >= 2.
struct HomogeneousMap {
  int nvars = 2;  // N + 1
  int degree = 2;
  std::vector<HomogeneousPoly> components;

  int dim() const { return nvars - 1; }
  void validate() const;
};

// Complex projective point, coordinates normalized to max-modulus 1, with an
// additive log-scale accumulator (so iterated images track log ||F^m(x)||).
struct ProjPointC {
  std::vector<cplx> coords;
  double log_scale = 0.0;

  static ProjPointC from_affine(cplx z);           // [z : 1] on P^1
  static ProjPointC make(std::vector<cplx> c);     // normalized, log_scale 0
  void normalize();                                 // throws DegenerateImage on ~0
  cplx affine() const;                              // x0/x1 (P^1), may be inf
  bool is_infinity(double tol = 1e-12) const;       // P^1: |x1| below tol
};

// Exact rational projective point: primitive integer coordinates
// (content 1, first nonzero coordinate positive).
struct ProjPointQ {
  std::vector<BigInt> coords;

  static ProjPointQ make(std::vector<BigInt> c);  // primitivizes
  void primitivize();
  ProjPointC to_complex() const;
  std::string to_string() const;
};

// One application of the lift; renormalizes and accumulates log-scale.
ProjPointC evaluate(const HomogeneousMap& F, const ProjPointC& x);
// m applications.
ProjPointC iterate(const HomogeneousMap& F, const ProjPointC& x, int m);
// Exact image of a rational point, primitivized.
ProjPointQ evaluate_exact(const HomogeneousMap& F, const ProjPointQ& x);

// Exact symbolic m-fold composition; degree d^m, capped at 4096.
HomogeneousMap compose_exact(const HomogeneousMap& F, int m);

// Resultant of a binary-form pair via the 2d x 2d Sylvester matrix (exact,
// fraction-free elimination). N = 1 only.
BigInt sylvester_resultant(const HomogeneousPoly& F0, const HomogeneousPoly& F1);

struct BadPrimes {
  BigInt resultant;                              // exact Res(F)
  std::vector<std::pair<BigInt, int>> factors;   // (p, v_p(Res)) sorted by p
};

// Primes of bad reduction = primes dividing Res(F). N = 1 only (Sylvester);
// for N >= 2 callers must supply the set themselves.
BadPrimes bad_primes(const HomogeneousMap& F);

// Exact determinant (Bareiss) of an integer matrix; used by the resultant and
// exposed for tests.
BigInt bareiss_determinant(std::vector<std::vector<BigInt>> M);

}  // namespace equilab
