#pragma once

#include <complex>
#include <utility>
#include <vector>

#include "equilab/bigint.hpp"
#include "equilab/errors.hpp"
#include "equilab/rng.hpp"

namespace equilab {

using cplx = std::complex<double>;

// univariate integer polynomial, c[k] is the coefficient of z^k
using IntPoly = std::vector<BigInt>;

IntPoly poly_trim(IntPoly f);
int poly_degree(const IntPoly& f);  // -1 for the zero polynomial
IntPoly poly_add(const IntPoly& a, const IntPoly& b);
IntPoly poly_sub(const IntPoly& a, const IntPoly& b);
IntPoly poly_mul(const IntPoly& a, const IntPoly& b);
IntPoly poly_derivative(const IntPoly& f);
BigInt poly_eval(const IntPoly& f, const BigInt& x);
cplx poly_eval(const IntPoly& f, cplx z);  // scaled against overflow

// content removed and leading coefficient made positive
IntPoly poly_primitive(IntPoly f);

// primitive gcd via the subresultant polynomial remainder sequence
IntPoly poly_gcd(IntPoly a, IntPoly b);

// true iff g divides f exactly over Q (hence over Z when g is primitive);
// quotient written when non-null
bool poly_divexact(const IntPoly& f, const IntPoly& g, IntPoly* quotient);

// f / gcd(f, f'), primitive: same roots, multiplicity one
IntPoly squarefree_part(const IntPoly& f);

struct PolyFactor {
  IntPoly poly;  // primitive irreducible, positive leading coefficient
  int multiplicity = 1;
};

struct Factorization {
  BigInt unit = 1;  // f = unit * prod poly^multiplicity
  std::vector<PolyFactor> factors;
  bool certified = true;  // false when recombination hit the subset cap
};

// certified factorization over Z: squarefree part, distinct-degree and
// equal-degree splitting modulo a good prime, linear Hensel lifting past the
// Mignotte bound, then subset recombination (capped at 2^20 candidates)
Factorization factor_poly(const IntPoly& f, Rng rng);

// degree multiset (ascending) of the irreducible factors of the squarefree part
std::vector<int> factor_degrees(const IntPoly& f, Rng rng);

// cheap lower-bound profile: distinct-degree splitting modulo n_primes random
// good primes; each mod-p profile refines the true one, the coarsest
// (lexicographically largest when sorted descending) is reported, ascending
std::vector<int> modular_degree_profile(const IntPoly& f, Rng rng, int n_primes = 5);

}  // namespace equilab
