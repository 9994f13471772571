#pragma once

#include <utility>
#include <vector>

#include "equilab/dyncore.hpp"
#include "equilab/measure.hpp"
#include "equilab/polyfactor.hpp"
#include "equilab/rng.hpp"

namespace equilab {

// fixed points of the m-th iterate on P^1, multiplicity-free
struct PeriodicSet {
  int n = 0;       // period (points of exact period dividing n)
  int degree = 0;  // d
  // coefficient k of the degree d^n + 1 fixed-point form, as coeff of x^k y^(D-k);
  // equivalently the z^k coefficient of the dehomogenized polynomial
  IntPoly defining_poly;
  IntPoly squarefree;  // squarefree part of the dehomogenized polynomial
  PointCloud points;   // distinct roots, with [1:0] appended when present
  bool includes_infinity = false;
  double max_residual = 0.0;  // worst |form(root)| / ||form|| over returned roots
};

PeriodicSet per_n(const HomogeneousMap& F, int n, Rng rng);

// minimal-polynomial degree for each point of the set (1 for infinity),
// aligned with ps.points; from the certified factorization of the squarefree part
std::vector<int> point_degrees(const PeriodicSet& ps, Rng rng);

// post-filter: drop points already periodic with period a proper divisor of n
PointCloud exact_period_points(const HomogeneousMap& F, const PeriodicSet& ps, Rng rng,
                               double tol = 1e-8);

enum class DegreeMode { certified, fast };

struct FactorDegreeProfile {
  int period = 0;
  std::vector<std::pair<int, int>> degree_multiset;  // (factor degree, multiplicity), ascending
  bool certified = true;
};

// irreducible-factor degree statistics of the period-n polynomial; the place at
// infinity contributes a degree-1 entry when the form vanishes there
FactorDegreeProfile galois_degrees(const HomogeneousMap& F, int n, DegreeMode mode, Rng rng);

// uniform bound for points of period n on a degree-e curve: 3 e^2 d^n
BigInt curve_count_bound(int e, int d, int n);

// pencil-of-lines analysis for the plane map (x,y,z) -> (f(x,y), g(x,y), z^d):
// each period-n parameter lambda of the quotient map f/g on P^1 carries an
// invariant line on which the n-th iterate reads u -> c_n u^(d^n)
struct PeriodicLine {
  ProjPointC lambda;
  int period = 0;               // minimal period of lambda under the quotient map
  cplx c_n{0.0, 0.0};           // g_n(lambda, 1), or f_n(1, 0) for the line at infinity
  double unit_circle_defect = 0.0;  // | |c_n z^(d^n - 1)| - 1 | at a candidate periodic z
  int root_of_unity_order = 0;      // smallest q <= 64 certifying a root of unity, 0 if none
  double iteration_check = 0.0;     // max relative error, direct iteration vs the model map
};

struct PeriodicLineReport {
  int n = 0;
  int degree = 0;
  std::vector<PeriodicLine> lines;
};

PeriodicLineReport p2_periodic_lines(const HomogeneousPoly& f, const HomogeneousPoly& g,
                                     int n, Rng rng);

// multiplication by d on the square torus: exact period-n count (d^n - 1)^2
// and its measured ratio to d^(2n)
struct TorusPeriodicCount {
  int n = 0;
  BigInt count;
  double alpha = 0.0;
};

TorusPeriodicCount torus_periodic_count(int d, int n);

}  // namespace equilab
