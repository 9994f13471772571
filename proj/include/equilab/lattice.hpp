#pragma once

#include <functional>
#include <vector>

#include "equilab/bigint.hpp"
#include "equilab/errors.hpp"

namespace equilab {

// LLL reduction (delta = 0.75) of a full-rank row basis in double precision.
// transform[i] gives the exact integer coordinates of the reduced row i in
// terms of the input rows.
struct LLLResult {
  std::vector<std::vector<double>> basis;
  std::vector<std::vector<BigInt>> transform;
};

LLLResult lll_reduce(std::vector<std::vector<double>> rows, double delta = 0.75);

// Minkowski-style search: if chi_estimate exceeds dim * log 2 (the volume
// condition vol(B) > 2^dim covol), look for a nonzero lattice vector of
// sup_norm <= 1 among LLL-reduced vectors and their small combinations
// (bounded enumeration: up to two nonzero coefficients in {-2..2}).
struct SmallVectorResult {
  bool searched = false;
  bool found = false;
  std::vector<BigInt> coeffs;   // integer coordinates in the input rows
  std::vector<double> vector;
  double norm = 0.0;
  long candidates_tried = 0;    // the search bound reached
};

SmallVectorResult minkowski_small_vector(
    const std::vector<std::vector<double>>& rows,
    const std::function<double(const std::vector<double>&)>& sup_norm,
    double chi_estimate);

}  // namespace equilab
