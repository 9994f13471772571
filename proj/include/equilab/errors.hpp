#pragma once
#include <stdexcept>
#include <string>

namespace equilab {

// Failure taxonomy. Every error carries a human-readable reason; the CLI maps
// any of these to exit code 2 with the class name printed.
#define EQUILAB_ERROR(NAME)                                                    \
  struct NAME : std::runtime_error {                                          \
    explicit NAME(const std::string& what) : std::runtime_error(#NAME ": " + what) {} \
  };

EQUILAB_ERROR(DegenerateImage)      // map image vanished at a point (not a morphism there)
EQUILAB_ERROR(CapExceeded)          // symbolic degree / subset / size cap hit
EQUILAB_ERROR(CertificationFailed)  // grid certification slack swallowed the bound
EQUILAB_ERROR(RootFindFailure)      // residual certification of roots failed
EQUILAB_ERROR(InvalidArgument)      // malformed input (parse errors, bad parameters)
EQUILAB_ERROR(InvalidGeometry)      // support leaves the chart's certified region
EQUILAB_ERROR(ConstructionFailed)   // greedy construction could not reach its target
EQUILAB_ERROR(RankDeficient)        // expected full rank, found less
EQUILAB_ERROR(IllConditioned)       // numerically untrustworthy eigen/Cholesky data
EQUILAB_ERROR(QuadratureUnconverged)// doubling the order moved the result too much
EQUILAB_ERROR(ChartMiss)            // point not inside any chart's certified disc
EQUILAB_ERROR(InsufficientData)     // not enough usable points for a fit
EQUILAB_ERROR(Unsupported)          // outside the implemented parameter range

#undef EQUILAB_ERROR

}  // namespace equilab
