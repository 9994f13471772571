#pragma once
#include <complex>
#include <string>
#include <vector>

#include "equilab/dyncore.hpp"
#include "equilab/jets.hpp"

namespace equilab {

// Fixed two-chart atlas on the projective line: chart 0 is z, chart 1 is 1/z.
// Each chart is a biholomorphism onto a radius-3 disc; the closed unit discs
// already cover, and all sups are certified on the radius-2 discs.
struct GoodChartAtlas {
  static constexpr int chart_count = 2;
  static constexpr double chart_radius = 3.0;
  static constexpr double cert_radius = 2.0;

  // canonical chart of a point (the one where its coordinate has modulus <= 1)
  static int chart_of(const ProjPointC& p);
  static cplx coord_in(int chart, const ProjPointC& p);
};

// Smooth compactly-supported test function attached to one chart, evaluated
// through exact order-3 jet arithmetic. Kinds:
//   Constant        f == c everywhere (no support restriction)
//   Box             mollifier box bump: 1 on [c +- inner]^2, 0 off [c +- outer]^2
//   Disc            radial bump: 1 on |zeta-c| <= inner, 0 off |zeta-c| >= outer
//   Ring            annular bump around |zeta-c| = r0 with half-widths inner/outer
// optionally multiplied by Re(zeta)^a Im(zeta)^b and/or cos(m arg zeta).
class SmoothTestFn {
 public:
  enum class Kind { Constant, Box, Disc, Ring };

  static SmoothTestFn constant(double value);
  static SmoothTestFn box(int chart, double cx, double cy, double inner, double outer);
  static SmoothTestFn disc(int chart, double cx, double cy, double inner, double outer);
  static SmoothTestFn ring(int chart, double cx, double cy, double r0, double inner,
                           double outer);

  SmoothTestFn& modulate_monomial(int pow_re, int pow_im);  // * u^a w^b
  SmoothTestFn& modulate_harmonic(int m);                   // * cos(m arg zeta)

  // order-3 jet in the coordinates of `chart` at (u, w); transitions through
  // 1/zeta when `chart` is not the definition chart
  Jet3 jet(int chart, double u, double w) const;
  double value(int chart, double u, double w) const { return jet(chart, u, w).v; }
  double value_at(const ProjPointC& p) const;

  int definition_chart() const { return chart_; }
  Kind kind() const { return kind_; }
  std::string describe() const;

 private:
  SmoothTestFn() = default;
  void check_geometry() const;
  Jet3 direct_jet(double u, double w) const;  // in the definition chart
  bool outside_support(double u, double w) const;

  Kind kind_ = Kind::Constant;
  int chart_ = 0;
  double cx_ = 0, cy_ = 0, inner_ = 0, outer_ = 0, r0_ = 0;
  double const_value_ = 0;
  int pow_re_ = 0, pow_im_ = 0, harmonic_ = 0;
};

// 1 + sum over charts and all multi-indices of total order <= k of the grid
// sup of |partial f| over the radius-2 chart discs. grid_n points per axis.
double ck_norm(const SmoothTestFn& f, int k, int grid_n = 201);

struct CubeBox {
  double cx = 0, cy = 0;
  double mass = 0;  // empirical sample fraction
};

struct CubeFamily {
  int chart = 0;
  double side = 0;
  double dilate = 0;
  std::vector<CubeBox> boxes;
  double equal_share = 0;  // available mass / boxes-on-support
  int support_boxes = 0;
};

// Greedy family of D boxes of side ~ side_constant * D^(-2/kappa) whose
// dilate-scaled copies are pairwise disjoint, chosen heaviest-first from the
// empirical box masses of chart-0 sample coordinates inside [-hw, hw]^2.
CubeFamily disjoint_cubes(const std::vector<cplx>& chart0_points, double kappa_hat,
                          int D, double dilate, double region_halfwidth = 2.0,
                          double side_constant = 1.0);

}  // namespace equilab
