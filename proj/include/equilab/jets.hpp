#pragma once
#include <cmath>

namespace equilab {

// Truncated Taylor arithmetic in two real variables, all partials through
// total order 3. Enough to evaluate C^3 data of chart test functions exactly
// (no finite differencing anywhere downstream).
struct Jet3 {
  double v = 0;
  double x = 0, y = 0;
  double xx = 0, xy = 0, yy = 0;
  double xxx = 0, xxy = 0, xyy = 0, yyy = 0;

  static Jet3 constant(double c) { Jet3 j; j.v = c; return j; }
  static Jet3 var_x(double u) { Jet3 j; j.v = u; j.x = 1; return j; }
  static Jet3 var_y(double w) { Jet3 j; j.v = w; j.y = 1; return j; }

  Jet3 operator+(const Jet3& o) const {
    Jet3 r;
    r.v = v + o.v; r.x = x + o.x; r.y = y + o.y;
    r.xx = xx + o.xx; r.xy = xy + o.xy; r.yy = yy + o.yy;
    r.xxx = xxx + o.xxx; r.xxy = xxy + o.xxy; r.xyy = xyy + o.xyy; r.yyy = yyy + o.yyy;
    return r;
  }
  Jet3 operator-(const Jet3& o) const {
    Jet3 r;
    r.v = v - o.v; r.x = x - o.x; r.y = y - o.y;
    r.xx = xx - o.xx; r.xy = xy - o.xy; r.yy = yy - o.yy;
    r.xxx = xxx - o.xxx; r.xxy = xxy - o.xxy; r.xyy = xyy - o.xyy; r.yyy = yyy - o.yyy;
    return r;
  }
  Jet3 operator-() const { return constant(0.0) - *this; }
  Jet3 operator*(double c) const {
    Jet3 r = *this;
    r.v *= c; r.x *= c; r.y *= c; r.xx *= c; r.xy *= c; r.yy *= c;
    r.xxx *= c; r.xxy *= c; r.xyy *= c; r.yyy *= c;
    return r;
  }
  Jet3 operator+(double c) const { Jet3 r = *this; r.v += c; return r; }
  Jet3 operator-(double c) const { Jet3 r = *this; r.v -= c; return r; }

  // Leibniz to order 3
  Jet3 operator*(const Jet3& g) const {
    const Jet3& f = *this;
    Jet3 r;
    r.v = f.v * g.v;
    r.x = f.x * g.v + f.v * g.x;
    r.y = f.y * g.v + f.v * g.y;
    r.xx = f.xx * g.v + 2 * f.x * g.x + f.v * g.xx;
    r.xy = f.xy * g.v + f.x * g.y + f.y * g.x + f.v * g.xy;
    r.yy = f.yy * g.v + 2 * f.y * g.y + f.v * g.yy;
    r.xxx = f.xxx * g.v + 3 * f.xx * g.x + 3 * f.x * g.xx + f.v * g.xxx;
    r.xxy = f.xxy * g.v + f.xx * g.y + 2 * f.xy * g.x + 2 * f.x * g.xy + f.y * g.xx + f.v * g.xxy;
    r.xyy = f.xyy * g.v + f.yy * g.x + 2 * f.xy * g.y + 2 * f.y * g.xy + f.x * g.yy + f.v * g.xyy;
    r.yyy = f.yyy * g.v + 3 * f.yy * g.y + 3 * f.y * g.yy + f.v * g.yyy;
    return r;
  }
};

// univariate chain rule: g(t) from derivatives g0..g3 of g at t.v
inline Jet3 jet_chain(double g0, double g1, double g2, double g3, const Jet3& t) {
  Jet3 r;
  r.v = g0;
  r.x = g1 * t.x;
  r.y = g1 * t.y;
  r.xx = g2 * t.x * t.x + g1 * t.xx;
  r.xy = g2 * t.x * t.y + g1 * t.xy;
  r.yy = g2 * t.y * t.y + g1 * t.yy;
  r.xxx = g3 * t.x * t.x * t.x + 3 * g2 * t.x * t.xx + g1 * t.xxx;
  r.xxy = g3 * t.x * t.x * t.y + g2 * (2 * t.x * t.xy + t.xx * t.y) + g1 * t.xxy;
  r.xyy = g3 * t.x * t.y * t.y + g2 * (2 * t.y * t.xy + t.yy * t.x) + g1 * t.xyy;
  r.yyy = g3 * t.y * t.y * t.y + 3 * g2 * t.y * t.yy + g1 * t.yyy;
  return r;
}

inline Jet3 jet_exp(const Jet3& t) {
  double e = std::exp(t.v);
  return jet_chain(e, e, e, e, t);
}

inline Jet3 jet_log(const Jet3& t) {
  double a = t.v;
  return jet_chain(std::log(a), 1 / a, -1 / (a * a), 2 / (a * a * a), t);
}

inline Jet3 jet_recip(const Jet3& t) {
  double a = t.v;
  return jet_chain(1 / a, -1 / (a * a), 2 / (a * a * a), -6 / (a * a * a * a), t);
}

inline Jet3 jet_sqrt(const Jet3& t) {
  double a = std::sqrt(t.v);
  return jet_chain(a, 0.5 / a, -0.25 / (a * t.v), 0.375 / (a * t.v * t.v), t);
}

// full 2D -> 2D chain rule: f given as a jet in its own coordinates at
// (a.v, b.v), pulled back through the coordinate change (x,y) -> (a, b)
Jet3 jet_compose2(const Jet3& f, const Jet3& a, const Jet3& b);

}  // namespace equilab
