#include "equilab/testfn.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include "equilab/parallel.hpp"

namespace equilab {

// ------------------------------------------------------------------ compose2

Jet3 jet_compose2(const Jet3& f, const Jet3& a, const Jet3& b) {
  const double d1f[2] = {f.x, f.y};
  const double d2f[2][2] = {{f.xx, f.xy}, {f.xy, f.yy}};
  double d3f[2][2][2];
  d3f[0][0][0] = f.xxx;
  d3f[0][0][1] = d3f[0][1][0] = d3f[1][0][0] = f.xxy;
  d3f[0][1][1] = d3f[1][0][1] = d3f[1][1][0] = f.xyy;
  d3f[1][1][1] = f.yyy;

  const Jet3* g[2] = {&a, &b};
  auto d1 = [&](int al, int i) { return i == 0 ? g[al]->x : g[al]->y; };
  auto d2 = [&](int al, int i, int j) {
    if (i == 0 && j == 0) return g[al]->xx;
    if (i == 1 && j == 1) return g[al]->yy;
    return g[al]->xy;
  };
  auto d3 = [&](int al, int i, int j, int k) {
    int s = i + j + k;
    if (s == 0) return g[al]->xxx;
    if (s == 1) return g[al]->xxy;
    if (s == 2) return g[al]->xyy;
    return g[al]->yyy;
  };

  Jet3 r;
  r.v = f.v;
  double rd1[2] = {0, 0};
  double rd2[2][2] = {{0, 0}, {0, 0}};
  double rd3[2][2][2] = {{{0, 0}, {0, 0}}, {{0, 0}, {0, 0}}};
  for (int i = 0; i < 2; ++i)
    for (int al = 0; al < 2; ++al) rd1[i] += d1f[al] * d1(al, i);
  for (int i = 0; i < 2; ++i)
    for (int j = i; j < 2; ++j) {
      double s = 0;
      for (int al = 0; al < 2; ++al) {
        for (int be = 0; be < 2; ++be) s += d2f[al][be] * d1(al, i) * d1(be, j);
        s += d1f[al] * d2(al, i, j);
      }
      rd2[i][j] = rd2[j][i] = s;
    }
  for (int i = 0; i < 2; ++i)
    for (int j = i; j < 2; ++j)
      for (int k = j; k < 2; ++k) {
        double s = 0;
        for (int al = 0; al < 2; ++al) {
          for (int be = 0; be < 2; ++be) {
            for (int ga = 0; ga < 2; ++ga)
              s += d3f[al][be][ga] * d1(al, i) * d1(be, j) * d1(ga, k);
            s += d2f[al][be] * (d2(al, i, j) * d1(be, k) + d2(al, i, k) * d1(be, j) +
                                d2(al, j, k) * d1(be, i));
          }
          s += d1f[al] * d3(al, i, j, k);
        }
        rd3[i][j][k] = s;
      }
  r.x = rd1[0]; r.y = rd1[1];
  r.xx = rd2[0][0]; r.xy = rd2[0][1]; r.yy = rd2[1][1];
  r.xxx = rd3[0][0][0]; r.xxy = rd3[0][0][1]; r.xyy = rd3[0][1][1]; r.yyy = rd3[1][1][1];
  return r;
}

// ------------------------------------------------------------------ atlas

int GoodChartAtlas::chart_of(const ProjPointC& p) {
  if (p.coords.size() != 2) throw Unsupported("atlas is for the projective line");
  return std::abs(p.coords[0]) <= std::abs(p.coords[1]) ? 0 : 1;
}

cplx GoodChartAtlas::coord_in(int chart, const ProjPointC& p) {
  if (p.coords.size() != 2) throw Unsupported("atlas is for the projective line");
  return chart == 0 ? p.coords[0] / p.coords[1] : p.coords[1] / p.coords[0];
}

// ------------------------------------------------------------------ profile

namespace {

// one-sided mollifier step: 1 for t <= inner, 0 for t >= outer, E-quotient in
// between; t supplied as a jet (smooth wherever the transition happens)
Jet3 profile_jet(const Jet3& t, double inner, double outer) {
  const double eps = 1e-4;
  double s_v = (outer - t.v) / (outer - inner);
  if (s_v >= 1.0 - 1e-12) return Jet3::constant(1.0);
  if (s_v <= eps) return Jet3::constant(0.0);  // e^{-1/eps} underflows anyway
  Jet3 s = (t * (-1.0 / (outer - inner))) + outer / (outer - inner);
  Jet3 e1 = jet_exp(-jet_recip(s));
  Jet3 one_minus = -s + 1.0;
  Jet3 e2 = (1.0 - s_v <= eps) ? Jet3::constant(0.0) : jet_exp(-jet_recip(one_minus));
  return e1 * jet_recip(e1 + e2);
}

}  // namespace

// ------------------------------------------------------------------ bumps

SmoothTestFn SmoothTestFn::constant(double value) {
  SmoothTestFn f;
  f.kind_ = Kind::Constant;
  f.const_value_ = value;
  return f;
}

SmoothTestFn SmoothTestFn::box(int chart, double cx, double cy, double inner, double outer) {
  SmoothTestFn f;
  f.kind_ = Kind::Box;
  f.chart_ = chart;
  f.cx_ = cx; f.cy_ = cy; f.inner_ = inner; f.outer_ = outer;
  f.check_geometry();
  return f;
}

SmoothTestFn SmoothTestFn::disc(int chart, double cx, double cy, double inner, double outer) {
  SmoothTestFn f;
  f.kind_ = Kind::Disc;
  f.chart_ = chart;
  f.cx_ = cx; f.cy_ = cy; f.inner_ = inner; f.outer_ = outer;
  f.check_geometry();
  return f;
}

SmoothTestFn SmoothTestFn::ring(int chart, double cx, double cy, double r0, double inner,
                                double outer) {
  SmoothTestFn f;
  f.kind_ = Kind::Ring;
  f.chart_ = chart;
  f.cx_ = cx; f.cy_ = cy; f.r0_ = r0; f.inner_ = inner; f.outer_ = outer;
  f.check_geometry();
  return f;
}

SmoothTestFn& SmoothTestFn::modulate_monomial(int pow_re, int pow_im) {
  if (pow_re < 0 || pow_im < 0) throw InvalidArgument("negative modulator powers");
  pow_re_ = pow_re;
  pow_im_ = pow_im;
  return *this;
}

SmoothTestFn& SmoothTestFn::modulate_harmonic(int m) {
  if (m < 0) throw InvalidArgument("negative harmonic index");
  harmonic_ = m;
  check_geometry();
  return *this;
}

void SmoothTestFn::check_geometry() const {
  if (kind_ == Kind::Constant) return;
  if (chart_ != 0 && chart_ != 1) throw InvalidArgument("chart must be 0 or 1");
  if (!(0 < inner_ && inner_ < outer_)) throw InvalidArgument("need 0 < inner < outer");
  const double R = GoodChartAtlas::cert_radius;
  double reach = 0.0, origin_gap = 0.0;
  double c = std::hypot(cx_, cy_);
  switch (kind_) {
    case Kind::Box:
      reach = std::hypot(std::fabs(cx_) + outer_, std::fabs(cy_) + outer_);
      origin_gap = std::hypot(std::max(0.0, std::fabs(cx_) - outer_),
                              std::max(0.0, std::fabs(cy_) - outer_));
      break;
    case Kind::Disc:
      reach = c + outer_;
      origin_gap = std::max(0.0, c - outer_);
      break;
    case Kind::Ring:
      if (!(r0_ - outer_ > 0)) throw InvalidGeometry("ring support reaches its center");
      reach = c + r0_ + outer_;
      origin_gap = std::max(0.0, r0_ - outer_ - c);
      break;
    default:
      break;
  }
  if (reach > R)
    throw InvalidGeometry("support leaves the radius-2 disc of its chart");
  if (harmonic_ > 0 && origin_gap <= 0.0)
    throw InvalidGeometry("harmonic modulation needs the support to avoid the origin");
}

bool SmoothTestFn::outside_support(double u, double w) const {
  const double pad = 1e-12;
  switch (kind_) {
    case Kind::Constant:
      return false;
    case Kind::Box:
      return std::fabs(u - cx_) >= outer_ - pad || std::fabs(w - cy_) >= outer_ - pad;
    case Kind::Disc:
      return std::hypot(u - cx_, w - cy_) >= outer_ - pad;
    case Kind::Ring: {
      double rho = std::hypot(u - cx_, w - cy_);
      return std::fabs(rho - r0_) >= outer_ - pad;
    }
  }
  return true;
}

Jet3 SmoothTestFn::direct_jet(double u, double w) const {
  if (kind_ == Kind::Constant) return Jet3::constant(const_value_);
  if (outside_support(u, w)) return Jet3::constant(0.0);

  Jet3 X = Jet3::var_x(u), Y = Jet3::var_y(w);
  Jet3 bump;
  switch (kind_) {
    case Kind::Box: {
      // separable profile in |u-cx| and |w-cy|; each factor constant near its
      // center so the |.| kink never meets a nonzero derivative
      auto axis = [&](const Jet3& T, double c) {
        double t = T.v - c;
        if (std::fabs(t) <= inner_) return Jet3::constant(1.0);
        Jet3 s = t > 0 ? T - c : -(T - c);
        return profile_jet(s, inner_, outer_);
      };
      bump = axis(X, cx_) * axis(Y, cy_);
      break;
    }
    case Kind::Disc: {
      double rho = std::hypot(u - cx_, w - cy_);
      if (rho <= inner_) { bump = Jet3::constant(1.0); break; }
      Jet3 r2 = (X - cx_) * (X - cx_) + (Y - cy_) * (Y - cy_);
      bump = profile_jet(jet_sqrt(r2), inner_, outer_);
      break;
    }
    case Kind::Ring: {
      double rho = std::hypot(u - cx_, w - cy_);
      if (std::fabs(rho - r0_) <= inner_) { bump = Jet3::constant(1.0); break; }
      Jet3 r2 = (X - cx_) * (X - cx_) + (Y - cy_) * (Y - cy_);
      Jet3 rj = jet_sqrt(r2);
      Jet3 s = rho > r0_ ? rj - r0_ : -(rj - r0_);
      bump = profile_jet(s, inner_, outer_);
      break;
    }
    default:
      bump = Jet3::constant(0.0);
  }

  for (int i = 0; i < pow_re_; ++i) bump = bump * X;
  for (int i = 0; i < pow_im_; ++i) bump = bump * Y;

  if (harmonic_ > 0) {
    // cos(m arg zeta) = Re(zeta^m) / |zeta|^m, smooth off the origin
    Jet3 re = Jet3::constant(1.0), im = Jet3::constant(0.0);
    for (int i = 0; i < harmonic_; ++i) {
      Jet3 nre = re * X - im * Y;
      Jet3 nim = re * Y + im * X;
      re = nre;
      im = nim;
    }
    Jet3 r2 = X * X + Y * Y;
    Jet3 rm = jet_exp(jet_log(r2) * (0.5 * harmonic_));
    bump = bump * re * jet_recip(rm);
  }
  return bump;
}

Jet3 SmoothTestFn::jet(int chart, double u, double w) const {
  if (chart != 0 && chart != 1) throw InvalidArgument("chart must be 0 or 1");
  if (kind_ == Kind::Constant) return Jet3::constant(const_value_);
  if (chart == chart_) return direct_jet(u, w);
  // transition zeta = 1 / zeta': definition-chart coords of the query point
  double n2 = u * u + w * w;
  if (n2 < 1.0 / 16.0) return Jet3::constant(0.0);  // |zeta| > 4: off support
  Jet3 X = Jet3::var_x(u), Y = Jet3::var_y(w);
  Jet3 inv = jet_recip(X * X + Y * Y);
  Jet3 a = X * inv;        // Re(1/zeta')
  Jet3 b = -(Y * inv);     // Im(1/zeta')
  Jet3 f = direct_jet(a.v, b.v);
  return jet_compose2(f, a, b);
}

double SmoothTestFn::value_at(const ProjPointC& p) const {
  int c = GoodChartAtlas::chart_of(p);
  cplx z = GoodChartAtlas::coord_in(c, p);
  return jet(c, z.real(), z.imag()).v;
}

std::string SmoothTestFn::describe() const {
  std::ostringstream os;
  switch (kind_) {
    case Kind::Constant: os << "const:c=" << const_value_; return os.str();
    case Kind::Box: os << "box"; break;
    case Kind::Disc: os << "disc"; break;
    case Kind::Ring: os << "ring"; break;
  }
  os << ":chart=" << chart_ << ",cx=" << cx_ << ",cy=" << cy_;
  if (kind_ == Kind::Ring) os << ",r0=" << r0_;
  os << ",inner=" << inner_ << ",outer=" << outer_;
  if (pow_re_ || pow_im_) os << ",rea=" << pow_re_ << ",imb=" << pow_im_;
  if (harmonic_) os << ",harm=" << harmonic_;
  return os.str();
}

// ------------------------------------------------------------------ ck_norm

double ck_norm(const SmoothTestFn& f, int k, int grid_n) {
  if (k < 0 || k > 3) throw InvalidArgument("ck_norm supports k <= 3");
  if (grid_n < 9) throw InvalidArgument("grid too coarse");
  const double R = GoodChartAtlas::cert_radius;
  // sups per chart per derivative slot (10 slots, orders 0..3)
  double sup[2][10];
  for (auto& row : sup) std::fill(row, row + 10, 0.0);

  for (int chart = 0; chart < 2; ++chart) {
    std::vector<double> slot(static_cast<std::size_t>(grid_n) * static_cast<std::size_t>(grid_n) * 10, 0.0);
    parallel_for(static_cast<std::size_t>(grid_n) * static_cast<std::size_t>(grid_n), [&](std::size_t idx) {
      int i = static_cast<int>(idx % static_cast<std::size_t>(grid_n));
      int j = static_cast<int>(idx / static_cast<std::size_t>(grid_n));
      double u = -R + 2 * R * static_cast<double>(i) / static_cast<double>(grid_n - 1);
      double w = -R + 2 * R * static_cast<double>(j) / static_cast<double>(grid_n - 1);
      if (u * u + w * w > R * R) return;
      Jet3 J = f.jet(chart, u, w);
      double* s = &slot[idx * 10];
      s[0] = std::fabs(J.v);
      s[1] = std::fabs(J.x); s[2] = std::fabs(J.y);
      s[3] = std::fabs(J.xx); s[4] = std::fabs(J.xy); s[5] = std::fabs(J.yy);
      s[6] = std::fabs(J.xxx); s[7] = std::fabs(J.xxy); s[8] = std::fabs(J.xyy); s[9] = std::fabs(J.yyy);
    });
    for (std::size_t idx = 0; idx < slot.size(); idx += 10)
      for (int t = 0; t < 10; ++t) sup[chart][t] = std::max(sup[chart][t], slot[idx + static_cast<std::size_t>(t)]);
  }

  const int order_count[4] = {1, 3, 6, 10};
  double total = 1.0;
  for (int chart = 0; chart < 2; ++chart)
    for (int t = 0; t < order_count[k]; ++t) total += sup[chart][t];
  return total;
}

// ------------------------------------------------------------------ cubes

CubeFamily disjoint_cubes(const std::vector<cplx>& pts, double kappa_hat, int D,
                          double dilate, double region_halfwidth, double side_constant) {
  if (D < 1) throw InvalidArgument("need D >= 1 cubes");
  if (!(kappa_hat > 0)) throw InvalidArgument("kappa_hat must be positive");
  if (!(dilate >= 1)) throw InvalidArgument("dilate factor must be >= 1");

  CubeFamily fam;
  fam.side = side_constant * std::pow(static_cast<double>(D), -2.0 / kappa_hat);
  fam.dilate = dilate;
  const double hw = region_halfwidth;
  const double s = fam.side;
  const long ncell = std::lround(std::ceil(2 * hw / s));
  if (ncell > 100000) throw CapExceeded("cube grid too fine");

  std::map<std::pair<long, long>, double> mass;
  std::size_t used = 0;
  for (const auto& z : pts) {
    double u = z.real(), w = z.imag();
    if (std::fabs(u) > hw || std::fabs(w) > hw) continue;
    long ix = static_cast<long>(std::floor((u + hw) / s));
    long iy = static_cast<long>(std::floor((w + hw) / s));
    mass[{ix, iy}] += 1.0;
    ++used;
  }
  if (used == 0) throw ConstructionFailed("no samples inside the region");
  for (auto& [key, m] : mass) m /= static_cast<double>(pts.size());

  fam.support_boxes = static_cast<int>(mass.size());
  double avail = static_cast<double>(used) / static_cast<double>(pts.size());
  fam.equal_share = avail / static_cast<double>(fam.support_boxes);

  std::vector<std::pair<std::pair<long, long>, double>> order(mass.begin(), mass.end());
  std::sort(order.begin(), order.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;  // deterministic tie-break
  });

  for (const auto& [cell, m] : order) {
    if (static_cast<int>(fam.boxes.size()) >= D) break;
    double cx = -hw + (static_cast<double>(cell.first) + 0.5) * s;
    double cy = -hw + (static_cast<double>(cell.second) + 0.5) * s;
    bool ok = true;
    for (const auto& c : fam.boxes)
      if (std::max(std::fabs(cx - c.cx), std::fabs(cy - c.cy)) < dilate * s) { ok = false; break; }
    if (ok) fam.boxes.push_back({cx, cy, m});
  }
  if (static_cast<int>(fam.boxes.size()) < D)
    throw ConstructionFailed("could not place the requested number of disjoint dilated cubes");
  return fam;
}

}  // namespace equilab
