#include "equilab/periodic.hpp"

#include <algorithm>
#include <cmath>

#include "equilab/roots.hpp"

namespace equilab {

namespace {

double chordal(const ProjPointC& p, const ProjPointC& q) {
  cplx cross = p.coords[0] * q.coords[1] - p.coords[1] * q.coords[0];
  double np = std::sqrt(std::norm(p.coords[0]) + std::norm(p.coords[1]));
  double nq = std::sqrt(std::norm(q.coords[0]) + std::norm(q.coords[1]));
  return std::abs(cross) / (np * nq);
}

std::vector<cplx> scaled_coeffs(const IntPoly& f) {
  long maxbits = 0;
  for (const auto& c : f) maxbits = std::max(maxbits, bit_length(c));
  long shift = maxbits > 500 ? maxbits - 500 : 0;
  std::vector<cplx> out(f.size());
  for (std::size_t k = 0; k < f.size(); ++k) out[k] = to_double_scaled(f[k], shift);
  return out;
}

// roots of the squarefree integer polynomial s, certified against the full
// form coefficients phi (residual relative to max |coefficient|)
std::vector<cplx> certified_form_roots(const IntPoly& s, const IntPoly& phi, Rng rng,
                                       double tol, double* max_residual) {
  auto sc = scaled_coeffs(s);
  std::vector<cplx> best;
  double best_res = 1e300;
  for (int attempt = 0; attempt < 4; ++attempt) {
    auto roots = aberth_roots(sc, rng.split(static_cast<std::uint64_t>(attempt) + 101));
    double worst = 0.0;
    for (const auto& z : roots) worst = std::max(worst, form_residual(phi, z));
    if (worst < best_res) {
      best_res = worst;
      best = std::move(roots);
    }
    if (best_res <= tol) break;
  }
  if (best_res > tol) throw RootFindFailure("periodic-point roots failed residual certification");
  if (max_residual) *max_residual = best_res;
  return best;
}

}  // namespace

PeriodicSet per_n(const HomogeneousMap& F, int n, Rng rng) {
  if (F.nvars != 2) throw Unsupported("periodic enumeration is for maps of the projective line");
  if (n < 1) throw InvalidArgument("period must be positive");
  HomogeneousMap G = compose_exact(F, n);
  auto p = G.components[0].binary_coeffs();
  auto q = G.components[1].binary_coeffs();
  const std::size_t dn = p.size() - 1;  // d^n
  const std::size_t D = dn + 1;         // degree of the fixed-point form

  PeriodicSet ps;
  ps.n = n;
  ps.degree = F.degree;
  ps.defining_poly.assign(D + 1, BigInt(0));
  for (std::size_t j = 0; j <= dn; ++j) ps.defining_poly[j] += p[j];
  for (std::size_t j = 1; j <= D; ++j) ps.defining_poly[j] -= q[j - 1];

  IntPoly psi = poly_trim(ps.defining_poly);
  if (psi.empty()) throw DegenerateImage("fixed-point form vanishes identically");
  ps.includes_infinity = psi.size() < D + 1;
  ps.squarefree = squarefree_part(psi);

  ps.points.seed = rng.state;
  if (poly_degree(ps.squarefree) >= 1) {
    auto roots = certified_form_roots(ps.squarefree, ps.defining_poly, rng, 1e-10,
                                      &ps.max_residual);
    for (const auto& z : roots) ps.points.points.push_back(ProjPointC::from_affine(z));
  }
  if (ps.includes_infinity) ps.points.points.push_back(ProjPointC::make({1.0, 0.0}));
  return ps;
}

std::vector<int> point_degrees(const PeriodicSet& ps, Rng rng) {
  std::vector<int> out(ps.points.points.size(), 0);
  auto fac = factor_poly(ps.squarefree, rng.split(5));
  if (!fac.certified) throw CapExceeded("factor recombination cap reached");
  // roots of every irreducible factor, then nearest-point assignment
  std::vector<std::pair<cplx, int>> tagged;
  for (const auto& pf : fac.factors) {
    int deg = poly_degree(pf.poly);
    if (deg < 1) continue;
    if (deg == 1) {
      BigRat r = -BigRat(pf.poly[0]) / BigRat(pf.poly[1]);
      tagged.emplace_back(cplx(r.convert_to<double>(), 0.0), 1);
    } else {
      auto roots = aberth_roots(scaled_coeffs(pf.poly), rng.split(static_cast<std::uint64_t>(deg) * 31 + 1));
      for (const auto& r : roots) tagged.emplace_back(r, deg);
    }
  }
  for (std::size_t i = 0; i < ps.points.points.size(); ++i) {
    const auto& pt = ps.points.points[i];
    if (pt.is_infinity(1e-12)) {
      out[i] = 1;
      continue;
    }
    double best = 1e300;
    int deg = 0;
    for (const auto& [r, dg] : tagged) {
      double dist = chordal(pt, ProjPointC::from_affine(r));
      if (dist < best) {
        best = dist;
        deg = dg;
      }
    }
    if (deg == 0 || best > 1e-6)
      throw ConstructionFailed("periodic point not matched to a factor root");
    out[i] = deg;
  }
  return out;
}

PointCloud exact_period_points(const HomogeneousMap& F, const PeriodicSet& ps, Rng rng,
                               double tol) {
  std::vector<ProjPointC> lower;
  for (int m = 1; m < ps.n; ++m) {
    if (ps.n % m != 0) continue;
    PeriodicSet sub = per_n(F, m, rng.split(static_cast<std::uint64_t>(m)));
    for (const auto& p : sub.points.points) lower.push_back(p);
  }
  PointCloud out;
  out.seed = ps.points.seed;
  for (const auto& p : ps.points.points) {
    bool shadowed = false;
    for (const auto& q : lower)
      if (chordal(p, q) <= tol) { shadowed = true; break; }
    if (!shadowed) out.points.push_back(p);
  }
  return out;
}

FactorDegreeProfile galois_degrees(const HomogeneousMap& F, int n, DegreeMode mode, Rng rng) {
  PeriodicSet ps = per_n(F, n, rng.split(1));
  FactorDegreeProfile prof;
  prof.period = n;
  std::vector<int> degrees;
  if (mode == DegreeMode::certified) {
    auto fac = factor_poly(ps.squarefree, rng.split(2));
    if (fac.certified) {
      for (const auto& pf : fac.factors)
        for (int k = 0; k < pf.multiplicity; ++k) degrees.push_back(poly_degree(pf.poly));
      prof.certified = true;
    } else {
      degrees = modular_degree_profile(ps.squarefree, rng.split(3));
      prof.certified = false;  // recombination cap reached, degraded to mod-p profile
    }
  } else {
    degrees = modular_degree_profile(ps.squarefree, rng.split(3));
    prof.certified = false;
  }
  if (ps.includes_infinity) degrees.push_back(1);
  std::sort(degrees.begin(), degrees.end());
  for (int d : degrees) {
    if (!prof.degree_multiset.empty() && prof.degree_multiset.back().first == d)
      ++prof.degree_multiset.back().second;
    else
      prof.degree_multiset.emplace_back(d, 1);
  }
  return prof;
}

BigInt curve_count_bound(int e, int d, int n) {
  if (e < 1 || d < 1 || n < 0) throw InvalidArgument("curve_count_bound needs e,d >= 1, n >= 0");
  return 3 * BigInt(e) * e * boost::multiprecision::pow(BigInt(d), static_cast<unsigned>(n));
}

namespace {

// evaluate a binary form at (z, 1) via its x^k y^(deg-k) coefficients
cplx form_at(const IntPoly& binary, cplx z) { return poly_eval(binary, z); }

// minimal k dividing n with quotient^k(lambda) = lambda
int minimal_period(const HomogeneousMap& M, const ProjPointC& lambda, int n) {
  ProjPointC w = lambda;
  for (int k = 1; k <= n; ++k) {
    w = evaluate(M, w);
    if (n % k == 0 && chordal(w, lambda) <= 1e-8) return k;
  }
  return n;
}

}  // namespace

PeriodicLineReport p2_periodic_lines(const HomogeneousPoly& f, const HomogeneousPoly& g,
                                     int n, Rng rng) {
  if (f.nvars != 2 || g.nvars != 2 || f.degree != g.degree)
    throw InvalidArgument("need two binary forms of equal degree");
  HomogeneousMap M;
  M.nvars = 2;
  M.degree = f.degree;
  M.components = {f, g};
  M.validate();
  if (sylvester_resultant(f, g) == 0)
    throw DegenerateImage("the pencil quotient map is degenerate (zero resultant)");

  PeriodicLineReport rep;
  rep.n = n;
  rep.degree = f.degree;
  PeriodicSet ps = per_n(M, n, rng.split(11));

  HomogeneousMap Gn = compose_exact(M, n);
  IntPoly fn = Gn.components[0].binary_coeffs();
  IntPoly gn = Gn.components[1].binary_coeffs();
  IntPoly fb = f.binary_coeffs();
  IntPoly gb = g.binary_coeffs();
  const double dn = std::pow(static_cast<double>(f.degree), n);
  const double D1 = dn - 1.0;

  Rng urng = rng.split(77);
  for (const auto& lam : ps.points.points) {
    PeriodicLine line;
    line.lambda = lam;
    line.period = minimal_period(M, lam, n);
    const bool at_inf = lam.is_infinity(1e-12);
    if (at_inf) {
      double mant;
      long e2;
      to_double_frexp(fn.back(), mant, e2);
      line.c_n = mant * std::exp2(static_cast<double>(e2));
    } else {
      line.c_n = form_at(gn, lam.affine());
    }

    if (std::abs(line.c_n) > 1e-200 && std::isfinite(std::abs(line.c_n))) {
      // candidate of period two for the per-line map u -> c_n u^(d^n): the
      // root-of-unity criterion says c_n z^(d^n - 1) has finite order
      cplx logc = std::log(line.c_n);
      cplx z1 = std::exp(-(logc * (dn + 1.0)) / (dn * dn - 1.0));
      cplx w = std::exp(logc + std::log(z1) * D1);
      line.unit_circle_defect = std::fabs(std::abs(w) - 1.0);
      cplx wq = 1.0;
      for (int qe = 1; qe <= 256; ++qe) {
        wq *= w;
        if (std::abs(wq - 1.0) <= 1e-6) {
          line.root_of_unity_order = qe;
          break;
        }
      }

      // direct iteration along the line against the model u -> c_n u^(d^n)
      double worst = 0.0;
      for (int trial = 0; trial < 10; ++trial) {
        double r = 0.7 + 0.6 * urng.uniform();
        double th = 2.0 * 3.14159265358979323846 * urng.uniform();
        cplx u0 = std::polar(r, th), u = u0;
        ProjPointC lk = lam;
        bool ok = true;
        for (int step = 0; step < n; ++step) {
          cplx factor;
          if (at_inf) {
            // swapped chart: mu = y/x, the line at infinity has mu = 0
            cplx mu = lk.coords[1] / lk.coords[0];
            IntPoly frev(fb.rbegin(), fb.rend());
            factor = poly_eval(frev, mu);
          } else {
            factor = form_at(gb, lk.affine());
          }
          if (!(std::abs(factor) > 1e-200)) { ok = false; break; }
          cplx up = 1.0;
          for (int e = 0; e < f.degree; ++e) up *= u;
          u = up * factor;
          lk = evaluate(M, lk);
        }
        if (!ok) continue;
        cplx model = line.c_n * std::exp(std::log(u0) * dn);
        double denom = std::max({std::abs(u), std::abs(model), 1e-300});
        worst = std::max(worst, std::abs(u - model) / denom);
      }
      line.iteration_check = worst;
    }
    rep.lines.push_back(line);
  }
  return rep;
}

TorusPeriodicCount torus_periodic_count(int d, int n) {
  if (d < 2 || n < 1) throw InvalidArgument("torus count needs d >= 2, n >= 1");
  TorusPeriodicCount out;
  out.n = n;
  BigInt dn = boost::multiprecision::pow(BigInt(d), static_cast<unsigned>(n));
  out.count = (dn - 1) * (dn - 1);
  out.alpha = out.count.convert_to<double>() / (dn.convert_to<double>() * dn.convert_to<double>());
  return out;
}

}  // namespace equilab
