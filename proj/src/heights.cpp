#include "equilab/heights.hpp"

#include <algorithm>
#include <cmath>

#include "equilab/parallel.hpp"

namespace equilab {

namespace {

constexpr double kPi = 3.14159265358979323846;

// per-face, per-component Lipschitz constant in the non-fixed coordinates:
// sum over terms of |c| * (d - e_face)  (derivative bound on the unit polydisc)
double face_lipschitz(const HomogeneousPoly& f, int face) {
  double L = 0.0;
  for (const auto& [e, c] : f.terms)
    L += std::exp(log_abs(c)) * static_cast<double>(f.degree - e[static_cast<std::size_t>(face)]);
  return L;
}

}  // namespace

DistortionConstant distortion_constant(const HomogeneousMap& F, int n_radial, int n_phase) {
  F.validate();
  const int nv = F.nvars;
  DistortionConstant out;

  double upper = -1e300;
  for (const auto& comp : F.components)
    upper = std::max(upper, log_abs(comp.coeff_abs_sum()));
  out.upper = upper;

  int free_coords = nv - 1;
  if (free_coords > 2) throw Unsupported("distortion grid implemented for N <= 2");
  if (free_coords == 2) {
    out.heuristic = true;  // 4-real-dimensional grid per face: coarser, flagged
    n_radial = std::min(n_radial, 20);
    n_phase = std::min(n_phase, 24);
  }

  const double dr = 1.0 / static_cast<double>(n_radial - 1);
  const double dphi = 2.0 * kPi / static_cast<double>(n_phase);
  out.grid_h = 0.5 * dr + 0.5 * dphi;  // per free coordinate, sup-distance to grid

  double certified_min = 1e300;
  for (int face = 0; face < nv; ++face) {
    std::vector<double> L(static_cast<std::size_t>(nv));
    for (int i = 0; i < nv; ++i) L[static_cast<std::size_t>(i)] = face_lipschitz(F.components[static_cast<std::size_t>(i)], face);

    // enumerate the polydisc grid for the free coordinates
    const std::size_t cells1 = static_cast<std::size_t>(n_radial) * static_cast<std::size_t>(n_phase);
    const std::size_t cells = free_coords == 1 ? cells1 : cells1 * cells1;
    std::vector<double> slot(cells, 1e300);
    parallel_for(cells, [&](std::size_t idx) {
      std::vector<cplx> y(static_cast<std::size_t>(nv));
      y[static_cast<std::size_t>(face)] = 1.0;
      std::size_t rest = idx;
      int fc = 0;
      for (int v = 0; v < nv; ++v) {
        if (v == face) continue;
        std::size_t cell = rest % cells1;
        rest /= cells1;
        double r = static_cast<double>(cell % static_cast<std::size_t>(n_radial)) * dr;
        double phi = static_cast<double>(cell / static_cast<std::size_t>(n_radial)) * dphi;
        y[static_cast<std::size_t>(v)] = cplx(r * std::cos(phi), r * std::sin(phi));
        ++fc;
      }
      (void)fc;
      double best = -1e300;
      for (int i = 0; i < nv; ++i) {
        double val = std::abs(F.components[static_cast<std::size_t>(i)].eval(y)) - L[static_cast<std::size_t>(i)] * out.grid_h;
        best = std::max(best, val);
      }
      slot[idx] = best;
    });
    for (double v : slot) certified_min = std::min(certified_min, v);
  }

  if (!(certified_min > 0.0))
    throw CertificationFailed("Lipschitz slack exceeds the grid minimum of ||F|| on the sphere");
  out.lower = std::log(certified_min);
  out.combined = std::max(std::fabs(out.upper), std::fabs(out.lower));
  return out;
}

GreenValue green_arch(const HomogeneousMap& F, const ProjPointC& x, int m,
                      const DistortionConstant& C) {
  if (m < 1) throw InvalidArgument("green_arch needs m >= 1");
  ProjPointC y = iterate(F, x, m);
  GreenValue g;
  g.place = 0;
  g.iterations = m;
  double dm = std::pow(static_cast<double>(F.degree), m);
  g.value = y.log_scale / dm;
  g.error_radius = C.combined / (dm * (1.0 - 1.0 / static_cast<double>(F.degree)));
  return g;
}

GreenValue green_padic(const HomogeneousMap& F, const ProjPointQ& x, const BigInt& p,
                       int m, int val_bound) {
  if (m < 1) throw InvalidArgument("green_padic needs m >= 1");
  if (p < 2) throw InvalidArgument("green_padic needs a prime");
  GreenValue g;
  g.place = p;
  g.iterations = m;
  const double logp = log_abs(p);

  if (val_bound == 0) {  // good reduction: primitive points stay primitive
    g.value = 0.0;
    g.error_radius = 0.0;
    return g;
  }

  // residue iteration: enough p-adic digits that every per-step valuation
  // (provably <= val_bound) is read off exactly
  long Bexp = static_cast<long>(m) * (val_bound + 1) + 8;
  BigInt modulus = 1;
  for (long i = 0; i < Bexp; ++i) modulus *= p;

  std::vector<BigInt> y = x.coords;
  for (auto& c : y) c = ((c % modulus) + modulus) % modulus;

  BigInt acc_val = 0;  // accumulated valuation: A_m with A_{k+1} = d A_k + e_k
  for (int step = 0; step < m; ++step) {
    std::vector<BigInt> z(y.size());
    for (std::size_t i = 0; i < y.size(); ++i) {
      z[i] = F.components[i].eval_exact(y) % modulus;
      if (z[i] < 0) z[i] += modulus;
    }
    // e = min_i v_p(z_i), exact as long as some z_i != 0 mod p^Bexp
    long e = -1;
    for (const auto& c : z) {
      if (c == 0) continue;
      long v = 0;
      BigInt t = c;
      while (t % p == 0) { t /= p; ++v; }
      e = (e < 0) ? v : std::min(e, v);
      if (e == 0) break;
    }
    if (e < 0 || e > val_bound + 1)
      throw CertificationFailed("p-adic residue precision exhausted (valuation bound violated?)");
    BigInt pe = 1;
    for (long i = 0; i < e; ++i) pe *= p;
    for (auto& c : z) c /= pe;
    Bexp -= e;
    modulus /= pe;
    for (auto& c : z) c %= modulus;
    acc_val = acc_val * F.degree + e;
    y = std::move(z);
  }

  double dm = std::pow(static_cast<double>(F.degree), m);
  g.value = -acc_val.convert_to<double>() * logp / dm;
  g.error_radius = static_cast<double>(val_bound) * logp / dm;
  return g;
}

HeightValue canonical_height(const HomogeneousMap& F, const ProjPointQ& x, double target_error) {
  if (F.nvars != 2)
    throw Unsupported("canonical_height needs the resultant-based prime set (N = 1)");
  if (target_error <= 0) throw InvalidArgument("target_error must be positive");
  const double d = static_cast<double>(F.degree);
  const double logd = std::log(d);

  DistortionConstant C = distortion_constant(F);
  BadPrimes bp = bad_primes(F);

  auto iterations_for = [&](double constant, double budget, bool telescoped) {
    if (constant <= 0.0) return 1;
    // telescoped: err = c/(d^m (1-1/d)); plain: err = c/d^m
    double target = telescoped ? budget * (1.0 - 1.0 / d) : budget;
    double need = std::log(constant / target) / logd;
    int m = static_cast<int>(std::ceil(need)) + 1;
    if (m < 1) m = 1;
    if (m > 64) throw CapExceeded("target error requires more than 64 iterations");
    return m;
  };

  HeightValue h;
  const double arch_budget = bp.factors.empty() ? target_error : target_error / 2.0;
  int m_arch = iterations_for(C.combined, arch_budget, true);
  GreenValue arch = green_arch(F, x.to_complex(), m_arch, C);
  h.breakdown.push_back(arch);

  if (!bp.factors.empty()) {
    const double per_prime = target_error / 2.0 / static_cast<double>(bp.factors.size());
    for (const auto& [p, v] : bp.factors) {
      double cp = static_cast<double>(v) * log_abs(p);
      int mp = iterations_for(cp, per_prime, false);
      h.breakdown.push_back(green_padic(F, x, p, mp, v));
    }
  }

  for (const auto& g : h.breakdown) {
    h.value += g.value;
    h.error_radius += g.error_radius;
  }

  // independent cross-check: exact primitive iteration of the Weil height
  double c_all = C.combined;
  for (const auto& [p, v] : bp.factors) c_all += static_cast<double>(v) * log_abs(p);
  const long bit_cap = 1L << 16;
  ProjPointQ y = x;
  int k = 0;
  while (k < 24) {
    long bits = 0;
    for (const auto& c : y.coords) bits = std::max(bits, bit_length(c));
    if (bits * F.degree > bit_cap) break;
    y = evaluate_exact(F, y);
    ++k;
  }
  if (k > 0) {
    double hk = -1e300;
    for (const auto& c : y.coords) hk = std::max(hk, log_abs(c));
    double dk = std::pow(d, k);
    h.crosscheck_value = hk / dk;
    h.crosscheck_error = c_all / (dk * (1.0 - 1.0 / d));
    h.crosscheck_depth = k;
    h.crosscheck_ok = std::fabs(h.crosscheck_value - h.value) <=
                      h.crosscheck_error + h.error_radius + 1e-10;
  }
  return h;
}

}  // namespace equilab
