#include "equilab/roots.hpp"

#include <algorithm>
#include <cmath>

#include "equilab/errors.hpp"

namespace equilab {

namespace {

// Horner evaluation of p and p' at z; coefficients c[k] of z^k.
inline void horner2(const std::vector<cplx>& c, cplx z, cplx& p, cplx& dp) {
  p = c.back();
  dp = 0.0;
  for (std::size_t k = c.size() - 1; k-- > 0;) {
    dp = dp * z + p;
    p = p * z + c[k];
  }
}

}  // namespace

std::vector<cplx> aberth_roots(std::vector<cplx> c, Rng rng, const AberthOptions& opt) {
  // strip exact zero roots at the origin
  std::size_t zero_roots = 0;
  while (zero_roots < c.size() - 1 && c[zero_roots] == 0.0) ++zero_roots;
  if (zero_roots) c.erase(c.begin(), c.begin() + static_cast<std::ptrdiff_t>(zero_roots));

  const std::size_t n = c.size() - 1;
  std::vector<cplx> z;
  if (n == 0) {
    z.assign(zero_roots, cplx(0.0));
    return z;
  }

  // normalize magnitudes
  double cmax = 0.0;
  for (auto& a : c) cmax = std::max(cmax, std::abs(a));
  for (auto& a : c) a /= cmax;

  // Cauchy-style inclusion radius
  double lead = std::abs(c.back());
  double tail = 0.0;
  for (std::size_t k = 0; k < n; ++k) tail = std::max(tail, std::abs(c[k]));
  double R = 1.0 + tail / lead;
  double r0 = std::abs(c[0]) > 0 ? std::abs(c[0]) / (std::abs(c[0]) + tail + lead) : 0.3;
  double rad = std::sqrt(std::max(r0, 1e-6) * R);

  z.resize(n);
  const double golden = 2.399963229728653;  // spread the initial angles
  for (std::size_t j = 0; j < n; ++j) {
    double ang = golden * static_cast<double>(j) + 0.37 + 0.05 * rng.uniform();
    double rj = rad * (1.0 + 0.1 * rng.uniform());
    z[j] = cplx(rj * std::cos(ang), rj * std::sin(ang));
  }

  std::vector<bool> done(n, false);
  for (int sweep = 0; sweep < opt.max_sweeps; ++sweep) {
    double worst = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      if (done[j]) continue;
      cplx p, dp;
      horner2(c, z[j], p, dp);
      if (std::abs(p) == 0.0) { done[j] = true; continue; }
      cplx w = (dp != 0.0) ? p / dp : cplx(1e-8, 1e-8);
      cplx s = 0.0;
      for (std::size_t k = 0; k < n; ++k)
        if (k != j) s += 1.0 / (z[j] - z[k]);
      cplx denom = 1.0 - w * s;
      cplx corr = (std::abs(denom) > 1e-300) ? w / denom : w;
      z[j] -= corr;
      double rel = std::abs(corr) / std::max(1.0, std::abs(z[j]));
      worst = std::max(worst, rel);
      if (rel < opt.newton_tol) done[j] = true;
    }
    if (worst < opt.newton_tol) break;
  }
  // one polishing Newton step each
  for (std::size_t j = 0; j < n; ++j) {
    cplx p, dp;
    horner2(c, z[j], p, dp);
    if (std::abs(dp) > 1e-300) z[j] -= p / dp;
  }
  for (std::size_t k = 0; k < zero_roots; ++k) z.push_back(cplx(0.0));
  return z;
}

namespace {

// scale-invariant |F(z,1)| at the unit representative / max |coeff|
double residual_impl(const std::vector<BigInt>& coeffs, cplx z, bool at_infinity) {
  const std::size_t n = coeffs.size();
  long maxbits = 0;
  for (const auto& cc : coeffs) maxbits = std::max(maxbits, bit_length(cc));
  long shift = maxbits > 500 ? maxbits - 500 : 0;
  std::vector<cplx> c(n);
  double cmax = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    c[k] = to_double_scaled(coeffs[k], shift);
    cmax = std::max(cmax, std::abs(c[k]));
  }
  if (cmax == 0.0) return 0.0;
  if (at_infinity) return std::abs(c[n - 1]) / cmax;  // |F(1,0)| = |c_D|
  cplx v;
  if (std::abs(z) <= 1.0) {
    // F(z,1): Horner over c_k z^k
    v = c[n - 1];
    for (std::size_t k = n - 1; k-- > 0;) v = v * z + c[k];
  } else {
    // F at the unit representative (1, 1/z) up to phase: sum c_k w^{D-k}, w = 1/z
    cplx w = 1.0 / z;
    v = c[0];
    for (std::size_t k = 1; k < n; ++k) v = v * w + c[k];
  }
  return std::abs(v) / cmax;
}

}  // namespace

double form_residual(const std::vector<BigInt>& coeffs, cplx z) {
  return residual_impl(coeffs, z, false);
}

double form_residual_infinity(const std::vector<BigInt>& coeffs) {
  return residual_impl(coeffs, cplx(0.0), true);
}

FormRoots binary_form_roots(const std::vector<BigInt>& coeffs, Rng rng, const AberthOptions& opt) {
  if (coeffs.empty()) throw InvalidArgument("empty form");
  FormRoots out;
  // multiplicity of [1:0] = number of vanishing top coefficients
  std::size_t top = coeffs.size();
  while (top > 0 && coeffs[top - 1] == 0) --top;
  if (top == 0) throw InvalidArgument("zero form");
  out.infinity_multiplicity = static_cast<int>(coeffs.size() - top);

  if (top == 1) return out;  // constant in z: only infinity roots

  long maxbits = 0;
  for (std::size_t k = 0; k < top; ++k) maxbits = std::max(maxbits, bit_length(coeffs[k]));
  long shift = maxbits > 500 ? maxbits - 500 : 0;
  std::vector<cplx> c(top);
  for (std::size_t k = 0; k < top; ++k) c[k] = to_double_scaled(coeffs[k], shift);

  for (int attempt = 0; attempt < 4; ++attempt) {
    auto roots = aberth_roots(c, rng.split(static_cast<std::uint64_t>(attempt) + 17), opt);
    double worst = 0.0;
    for (const auto& z : roots) worst = std::max(worst, form_residual(coeffs, z));
    if (worst <= opt.residual_tol) {
      out.finite = std::move(roots);
      out.max_residual = worst;
      return out;
    }
  }
  throw RootFindFailure("residual certification failed after retries");
}

}  // namespace equilab
