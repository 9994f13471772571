#include "equilab/lattice.hpp"

#include <algorithm>
#include <cmath>

namespace equilab {

namespace {

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) s += a[k] * b[k];
  return s;
}

}  // namespace

LLLResult lll_reduce(std::vector<std::vector<double>> rows, double delta) {
  const std::size_t m = rows.size();
  if (m == 0) throw InvalidArgument("empty basis");
  LLLResult out;
  out.transform.assign(m, std::vector<BigInt>(m, BigInt(0)));
  for (std::size_t i = 0; i < m; ++i) out.transform[i][i] = 1;

  // Gram-Schmidt data, recomputed incrementally
  std::vector<std::vector<double>> gs(m);
  std::vector<std::vector<double>> mu(m, std::vector<double>(m, 0.0));
  std::vector<double> norm2(m, 0.0);
  auto refresh = [&](std::size_t from) {
    for (std::size_t i = from; i < m; ++i) {
      gs[i] = rows[i];
      for (std::size_t j = 0; j < i; ++j) {
        mu[i][j] = norm2[j] > 0 ? dot(rows[i], gs[j]) / norm2[j] : 0.0;
        for (std::size_t k = 0; k < gs[i].size(); ++k) gs[i][k] -= mu[i][j] * gs[j][k];
      }
      norm2[i] = dot(gs[i], gs[i]);
    }
  };
  refresh(0);

  std::size_t k = 1;
  long guard = 0;
  while (k < m) {
    if (++guard > 100000) throw ConstructionFailed("LLL failed to terminate");
    // size reduction
    for (std::size_t j = k; j-- > 0;) {
      double q = std::round(mu[k][j]);
      if (q != 0.0) {
        BigInt qz(static_cast<long long>(q));
        for (std::size_t t = 0; t < rows[k].size(); ++t) rows[k][t] -= q * rows[j][t];
        for (std::size_t t = 0; t < m; ++t) out.transform[k][t] -= qz * out.transform[j][t];
        refresh(k);
      }
    }
    // Lovász condition
    if (norm2[k] >= (delta - mu[k][k - 1] * mu[k][k - 1]) * norm2[k - 1]) {
      ++k;
    } else {
      std::swap(rows[k], rows[k - 1]);
      std::swap(out.transform[k], out.transform[k - 1]);
      refresh(k - 1);
      k = std::max<std::size_t>(1, k - 1);
    }
  }
  out.basis = std::move(rows);
  return out;
}

SmallVectorResult minkowski_small_vector(
    const std::vector<std::vector<double>>& rows,
    const std::function<double(const std::vector<double>&)>& sup_norm,
    double chi_estimate) {
  SmallVectorResult res;
  const std::size_t m = rows.size();
  if (m == 0) throw InvalidArgument("empty basis");
  if (chi_estimate <= static_cast<double>(m) * std::log(2.0)) return res;  // ball too small
  res.searched = true;

  LLLResult red = lll_reduce(rows);
  auto consider = [&](const std::vector<double>& v, const std::vector<BigInt>& c) {
    ++res.candidates_tried;
    if (res.found) return;
    bool zero = true;
    for (const auto& x : c)
      if (x != 0) { zero = false; break; }
    if (zero) return;
    double nv = sup_norm(v);
    if (nv <= 1.0) {
      res.found = true;
      res.vector = v;
      res.coeffs = c;
      res.norm = nv;
    }
  };

  const int coeff_lo = -2, coeff_hi = 2;
  // single reduced vectors, then pairs, scaled by small integers
  for (std::size_t i = 0; i < m && !res.found; ++i)
    for (int a = coeff_lo; a <= coeff_hi && !res.found; ++a) {
      if (a == 0) continue;
      std::vector<double> v(rows[0].size(), 0.0);
      std::vector<BigInt> c(m, BigInt(0));
      for (std::size_t t = 0; t < v.size(); ++t) v[t] = a * red.basis[i][t];
      for (std::size_t t = 0; t < m; ++t) c[t] = a * red.transform[i][t];
      consider(v, c);
    }
  for (std::size_t i = 0; i < m && !res.found; ++i)
    for (std::size_t j = i + 1; j < m && !res.found; ++j)
      for (int a = coeff_lo; a <= coeff_hi && !res.found; ++a)
        for (int b = coeff_lo; b <= coeff_hi && !res.found; ++b) {
          if (a == 0 || b == 0) continue;
          std::vector<double> v(rows[0].size(), 0.0);
          std::vector<BigInt> c(m, BigInt(0));
          for (std::size_t t = 0; t < v.size(); ++t)
            v[t] = a * red.basis[i][t] + b * red.basis[j][t];
          for (std::size_t t = 0; t < m; ++t)
            c[t] = a * red.transform[i][t] + b * red.transform[j][t];
          consider(v, c);
        }
  return res;
}

}  // namespace equilab
