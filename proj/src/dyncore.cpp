#include "equilab/dyncore.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace equilab {

// ---------------------------------------------------------------- poly basics

HomogeneousPoly HomogeneousPoly::zero(int nvars, int degree) {
  HomogeneousPoly p;
  p.nvars = nvars;
  p.degree = degree;
  return p;
}

HomogeneousPoly HomogeneousPoly::monomial(std::vector<int> exps, BigInt coeff) {
  HomogeneousPoly p;
  p.nvars = static_cast<int>(exps.size());
  p.degree = std::accumulate(exps.begin(), exps.end(), 0);
  if (coeff != 0) p.terms.emplace_back(std::move(exps), std::move(coeff));
  return p;
}

HomogeneousPoly HomogeneousPoly::binary_form(const std::vector<BigInt>& coeffs) {
  int d = static_cast<int>(coeffs.size()) - 1;
  if (d < 0) throw InvalidArgument("empty coefficient list");
  HomogeneousPoly p = zero(2, d);
  // input order: x^d, x^{d-1} y, ..., y^d
  for (int i = 0; i <= d; ++i) {
    const BigInt& c = coeffs[static_cast<std::size_t>(i)];
    if (c != 0) p.terms.push_back({{d - i, i}, c});
  }
  std::sort(p.terms.begin(), p.terms.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  return p;
}

void HomogeneousPoly::add_term(const std::vector<int>& exps, const BigInt& coeff) {
  if (coeff == 0) return;
  auto it = std::lower_bound(terms.begin(), terms.end(), exps,
                             [](const auto& t, const std::vector<int>& e) { return t.first < e; });
  if (it != terms.end() && it->first == exps) {
    it->second += coeff;
    if (it->second == 0) terms.erase(it);
  } else {
    terms.insert(it, {exps, coeff});
  }
}

const BigInt& HomogeneousPoly::coeff_of(const std::vector<int>& exps) const {
  static const BigInt kZero = 0;
  auto it = std::lower_bound(terms.begin(), terms.end(), exps,
                             [](const auto& t, const std::vector<int>& e) { return t.first < e; });
  if (it != terms.end() && it->first == exps) return it->second;
  return kZero;
}

BigInt HomogeneousPoly::binary_coeff(int k) const {
  if (nvars != 2) throw InvalidArgument("binary_coeff on non-binary form");
  return coeff_of({k, degree - k});
}

std::vector<BigInt> HomogeneousPoly::binary_coeffs() const {
  if (nvars != 2) throw InvalidArgument("binary_coeffs on non-binary form");
  std::vector<BigInt> out(static_cast<std::size_t>(degree) + 1, BigInt(0));
  for (const auto& [e, c] : terms) out[static_cast<std::size_t>(e[0])] = c;
  return out;
}

BigInt HomogeneousPoly::max_abs_coeff() const {
  BigInt m = 0;
  for (const auto& [e, c] : terms) m = std::max(m, big_abs(c));
  return m;
}

BigInt HomogeneousPoly::coeff_abs_sum() const {
  BigInt s = 0;
  for (const auto& [e, c] : terms) s += big_abs(c);
  return s;
}

BigInt HomogeneousPoly::eval_exact(const std::vector<BigInt>& x) const {
  if (static_cast<int>(x.size()) != nvars) throw InvalidArgument("eval_exact arity");
  BigInt acc = 0;
  for (const auto& [e, c] : terms) {
    BigInt t = c;
    for (int v = 0; v < nvars; ++v)
      for (int k = 0; k < e[static_cast<std::size_t>(v)]; ++k) t *= x[static_cast<std::size_t>(v)];
    acc += t;
  }
  return acc;
}

cplx HomogeneousPoly::eval_scaled(const std::vector<cplx>& x, long& scale_exp2) const {
  if (static_cast<int>(x.size()) != nvars) throw InvalidArgument("eval_scaled arity");
  // Scale coefficients into double range: c -> c / 2^shift.
  long maxbits = 0;
  for (const auto& [e, c] : terms) maxbits = std::max(maxbits, bit_length(c));
  long shift = maxbits > 500 ? maxbits - 500 : 0;
  scale_exp2 = shift;

  // power tables per variable
  std::vector<std::vector<cplx>> pw(static_cast<std::size_t>(nvars));
  std::vector<int> maxe(static_cast<std::size_t>(nvars), 0);
  for (const auto& [e, c] : terms)
    for (int v = 0; v < nvars; ++v)
      maxe[static_cast<std::size_t>(v)] = std::max(maxe[static_cast<std::size_t>(v)], e[static_cast<std::size_t>(v)]);
  for (int v = 0; v < nvars; ++v) {
    auto& tab = pw[static_cast<std::size_t>(v)];
    tab.resize(static_cast<std::size_t>(maxe[static_cast<std::size_t>(v)]) + 1);
    tab[0] = 1.0;
    for (int k = 1; k <= maxe[static_cast<std::size_t>(v)]; ++k)
      tab[static_cast<std::size_t>(k)] = tab[static_cast<std::size_t>(k - 1)] * x[static_cast<std::size_t>(v)];
  }
  cplx acc = 0.0;
  for (const auto& [e, c] : terms) {
    cplx t = to_double_scaled(c, shift);
    for (int v = 0; v < nvars; ++v) t *= pw[static_cast<std::size_t>(v)][static_cast<std::size_t>(e[static_cast<std::size_t>(v)])];
    acc += t;
  }
  return acc;
}

cplx HomogeneousPoly::eval(const std::vector<cplx>& x) const {
  long s = 0;
  cplx v = eval_scaled(x, s);
  return v * std::ldexp(1.0, static_cast<int>(std::min<long>(s, 1000)));
}

HomogeneousPoly HomogeneousPoly::operator*(const HomogeneousPoly& o) const {
  if (nvars != o.nvars) throw InvalidArgument("mixed arity product");
  std::map<std::vector<int>, BigInt> acc;
  std::vector<int> e(static_cast<std::size_t>(nvars));
  for (const auto& [ea, ca] : terms)
    for (const auto& [eb, cb] : o.terms) {
      for (int v = 0; v < nvars; ++v)
        e[static_cast<std::size_t>(v)] = ea[static_cast<std::size_t>(v)] + eb[static_cast<std::size_t>(v)];
      acc[e] += ca * cb;
    }
  HomogeneousPoly r = zero(nvars, degree + o.degree);
  for (auto& [ee, cc] : acc)
    if (cc != 0) r.terms.emplace_back(ee, std::move(cc));
  return r;
}

HomogeneousPoly HomogeneousPoly::operator+(const HomogeneousPoly& o) const {
  if (nvars != o.nvars || degree != o.degree)
    throw InvalidArgument("inhomogeneous sum");
  HomogeneousPoly r = *this;
  for (const auto& [e, c] : o.terms) r.add_term(e, c);
  return r;
}

HomogeneousPoly HomogeneousPoly::scaled(const BigInt& c) const {
  HomogeneousPoly r = zero(nvars, degree);
  if (c == 0) return r;
  r.terms = terms;
  for (auto& [e, cc] : r.terms) cc *= c;
  return r;
}

HomogeneousPoly HomogeneousPoly::pow(int e) const {
  if (e < 0) throw InvalidArgument("negative power");
  HomogeneousPoly r = monomial(std::vector<int>(static_cast<std::size_t>(nvars), 0), 1);
  r.nvars = nvars;
  HomogeneousPoly base = *this;
  while (e > 0) {
    if (e & 1) r = r * base;
    base = (e >>= 1) ? base * base : base;
  }
  return r;
}

void HomogeneousPoly::validate() const {
  for (const auto& [e, c] : terms) {
    if (static_cast<int>(e.size()) != nvars) throw InvalidArgument("exponent arity mismatch");
    if (std::accumulate(e.begin(), e.end(), 0) != degree)
      throw InvalidArgument("inhomogeneous term");
    if (c == 0) throw InvalidArgument("stored zero coefficient");
    for (int v : e)
      if (v < 0) throw InvalidArgument("negative exponent");
  }
}

std::string HomogeneousPoly::to_string() const {
  if (terms.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : terms) {
    if (!first) os << " + ";
    first = false;
    os << c;
    for (int v = 0; v < nvars; ++v)
      if (e[static_cast<std::size_t>(v)] > 0) os << "*x" << v << "^" << e[static_cast<std::size_t>(v)];
  }
  return os.str();
}

void HomogeneousMap::validate() const {
  if (static_cast<int>(components.size()) != nvars)
    throw InvalidArgument("component count != nvars");
  if (degree < 2) throw InvalidArgument("degree must be >= 2");
  for (const auto& c : components) {
    if (c.nvars != nvars) throw InvalidArgument("component arity mismatch");
    if (c.degree != degree && !c.is_zero()) throw InvalidArgument("component degree mismatch");
    c.validate();
  }
}

// ---------------------------------------------------------------- points

ProjPointC ProjPointC::from_affine(cplx z) { return make({z, 1.0}); }

ProjPointC ProjPointC::make(std::vector<cplx> c) {
  ProjPointC p;
  p.coords = std::move(c);
  p.log_scale = 0.0;
  p.normalize();
  p.log_scale = 0.0;  // callers of make() want a fresh point
  return p;
}

void ProjPointC::normalize() {
  double m = 0.0;
  for (const auto& z : coords) m = std::max(m, std::abs(z));
  if (!(m > 0.0) || !std::isfinite(m)) throw DegenerateImage("zero or non-finite point");
  for (auto& z : coords) z /= m;
  log_scale += std::log(m);
}

cplx ProjPointC::affine() const {
  if (coords.size() != 2) throw InvalidArgument("affine() needs P^1");
  return coords[0] / coords[1];
}

bool ProjPointC::is_infinity(double tol) const {
  if (coords.size() != 2) throw InvalidArgument("is_infinity() needs P^1");
  return std::abs(coords[1]) <= tol * std::abs(coords[0]);
}

ProjPointQ ProjPointQ::make(std::vector<BigInt> c) {
  ProjPointQ p;
  p.coords = std::move(c);
  p.primitivize();
  return p;
}

void ProjPointQ::primitivize() {
  BigInt g = content_of(coords);
  if (g == 0) throw DegenerateImage("zero rational point");
  for (auto& c : coords) c /= g;
  for (const auto& c : coords) {
    if (c != 0) {
      if (c < 0)
        for (auto& x : coords) x = -x;
      break;
    }
  }
}

ProjPointC ProjPointQ::to_complex() const {
  long maxbits = 0;
  for (const auto& c : coords) maxbits = std::max(maxbits, bit_length(c));
  long shift = maxbits > 500 ? maxbits - 500 : 0;
  std::vector<cplx> cs;
  cs.reserve(coords.size());
  for (const auto& c : coords) cs.emplace_back(to_double_scaled(c, shift), 0.0);
  ProjPointC p;
  p.coords = std::move(cs);
  p.log_scale = static_cast<double>(shift) * std::log(2.0);
  p.normalize();
  return p;
}

std::string ProjPointQ::to_string() const {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < coords.size(); ++i) os << (i ? " : " : "") << coords[i];
  os << "]";
  return os.str();
}

// ---------------------------------------------------------------- dynamics

ProjPointC evaluate(const HomogeneousMap& F, const ProjPointC& x) {
  if (static_cast<int>(x.coords.size()) != F.nvars) throw InvalidArgument("point arity");
  ProjPointC y;
  y.coords.resize(static_cast<std::size_t>(F.nvars));
  double coeff_mag = 0.0;
  long common_shift = -1;
  for (int i = 0; i < F.nvars; ++i) {
    long s = 0;
    y.coords[static_cast<std::size_t>(i)] = F.components[static_cast<std::size_t>(i)].eval_scaled(x.coords, s);
    if (common_shift < 0) common_shift = s;
    if (s != common_shift) {
      // components can carry different coefficient scales; re-express
      y.coords[static_cast<std::size_t>(i)] *= std::ldexp(1.0, static_cast<int>(s - common_shift));
    }
    double cm = to_double_scaled(F.components[static_cast<std::size_t>(i)].coeff_abs_sum(), common_shift);
    coeff_mag = std::max(coeff_mag, cm);
  }
  double m = 0.0;
  for (const auto& z : y.coords) m = std::max(m, std::abs(z));
  if (!(m > 1e-12 * std::max(coeff_mag, 1e-300)))
    throw DegenerateImage("image vanished at point (common root of the lift?)");
  y.log_scale = x.log_scale * F.degree + static_cast<double>(common_shift) * std::log(2.0);
  y.normalize();
  return y;
}

ProjPointC iterate(const HomogeneousMap& F, const ProjPointC& x, int m) {
  ProjPointC y = x;
  for (int k = 0; k < m; ++k) y = evaluate(F, y);
  return y;
}

ProjPointQ evaluate_exact(const HomogeneousMap& F, const ProjPointQ& x) {
  std::vector<BigInt> y(static_cast<std::size_t>(F.nvars));
  for (int i = 0; i < F.nvars; ++i)
    y[static_cast<std::size_t>(i)] = F.components[static_cast<std::size_t>(i)].eval_exact(x.coords);
  return ProjPointQ::make(std::move(y));
}

HomogeneousMap compose_exact(const HomogeneousMap& F, int m) {
  if (m < 1) throw InvalidArgument("compose_exact needs m >= 1");
  long deg = 1;
  for (int k = 0; k < m; ++k) {
    deg *= F.degree;
    if (deg > 4096) throw CapExceeded("symbolic degree d^m exceeds 4096");
  }
  HomogeneousMap R = F;
  for (int k = 2; k <= m; ++k) {
    // R <- F o R ; only powers of R's components up to d are needed.
    std::vector<std::vector<HomogeneousPoly>> pw(static_cast<std::size_t>(F.nvars));
    std::vector<int> maxe(static_cast<std::size_t>(F.nvars), 0);
    for (const auto& comp : F.components)
      for (const auto& [e, c] : comp.terms)
        for (int v = 0; v < F.nvars; ++v)
          maxe[static_cast<std::size_t>(v)] = std::max(maxe[static_cast<std::size_t>(v)], e[static_cast<std::size_t>(v)]);
    for (int v = 0; v < F.nvars; ++v) {
      auto& tab = pw[static_cast<std::size_t>(v)];
      tab.reserve(static_cast<std::size_t>(maxe[static_cast<std::size_t>(v)]) + 1);
      tab.push_back(HomogeneousPoly::monomial(std::vector<int>(static_cast<std::size_t>(F.nvars), 0), 1));
      tab[0].nvars = F.nvars;
      for (int e = 1; e <= maxe[static_cast<std::size_t>(v)]; ++e)
        tab.push_back(tab.back() * R.components[static_cast<std::size_t>(v)]);
    }
    HomogeneousMap next;
    next.nvars = F.nvars;
    next.degree = F.degree * R.degree;
    for (const auto& comp : F.components) {
      HomogeneousPoly acc = HomogeneousPoly::zero(F.nvars, next.degree);
      for (const auto& [e, c] : comp.terms) {
        HomogeneousPoly t = HomogeneousPoly::monomial(std::vector<int>(static_cast<std::size_t>(F.nvars), 0), c);
        t.nvars = F.nvars;
        for (int v = 0; v < F.nvars; ++v)
          if (e[static_cast<std::size_t>(v)] > 0) t = t * pw[static_cast<std::size_t>(v)][static_cast<std::size_t>(e[static_cast<std::size_t>(v)])];
        t.degree = next.degree;  // t may be a constant times nothing when e == 0
        acc = acc + t;
      }
      next.components.push_back(std::move(acc));
    }
    R = std::move(next);
  }
  R.validate();
  return R;
}

// ---------------------------------------------------------------- resultant

BigInt bareiss_determinant(std::vector<std::vector<BigInt>> M) {
  const std::size_t n = M.size();
  for (const auto& row : M)
    if (row.size() != n) throw InvalidArgument("determinant of non-square matrix");
  if (n == 0) return 1;
  BigInt prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (M[k][k] == 0) {
      std::size_t piv = k + 1;
      while (piv < n && M[piv][k] == 0) ++piv;
      if (piv == n) return 0;
      std::swap(M[k], M[piv]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j)
        M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) / prev;
    prev = M[k][k];
  }
  return sign > 0 ? M[n - 1][n - 1] : -M[n - 1][n - 1];
}

BigInt sylvester_resultant(const HomogeneousPoly& F0, const HomogeneousPoly& F1) {
  if (F0.nvars != 2 || F1.nvars != 2) throw Unsupported("resultant implemented for binary forms only");
  if (F0.degree != F1.degree) throw InvalidArgument("resultant of unequal degrees");
  const int d = F0.degree;
  // univariate coefficient rows in z = x/y: coeff of z^d ... z^0
  auto rowof = [&](const HomogeneousPoly& f) {
    std::vector<BigInt> r(static_cast<std::size_t>(d) + 1);
    auto cs = f.binary_coeffs();
    for (int k = 0; k <= d; ++k) r[static_cast<std::size_t>(d - k)] = cs[static_cast<std::size_t>(k)];
    return r;
  };
  std::vector<BigInt> a = rowof(F0), b = rowof(F1);
  const std::size_t n = static_cast<std::size_t>(2 * d);
  std::vector<std::vector<BigInt>> M(n, std::vector<BigInt>(n, BigInt(0)));
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j <= d; ++j) {
      M[static_cast<std::size_t>(i)][static_cast<std::size_t>(i + j)] = a[static_cast<std::size_t>(j)];
      M[static_cast<std::size_t>(d + i)][static_cast<std::size_t>(i + j)] = b[static_cast<std::size_t>(j)];
    }
  }
  return bareiss_determinant(std::move(M));
}

// ---------------------------------------------------------------- bad primes

namespace {

bool miller_rabin(const BigInt& n) {
  if (n < 2) return false;
  for (int p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    if (n == p) return true;
    if (n % p == 0) return false;
  }
  BigInt d = n - 1;
  int r = 0;
  while (d % 2 == 0) { d /= 2; ++r; }
  for (int a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    BigInt x = boost::multiprecision::powm(BigInt(a), d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 0; i < r - 1; ++i) {
      x = x * x % n;
      if (x == n - 1) { composite = false; break; }
    }
    if (composite) return false;
  }
  return true;
}

BigInt pollard_rho(const BigInt& n, std::uint64_t salt) {
  if (n % 2 == 0) return 2;
  BigInt x = BigInt(2 + salt % 1000), y = x, c = BigInt(1 + salt % 97), dd = 1;
  while (dd == 1) {
    x = (x * x + c) % n;
    y = (y * y + c) % n;
    y = (y * y + c) % n;
    dd = big_gcd(big_abs(x - y), n);
  }
  return dd == n ? BigInt(0) : dd;
}

void factor_into(BigInt n, std::map<BigInt, int>& out) {
  if (n <= 1) return;
  for (BigInt p = 2; p * p <= n && p < 1000000; p += (p == 2 ? 1 : 2)) {
    while (n % p == 0) { ++out[p]; n /= p; }
  }
  if (n == 1) return;
  if (miller_rabin(n)) { ++out[n]; return; }
  for (std::uint64_t salt = 1; salt < 64; ++salt) {
    BigInt f = pollard_rho(n, salt);
    if (f > 1 && f < n) {
      factor_into(f, out);
      factor_into(n / f, out);
      return;
    }
  }
  ++out[n];  // give up: record the (composite) cofactor as-is
}

}  // namespace

BadPrimes bad_primes(const HomogeneousMap& F) {
  if (F.nvars != 2)
    throw Unsupported("bad_primes via resultant is N = 1 only; supply primes explicitly for N >= 2");
  BadPrimes bp;
  bp.resultant = sylvester_resultant(F.components[0], F.components[1]);
  if (bp.resultant == 0) throw DegenerateImage("resultant 0: not a morphism");
  std::map<BigInt, int> f;
  factor_into(big_abs(bp.resultant), f);
  bp.factors.assign(f.begin(), f.end());
  return bp;
}

}  // namespace equilab
