#include "equilab/polyfactor.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>

namespace equilab {

IntPoly poly_trim(IntPoly f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
  return f;
}

int poly_degree(const IntPoly& f) {
  for (std::size_t k = f.size(); k-- > 0;)
    if (f[k] != 0) return static_cast<int>(k);
  return -1;
}

IntPoly poly_add(const IntPoly& a, const IntPoly& b) {
  IntPoly r(std::max(a.size(), b.size()), BigInt(0));
  for (std::size_t k = 0; k < a.size(); ++k) r[k] += a[k];
  for (std::size_t k = 0; k < b.size(); ++k) r[k] += b[k];
  return poly_trim(std::move(r));
}

IntPoly poly_sub(const IntPoly& a, const IntPoly& b) {
  IntPoly r(std::max(a.size(), b.size()), BigInt(0));
  for (std::size_t k = 0; k < a.size(); ++k) r[k] += a[k];
  for (std::size_t k = 0; k < b.size(); ++k) r[k] -= b[k];
  return poly_trim(std::move(r));
}

IntPoly poly_mul(const IntPoly& a, const IntPoly& b) {
  if (a.empty() || b.empty()) return {};
  IntPoly r(a.size() + b.size() - 1, BigInt(0));
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  }
  return poly_trim(std::move(r));
}

IntPoly poly_derivative(const IntPoly& f) {
  if (f.size() <= 1) return {};
  IntPoly r(f.size() - 1);
  for (std::size_t k = 1; k < f.size(); ++k) r[k - 1] = f[k] * static_cast<long>(k);
  return poly_trim(std::move(r));
}

BigInt poly_eval(const IntPoly& f, const BigInt& x) {
  BigInt v = 0;
  for (std::size_t k = f.size(); k-- > 0;) v = v * x + f[k];
  return v;
}

cplx poly_eval(const IntPoly& f, cplx z) {
  long maxbits = 0;
  for (const auto& c : f) maxbits = std::max(maxbits, bit_length(c));
  long shift = maxbits > 500 ? maxbits - 500 : 0;
  cplx v = 0.0;
  for (std::size_t k = f.size(); k-- > 0;) v = v * z + to_double_scaled(f[k], shift);
  return v * std::exp2(static_cast<double>(shift));
}

IntPoly poly_primitive(IntPoly f) {
  f = poly_trim(std::move(f));
  if (f.empty()) return f;
  BigInt c = content_of(f);
  if (f.back() < 0) c = -c;
  for (auto& a : f) a /= c;
  return f;
}

namespace {

// pseudo-remainder: lc(g)^(deg f - deg g + 1) * f = q*g + r
IntPoly pseudo_rem(IntPoly f, const IntPoly& g) {
  int df = poly_degree(f), dg = poly_degree(g);
  const BigInt& lg = g[static_cast<std::size_t>(dg)];
  while (df >= dg) {
    BigInt lf = f[static_cast<std::size_t>(df)];
    for (auto& a : f) a *= lg;
    for (int k = 0; k <= dg; ++k)
      f[static_cast<std::size_t>(df - dg + k)] -= lf * g[static_cast<std::size_t>(k)];
    f = poly_trim(std::move(f));
    int nd = poly_degree(f);
    if (nd < 0) break;
    df = nd;
  }
  return f;
}

}  // namespace

IntPoly poly_gcd(IntPoly a, IntPoly b) {
  a = poly_primitive(std::move(a));
  b = poly_primitive(std::move(b));
  if (a.empty()) return b;
  if (b.empty()) return a;
  if (poly_degree(a) < poly_degree(b)) std::swap(a, b);
  while (true) {
    IntPoly r = pseudo_rem(a, b);
    if (r.empty()) return b;
    if (poly_degree(r) == 0) return {BigInt(1)};
    a = std::move(b);
    b = poly_primitive(std::move(r));
  }
}

bool poly_divexact(const IntPoly& f, const IntPoly& g, IntPoly* quotient) {
  int df = poly_degree(f), dg = poly_degree(g);
  if (dg < 0) return false;
  if (df < dg) return false;
  // rational long division; exactness means every remainder step clears
  std::vector<BigRat> r(f.begin(), f.begin() + df + 1);
  std::vector<BigRat> q(static_cast<std::size_t>(df - dg) + 1);
  BigRat lg(g[static_cast<std::size_t>(dg)]);
  for (int k = df; k >= dg; --k) {
    BigRat c = r[static_cast<std::size_t>(k)] / lg;
    q[static_cast<std::size_t>(k - dg)] = c;
    if (c != 0)
      for (int j = 0; j <= dg; ++j)
        r[static_cast<std::size_t>(k - dg + j)] -= c * BigRat(g[static_cast<std::size_t>(j)]);
  }
  for (int k = 0; k < dg; ++k)
    if (r[static_cast<std::size_t>(k)] != 0) return false;
  if (quotient) {
    quotient->assign(q.size(), BigInt(0));
    for (std::size_t k = 0; k < q.size(); ++k) {
      if (boost::multiprecision::denominator(q[k]) != 1) return false;
      (*quotient)[k] = boost::multiprecision::numerator(q[k]);
    }
    *quotient = poly_trim(std::move(*quotient));
  }
  return true;
}

IntPoly squarefree_part(const IntPoly& f) {
  IntPoly p = poly_primitive(f);
  if (poly_degree(p) <= 1) return p;
  IntPoly g = poly_gcd(p, poly_derivative(p));
  if (poly_degree(g) == 0) return p;
  IntPoly q;
  if (!poly_divexact(p, g, &q))
    throw ConstructionFailed("gcd does not divide its argument (arithmetic bug)");
  return poly_primitive(std::move(q));
}

// ---------------------------------------------------------------------------
// arithmetic modulo a word-size prime

namespace {

using u64 = std::uint64_t;
using MPoly = std::vector<u64>;  // lowest-first, trimmed

struct Mod {
  u64 p;
  u64 add(u64 a, u64 b) const { a += b; return a >= p ? a - p : a; }
  u64 sub(u64 a, u64 b) const { return a >= b ? a - b : a + p - b; }
  u64 mul(u64 a, u64 b) const {
    return static_cast<u64>(static_cast<unsigned __int128>(a) * b % p);
  }
  u64 pw(u64 a, u64 e) const {
    u64 r = 1;
    while (e) {
      if (e & 1) r = mul(r, a);
      a = mul(a, a);
      e >>= 1;
    }
    return r;
  }
  u64 inv(u64 a) const { return pw(a % p, p - 2); }
};

MPoly mp_trim(MPoly f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
  return f;
}

int mp_deg(const MPoly& f) { return static_cast<int>(f.size()) - 1; }

MPoly mp_from(const IntPoly& f, const Mod& m) {
  MPoly r(f.size());
  BigInt bp(m.p);
  for (std::size_t k = 0; k < f.size(); ++k) {
    BigInt c = f[k] % bp;
    if (c < 0) c += bp;
    r[k] = c.convert_to<u64>();
  }
  return mp_trim(std::move(r));
}

MPoly mp_mul(const MPoly& a, const MPoly& b, const Mod& m) {
  if (a.empty() || b.empty()) return {};
  MPoly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!a[i]) continue;
    for (std::size_t j = 0; j < b.size(); ++j)
      r[i + j] = m.add(r[i + j], m.mul(a[i], b[j]));
  }
  return mp_trim(std::move(r));
}

MPoly mp_rem(MPoly f, const MPoly& g, const Mod& m) {
  int dg = mp_deg(g);
  u64 li = m.inv(g.back());
  while (mp_deg(f) >= dg) {
    u64 c = m.mul(f.back(), li);
    int shift = mp_deg(f) - dg;
    for (int k = 0; k <= dg; ++k) {
      auto idx = static_cast<std::size_t>(shift + k);
      f[idx] = m.sub(f[idx], m.mul(c, g[static_cast<std::size_t>(k)]));
    }
    f = mp_trim(std::move(f));
  }
  return f;
}

MPoly mp_monic(MPoly f, const Mod& m) {
  if (f.empty()) return f;
  u64 li = m.inv(f.back());
  for (auto& c : f) c = m.mul(c, li);
  return f;
}

MPoly mp_gcd(MPoly a, MPoly b, const Mod& m) {
  while (!b.empty()) {
    MPoly r = mp_rem(std::move(a), b, m);
    a = std::move(b);
    b = std::move(r);
  }
  return mp_monic(std::move(a), m);
}

MPoly mp_derivative(const MPoly& f, const Mod& m) {
  if (f.size() <= 1) return {};
  MPoly r(f.size() - 1);
  for (std::size_t k = 1; k < f.size(); ++k) r[k - 1] = m.mul(f[k], k % m.p);
  return mp_trim(std::move(r));
}

// base^e mod f, e a BigInt
MPoly mp_powmod(MPoly base, const BigInt& e, const MPoly& f, const Mod& m) {
  MPoly r{1};
  base = mp_rem(std::move(base), f, m);
  for (long k = bit_length(e) - 1; k >= 0; --k) {
    r = mp_rem(mp_mul(r, r, m), f, m);
    if (boost::multiprecision::bit_test(e, static_cast<unsigned>(k)))
      r = mp_rem(mp_mul(r, base, m), f, m);
  }
  return r;
}

// distinct-degree splitting of a monic squarefree f: (product, degree) pairs
std::vector<std::pair<MPoly, int>> ddf(MPoly f, const Mod& m) {
  std::vector<std::pair<MPoly, int>> out;
  MPoly h{0, 1};  // z
  h = mp_rem(std::move(h), f, m);
  int i = 1;
  while (2 * i <= mp_deg(f)) {
    h = mp_powmod(std::move(h), BigInt(m.p), f, m);
    MPoly diff = h;
    if (diff.size() < 2) diff.resize(2, 0);
    diff[1] = m.sub(diff[1], 1);
    diff = mp_trim(std::move(diff));
    MPoly g = mp_gcd(diff, f, m);
    if (mp_deg(g) > 0) {
      out.emplace_back(g, i);
      MPoly q = f;
      // exact division f / g via repeated subtraction of quotient terms
      MPoly quot;
      {
        MPoly r = f;
        int dg = mp_deg(g);
        u64 li = m.inv(g.back());
        quot.assign(static_cast<std::size_t>(mp_deg(f) - dg) + 1, 0);
        while (mp_deg(r) >= dg) {
          u64 c = m.mul(r.back(), li);
          int shift = mp_deg(r) - dg;
          quot[static_cast<std::size_t>(shift)] = c;
          for (int k = 0; k <= dg; ++k) {
            auto idx = static_cast<std::size_t>(shift + k);
            r[idx] = m.sub(r[idx], m.mul(c, g[static_cast<std::size_t>(k)]));
          }
          r = mp_trim(std::move(r));
        }
      }
      f = mp_trim(std::move(quot));
      h = mp_rem(std::move(h), f, m);
    }
    ++i;
  }
  if (mp_deg(f) > 0) out.emplace_back(f, mp_deg(f));
  return out;
}

// Cantor–Zassenhaus equal-degree splitting (p odd)
void edf(const MPoly& h, int deg_each, const Mod& m, Rng& rng, std::vector<MPoly>& out) {
  if (mp_deg(h) == deg_each) {
    out.push_back(h);
    return;
  }
  BigInt e = (boost::multiprecision::pow(BigInt(m.p), static_cast<unsigned>(deg_each)) - 1) / 2;
  while (true) {
    MPoly r(static_cast<std::size_t>(mp_deg(h)), 0);
    for (auto& c : r) c = rng.next_u64() % m.p;
    r = mp_trim(std::move(r));
    if (r.empty()) continue;
    MPoly s = mp_powmod(r, e, h, m);
    if (s.empty()) continue;
    s[0] = m.sub(s[0], 1);
    s = mp_trim(std::move(s));
    MPoly g = mp_gcd(s, h, m);
    if (mp_deg(g) > 0 && mp_deg(g) < mp_deg(h)) {
      edf(g, deg_each, m, rng, out);
      // h / g
      MPoly quot, rem = h;
      int dg = mp_deg(g);
      u64 li = m.inv(g.back());
      quot.assign(static_cast<std::size_t>(mp_deg(h) - dg) + 1, 0);
      while (mp_deg(rem) >= dg) {
        u64 c = m.mul(rem.back(), li);
        int shift = mp_deg(rem) - dg;
        quot[static_cast<std::size_t>(shift)] = c;
        for (int k = 0; k <= dg; ++k) {
          auto idx = static_cast<std::size_t>(shift + k);
          rem[idx] = m.sub(rem[idx], m.mul(c, g[static_cast<std::size_t>(k)]));
        }
        rem = mp_trim(std::move(rem));
      }
      edf(mp_trim(std::move(quot)), deg_each, m, rng, out);
      return;
    }
  }
}

std::vector<u64> small_primes_pool() {
  static const std::vector<u64> pool = [] {
    std::vector<u64> out;
    std::vector<bool> sieve(20000, true);
    for (std::size_t i = 2; i < sieve.size(); ++i) {
      if (!sieve[i]) continue;
      if (i >= 3) out.push_back(i);
      for (std::size_t j = i * i; j < sieve.size(); j += i) sieve[j] = false;
    }
    return out;
  }();
  return pool;
}

bool good_prime(const IntPoly& s, u64 p) {
  Mod m{p};
  MPoly fp = mp_from(s, m);
  if (mp_deg(fp) != poly_degree(s)) return false;  // p | lc
  MPoly g = mp_gcd(fp, mp_derivative(fp, m), m);
  return mp_deg(g) == 0;
}

// big-integer coefficients reduced into [0, P)
using BPoly = std::vector<BigInt>;

BPoly bp_reduce(BPoly f, const BigInt& P) {
  for (auto& c : f) {
    c %= P;
    if (c < 0) c += P;
  }
  while (!f.empty() && f.back() == 0) f.pop_back();
  return f;
}

BPoly bp_mul(const BPoly& a, const BPoly& b, const BigInt& P) {
  if (a.empty() || b.empty()) return {};
  BPoly r(a.size() + b.size() - 1, BigInt(0));
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  }
  return bp_reduce(std::move(r), P);
}

// extended Euclid mod p for polynomials: returns u with u*a ≡ 1 mod (b, p)
MPoly mp_invmod(const MPoly& a, const MPoly& b, const Mod& m) {
  // iterative extended Euclid on (b, a mod b) tracking the a-coefficient
  MPoly r0 = b, r1 = mp_rem(a, b, m);
  MPoly t0{}, t1{1};
  while (!r1.empty()) {
    // divide r0 by r1
    MPoly q, rem = r0;
    int dg = mp_deg(r1);
    u64 li = m.inv(r1.back());
    q.assign(static_cast<std::size_t>(std::max(0, mp_deg(r0) - dg)) + 1, 0);
    while (mp_deg(rem) >= dg) {
      u64 c = m.mul(rem.back(), li);
      int shift = mp_deg(rem) - dg;
      q[static_cast<std::size_t>(shift)] = c;
      for (int k = 0; k <= dg; ++k) {
        auto idx = static_cast<std::size_t>(shift + k);
        rem[idx] = m.sub(rem[idx], m.mul(c, r1[static_cast<std::size_t>(k)]));
      }
      rem = mp_trim(std::move(rem));
    }
    q = mp_trim(std::move(q));
    // t2 = t0 - q*t1
    MPoly qt = mp_mul(q, t1, m);
    MPoly t2(std::max(t0.size(), qt.size()), 0);
    for (std::size_t k = 0; k < t0.size(); ++k) t2[k] = t0[k];
    for (std::size_t k = 0; k < qt.size(); ++k) t2[k] = m.sub(t2[k], qt[k]);
    t2 = mp_trim(std::move(t2));
    r0 = std::move(r1);
    r1 = std::move(rem);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  if (mp_deg(r0) != 0) throw ConstructionFailed("polynomials not coprime in inverse");
  u64 scale = m.inv(r0[0]);
  for (auto& c : t0) c = m.mul(c, scale);
  return mp_trim(std::move(t0));
}

}  // namespace

Factorization factor_poly(const IntPoly& f_in, Rng rng) {
  Factorization out;
  IntPoly f = poly_trim(f_in);
  if (f.empty()) {
    out.unit = 0;
    return out;
  }
  BigInt cont = content_of(f);
  if (f.back() < 0) cont = -cont;
  out.unit = cont;
  IntPoly f0(f.size());
  for (std::size_t k = 0; k < f.size(); ++k) f0[k] = f[k] / cont;
  if (poly_degree(f0) == 0) return out;

  IntPoly s = squarefree_part(f0);
  std::vector<IntPoly> irreducibles;

  if (poly_degree(s) == 1) {
    irreducibles.push_back(s);
  } else {
    // pick the good prime with the fewest modular factors among 5 candidates
    const auto pool = small_primes_pool();
    std::vector<u64> good;
    for (u64 p : pool) {
      if (good_prime(s, p)) good.push_back(p);
      if (good.size() >= 5) break;
    }
    if (good.empty()) throw ConstructionFailed("no good prime below 20000");
    u64 best_p = 0;
    std::size_t best_count = static_cast<std::size_t>(-1);
    std::vector<std::pair<MPoly, int>> best_ddf;
    for (u64 p : good) {
      Mod m{p};
      auto dd = ddf(mp_monic(mp_from(s, m), m), m);
      std::size_t count = 0;
      for (const auto& [poly, deg] : dd)
        count += static_cast<std::size_t>(mp_deg(poly) / deg);
      if (count < best_count) {
        best_count = count;
        best_p = p;
        best_ddf = dd;
      }
    }
    Mod m{best_p};

    if (best_count == 1) {
      irreducibles.push_back(s);  // irreducible already
    } else {
      // split into monic irreducible factors mod p
      std::vector<MPoly> mod_factors;
      for (const auto& [prod, deg] : best_ddf) {
        Rng edf_rng = rng.split(0x9e3779b97f4a7c15ULL ^ static_cast<std::uint64_t>(deg));
        edf(prod, deg, m, edf_rng, mod_factors);
      }
      std::sort(mod_factors.begin(), mod_factors.end());

      // Mignotte bound: any factor of s has coefficients bounded by
      // sqrt(deg+1) * 2^deg * ||s||_inf, times |lc| for the lifted non-monic
      int ds = poly_degree(s);
      BigInt hinf = 0;
      for (const auto& c : s) hinf = std::max(hinf, big_abs(c));
      BigInt lc = s.back();
      BigInt bound = BigInt(static_cast<long>(std::sqrt(static_cast<double>(ds) + 1.0)) + 1) *
                     boost::multiprecision::pow(BigInt(2), static_cast<unsigned>(ds)) * hinf *
                     big_abs(lc);

      BigInt P(best_p);
      int k_steps = 1;
      while (P <= 2 * bound) {
        P *= best_p;
        ++k_steps;
      }

      // linear multifactor Hensel lift of s ≡ lc * prod g_i from p to p^k
      std::vector<BPoly> lifted;
      lifted.reserve(mod_factors.size());
      for (const auto& g : mod_factors) {
        BPoly bg(g.size());
        for (std::size_t j = 0; j < g.size(); ++j) bg[j] = BigInt(g[j]);
        lifted.push_back(std::move(bg));
      }
      // correction multipliers: s_i = (lc * prod_{l != i} g_l)^{-1} mod (g_i, p)
      std::vector<MPoly> corr(mod_factors.size());
      for (std::size_t i = 0; i < mod_factors.size(); ++i) {
        MPoly prod{lc >= 0 ? static_cast<u64>((lc % best_p).convert_to<u64>())
                           : m.sub(0, ((-lc) % best_p).convert_to<u64>())};
        for (std::size_t l = 0; l < mod_factors.size(); ++l)
          if (l != i) prod = mp_rem(mp_mul(prod, mod_factors[l], m), mod_factors[i], m);
        corr[i] = mp_invmod(prod, mod_factors[i], m);
      }
      BigInt pj(best_p);
      for (int step = 1; step < k_steps; ++step) {
        BigInt pj1 = pj * best_p;
        // error e = (s - lc*prod lifted) / p^j mod p
        BPoly prod{BigInt(lc)};
        for (const auto& g : lifted) prod = bp_mul(prod, g, pj1);
        BPoly err(std::max(s.size(), prod.size()), BigInt(0));
        for (std::size_t j = 0; j < s.size(); ++j) err[j] += s[j];
        for (std::size_t j = 0; j < prod.size(); ++j) err[j] -= prod[j];
        err = bp_reduce(std::move(err), pj1);
        MPoly e(err.size());
        for (std::size_t j = 0; j < err.size(); ++j) {
          BigInt q = err[j] / pj;
          if (err[j] % pj != 0) throw ConstructionFailed("Hensel error not divisible");
          e[j] = ((q % best_p).convert_to<u64>());
        }
        e = mp_trim(std::move(e));
        for (std::size_t i = 0; i < lifted.size(); ++i) {
          MPoly gi = mod_factors[i];
          MPoly delta = mp_rem(mp_mul(e, corr[i], m), gi, m);
          for (std::size_t j = 0; j < delta.size(); ++j)
            lifted[i][j] = (lifted[i][j] + pj * delta[j]) % pj1;
        }
        pj = pj1;
      }

      // subset recombination over the lifted factors
      auto symmetric = [&](BigInt c) {
        c %= P;
        if (c < 0) c += P;
        if (2 * c > P) c -= P;
        return c;
      };
      std::vector<std::size_t> rem_idx(lifted.size());
      for (std::size_t i = 0; i < rem_idx.size(); ++i) rem_idx[i] = i;
      IntPoly fcur = s;
      long examined = 0;
      const long cap = 1L << 20;
      bool capped = false;
      std::size_t card = 1;
      while (2 * card <= rem_idx.size() && !capped) {
        // enumerate cardinality-card subsets of rem_idx
        std::vector<std::size_t> pick(card);
        for (std::size_t i = 0; i < card; ++i) pick[i] = i;
        bool hit = false;
        while (true) {
          if (++examined > cap) {
            capped = true;
            break;
          }
          BigInt lcur = fcur.back();
          BPoly cand{lcur % P};
          for (std::size_t i = 0; i < card; ++i)
            cand = bp_mul(cand, lifted[rem_idx[pick[i]]], P);
          IntPoly g(cand.size());
          for (std::size_t j = 0; j < cand.size(); ++j) g[j] = symmetric(cand[j]);
          g = poly_primitive(std::move(g));
          IntPoly q;
          bool ok = false;
          // cheap trailing-coefficient test first
          if (!g.empty() && g[0] != 0 && fcur[0] != 0) {
            BigInt t = lcur * fcur[0];
            ok = (t % g[0] == 0) && poly_divexact(fcur, g, &q);
          } else {
            ok = poly_divexact(fcur, g, &q);
          }
          if (ok) {
            irreducibles.push_back(g);
            fcur = poly_primitive(std::move(q));
            std::vector<std::size_t> next;
            for (std::size_t i = 0, pi = 0; i < rem_idx.size(); ++i) {
              if (pi < card && pick[pi] == i) { ++pi; continue; }
              next.push_back(rem_idx[i]);
            }
            rem_idx = std::move(next);
            hit = true;
            break;
          }
          // advance combination
          std::size_t i = card;
          while (i-- > 0) {
            if (pick[i] + (card - i) < rem_idx.size()) {
              ++pick[i];
              for (std::size_t j = i + 1; j < card; ++j) pick[j] = pick[j - 1] + 1;
              break;
            }
            if (i == 0) { i = static_cast<std::size_t>(-1); break; }
          }
          if (i == static_cast<std::size_t>(-1)) break;
        }
        if (!hit) ++card;
      }
      if (capped) {
        out.certified = false;
        if (poly_degree(fcur) > 0) irreducibles.push_back(fcur);
      } else if (poly_degree(fcur) > 0) {
        irreducibles.push_back(fcur);  // what remains is irreducible
      }
    }
  }

  // multiplicities by repeated exact division of the full polynomial
  std::sort(irreducibles.begin(), irreducibles.end(),
            [](const IntPoly& a, const IntPoly& b) {
              if (a.size() != b.size()) return a.size() < b.size();
              for (std::size_t k = a.size(); k-- > 0;)
                if (a[k] != b[k]) return a[k] < b[k];
              return false;
            });
  IntPoly rest = f0;
  for (const auto& q : irreducibles) {
    PolyFactor pf;
    pf.poly = q;
    pf.multiplicity = 0;
    IntPoly quo;
    while (poly_divexact(rest, q, &quo)) {
      ++pf.multiplicity;
      rest = poly_trim(std::move(quo));
    }
    if (pf.multiplicity > 0) out.factors.push_back(std::move(pf));
  }
  if (poly_degree(rest) > 0)
    throw ConstructionFailed("factorization left a nontrivial cofactor");
  if (!rest.empty() && rest[0] != 1) out.unit *= rest[0];
  return out;
}

std::vector<int> factor_degrees(const IntPoly& f, Rng rng) {
  IntPoly s = squarefree_part(f);
  auto fac = factor_poly(s, rng);
  if (!fac.certified) throw CapExceeded("recombination cap reached; use the modular profile");
  std::vector<int> out;
  for (const auto& pf : fac.factors)
    for (int k = 0; k < pf.multiplicity; ++k) out.push_back(poly_degree(pf.poly));
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<int> modular_degree_profile(const IntPoly& f, Rng rng, int n_primes) {
  IntPoly s = squarefree_part(f);
  if (poly_degree(s) <= 0) return {};
  if (poly_degree(s) == 1) return {1};
  const auto pool = small_primes_pool();
  std::vector<std::vector<int>> profiles;
  int attempts = 0;
  while (static_cast<int>(profiles.size()) < n_primes && attempts < 4000) {
    ++attempts;
    u64 p = pool[rng.below(pool.size())];
    if (!good_prime(s, p)) continue;
    Mod m{p};
    auto dd = ddf(mp_monic(mp_from(s, m), m), m);
    std::vector<int> prof;
    for (const auto& [prod, deg] : dd)
      for (int k = 0; k < mp_deg(prod) / deg; ++k) prof.push_back(deg);
    std::sort(prof.rbegin(), prof.rend());
    profiles.push_back(std::move(prof));
  }
  if (profiles.empty()) throw InsufficientData("found no good prime for the modular profile");
  std::vector<int> best = profiles[0];
  for (const auto& prof : profiles)
    if (prof > best) best = prof;  // descending-sorted lexicographic max = coarsest
  std::sort(best.begin(), best.end());
  return best;
}

}  // namespace equilab
