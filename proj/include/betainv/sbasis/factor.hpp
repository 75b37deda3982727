#pragma once

// Factorisation over Q.
//
// Univariate: Yun squarefree split, Cantor-Zassenhaus mod a small prime,
// linear Hensel lifting, subset recombination (Zassenhaus).
// Bivariate: specialise u = a, factor in v, lift u-adically, recombine by
// trial division.
// More variables: Kronecker substitution down to two, then recombination.
//
// Dense univariate helpers live in `upoly` / `modp`; they are used elsewhere
// (Newton polygons, branch counts) too.

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <random>
#include <utility>
#include <vector>

#include "betainv/ring/linear.hpp"
#include "betainv/ring/polynomial.hpp"
#include "betainv/sbasis/operations.hpp"

namespace betainv {

namespace upoly {

using QU = std::vector<Rational>;  // index = degree
using ZU = std::vector<Integer>;

template <class V>
void trim(V& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}
template <class V>
int deg(const V& a) {
  return static_cast<int>(a.size()) - 1;
}

inline QU add(QU a, const QU& b) {
  if (a.size() < b.size()) a.resize(b.size(), 0);
  for (std::size_t i = 0; i < b.size(); ++i) a[i] += b[i];
  trim(a);
  return a;
}
inline QU sub(QU a, const QU& b) {
  if (a.size() < b.size()) a.resize(b.size(), 0);
  for (std::size_t i = 0; i < b.size(); ++i) a[i] -= b[i];
  trim(a);
  return a;
}
inline QU mul(const QU& a, const QU& b) {
  if (a.empty() || b.empty()) return {};
  QU r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  }
  trim(r);
  return r;
}
inline QU scale(QU a, const Rational& c) {
  for (auto& x : a) x *= c;
  trim(a);
  return a;
}

/// (quotient, remainder); b must be nonzero.
inline std::pair<QU, QU> divmod(QU a, const QU& b) {
  if (b.empty()) throw Error(ErrorKind::division_by_zero, "univariate division by zero");
  trim(a);
  if (a.size() < b.size()) return {{}, a};
  QU q(a.size() - b.size() + 1, 0);
  const Rational inv = 1 / b.back();
  for (int i = deg(a) - deg(b); i >= 0; --i) {
    const Rational c = a[i + b.size() - 1] * inv;
    q[i] = c;
    if (c == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) a[i + j] -= c * b[j];
  }
  trim(a);
  trim(q);
  return {q, a};
}
inline QU rem(const QU& a, const QU& b) { return divmod(a, b).second; }
inline QU quo(const QU& a, const QU& b) { return divmod(a, b).first; }

inline QU monic(QU a) {
  if (a.empty()) return a;
  return scale(std::move(a), 1 / Rational(a.back()));
}

inline QU gcd(QU a, QU b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    QU r = rem(a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return monic(a);
}

/// Returns g = gcd and s, t with s a + t b = g (monic g).
inline QU ext_gcd(const QU& a, const QU& b, QU& s, QU& t) {
  QU r0 = a, r1 = b, s0{1}, s1{}, t0{}, t1{1};
  trim(r0);
  trim(r1);
  while (!r1.empty()) {
    auto [q, r] = divmod(r0, r1);
    r0 = std::move(r1);
    r1 = std::move(r);
    QU s2 = sub(s0, mul(q, s1));
    QU t2 = sub(t0, mul(q, t1));
    s0 = std::move(s1);
    s1 = std::move(s2);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  const Rational inv = 1 / r0.back();
  s = scale(s0, inv);
  t = scale(t0, inv);
  return scale(r0, inv);
}

inline QU derivative(const QU& a) {
  QU r;
  for (std::size_t i = 1; i < a.size(); ++i) r.push_back(a[i] * static_cast<long>(i));
  trim(r);
  return r;
}

inline Rational eval(const QU& a, const Rational& x) {
  Rational r = 0;
  for (std::size_t i = a.size(); i-- > 0;) r = r * x + a[i];
  return r;
}

/// Order of vanishing at 0 (index of the lowest nonzero coefficient).
inline int valuation(const QU& a) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] != 0) return static_cast<int>(i);
  return -1;
}

inline bool is_squarefree(const QU& a) { return deg(gcd(a, derivative(a))) <= 0; }

/// Scales to an integer polynomial with content 1 and positive leading coefficient.
inline ZU primitive(const QU& a) {
  Integer den = 1, g = 0;
  for (const auto& c : a) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den_mpz_t());
  ZU z;
  for (const auto& c : a) {
    Rational s = c * den;
    z.push_back(s.get_num());
  }
  for (const auto& c : z) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
  if (g == 0) return {};
  if (z.back() < 0) g = -g;
  for (auto& c : z) c /= g;
  return z;
}
inline QU to_q(const ZU& a) {
  QU r;
  for (const auto& c : a) r.emplace_back(c);
  return r;
}

}  // namespace upoly

namespace modp {

/// Dense polynomials over Z/p for small odd p (< 2^31).
using P = std::vector<std::uint64_t>;

inline void trim(P& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}
inline std::uint64_t powmod(std::uint64_t b, std::uint64_t e, std::uint64_t p) {
  std::uint64_t r = 1;
  b %= p;
  while (e) {
    if (e & 1) r = r * b % p;
    b = b * b % p;
    e >>= 1;
  }
  return r;
}
inline std::uint64_t inv(std::uint64_t a, std::uint64_t p) { return powmod(a, p - 2, p); }

inline P from_z(const upoly::ZU& a, std::uint64_t p) {
  P r;
  for (const auto& c : a) {
    Integer m = c % static_cast<unsigned long>(p);
    if (m < 0) m += static_cast<unsigned long>(p);
    r.push_back(m.get_ui());
  }
  trim(r);
  return r;
}
inline P sub(P a, const P& b, std::uint64_t p) {
  if (a.size() < b.size()) a.resize(b.size(), 0);
  for (std::size_t i = 0; i < b.size(); ++i) a[i] = (a[i] + p - b[i]) % p;
  trim(a);
  return a;
}
inline P mul(const P& a, const P& b, std::uint64_t p) {
  if (a.empty() || b.empty()) return {};
  P r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % p;
  trim(r);
  return r;
}
inline std::pair<P, P> divmod(P a, const P& b, std::uint64_t p) {
  trim(a);
  if (a.size() < b.size()) return {{}, a};
  P q(a.size() - b.size() + 1, 0);
  const std::uint64_t li = inv(b.back(), p);
  for (std::size_t i = a.size() - b.size() + 1; i-- > 0;) {
    const std::uint64_t c = a[i + b.size() - 1] * li % p;
    q[i] = c;
    if (!c) continue;
    for (std::size_t j = 0; j < b.size(); ++j) a[i + j] = (a[i + j] + p - c * b[j] % p) % p;
  }
  trim(a);
  trim(q);
  return {q, a};
}
inline P rem(const P& a, const P& b, std::uint64_t p) { return divmod(a, b, p).second; }
inline P monic(P a, std::uint64_t p) {
  if (a.empty()) return a;
  const std::uint64_t li = inv(a.back(), p);
  for (auto& c : a) c = c * li % p;
  return a;
}
inline P gcd(P a, P b, std::uint64_t p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    P r = rem(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return monic(a, p);
}
inline P ext_gcd(const P& a, const P& b, P& s, P& t, std::uint64_t p) {
  P r0 = a, r1 = b, s0{1}, s1{}, t0{}, t1{1};
  while (!r1.empty()) {
    auto [q, r] = divmod(r0, r1, p);
    r0 = std::move(r1);
    r1 = std::move(r);
    P s2 = sub(s0, mul(q, s1, p), p);
    P t2 = sub(t0, mul(q, t1, p), p);
    s0 = std::move(s1);
    s1 = std::move(s2);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  const std::uint64_t li = inv(r0.back(), p);
  for (auto& c : s0) c = c * li % p;
  for (auto& c : t0) c = c * li % p;
  s = s0;
  t = t0;
  trim(s);
  trim(t);
  return monic(r0, p);
}
inline P derivative(const P& a, std::uint64_t p) {
  P r;
  for (std::size_t i = 1; i < a.size(); ++i) r.push_back(a[i] * (i % p) % p);
  trim(r);
  return r;
}
/// base^e mod f, e given as a big integer.
inline P powmod(const P& base, const Integer& e, const P& f, std::uint64_t p) {
  P r{1}, b = rem(base, f, p);
  const std::size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
  for (std::size_t i = bits; i-- > 0;) {
    r = rem(mul(r, r, p), f, p);
    if (mpz_tstbit(e.get_mpz_t(), i)) r = rem(mul(r, b, p), f, p);
  }
  return r;
}

/// Monic irreducible factors of a monic squarefree polynomial (p odd).
inline std::vector<P> factor_squarefree(P f, std::uint64_t p, std::mt19937_64& rng) {
  std::vector<P> out;
  std::vector<std::pair<P, unsigned>> dd;
  const P x{0, 1};
  P h = x;
  for (unsigned d = 1; 2 * d <= static_cast<unsigned>(f.size() - 1); ++d) {
    h = powmod(h, Integer(static_cast<unsigned long>(p)), f, p);
    P g = gcd(f, sub(h, x, p), p);
    if (g.size() > 1) {
      dd.push_back({g, d});
      f = divmod(f, g, p).first;
      h = rem(h, f, p);
    }
  }
  if (f.size() > 1) dd.push_back({f, static_cast<unsigned>(f.size() - 1)});

  // Equal-degree splitting.
  std::vector<std::pair<P, unsigned>> work = dd;
  while (!work.empty()) {
    auto [g, d] = work.back();
    work.pop_back();
    if (g.size() - 1 == d) {
      out.push_back(g);
      continue;
    }
    Integer e;
    mpz_ui_pow_ui(e.get_mpz_t(), p, d);
    e = (e - 1) / 2;
    std::uniform_int_distribution<std::uint64_t> dist(0, p - 1);
    for (;;) {
      P a(g.size() - 1);
      for (auto& c : a) c = dist(rng);
      trim(a);
      if (a.size() < 2) continue;
      P b = powmod(a, e, g, p);
      b = sub(b, P{1}, p);
      P s = gcd(g, b, p);
      if (s.size() > 1 && s.size() < g.size()) {
        work.push_back({s, d});
        work.push_back({divmod(g, s, p).first, d});
        break;
      }
    }
  }
  return out;
}

}  // namespace modp

namespace detail {

inline upoly::ZU zmul(const upoly::ZU& a, const upoly::ZU& b) {
  if (a.empty() || b.empty()) return {};
  upoly::ZU r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  return r;
}

inline void zsym(upoly::ZU& a, const Integer& m) {
  const Integer half = m / 2;
  for (auto& c : a) {
    c %= m;
    if (c < 0) c += m;
    if (c > half) c -= m;
  }
  upoly::trim(a);
}

/// Exact division by a monic integer polynomial; nullopt if it does not divide.
inline std::optional<upoly::ZU> zdiv_monic(upoly::ZU a, const upoly::ZU& b) {
  if (a.size() < b.size()) return std::nullopt;
  upoly::ZU q(a.size() - b.size() + 1, 0);
  for (std::size_t i = a.size() - b.size() + 1; i-- > 0;) {
    const Integer c = a[i + b.size() - 1];
    q[i] = c;
    if (c == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) a[i + j] -= c * b[j];
  }
  for (const auto& c : a)
    if (c != 0) return std::nullopt;
  return q;
}

/// Lifts T = G0 * H0 (mod p, both monic) to a factorisation mod p^k.
inline std::pair<upoly::ZU, upoly::ZU> hensel_pair(const upoly::ZU& T, const modp::P& g0, const modp::P& h0,
                                                   std::uint64_t p, unsigned k) {
  modp::P s, t;
  modp::ext_gcd(g0, h0, s, t, p);
  upoly::ZU G(g0.begin(), g0.end()), H(h0.begin(), h0.end());
  Integer pj = static_cast<unsigned long>(p);
  for (unsigned j = 1; j < k; ++j) {
    upoly::ZU e = T;
    const upoly::ZU gh = zmul(G, H);
    if (e.size() < gh.size()) e.resize(gh.size(), 0);
    for (std::size_t i = 0; i < gh.size(); ++i) e[i] -= gh[i];
    for (auto& c : e) c /= pj;  // exact
    const modp::P em = modp::from_z(e, p);
    const modp::P a = modp::rem(modp::mul(t, em, p), g0, p);
    const modp::P b = modp::rem(modp::mul(s, em, p), h0, p);
    for (std::size_t i = 0; i < a.size(); ++i) G[i] += pj * static_cast<unsigned long>(a[i]);
    for (std::size_t i = 0; i < b.size(); ++i) H[i] += pj * static_cast<unsigned long>(b[i]);
    pj *= static_cast<unsigned long>(p);
  }
  return {G, H};
}

/// Irreducible factors of a squarefree primitive integer polynomial of degree >= 1.
inline std::vector<upoly::ZU> zassenhaus(const upoly::ZU& f) {
  using upoly::ZU;
  const int d = upoly::deg(f);
  if (d <= 1) return {f};
  // Monic transform F(x) = c^(d-1) f(x/c).
  const Integer c = f.back();
  ZU F(f.size());
  {
    Integer cp = 1;
    for (int i = d - 1; i >= 0; --i) {
      F[i] = f[i] * cp;
      cp *= c;
    }
    F[d] = 1;
  }
  static constexpr std::uint64_t primes[] = {3,   5,   7,   11,  13,  17,  19,  23,  29,  31,  37,  41,  43,  47,
                                             53,  59,  61,  67,  71,  73,  79,  83,  89,  97,  101, 103, 107, 109,
                                             113, 127, 131, 137, 139, 149, 151, 157, 163, 167, 173, 179, 181, 191,
                                             193, 197, 199, 211, 223, 227, 229, 233, 239, 241, 251, 257, 263, 269,
                                             271, 277, 281, 283, 293, 307, 311, 313, 317, 331, 337, 347, 349, 353};
  std::uint64_t p = 0;
  for (auto q : primes) {
    const modp::P Fm = modp::from_z(F, q);
    if (modp::gcd(Fm, modp::derivative(Fm, q), q).size() == 1) {
      p = q;
      break;
    }
  }
  if (!p) throw Error(ErrorKind::internal_inconsistency, "no suitable prime for univariate factorisation");
  std::mt19937_64 rng(0x5eed ^ static_cast<std::uint64_t>(d));
  std::vector<modp::P> local = modp::factor_squarefree(modp::from_z(F, p), p, rng);
  std::vector<ZU> result;
  if (local.size() == 1) {
    result.push_back(f);
    return result;
  }
  // Mignotte-style bound for monic factors of F.
  Integer norm2 = 0;
  for (const auto& a : F) norm2 += a * a;
  Integer bound = sqrt(norm2) + 1;
  bound <<= static_cast<unsigned>(d);
  bound *= 2;
  unsigned k = 1;
  Integer pk = static_cast<unsigned long>(p);
  while (pk <= bound) {
    pk *= static_cast<unsigned long>(p);
    ++k;
  }
  // Multifactor lift by successive splitting.
  std::vector<ZU> lifted;
  ZU target = F;
  for (std::size_t i = 0; i + 1 < local.size(); ++i) {
    modp::P rest{1};
    for (std::size_t j = i + 1; j < local.size(); ++j) rest = modp::mul(rest, local[j], p);
    auto [G, H] = hensel_pair(target, local[i], rest, p, k);
    zsym(G, pk);
    zsym(H, pk);
    lifted.push_back(G);
    target = H;
  }
  lifted.push_back(target);

  std::vector<ZU> found;
  ZU rest = F;
  std::size_t s = 1;
  while (2 * s <= lifted.size()) {
    bool hit = false;
    std::vector<std::size_t> idx(s);
    for (std::size_t i = 0; i < s; ++i) idx[i] = i;
    for (;;) {
      ZU G{1};
      for (auto i : idx) G = zmul(G, lifted[i]);
      zsym(G, pk);
      if (auto q = zdiv_monic(rest, G)) {
        found.push_back(G);
        rest = *q;
        for (std::size_t i = s; i-- > 0;) lifted.erase(lifted.begin() + static_cast<long>(idx[i]));
        hit = true;
        break;
      }
      // next combination
      std::size_t i = s;
      while (i > 0 && idx[i - 1] == lifted.size() - s + i - 1) --i;
      if (i == 0) break;
      ++idx[i - 1];
      for (std::size_t j = i; j < s; ++j) idx[j] = idx[j - 1] + 1;
    }
    if (!hit) ++s;
  }
  if (upoly::deg(rest) > 0) found.push_back(rest);

  // Undo the monic transform: g(x) = primitive part of G(c x).
  for (auto& G : found) {
    ZU g(G.size());
    Integer cp = 1;
    for (std::size_t i = 0; i < G.size(); ++i) {
      g[i] = G[i] * cp;
      cp *= c;
    }
    result.push_back(upoly::primitive(upoly::to_q(g)));
  }
  return result;
}

}  // namespace detail

namespace upoly {

struct Factor {
  QU f;  // primitive integer coefficients, positive leading coefficient
  unsigned multiplicity;
};

/// Irreducible factorisation over Q of a nonconstant polynomial (constants dropped).
inline std::vector<Factor> factor(const QU& a) {
  std::vector<Factor> out;
  if (deg(a) <= 0) return out;
  // Yun's squarefree decomposition.
  QU f = monic(a);
  QU fp = derivative(f);
  QU b = gcd(f, fp);
  QU c = quo(f, b);
  QU d = sub(quo(fp, b), derivative(c));
  for (unsigned i = 1; deg(c) > 0; ++i) {
    QU g = gcd(c, d);
    if (deg(g) > 0)
      for (auto& z : detail::zassenhaus(primitive(g))) out.push_back({to_q(z), i});
    c = quo(c, g);
    d = sub(quo(d, g), derivative(c));
  }
  return out;
}

}  // namespace upoly

/// Factorisation of a polynomial over Q: unit times product of primitive
/// irreducible factors with multiplicities. `complete` is false when the
/// recombination search was cut off; the unsplit remainder is then listed as
/// a single factor.
struct Factorization {
  Rational unit = 1;
  std::vector<std::pair<QPoly, unsigned>> factors;
  bool complete = true;
};

namespace detail {

inline upoly::QU to_univariate(const QPoly& p, std::size_t var) {
  upoly::QU r(p.degree_in(var) + 1, 0);
  for (const auto& t : p.terms()) r[t.m[var]] += t.c;
  upoly::trim(r);
  return r;
}
inline QPoly from_univariate(const upoly::QU& a, const QRingPtr& ring, std::size_t var) {
  std::vector<Term<Rational>> terms;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] != 0) terms.push_back({Monomial::variable(var, static_cast<unsigned>(i)), a[i]});
  return QPoly::from_terms(ring, std::move(terms));
}

// Bivariate series in u with coefficients in Q[v]: B[j] = coefficient of u^j.
using Bi = std::vector<upoly::QU>;

inline Bi to_bi(const QPoly& p, std::size_t iu, std::size_t iv) {
  Bi r(p.degree_in(iu) + 1);
  for (const auto& t : p.terms()) {
    auto& row = r[t.m[iu]];
    if (row.size() <= t.m[iv]) row.resize(t.m[iv] + 1, 0);
    row[t.m[iv]] += t.c;
  }
  for (auto& row : r) upoly::trim(row);
  return r;
}
inline QPoly from_bi(const Bi& b, const QRingPtr& ring, std::size_t iu, std::size_t iv) {
  std::vector<Term<Rational>> terms;
  for (std::size_t j = 0; j < b.size(); ++j)
    for (std::size_t i = 0; i < b[j].size(); ++i)
      if (b[j][i] != 0) {
        Monomial m = Monomial::variable(iu, static_cast<unsigned>(j)) * Monomial::variable(iv, static_cast<unsigned>(i));
        terms.push_back({m, b[j][i]});
      }
  return QPoly::from_terms(ring, std::move(terms));
}
inline Bi bi_mul(const Bi& a, const Bi& b, std::size_t prec) {
  Bi r(std::min(prec, a.size() + b.size()));
  for (std::size_t i = 0; i < a.size() && i < prec; ++i)
    for (std::size_t j = 0; j < b.size() && i + j < prec; ++j) r[i + j] = upoly::add(r[i + j], upoly::mul(a[i], b[j]));
  return r;
}

/// Coefficient of v^k as a polynomial in u.
inline upoly::QU v_coefficient(const QPoly& p, std::size_t iu, std::size_t iv, unsigned k) {
  upoly::QU r;
  for (const auto& t : p.terms()) {
    if (t.m[iv] != k) continue;
    if (r.size() <= t.m[iu]) r.resize(t.m[iu] + 1, 0);
    r[t.m[iu]] += t.c;
  }
  upoly::trim(r);
  return r;
}

inline upoly::QU v_content(const QPoly& p, std::size_t iu, std::size_t iv) {
  upoly::QU g;
  for (unsigned k = 0; k <= p.degree_in(iv); ++k) {
    upoly::QU c = v_coefficient(p, iu, iv, k);
    if (!c.empty()) g = g.empty() ? upoly::monic(c) : upoly::gcd(g, c);
  }
  return g;
}

inline QPoly shift(const QPoly& p, std::size_t var, const Rational& a) {
  std::vector<QPoly> images;
  for (std::size_t i = 0; i < p.ring()->size(); ++i) images.push_back(QPoly::variable(p.ring(), i));
  images[var] = images[var] + QPoly::constant(p.ring(), a);
  return substitute(p, images);
}

/// Irreducible factors of F, squarefree, primitive in v over Q[u], deg_v >= 1.
inline std::vector<QPoly> factor_bivariate_primitive(const QPoly& F, std::size_t iu, std::size_t iv) {
  const auto& ring = F.ring();
  const unsigned dv = F.degree_in(iv);
  const unsigned du = F.degree_in(iu);
  if (du == 0) {
    std::vector<QPoly> out;
    for (auto& fac : upoly::factor(to_univariate(F, iv))) out.push_back(from_univariate(fac.f, ring, iv));
    return out;
  }
  // Good specialisation point.
  Rational a = 0;
  bool ok = false;
  for (long k = 0; k < 200 && !ok; ++k) {
    a = (k % 2 ? 1 : -1) * ((k + 1) / 2);
    const Bi b = to_bi(shift(F, iu, a), iu, iv);
    const upoly::QU f0 = b.empty() ? upoly::QU{} : b[0];
    ok = upoly::deg(f0) == static_cast<int>(dv) && upoly::is_squarefree(f0);
  }
  if (!ok) throw Error(ErrorKind::internal_inconsistency, "no good specialisation for bivariate factorisation");
  QPoly Fa = shift(F, iu, a);
  const Bi B = to_bi(Fa, iu, iv);
  auto local = upoly::factor(B[0]);
  if (local.size() <= 1) return {F};

  const std::size_t N = du + 1;
  // Monic target M = Fa / lc(u) as a series to precision N.
  upoly::QU lc = v_coefficient(Fa, iu, iv, dv);
  upoly::QU lcinv(N, 0);  // power series inverse of lc
  lcinv[0] = 1 / lc[0];
  for (std::size_t j = 1; j < N; ++j) {
    Rational s = 0;
    for (std::size_t i = 1; i <= j && i < lc.size(); ++i) s += lc[i] * lcinv[j - i];
    lcinv[j] = -s / lc[0];
  }
  Bi M(N);
  for (std::size_t j = 0; j < N; ++j)
    for (std::size_t i = 0; i <= j && i < B.size(); ++i) M[j] = upoly::add(M[j], upoly::scale(B[i], lcinv[j - i]));

  std::vector<upoly::QU> g;
  for (auto& fac : local) g.push_back(upoly::monic(fac.f));

  std::vector<Bi> lifted;
  Bi target = M;
  for (std::size_t i = 0; i + 1 < g.size(); ++i) {
    upoly::QU rest{1};
    for (std::size_t j = i + 1; j < g.size(); ++j) rest = upoly::mul(rest, g[j]);
    upoly::QU s, t;
    upoly::ext_gcd(g[i], rest, s, t);
    Bi G{g[i]}, H{rest};
    G.resize(N);
    H.resize(N);
    for (std::size_t j = 1; j < N; ++j) {
      Bi gh = bi_mul(G, H, j + 1);
      upoly::QU e = upoly::sub(target[j], gh.size() > j ? gh[j] : upoly::QU{});
      G[j] = upoly::rem(upoly::mul(t, e), g[i]);
      H[j] = upoly::rem(upoly::mul(s, e), rest);
    }
    lifted.push_back(G);
    target = H;
  }
  lifted.push_back(target);

  std::vector<QPoly> found;
  QPoly remaining = Fa;
  std::size_t sz = 1;
  while (2 * sz <= lifted.size()) {
    bool hit = false;
    std::vector<std::size_t> idx(sz);
    for (std::size_t i = 0; i < sz; ++i) idx[i] = i;
    const upoly::QU lcr = v_coefficient(remaining, iu, iv, remaining.degree_in(iv));
    for (;;) {
      Bi prod{lcr};
      for (auto i : idx) prod = bi_mul(prod, lifted[i], N);
      QPoly cand = from_bi(prod, ring, iu, iv);
      upoly::QU cont = v_content(cand, iu, iv);
      if (upoly::deg(cont) > 0) {
        QPoly cq = from_univariate(cont, ring, iu);
        cand = exact_divide(cand, cq);
      }
      if (cand.degree_in(iv) > 0 && divides(cand, remaining)) {
        found.push_back(cand);
        remaining = exact_divide(remaining, cand);
        for (std::size_t i = sz; i-- > 0;) lifted.erase(lifted.begin() + static_cast<long>(idx[i]));
        hit = true;
        break;
      }
      std::size_t i = sz;
      while (i > 0 && idx[i - 1] == lifted.size() - sz + i - 1) --i;
      if (i == 0) break;
      ++idx[i - 1];
      for (std::size_t j = i; j < sz; ++j) idx[j] = idx[j - 1] + 1;
    }
    if (!hit) ++sz;
  }
  if (remaining.degree_in(iv) > 0) found.push_back(remaining);
  for (auto& h : found) h = primitive_part(shift(h, iu, -a));
  return found;
}

std::vector<QPoly> factor_squarefree_poly(const QPoly& q, bool& complete);

inline std::vector<QPoly> factor_bivariate(const QPoly& q, std::size_t i0, std::size_t i1) {
  // u = variable of lower degree: fewer lifting steps.
  std::size_t iu = i0, iv = i1;
  if (q.degree_in(iu) > q.degree_in(iv)) std::swap(iu, iv);
  std::vector<QPoly> out;
  QPoly rest = q;
  upoly::QU cont = v_content(q, iu, iv);
  if (upoly::deg(cont) > 0) {
    for (auto& fac : upoly::factor(cont)) out.push_back(from_univariate(fac.f, q.ring(), iu));
    rest = exact_divide(rest, from_univariate(cont, q.ring(), iu));
  }
  if (rest.degree_in(iv) > 0)
    for (auto& h : factor_bivariate_primitive(rest, iu, iv)) out.push_back(h);
  return out;
}

inline std::vector<std::size_t> support_vars(const QPoly& q) {
  std::vector<std::size_t> vars;
  const auto s = q.support();
  for (std::size_t i = 0; i < q.ring()->size(); ++i)
    if (s & (1u << i)) vars.push_back(i);
  return vars;
}

inline std::vector<QPoly> factor_squarefree_poly(const QPoly& q, bool& complete) {
  const auto vars = support_vars(q);
  if (vars.empty()) return {};
  if (q.total_degree() == 1) return {primitive_part(q)};
  if (vars.size() == 1) {
    std::vector<QPoly> out;
    for (auto& fac : upoly::factor(to_univariate(q, vars[0]))) out.push_back(from_univariate(fac.f, q.ring(), vars[0]));
    return out;
  }
  if (vars.size() == 2) return factor_bivariate(q, vars[0], vars[1]);

  // Kronecker: x_b -> x_a^D.
  const std::size_t ia = vars[vars.size() - 2], ib = vars.back();
  const unsigned D = q.degree_in(ia) + 1;
  std::vector<QPoly> images;
  for (std::size_t i = 0; i < q.ring()->size(); ++i) images.push_back(QPoly::variable(q.ring(), i));
  images[ib] = QPoly::variable(q.ring(), ia).pow(D);
  const QPoly kq = substitute(q, images);

  std::vector<QPoly> pieces;
  {
    bool sub_complete = true;
    QPoly rest = kq;
    // kq is squarefree for all but degenerate inputs; the bivariate
    // specialisation search fails loudly otherwise and we give up on splitting.
    std::vector<QPoly> irr;
    try {
      irr = factor_squarefree_poly(kq, sub_complete);
    } catch (const Error&) {
      complete = false;
      return {primitive_part(q)};
    }
    complete = complete && sub_complete;
    for (const auto& f : irr) {
      while (divides(f, rest)) {
        pieces.push_back(f);
        rest = exact_divide(rest, f);
      }
    }
  }
  if (pieces.size() > 14) {
    complete = false;
    return {primitive_part(q)};
  }
  auto unkron = [&](const QPoly& p) {
    std::vector<Term<Rational>> terms;
    for (const auto& t : p.terms()) {
      Monomial m = t.m;
      const unsigned e = m[ia];
      m.set(ia, e % D);
      m.set(ib, e / D);
      terms.push_back({m, t.c});
    }
    return QPoly::from_terms(p.ring(), std::move(terms));
  };
  std::vector<QPoly> found;
  QPoly remaining = q;
  std::size_t sz = 1;
  while (2 * sz <= pieces.size()) {
    bool hit = false;
    std::vector<std::size_t> idx(sz);
    for (std::size_t i = 0; i < sz; ++i) idx[i] = i;
    for (;;) {
      QPoly prod = QPoly::constant(q.ring(), 1);
      for (auto i : idx) prod = prod * pieces[i];
      QPoly cand = unkron(prod);
      if (!cand.is_constant() && divides(cand, remaining)) {
        found.push_back(primitive_part(cand));
        remaining = exact_divide(remaining, cand);
        for (std::size_t i = sz; i-- > 0;) pieces.erase(pieces.begin() + static_cast<long>(idx[i]));
        hit = true;
        break;
      }
      std::size_t i = sz;
      while (i > 0 && idx[i - 1] == pieces.size() - sz + i - 1) --i;
      if (i == 0) break;
      ++idx[i - 1];
      for (std::size_t j = i; j < sz; ++j) idx[j] = idx[j - 1] + 1;
    }
    if (!hit) ++sz;
  }
  if (!remaining.is_constant()) found.push_back(primitive_part(remaining));
  return found;
}

}  // namespace detail

namespace detail {

/// p with every variable but `var` replaced by the given values.
inline upoly::QU specialise_to(const QPoly& p, std::size_t var, const std::vector<long>& at) {
  upoly::QU out(p.degree_in(var) + 1, 0);
  for (const auto& t : p.terms()) {
    Rational c = t.c;
    for (std::size_t i = 0; i < at.size(); ++i) {
      if (i == var || !t.m[i]) continue;
      Integer x;
      mpz_ui_pow_ui(x.get_mpz_t(), static_cast<unsigned long>(std::labs(at[i])), t.m[i]);
      c *= (at[i] < 0 && t.m[i] % 2) ? Integer(-x) : x;
    }
    out[t.m[var]] += c;
  }
  upoly::trim(out);
  return out;
}

/// Sufficient test for squarefreeness: a square factor g^2 with g involving
/// x_k survives every specialisation of the other variables that keeps the
/// degree in x_k.
inline bool certainly_squarefree(const QPoly& p) {
  SeededStream s(0x5f3759dfu, 50);
  for (auto var : support_vars(p)) {
    bool decided = false;
    for (int attempt = 0; attempt < 4 && !decided; ++attempt) {
      std::vector<long> at(p.ring()->size(), 0);
      for (auto& x : at) x = s.nonzero();
      const auto u = specialise_to(p, var, at);
      if (upoly::deg(u) != static_cast<int>(p.degree_in(var))) continue;
      if (!upoly::is_squarefree(u)) return false;
      decided = true;
    }
    if (!decided) return false;
  }
  return true;
}

}  // namespace detail

/// Squarefree part over Q (product of the distinct irreducible factors).
inline QPoly squarefree_part(const QPoly& p) {
  if (p.is_constant()) return p;
  if (detail::certainly_squarefree(p)) return primitive_part(p);
  QPoly g = p;
  for (auto v : detail::support_vars(p)) g = poly_gcd(g, partial(p, v));
  return primitive_part(g.is_constant() ? p : exact_divide(p, g));
}

inline Factorization factor(const QPoly& p) {
  if (p.is_zero()) throw Error(ErrorKind::precondition, "cannot factor the zero polynomial");
  Factorization out;
  const auto& ring = p.ring();
  QPoly rest = p;
  // Monomial content.
  for (std::size_t i = 0; i < ring->size(); ++i) {
    unsigned e = ~0u;
    for (const auto& t : rest.terms()) e = std::min<unsigned>(e, t.m[i]);
    if (e && e != ~0u) {
      out.factors.push_back({QPoly::variable(ring, i), e});
      rest = exact_divide(rest, QPoly::variable(ring, i).pow(e));
    }
  }
  if (!rest.is_constant()) {
    for (const auto& f : detail::factor_squarefree_poly(squarefree_part(rest), out.complete)) {
      unsigned m = 0;
      while (divides(f, rest)) {
        rest = exact_divide(rest, f);
        ++m;
      }
      if (m) out.factors.push_back({f, m});
    }
  }
  if (!rest.is_constant()) throw Error(ErrorKind::internal_inconsistency, "factorisation lost a factor");
  out.unit = rest.constant_term();
  std::sort(out.factors.begin(), out.factors.end(), [](const auto& a, const auto& b) {
    if (a.first.total_degree() != b.first.total_degree()) return a.first.total_degree() < b.first.total_degree();
    return to_string(a.first) < to_string(b.first);
  });
  return out;
}

}  // namespace betainv
