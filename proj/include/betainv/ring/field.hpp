#pragma once

// Coefficient fields. Everything in the engine is exact: rationals are GMP
// backed, prime fields use a runtime modulus carried by every element.

#include <cstdint>
#include <stdexcept>
#include <string>

#include <gmpxx.h>

#include "betainv/error.hpp"

namespace betainv {

using Integer = mpz_class;
using Rational = mpq_class;

/// Element of Z/pZ. The modulus travels with the value so that elements are
/// self-describing and arithmetic needs no ambient context.
class Fp {
 public:
  Fp() = default;
  Fp(std::uint64_t value, std::uint64_t modulus)
      : v_(modulus == 0 ? 0 : value % modulus), p_(modulus) {}

  std::uint64_t value() const { return v_; }
  std::uint64_t modulus() const { return p_; }
  bool is_zero() const { return v_ == 0; }

  friend Fp operator+(Fp a, Fp b) {
    const std::uint64_t p = a.p_ ? a.p_ : b.p_;
    std::uint64_t s = a.v_ + b.v_;
    if (s >= p) s -= p;
    return Fp(s, p);
  }
  friend Fp operator-(Fp a, Fp b) {
    const std::uint64_t p = a.p_ ? a.p_ : b.p_;
    return Fp(a.v_ >= b.v_ ? a.v_ - b.v_ : a.v_ + p - b.v_, p);
  }
  friend Fp operator*(Fp a, Fp b) {
    const std::uint64_t p = a.p_ ? a.p_ : b.p_;
    return Fp(static_cast<std::uint64_t>(
                  (static_cast<unsigned __int128>(a.v_) * b.v_) % p),
              p);
  }
  Fp operator-() const { return Fp(v_ == 0 ? 0 : p_ - v_, p_); }
  friend Fp operator/(Fp a, Fp b) { return a * b.inverse(); }

  Fp& operator+=(Fp b) { return *this = *this + b; }
  Fp& operator-=(Fp b) { return *this = *this - b; }
  Fp& operator*=(Fp b) { return *this = *this * b; }
  Fp& operator/=(Fp b) { return *this = *this / b; }

  friend bool operator==(Fp a, Fp b) { return a.v_ == b.v_; }

  Fp inverse() const {
    if (v_ == 0) throw Error(ErrorKind::division_by_zero, "inverse of 0 in F_p");
    return pow(p_ - 2);
  }
  Fp pow(std::uint64_t e) const {
    Fp base = *this;
    Fp acc(1, p_);
    while (e) {
      if (e & 1) acc *= base;
      base *= base;
      e >>= 1;
    }
    return acc;
  }

 private:
  std::uint64_t v_ = 0;
  std::uint64_t p_ = 0;
};

inline bool is_probable_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t q : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % q == 0) return n == q;
  }
  // Deterministic Miller-Rabin for 64-bit inputs.
  auto mulmod = [](std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
  };
  auto powmod = [&](std::uint64_t a, std::uint64_t e, std::uint64_t m) {
    std::uint64_t r = 1;
    while (e) {
      if (e & 1) r = mulmod(r, a, m);
      a = mulmod(a, a, m);
      e >>= 1;
    }
    return r;
  };
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    std::uint64_t x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

/// Field descriptor. Specialisations provide constants, conversion from
/// rationals and a stable textual name.
template <class C>
struct Field;

template <>
struct Field<Rational> {
  using value_type = Rational;
  static constexpr bool is_rational = true;

  Rational zero() const { return Rational(0); }
  Rational one() const { return Rational(1); }
  Rational from_integer(long v) const { return Rational(v); }
  Rational from_rational(const Rational& q) const { return q; }
  static bool is_zero(const Rational& c) { return sgn(c) == 0; }
  std::string name() const { return "qq"; }
  bool operator==(const Field&) const { return true; }
};

/// Prime field with a runtime modulus. The modulus must be prime and larger
/// than 2^20 so that random coefficient collisions stay negligible.
template <>
struct Field<Fp> {
  using value_type = Fp;
  static constexpr bool is_rational = false;

  std::uint64_t modulus = 2147483647ULL;

  Field() = default;
  explicit Field(std::uint64_t p) : modulus(p) {
    if (p <= (1ULL << 20) || p >= (1ULL << 62) || !is_probable_prime(p)) {
      throw Error(ErrorKind::input, "prime field modulus must be a prime in (2^20, 2^62): " +
                                        std::to_string(p));
    }
  }

  Fp zero() const { return Fp(0, modulus); }
  Fp one() const { return Fp(1, modulus); }
  Fp from_integer(long v) const {
    long r = v % static_cast<long>(modulus);
    if (r < 0) r += static_cast<long>(modulus);
    return Fp(static_cast<std::uint64_t>(r), modulus);
  }
  Fp from_integer(const Integer& v) const {
    Integer r = v % Integer(std::to_string(modulus));
    if (r < 0) r += Integer(std::to_string(modulus));
    return Fp(std::stoull(r.get_str()), modulus);
  }
  /// Reduces a rational; throws when the denominator vanishes mod p.
  Fp from_rational(const Rational& q) const {
    Fp den = from_integer(Integer(q.get_den()));
    if (den.is_zero()) {
      throw Error(ErrorKind::division_by_zero, "denominator divisible by the modulus");
    }
    return from_integer(Integer(q.get_num())) / den;
  }
  static bool is_zero(const Fp& c) { return c.is_zero(); }
  std::string name() const { return "fp:" + std::to_string(modulus); }
  bool operator==(const Field& o) const { return modulus == o.modulus; }
};

inline std::string coefficient_to_string(const Rational& c) { return c.get_str(); }
inline std::string coefficient_to_string(const Fp& c) { return std::to_string(c.value()); }

inline bool coefficient_is_one(const Rational& c) { return c == 1; }
inline bool coefficient_is_one(const Fp& c) { return c.value() == 1; }
inline bool coefficient_is_negative(const Rational& c) { return sgn(c) < 0; }
inline bool coefficient_is_negative(const Fp&) { return false; }

}  // namespace betainv
