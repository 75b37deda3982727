#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>

#include "betainv/error.hpp"

namespace betainv {

/// Upper bound on ring size, including auxiliary elimination variables.
inline constexpr std::size_t kMaxVariables = 12;

/// Exponent vector. Slots beyond the ring's variable count stay zero, so
/// comparisons and hashing never need to know the ring size.
class Monomial {
 public:
  Monomial() = default;

  static Monomial variable(std::size_t i, unsigned power = 1) {
    Monomial m;
    m.set(i, power);
    return m;
  }

  unsigned operator[](std::size_t i) const { return e_[i]; }
  unsigned degree() const { return deg_; }
  bool is_one() const { return deg_ == 0; }

  void set(std::size_t i, unsigned v) {
    if (i >= kMaxVariables) throw Error(ErrorKind::precondition, "variable index out of range");
    if (v > 0xFFFFu) throw Error(ErrorKind::budget_exceeded, "exponent overflow");
    deg_ = deg_ - e_[i] + v;
    e_[i] = static_cast<std::uint16_t>(v);
  }

  bool divides(const Monomial& o) const {
    if (deg_ > o.deg_) return false;
    for (std::size_t i = 0; i < kMaxVariables; ++i)
      if (e_[i] > o.e_[i]) return false;
    return true;
  }

  friend Monomial operator*(const Monomial& a, const Monomial& b) {
    Monomial r;
    for (std::size_t i = 0; i < kMaxVariables; ++i) {
      const unsigned s = unsigned{a.e_[i]} + b.e_[i];
      if (s > 0xFFFFu) throw Error(ErrorKind::budget_exceeded, "exponent overflow");
      r.e_[i] = static_cast<std::uint16_t>(s);
    }
    r.deg_ = a.deg_ + b.deg_;
    return r;
  }

  /// a / b; requires b | a.
  friend Monomial operator/(const Monomial& a, const Monomial& b) {
    Monomial r;
    for (std::size_t i = 0; i < kMaxVariables; ++i) r.e_[i] = static_cast<std::uint16_t>(a.e_[i] - b.e_[i]);
    r.deg_ = a.deg_ - b.deg_;
    return r;
  }

  friend Monomial lcm(const Monomial& a, const Monomial& b) {
    Monomial r;
    for (std::size_t i = 0; i < kMaxVariables; ++i) {
      r.e_[i] = std::max(a.e_[i], b.e_[i]);
      r.deg_ += r.e_[i];
    }
    return r;
  }

  friend Monomial gcd(const Monomial& a, const Monomial& b) {
    Monomial r;
    for (std::size_t i = 0; i < kMaxVariables; ++i) {
      r.e_[i] = std::min(a.e_[i], b.e_[i]);
      r.deg_ += r.e_[i];
    }
    return r;
  }

  bool coprime(const Monomial& o) const {
    for (std::size_t i = 0; i < kMaxVariables; ++i)
      if (e_[i] && o.e_[i]) return false;
    return true;
  }

  /// Total degree restricted to the variables in `mask`.
  unsigned masked_degree(std::uint32_t mask) const {
    unsigned d = 0;
    for (std::size_t i = 0; i < kMaxVariables; ++i)
      if (mask & (1u << i)) d += e_[i];
    return d;
  }

  friend bool operator==(const Monomial& a, const Monomial& b) { return a.e_ == b.e_; }
  friend bool operator!=(const Monomial& a, const Monomial& b) { return !(a == b); }

  std::size_t hash() const {
    std::size_t h = 1469598103934665603ULL;
    for (auto x : e_) h = (h ^ x) * 1099511628211ULL;
    return h;
  }

 private:
  std::array<std::uint16_t, kMaxVariables> e_{};
  unsigned deg_ = 0;
};

/// Degree reverse lexicographic comparison: >0 when a > b.
inline int degrevlex_compare(const Monomial& a, const Monomial& b) {
  if (a.degree() != b.degree()) return a.degree() > b.degree() ? 1 : -1;
  for (std::size_t i = kMaxVariables; i-- > 0;) {
    if (a[i] != b[i]) return a[i] < b[i] ? 1 : -1;
  }
  return 0;
}

/// Monomial orders used by the engine.
///   degrevlex      global, canonical storage order
///   local          negative degrevlex: 1 is larger than every variable
///   elimination    weight on a variable block, refined by degrevlex
///   homogenized    global; total degree, then the local order on the
///                  variables outside the block (homogenising variable)
class MonomialOrder {
 public:
  enum class Kind { degrevlex, local, elimination, homogenized };

  static MonomialOrder degrevlex() { return MonomialOrder(Kind::degrevlex, 0); }
  static MonomialOrder local() { return MonomialOrder(Kind::local, 0); }
  static MonomialOrder elimination(std::uint32_t mask) {
    return MonomialOrder(Kind::elimination, mask);
  }
  static MonomialOrder homogenized(std::uint32_t mask) { return MonomialOrder(Kind::homogenized, mask); }

  Kind kind() const { return kind_; }
  std::uint32_t mask() const { return mask_; }
  bool is_local() const { return kind_ == Kind::local; }
  bool is_global() const { return kind_ != Kind::local; }

  int compare(const Monomial& a, const Monomial& b) const {
    switch (kind_) {
      case Kind::degrevlex:
        return degrevlex_compare(a, b);
      case Kind::local:
        if (a.degree() != b.degree()) return a.degree() < b.degree() ? 1 : -1;
        return degrevlex_compare(a, b);
      case Kind::elimination: {
        const unsigned da = a.masked_degree(mask_), db = b.masked_degree(mask_);
        if (da != db) return da > db ? 1 : -1;
        return degrevlex_compare(a, b);
      }
      case Kind::homogenized: {
        if (a.degree() != b.degree()) return a.degree() > b.degree() ? 1 : -1;
        const unsigned ta = a.masked_degree(mask_), tb = b.masked_degree(mask_);
        if (ta != tb) return ta > tb ? 1 : -1;
        return degrevlex_compare(a, b);
      }
    }
    return 0;
  }

  bool greater(const Monomial& a, const Monomial& b) const { return compare(a, b) > 0; }

  friend bool operator==(const MonomialOrder& a, const MonomialOrder& b) {
    return a.kind_ == b.kind_ && a.mask_ == b.mask_;
  }

 private:
  MonomialOrder(Kind k, std::uint32_t mask) : kind_(k), mask_(mask) {}
  Kind kind_;
  std::uint32_t mask_;
};

}  // namespace betainv

template <>
struct std::hash<betainv::Monomial> {
  std::size_t operator()(const betainv::Monomial& m) const { return m.hash(); }
};
