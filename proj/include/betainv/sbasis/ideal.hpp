#pragma once

#include <string>
#include <vector>

#include "betainv/ring/format.hpp"
#include "betainv/ring/polynomial.hpp"

namespace betainv {

/// Finite generating set of an ideal. Zero generators are dropped; an empty
/// list presents the zero ideal.
template <class C>
class Ideal {
 public:
  Ideal() = default;
  explicit Ideal(RingPtr<C> ring) : ring_(std::move(ring)) {}
  Ideal(RingPtr<C> ring, std::vector<Polynomial<C>> gens) : ring_(std::move(ring)) {
    for (auto& g : gens) add(std::move(g));
  }
  Ideal(std::initializer_list<Polynomial<C>> gens) {
    for (const auto& g : gens) {
      if (!ring_) ring_ = g.ring();
      add(g);
    }
  }

  static Ideal unit(RingPtr<C> ring) {
    Ideal I(ring);
    I.add(Polynomial<C>::constant(ring, 1));
    return I;
  }
  /// Maximal ideal of the origin.
  static Ideal maximal(RingPtr<C> ring) {
    Ideal I(ring);
    for (std::size_t i = 0; i < ring->size(); ++i) I.add(Polynomial<C>::variable(ring, i));
    return I;
  }

  void add(Polynomial<C> g) {
    if (!ring_) ring_ = g.ring();
    Polynomial<C>::check_same_ring(Polynomial<C>(ring_), g);
    if (!g.is_zero()) gens_.push_back(std::move(g));
  }

  const RingPtr<C>& ring() const { return ring_; }
  const std::vector<Polynomial<C>>& generators() const { return gens_; }
  std::size_t size() const { return gens_.size(); }
  bool is_zero() const { return gens_.empty(); }

  friend Ideal operator+(Ideal a, const Ideal& b) {
    for (const auto& g : b.gens_) a.add(g);
    return a;
  }
  friend Ideal operator+(Ideal a, const Polynomial<C>& g) {
    a.add(g);
    return a;
  }

  /// Stable textual key (used for memoisation and reports).
  std::string key() const {
    std::string k = ring_ ? ring_->field().name() : "";
    if (ring_)
      for (const auto& n : ring_->names()) k += "," + n;
    k += "|";
    for (const auto& g : gens_) k += to_string(g) + ";";
    return k;
  }

 private:
  RingPtr<C> ring_;
  std::vector<Polynomial<C>> gens_;
};

using QIdeal = Ideal<Rational>;

template <class C>
std::string to_string(const Ideal<C>& I) {
  std::string s = "<";
  for (std::size_t i = 0; i < I.size(); ++i) {
    if (i) s += ", ";
    s += to_string(I.generators()[i]);
  }
  return s + ">";
}

}  // namespace betainv
