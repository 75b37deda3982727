#pragma once

// Linear coordinate changes and seeded random linear forms.

#include <cstdint>
#include <random>
#include <vector>

#include "betainv/ring/polynomial.hpp"

namespace betainv {

template <class C>
using Matrix = std::vector<std::vector<C>>;

/// Deterministic stream of small nonzero integers, reproducible from a seed.
class SeededStream {
 public:
  explicit SeededStream(std::uint64_t seed, int bound = 7) : gen_(seed), bound_(bound) {}

  /// Uniform in [-bound, bound] \ {0}.
  long nonzero() {
    std::uniform_int_distribution<long> d(1, bound_);
    const long v = d(gen_);
    return coin() ? v : -v;
  }
  long in_range(long lo, long hi) {
    std::uniform_int_distribution<long> d(lo, hi);
    return d(gen_);
  }
  bool coin() { return std::uniform_int_distribution<int>(0, 1)(gen_) == 1; }
  std::uint64_t next_seed() { return gen_(); }

 private:
  std::mt19937_64 gen_;
  int bound_;
};

/// Inverse by Gauss-Jordan elimination; throws `singular_matrix`.
template <class C>
Matrix<C> inverse(const Matrix<C>& m, const Field<C>& field) {
  const std::size_t n = m.size();
  Matrix<C> a = m;
  Matrix<C> inv(n, std::vector<C>(n, field.zero()));
  for (std::size_t i = 0; i < n; ++i) {
    if (a[i].size() != n) throw Error(ErrorKind::precondition, "matrix is not square");
    inv[i][i] = field.one();
  }
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && Field<C>::is_zero(a[piv][col])) ++piv;
    if (piv == n) throw Error(ErrorKind::singular_matrix, "matrix is not invertible");
    std::swap(a[piv], a[col]);
    std::swap(inv[piv], inv[col]);
    const C s = field.one() / a[col][col];
    for (std::size_t j = 0; j < n; ++j) {
      a[col][j] *= s;
      inv[col][j] *= s;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || Field<C>::is_zero(a[r][col])) continue;
      const C f = a[r][col];
      for (std::size_t j = 0; j < n; ++j) {
        a[r][j] -= f * a[col][j];
        inv[r][j] -= f * inv[col][j];
      }
    }
  }
  return inv;
}

/// Rank of a matrix of field scalars.
template <class C>
std::size_t rank(Matrix<C> a) {
  std::size_t r = 0;
  const std::size_t rows = a.size();
  const std::size_t cols = rows ? a[0].size() : 0;
  for (std::size_t col = 0; col < cols && r < rows; ++col) {
    std::size_t piv = r;
    while (piv < rows && Field<C>::is_zero(a[piv][col])) ++piv;
    if (piv == rows) continue;
    std::swap(a[piv], a[r]);
    for (std::size_t i = r + 1; i < rows; ++i) {
      if (Field<C>::is_zero(a[i][col])) continue;
      const C f = a[i][col] / a[r][col];
      for (std::size_t j = col; j < cols; ++j) a[i][j] -= f * a[r][j];
    }
    ++r;
  }
  return r;
}

/// The linear form sum_j row[j] * z_j.
template <class C>
Polynomial<C> linear_form(const RingPtr<C>& ring, const std::vector<C>& row) {
  std::vector<Term<C>> terms;
  for (std::size_t j = 0; j < row.size(); ++j)
    if (!Field<C>::is_zero(row[j])) terms.push_back({Monomial::variable(j), row[j]});
  return Polynomial<C>::from_terms(ring, std::move(terms));
}

/// p(Mz): every variable z_i is replaced by sum_j M[i][j] z_j.
template <class C>
Polynomial<C> linear_change(const Polynomial<C>& p, const Matrix<C>& m) {
  const auto& ring = p.ring();
  if (m.size() != ring->size()) throw Error(ErrorKind::precondition, "matrix size does not match ring");
  (void)inverse(m, ring->field());  // invertibility check
  std::vector<Polynomial<C>> images;
  images.reserve(m.size());
  for (const auto& row : m) images.push_back(linear_form(ring, row));
  return substitute(p, images);
}

/// Coefficients of a degree-one form; throws if p is not a linear form.
template <class C>
std::vector<C> linear_coefficients(const Polynomial<C>& p) {
  std::vector<C> row(p.ring()->size(), p.ring()->field().zero());
  for (const auto& t : p.terms()) {
    if (t.m.degree() != 1) throw Error(ErrorKind::input, "expected a homogeneous linear form");
    for (std::size_t j = 0; j < row.size(); ++j)
      if (t.m[j]) row[j] = t.c;
  }
  return row;
}

/// Degree-one form whose coefficients are all nonzero small integers drawn
/// from the seeded stream.
template <class C>
Polynomial<C> random_linear_form(std::uint64_t seed, const RingPtr<C>& ring) {
  SeededStream s(seed);
  std::vector<C> row;
  row.reserve(ring->size());
  for (std::size_t j = 0; j < ring->size(); ++j) row.push_back(ring->field().from_integer(s.nonzero()));
  return linear_form(ring, row);
}

}  // namespace betainv
