#pragma once

// Curve cycles at the origin and their decomposition.
//
// A 1-dimensional ideal is split along the Q-irreducible factors of its
// image under a generic projection to the (z0, v)-plane. Each piece Q_i is
// the saturation of I by the other factors; its radical P_i comes from
// Seidenberg's lemma over Q(z0). Galois-conjugate branches share their
// multiplicity, so
//
//   mult(Q_i) = len(Q_i + <z0>) / len(P_i + <z0>)
//
// and the C-branch count is read from the plane model.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "betainv/cycles/branches.hpp"
#include "betainv/cycles/local.hpp"
#include "betainv/sbasis/factor.hpp"

namespace betainv {

struct CycleComponent {
  QIdeal ideal;                 // radical ideal of the component (all conjugate branches)
  QIdeal primary;               // the piece of the decomposed ideal along it
  std::uint64_t multiplicity = 1;
  unsigned branches = 1;        // analytic branches at 0 grouped in this component
  bool certified_prime = true;  // factorisation complete and branch count certified
  std::uint64_t section = 0;    // (C . V(z0))_0, summed over branches
  std::uint64_t mult0 = 0;      // mult_0 C, summed over branches
  bool mult0_confident = true;
  QPoly plane_model;            // image in the (z0, v)-plane
  std::string warning;
};

struct CurveCycle {
  std::vector<CycleComponent> components;
  bool empty() const { return components.empty(); }
  bool certified() const {
    for (const auto& c : components)
      if (!c.certified_prime) return false;
    return true;
  }
  /// Σ multiplicity * (C . V(z0))_0
  std::uint64_t section_total() const {
    std::uint64_t s = 0;
    for (const auto& c : components) s += c.multiplicity * c.section;
    return s;
  }
  /// Σ over analytic branches of the multiplicity.
  std::uint64_t weighted_branches() const {
    std::uint64_t s = 0;
    for (const auto& c : components) s += c.multiplicity * c.branches;
    return s;
  }
  std::uint64_t branch_count() const {
    std::uint64_t s = 0;
    for (const auto& c : components) s += c.branches;
    return s;
  }
};

/// (Z . V(g))_0 = Σ m_C (C . V(g))_0
inline std::uint64_t intersect_number(const CurveCycle& Z, const QPoly& g) {
  std::uint64_t s = 0;
  for (const auto& c : Z.components) s += c.multiplicity * intersect_number(c.ideal, g);
  return s;
}

struct DecomposeOptions {
  std::uint64_t seed = 0x51ed270bu;
  unsigned projection_attempts = 4;
};

namespace detail {

inline QPoly gcd_of(const QIdeal& I) {
  QPoly g(I.ring());
  for (const auto& p : I.generators()) g = poly_gcd(g, p);
  return g;
}

/// Radical of a 1-dimensional ideal whose components are all transverse to
/// V(w0), near the origin: Seidenberg over Q(w0) then saturation at 0.
inline QIdeal radical_curve(const QIdeal& Q, const QPoly& extra) {
  const auto& R = Q.ring();
  QIdeal out = Q + extra;
  for (std::size_t k = 1; k < R->size(); ++k) {
    std::uint32_t mask = R->all_mask() & ~(1u | (1u << k));
    QIdeal e = eliminate(Q, mask);
    QPoly g = gcd_of(e);
    if (g.is_zero() || g.degree_in(k) == 0) continue;
    QPoly d = poly_gcd(g, partial(g, k));
    out = out + (d.is_constant() ? g : exact_divide(g, d));
  }
  return saturate_at_origin(out);
}

}  // namespace detail

/// Splits a 1-dimensional ideal (normalised frame, z0 = variable 0) into
/// components through the origin with their cycle multiplicities.
inline CurveCycle decompose(const QIdeal& input, const DecomposeOptions& opt = {}) {
  const auto& R = input.ring();
  const std::size_t nv = R->size();
  CurveCycle out;
  if (input.is_zero()) throw Error(ErrorKind::precondition, "cannot decompose the zero ideal");
  const QIdeal I = saturate_at_origin(input);
  const int d = dim_at_origin(I);
  if (d < 0) return out;
  if (d != 1) throw Error(ErrorKind::precondition, "decompose needs a 1-dimensional germ, got " + std::to_string(d));
  const QPoly w0 = QPoly::variable(R, 0);

  SeededStream stream(opt.seed);
  for (unsigned attempt = 0; attempt < opt.projection_attempts; ++attempt) {
    out.components.clear();
    // Generic projection (w0, w1, ..., wn) -> (w0, v), v = Σ c_i w_i.
    const QRingPtr plane = QRing::make({R->name(0), "v"});
    QPoly F(plane);
    std::vector<QPoly> back;  // plane variables as polynomials in R
    if (nv == 2) {
      back = {w0, QPoly::variable(R, 1)};
      F = rename_into(detail::gcd_of(I), plane, {0, 1});
    } else {
      std::vector<Rational> c(nv, 0);
      for (std::size_t i = 1; i < nv; ++i) c[i] = stream.nonzero();
      std::vector<std::string> names = R->names();
      names[1] = "v";
      while (R->index_of(names[1])) names[1] += "_";
      const QRingPtr Rp = QRing::make(names);
      std::vector<QPoly> img;
      for (std::size_t i = 0; i < nv; ++i) img.push_back(QPoly::variable(Rp, i));
      QPoly w1 = QPoly::variable(Rp, 1);
      for (std::size_t i = 2; i < nv; ++i) w1 = w1 - QPoly::variable(Rp, i).scale(c[i]);
      img[1] = w1.scale(1 / c[1]);
      QIdeal Ip(Rp);
      for (const auto& g : I.generators()) Ip.add(substitute(g, img));
      const QIdeal e = eliminate(Ip, Rp->all_mask() & ~3u);
      std::vector<std::size_t> to_plane(nv, 0);
      to_plane[1] = 1;
      F = rename_into(detail::gcd_of(e), plane, to_plane);
      QPoly v(R);
      for (std::size_t i = 1; i < nv; ++i) v = v + QPoly::variable(R, i).scale(c[i]);
      back = {w0, v};
    }
    if (F.is_zero() || F.is_constant()) {
      throw Error(ErrorKind::decomposition_incomplete, "projection of the curve is not a plane curve");
    }
    const Factorization fac = factor(F);
    std::vector<QPoly> lifted;
    for (const auto& [g, m] : fac.factors) lifted.push_back(substitute(g, back));

    bool projection_ok = true;
    for (std::size_t i = 0; i < fac.factors.size() && projection_ok; ++i) {
      const QPoly& Fi = fac.factors[i].first;
      if (value_at_origin(Fi) != 0) continue;
      QIdeal Qi = I;
      QPoly others = QPoly::constant(R, 1);
      for (std::size_t j = 0; j < lifted.size(); ++j)
        if (j != i) others = others * lifted[j];
      if (!others.is_constant()) Qi = saturate_at_origin(saturate(I, others).ideal);
      if (dim_at_origin(Qi) != 1) continue;  // image passes through 0, curve does not

      CycleComponent comp;
      comp.plane_model = Fi;
      comp.primary = Qi;
      const std::uint64_t len_q = local_length(Qi + w0, "z0-section of a component");
      // Plane section number: order of F_i(0, v).
      upoly::QU restricted(Fi.degree_in(1) + 1, 0);
      for (const auto& t : Fi.terms())
        if (t.m[0] == 0) restricted[t.m[1]] += t.c;
      upoly::trim(restricted);
      const int ord = upoly::valuation(restricted);
      if (len_q == static_cast<std::uint64_t>(ord)) {
        comp.ideal = reduced_presentation(Qi);  // generically reduced, hence radical near 0
      } else {
        comp.ideal = reduced_presentation(nv == 2 ? QIdeal(R, {lifted[i]}) : detail::radical_curve(Qi, lifted[i]));
      }
      comp.section = local_length(comp.ideal + w0, "z0-section of a component");
      if (comp.section != static_cast<std::uint64_t>(ord)) {
        projection_ok = false;  // not birational onto its image
        break;
      }
      if (len_q % comp.section != 0) {
        throw Error(ErrorKind::nonlocal_contribution,
                    "component length " + std::to_string(len_q) + " not divisible by its section " +
                        std::to_string(comp.section));
      }
      comp.multiplicity = len_q / comp.section;
      const auto mult = mult_at_origin(comp.ideal);
      comp.mult0 = mult.value;
      comp.mult0_confident = mult.confident;
      auto br = count_branches(Fi);
      if (br) {
        comp.branches = *br;
      } else {
        comp.branches = 1;
        comp.certified_prime = false;
        comp.warning = "unsplit: branch count of " + to_string(Fi) + " not certified; counted as one branch";
      }
      if (!fac.complete) {
        comp.certified_prime = false;
        if (comp.warning.empty()) comp.warning = "unsplit: factorisation search was cut off";
      }
      out.components.push_back(std::move(comp));
    }
    if (projection_ok) {
      std::sort(out.components.begin(), out.components.end(), [](const auto& a, const auto& b) {
        return to_string(a.ideal) < to_string(b.ideal);
      });
      return out;
    }
  }
  throw Error(ErrorKind::decomposition_incomplete, "no birational plane projection found");
}

}  // namespace betainv
