#pragma once

#include <string>
#include <vector>

#include "secant/space.hpp"

namespace secant {

// Per-factor constraint on a scheme component. The coordinate hyperplane is
// always {x_{i,n_i} = 0} and the anchor point is (1,0,...,0).
//
//   kind            support of the point      tangent directions kept
//   Full            generic                   n_i
//   OnHyperplane    last coordinate zero      n_i      (doubling w.r.t. X)
//   Hyperplane      last coordinate zero      n_i - 1  (doubling w.r.t. H)
//   FixedPoint      the anchor                0
enum class Constraint { Full, OnHyperplane, Hyperplane, FixedPoint };

// One fat point: a simple point (multiplicity 1) or a double point
// (multiplicity 2) with one constraint per factor.
struct SchemeComponent {
  int multiplicity = 2;
  std::vector<Constraint> constraints;

  int tangent_dim(const SegreVeronesePair& pair) const;
  // 1 for a simple point, tangent_dim + 1 for a double point.
  long long degree(const SegreVeronesePair& pair) const;
};

struct SchemeSpec {
  SegreVeronesePair pair;
  std::vector<SchemeComponent> components;

  long long total_degree() const;
  // Compact text form, e.g. "3*2pt + 2*2pt@H2 + 1*1pt@H2" (factor indices
  // are 1-based in the text, 0-based everywhere in the API).
  std::string descriptor() const;
};

struct ComponentGroup {
  long long count = 1;
  int multiplicity = 2;
  std::vector<Constraint> constraints;  // empty means all Full
};

SchemeSpec make_scheme(const SegreVeronesePair& pair, const std::vector<ComponentGroup>& groups);

// z generic double points.
SchemeSpec double_points(const SegreVeronesePair& pair, long long z);

// Inverse of SchemeSpec::descriptor; accepts codes H (Hyperplane),
// O (OnHyperplane), E (FixedPoint) with 1-based factor indices.
SchemeSpec parse_scheme(const SegreVeronesePair& pair, const std::string& text);

// Degree bookkeeping of the residual exact sequence w.r.t. the divisor
// pulled back from the hyperplane of one factor. Components whose
// constraint on that factor is not Full lie on the divisor.
struct DegreeSplit {
  long long residual = 0;
  long long trace = 0;
};
DegreeSplit split_degree(const SchemeSpec& scheme, int divisor_factor);

}  // namespace secant
