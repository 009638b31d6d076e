#pragma once

#include <optional>

#include "oat/metric.hpp"

namespace oat {

struct SearchBounds {
  int max_points = 6;  // |B| per vertex
  int max_star = 4;    // |B*| per vertex
  int max_values = 8;  // value semilattice size per vertex
};

struct SearchOutcome {
  bool found = false;
  std::optional<LiftingCandidate> witness;
  long long nodes = 0;    // completed vertex assemblies
  long long bottoms = 0;  // completed bottom assemblies
};

// Exhaustive search for a lifting of the square within the bounds.
//
// Candidates are enumerated in a reduced form every within-bound lifting can
// be restricted to: star sets are bijective sections of the chi components
// (with the top star the image of the side stars), value semilattices are
// generated by the occurring distances, and interchangeable extra points are
// ordered canonically.  Side maps of the target square must be injective on
// points (the inclusion hypotheses guarantee this).
//
// When both side assemblies force the value chi~(delta(a_i, u_i(x))) to zero
// and the square has delta(a1,a2) != 0, no top vertex can close the cube, so
// the top enumeration for those assemblies is skipped.
SearchOutcome search_lifting(const UnliftableSquareData& d,
                             const SearchBounds& bounds = {});

}  // namespace oat
