#pragma once

#include <optional>
#include <string>
#include <vector>

#include "oat/structures.hpp"

namespace oat {

// A semilattice-metric space: points with a distance valued in a finite
// join-semilattice with zero.
struct SemMetricSpace {
  std::vector<std::string> points;
  FinCommMonoid values;               // validated idempotent (a semilattice)
  std::vector<std::vector<int>> delta;

  static SemMetricSpace make(std::vector<std::string> points, FinCommMonoid values,
                             std::vector<std::vector<int>> delta);

  int point_count() const { return static_cast<int>(points.size()); }
  int point_index(const std::string& label) const;
  int dist(int x, int y) const { return delta[x][y]; }
  bool vleq(int a, int b) const { return values.plus(a, b) == b; }
};

// A cover: a space with a distinguished subset satisfying the Parallelogram
// Rule (for star points x, y, z some t has δ(x,t) ≤ δ(y,z) and δ(t,z) ≤ δ(x,y)).
struct SemMetricCover {
  SemMetricSpace space;
  IndexSet star;

  static SemMetricCover make(SemMetricSpace space, IndexSet star);
};

struct MetrMorphism {
  SemMetricSpace src;
  SemMetricSpace dst;
  std::vector<int> point_map;
  std::vector<int> value_map;  // a join-zero homomorphism of value semilattices

  static MetrMorphism make(SemMetricSpace src, SemMetricSpace dst,
                           std::vector<int> point_map, std::vector<int> value_map);
  bool double_arrow() const;  // surjective point component
};

MetrMorphism metr_compose(const MetrMorphism& g, const MetrMorphism& f);
MetrMorphism metr_identity(const SemMetricSpace& a);

// The underlying space of a cover: star points, restricted distance, same
// value semilattice.
SemMetricSpace flat(const SemMetricCover& b);

// A♮ for an algebra A: points of A, values the congruence semilattice,
// distance the principal congruence.
struct NaturalSpace {
  SemMetricSpace space;
  std::vector<Congruence> congruences;  // value element i <-> congruences[i]
};

NaturalSpace natural(const FinStructure& a, std::vector<std::string> labels = {});

struct SpaceQuotient {
  SemMetricSpace space;
  MetrMorphism projection;
};

// Quotient by an ideal of the value semilattice: identifies points at
// distance inside the ideal and divides the values by the o-ideal.
SpaceQuotient quotient_space(const SemMetricSpace& a, const IndexSet& ideal);

// A square of spaces indexed by {0,1}^2 with inclusion-style side maps.
struct SquareOfSpaces {
  SemMetricSpace a0, a1, a2, top;
  MetrMorphism f1, f2, g1, g2;  // a0->a1, a0->a2, a1->top, a2->top

  static SquareOfSpaces make(SemMetricSpace a0, SemMetricSpace a1,
                             SemMetricSpace a2, SemMetricSpace top,
                             MetrMorphism f1, MetrMorphism f2, MetrMorphism g1,
                             MetrMorphism g2);
};

struct UnliftableSquareData {
  SquareOfSpaces square;
  int zero_pt, one_pt, a0_pt;  // in a0
  int a1_pt;                   // in a1
  int a2_pt;                   // in a2
  int alpha, beta;             // in a0.values
};

struct HypothesisReport {
  bool ok = true;
  std::vector<std::string> failures;
};

// The four hypothesis families: inclusion side maps, orthogonal images of
// alpha and beta on both sides, and the four distance inequalities.
HypothesisReport check_square_hypotheses(const UnliftableSquareData& d);

UnliftableSquareData build_m3_square();
UnliftableSquareData build_n5_square();
// A liftable instance: all-zero distances on a three-point space.
UnliftableSquareData build_control_square();

struct SquareOfCovers {
  SemMetricCover b0, b1, b2, top;
  MetrMorphism u1, u2, v1, v2;  // between the underlying spaces, star to star

  static SquareOfCovers make(SemMetricCover b0, SemMetricCover b1,
                             SemMetricCover b2, SemMetricCover top,
                             MetrMorphism u1, MetrMorphism u2, MetrMorphism v1,
                             MetrMorphism v2);
};

struct LiftingCandidate {
  SquareOfCovers covers;
  MetrMorphism chi0, chi1, chi2, chi_top;  // flat(B_i) -> A_i
};

struct LiftVerdict {
  bool accepted = false;
  std::string detail;
};

// Checks the candidate against the square: naturality of the four faces
// (input error naming the face when broken), surjectivity of the three lower
// components (precondition), then replays the forcing computation and
// reports the first violated equation, accepting only consistent candidates.
LiftVerdict verify_lifting(const UnliftableSquareData& d,
                           const LiftingCandidate& cand);

}  // namespace oat
