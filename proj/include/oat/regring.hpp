#pragma once

#include <optional>
#include <string>
#include <vector>

#include "oat/common.hpp"
#include "oat/poset.hpp"

namespace oat {

// A finite associative ring, not necessarily unital, by its tables.
struct FinRing {
  int n = 0;
  std::vector<int> add;  // n*n
  std::vector<int> mul;  // n*n
  int zero = 0;
  std::vector<int> neg;  // additive inverse
  std::vector<std::string> labels;

  static FinRing make(int n, std::vector<int> add, std::vector<int> mul,
                      std::vector<std::string> labels = {});

  int plus(int a, int b) const { return add[a * n + b]; }
  int times(int a, int b) const { return mul[a * n + b]; }
  int minus(int a, int b) const { return plus(a, neg[b]); }

  std::optional<int> unit() const;            // two-sided identity, if any
  bool is_regular() const;
  std::optional<int> quasi_inverse(int a) const;
  std::vector<int> idempotents() const;
};

// Standard constructions for the CLI mini-language.
FinRing ring_gf(int p);
FinRing ring_matrix(int dim, int p);          // dim x dim matrices over GF(p)
FinRing ring_product(const FinRing& a, const FinRing& b);

// A right ideal given by its element set, with a principal generator when
// known.
struct RightIdeal {
  IndexSet elems;
  int generator = -1;  // an idempotent e with eR = elems, when principal

  bool operator==(const RightIdeal& o) const { return elems == o.elems; }
  bool operator<(const RightIdeal& o) const { return elems < o.elems; }
};

RightIdeal principal_right_ideal(const FinRing& r, int x);

// The lattice of principal right ideals of a regular ring, ordered by
// containment; verified sectionally complemented and modular.
struct LatticeLR {
  FinRing ring;
  std::vector<RightIdeal> ideals;  // sorted by element set

  int index_of(const IndexSet& elems) const;
  bool leq(int i, int j) const;
  int join(int i, int j) const;  // set-level sum, located in the list
  int meet(int i, int j) const;  // set-level intersection
  int zero_ideal() const;
  FinPoset as_poset() const;
};

LatticeLR lattice_L(const FinRing& r, int size_bound = 256);

struct JoinMeetWitness {
  int join_witness;  // a + c
  int meet_witness;  // b - bd
  RightIdeal join;
  RightIdeal meet;
};

// The explicit witnesses: with u a quasi-inverse of b - ab,
// aR + bR = (a + (b-ab)u)R and aR ∩ bR = (b - b·u(b-ab))R.
JoinMeetWitness join_meet_via_formulas(const FinRing& r, int a, int b);

// For aR ⊆ bR with a, b idempotent: the complement (b-ab)R of aR inside bR.
RightIdeal section_complement(const FinRing& r, int a, int b);

// aR ≅ bR as right modules, via the existence of x, y with a = yx, b = xy.
bool idempotents_module_iso(const FinRing& r, int a, int b);

// All two-sided ideals, as element sets, sorted.
std::vector<IndexSet> two_sided_ideals(const FinRing& r);

// Lattice ideals of L(R) closed under module isomorphism.
std::vector<std::vector<int>> neutral_ideals(const LatticeLR& l);

struct NeutralCorrespondence {
  LatticeLR lattice;
  std::vector<std::vector<int>> neutral;   // each a sorted list of ideal indices
  std::vector<IndexSet> ring_ideals;       // sorted element sets
  std::vector<int> phi;                    // neutral index -> ring ideal index
  std::vector<int> psi;                    // ring ideal index -> neutral index
};

// The mutually inverse maps I -> {x : xR ∈ I} and I -> L(R)↓I, verified.
NeutralCorrespondence neutral_ideal_correspondence(const FinRing& r);

struct QuotientLIso {
  FinRing quotient;                  // R/I
  LatticeLR quotient_lattice;        // L(R/I)
  std::vector<int> cls;              // ring element -> coset index
  std::vector<std::vector<int>> lr_classes;  // L(R)/I blocks, by ideal index
  std::vector<int> iso;              // block index -> ideal index in L(R/I)
};

// Builds R/I and the isomorphism L(R)/I -> L(R/I), verified both ways.
QuotientLIso quotient_L_iso(const FinRing& r, const IndexSet& two_sided);

// An idempotent e with X ⊆ eRe, built by the corner recipe.
int faith_utumi_corner(const FinRing& r, const IndexSet& x);

struct RingHom {
  FinRing src, dst;
  std::vector<int> map;

  static RingHom make(FinRing src, FinRing dst, std::vector<int> map);
};

// The induced 0-lattice homomorphism xR -> f(x)S, as an index map between
// the two lattices; preservation of 0, joins and meets is checked.
std::vector<int> L_of_hom(const RingHom& f, const LatticeLR& lr,
                          const LatticeLR& ls);

}  // namespace oat
