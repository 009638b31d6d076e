#pragma once

#include <string>
#include <vector>

#include "oat/poset.hpp"

namespace oat {

// A finite P-scaled Boolean algebra, stored by its atoms.  The carrier is the
// powerset of the atom set (elements are atom subsets); every atom carries an
// ideal of P as its norm.  The scale ideals A^(p) are recovered as the
// principal Boolean ideals below the join of the atoms whose norm contains p.
struct PScaledBA {
  FinPoset P;
  std::vector<std::string> atoms;
  std::vector<IndexSet> atom_norm;  // one ideal carrier over P per atom

  // Validates nonempty atom set and that every norm is an ideal of P, then
  // re-checks the two scale axioms at the element level.
  static PScaledBA make(FinPoset p, std::vector<std::string> atoms,
                        std::vector<IndexSet> atom_norm);

  int atom_count() const { return static_cast<int>(atoms.size()); }
  int atom_index(const std::string& label) const;
  // |a|: the largest element of the atom's norm (exists by finiteness).
  int norm_max(int atom) const;
  // Atoms of the generator of A^(p).
  IndexSet scale_atoms(int p) const;

  bool same_as(const PScaledBA& other) const;
};

// Norm-preserving atom bijection exists (both algebras over the same P).
bool scaled_isomorphic(const PScaledBA& a, const PScaledBA& b);

// A finite P-normed space: discrete points with ideal norms.
struct PNormedSpace {
  FinPoset P;
  std::vector<std::string> points;
  std::vector<IndexSet> norm;

  static PNormedSpace make(FinPoset p, std::vector<std::string> points,
                           std::vector<IndexSet> norm);
};

PNormedSpace ult(const PScaledBA& a);
PScaledBA clop(const PNormedSpace& x);
bool spaces_isomorphic(const PNormedSpace& x, const PNormedSpace& y);

// A morphism src -> dst in the scaled category, stored by its Stone-dual
// atom map: dual[b] is the unique atom a of src with b <= f(a).  The defining
// condition is atom_norm(dual[b]) ⊆ atom_norm(b) for every atom b of dst.
struct ScaledMorphism {
  PScaledBA src;
  PScaledBA dst;
  std::vector<int> dual;  // indexed by atoms of dst, values are atoms of src

  static ScaledMorphism make(PScaledBA src, PScaledBA dst, std::vector<int> dual);
  static ScaledMorphism identity(const PScaledBA& a);

  // The algebra-level map on an element of src (an atom subset).
  IndexSet apply(const IndexSet& src_element) const;
  bool same_as(const ScaledMorphism& other) const;
};

// g ∘ f; the dual map composes contravariantly.
ScaledMorphism compose(const ScaledMorphism& g, const ScaledMorphism& f);

// 2[p]: one atom whose norm is P↓p.
PScaledBA two(const FinPoset& p, int elem);
// ε_p^q : 2[p] -> 2[q] for p <= q.
ScaledMorphism eps(const FinPoset& p, int from, int to);

// Surjective with f``(A^(p)) = B^(p); dually an injective norm-preserving map.
bool is_normal(const ScaledMorphism& f);

struct ScaledQuotient {
  PScaledBA algebra;
  ScaledMorphism projection;
};

// Quotient by the Boolean ideal generated by a set of atoms; killing every
// atom is rejected.
ScaledQuotient scaled_quotient(const PScaledBA& a, const IndexSet& killed_atoms);

struct ScaledProduct {
  PScaledBA algebra;
  std::vector<ScaledMorphism> projections;
};

// Product over a nonempty list; atoms are the tagged disjoint union.
ScaledProduct scaled_product(const std::vector<PScaledBA>& factors);

// One member of Σ_A: a finite subalgebra (a partition of the atoms into
// blocks) together with a P-labeling of its blocks.
struct SigmaMember {
  std::vector<IndexSet> blocks;  // partition of atom indices, canonically sorted
  std::vector<int> label;        // element of P per block, with block ⊆ A^(label)
};

struct SigmaResult {
  std::vector<SigmaMember> members;
  std::vector<std::vector<char>> below;  // below[i][j] iff members[i] ⊑ members[j]
  bool directed = false;
  bool unions_match = false;  // ∪_f A_f^(p) = A^(p) for every p
  int top_member = -1;        // index of the member with A_f = A, f = |·|
};

SigmaResult sigma_enumerate(const PScaledBA& a, int max_members = 100000);

}  // namespace oat
