#pragma once

#include <string>
#include <vector>

#include "oat/poset.hpp"
#include "oat/pscaled.hpp"

namespace oat {

// The P-scaled Boolean algebra presented by the generators ũ, u ∈ X, of a
// norm-covering.  For finite X the presented algebra is the full powerset of
// Id X, so atoms are the (principal) ideals of X; atom i corresponds to the
// ideal X↓i and the generator ũ is realized as the set of ideals containing u.
struct FreeScaled {
  NormCovering cover;
  PScaledBA algebra;           // atom i <-> ideal X↓i, labeled by X.label(i)
  std::vector<IndexSet> gen;   // per u in X, the element ũ as an atom subset
};

// Builds F(X) and verifies the three presentation relations together with
// the description of every scale ideal F(X)^(p).
FreeScaled build_fx(const NormCovering& cover);

enum class FxRelation { None, Antitone, MeetRule, MinCover };

struct UniversalExtension {
  bool ok = false;
  FxRelation failed = FxRelation::None;
  std::string detail;          // violating generators when not ok
  std::vector<int> dual;       // per codomain atom, an atom (ideal) of F(X)
};

// Given a finite Boolean algebra B presented by its atom count and an
// assignment u -> element of B (an atom subset), returns the unique extending
// homomorphism when the assignment satisfies the relations, computed atomwise
// through the ultrafilters of B.
UniversalExtension universal_extend(const FreeScaled& fx, int b_atoms,
                                    const std::vector<IndexSet>& assign);

// π^X_u : F(X) -> 2[∂u], the evaluation at an ideal u of X.  Always normal.
ScaledMorphism pi_u(const FreeScaled& fx, const IndexSet& ideal_carrier);

// f_X^Y : F(X) -> F(Y) for X a ▽-closed sub-covering of Y; the dual map
// sends an ideal v of Y to v ∩ X.
ScaledMorphism f_xy(const FreeScaled& sub, const FreeScaled& sup);

// Checks that sub's carrier is a ▽-closed subset of sup with the restricted
// order and norm; returns an explanation on failure, empty string on success.
std::string check_nabla_closed_subcover(const NormCovering& sub,
                                        const NormCovering& sup);

}  // namespace oat
