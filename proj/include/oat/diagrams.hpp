#pragma once

#include <map>
#include <vector>

#include "oat/freecover.hpp"
#include "oat/poset.hpp"
#include "oat/pscaled.hpp"
#include "oat/structures.hpp"

namespace oat {

// A P-indexed commuting diagram of finite structures.
struct Diagram {
  FinPoset P;
  std::vector<FinStructure> obj;                     // per element of P
  std::map<std::pair<int, int>, Homomorphism> arr;   // for every p <= q

  // Arrows may be supplied on any generating set of comparabilities
  // (typically the cover pairs); the rest are filled by composition.
  // Identities are implicit.  A non-commuting input is rejected with the
  // first violating triple.
  static Diagram make(FinPoset p, std::vector<FinStructure> obj,
                      std::map<std::pair<int, int>, std::vector<int>> arrows);

  const Homomorphism& at(int p, int q) const;
};

// B ⊗ D: the product of D(|u|) over the atoms u of B, with its canonical
// projections.  A one-atom tensor is the component itself.
struct TensorResult {
  PScaledBA scaled;
  FinStructure carrier;
  std::vector<int> atom_value;             // |u| per atom
  std::vector<Homomorphism> projections;   // carrier -> obj(|u|)
};

TensorResult tensor(const PScaledBA& b, const Diagram& d);

// φ ⊗ D for a morphism of compact scaled algebras: the unique map with
// δ_C^v ∘ (φ⊗D) = σ_{|v^φ|}^{|v|} ∘ δ_B^{v^φ} for every atom v of the codomain.
Homomorphism tensor_morphism(const ScaledMorphism& phi, const Diagram& d);

// True when h factors as an isomorphism after the canonical projection of the
// tensor product onto one of its sub-products.
bool is_projection_up_to_iso(const TensorResult& dom, const Homomorphism& h);

// F(X) ⊗ D.
TensorResult condensate(const NormCovering& x, const Diagram& d);

bool is_isomorphism(const Homomorphism& h);

}  // namespace oat
