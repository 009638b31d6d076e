#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "oat/poset.hpp"

namespace oat {

// An unlabeled poset on at most 8 elements, stored as bit rows of the
// reflexive order relation: le[i] bit j set iff i <= j.
struct UPoset {
  int n = 0;
  std::array<std::uint8_t, 8> le{};

  bool leq(int i, int j) const { return (le[i] >> j) & 1; }
};

// A permutation-invariant key: the minimum packed relation matrix over all
// relabelings (computed with color-refinement pruning).
std::uint64_t canonical_key(const UPoset& p);

// All non-isomorphic posets with exactly n elements (n <= 8), built by
// one-element augmentation from the (n-1)-element list.  Cached.
const std::vector<UPoset>& unlabeled_posets(int n);

// Those that are join-semilattices with zero, i.e. finite lattices.
std::vector<UPoset> unlabeled_lattices(int n);

bool uposet_is_lattice(const UPoset& p);

// FinPoset view with labels e0..e{n-1}.
FinPoset to_finposet(const UPoset& p);

}  // namespace oat
