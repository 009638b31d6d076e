#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "oat/common.hpp"

namespace oat {

// A finite nonempty poset over labelled elements.  Element numbering is the
// load order and is the canonical order used by every deterministic search.
class FinPoset {
 public:
  // Builds the poset from an arbitrary relation (typically a Hasse diagram):
  // the reflexive-transitive closure is taken, cycles are rejected.
  static FinPoset from_pairs(std::vector<std::string> labels,
                             const std::vector<std::pair<int, int>>& le_pairs);
  static FinPoset from_pairs(std::vector<std::string> labels,
                             const std::vector<std::pair<std::string, std::string>>& le_pairs);

  int size() const { return static_cast<int>(labels_.size()); }
  const std::string& label(int i) const { return labels_[i]; }
  const std::vector<std::string>& labels() const { return labels_; }
  int index(const std::string& label) const;  // InputError on unknown label
  bool leq(int a, int b) const { return leq_[a][b] != 0; }
  bool lt(int a, int b) const { return a != b && leq(a, b); }

  IndexSet down(int a) const;  // P↓a
  IndexSet up(int a) const;    // P↑a
  IndexSet min_elements() const;
  IndexSet max_elements() const;
  std::optional<int> least_element() const;
  std::optional<int> greatest_element() const;
  bool is_maximal(int a) const;

  // Common upper bounds P⇑X (all of P when X is empty).
  IndexSet upper_bounds(const IndexSet& xs) const;
  // Minimal elements of a subset.
  IndexSet minimal_of(const IndexSet& xs) const;
  // Covers y of x with x ≺ y.
  IndexSet upper_covers(int x) const;

  // Least upper bound of {x,y} inside P↓top, if it exists.
  std::optional<int> join_below(int x, int y, int top) const;

  void check_subset(const IndexSet& xs) const;  // InputError on out-of-range

  bool same_order_as(const FinPoset& other) const;  // labels and relation equal
  bool isomorphic_to(const FinPoset& other) const;  // exhaustive matching

 private:
  std::vector<std::string> labels_;
  std::vector<std::vector<char>> leq_;
};

// ▽X: the minimal elements of P⇑X.  ▽∅ = Min P.
IndexSet nabla(const FinPoset& p, const IndexSet& xs);

// Least superset of xs containing ▽Y for every finite Y it contains.
IndexSet nabla_closure(const FinPoset& p, const IndexSet& xs);

struct Classification {
  bool pseudo = false;
  bool supported = false;
  bool almost = false;
};

// Evaluates the three classes by running their defining quantifiers.  The
// supported sweep runs over all subsets when the poset has at most
// `supported_sweep_bound` elements and over subsets of size <= 3 beyond that
// (every closure computed here lives inside the finite carrier).
Classification classify(const FinPoset& p, int supported_sweep_bound = 10);

struct ZeroDecomposition {
  bool ok = false;
  std::vector<FinPoset> components;          // in order of least member index
  std::vector<int> components_without_zero;  // indices into components
};

// Splits into order-connected components and checks each has a least element.
ZeroDecomposition decompose_zero_components(const FinPoset& p);

// An ideal of a finite poset: nonempty, downward closed, upward directed.
// Finiteness forces a maximum element, so every ideal is principal.
struct IdealOfPoset {
  IndexSet carrier;
  int max_elem = -1;
};

IdealOfPoset principal_ideal(const FinPoset& p, int x);
bool is_ideal(const FinPoset& p, const IndexSet& carrier);

// All ideals, ordered by principal generator index.
std::vector<IdealOfPoset> ideals(const FinPoset& p);

// A norm-covering (X, ∂) of P: X a pseudo join-semilattice, ∂ isotone.
struct NormCovering {
  FinPoset X;
  FinPoset P;
  std::vector<int> bd;  // ∂ : X -> P, by element index

  static NormCovering make(FinPoset X, FinPoset P, std::vector<int> bd);
};

// The norm value ∂u of a (necessarily sharp) ideal u of the covering.
int sharp_norm(const NormCovering& nc, const IndexSet& ideal_carrier);

// P⟨K⟩: all pairs (a, x) with x a K-valued function on some X ⊆ P↓a such
// that a ∈ ▽X, ordered componentwise, with norm ∂(a,x) = a.  Requires P to
// be an almost join-semilattice with zero.
NormCovering construct_pk(const FinPoset& p, const std::vector<std::string>& k_labels);

// F maps subsets of {0..k-1} to subsets of {0..k-1}; calls are memoized.
using SetMapping = std::function<IndexSet(const IndexSet&)>;

// Searches for an injective f : P -> {0..k_size-1} with
// F(f``(P↓x)) ∩ f``(P↓y) ⊆ f``(P↓x) for all x ≤ y.  Returns the
// lexicographically first solution in load order, or nullopt.
std::optional<std::vector<int>> free_map_search(const FinPoset& p, int k_size,
                                                const SetMapping& f_oracle);

// A family of sharp ideals of a norm-covering, with the non-maximal-norm
// members singled out.
struct IdealFamily {
  NormCovering cover;
  std::vector<IdealOfPoset> members;
  IndexSet nonmax;  // indices of members whose ∂-value is not maximal in P

  static IdealFamily make(NormCovering cover, std::vector<IdealOfPoset> members);
  // Family of all (principal) ideals of the covering.
  static IdealFamily all_ideals(NormCovering cover);
};

// S assigns a subset of X to each nonmax member (by member index).
// Searches for an isotone section σ : P -> members of ∂ with
// S(σ(a)) ∩ σ(b) ⊆ σ(a) for all a < b.  Deterministic first solution.
std::optional<std::vector<int>> free_section_search(
    const IdealFamily& fam, const std::map<int, IndexSet>& s_map);

}  // namespace oat
