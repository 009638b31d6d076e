#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "oat/common.hpp"
#include "oat/poset.hpp"

namespace oat {

using Tuple = std::vector<int>;

struct Language {
  std::vector<std::string> consts;
  std::vector<std::pair<std::string, int>> ops;   // name, arity >= 1
  std::vector<std::pair<std::string, int>> rels;  // name, arity >= 1

  static Language make(std::vector<std::string> consts,
                       std::vector<std::pair<std::string, int>> ops,
                       std::vector<std::pair<std::string, int>> rels);

  int const_index(const std::string& name) const;
  int op_index(const std::string& name) const;
  int rel_index(const std::string& name) const;
  // every symbol of this language occurs in `other` with the same arity
  bool subset_of(const Language& other) const;
  bool operator==(const Language& other) const = default;
};

// A finite first-order structure with a 0..n-1 universe.
struct FinStructure {
  Language lang;
  int n = 0;
  std::vector<int> const_val;                 // per constant symbol
  std::vector<std::vector<int>> op_table;     // per op, row-major over tuples
  std::vector<std::vector<Tuple>> rel_tuples; // per rel, sorted distinct tuples

  static FinStructure make(Language lang, int n, std::vector<int> const_val,
                           std::vector<std::vector<int>> op_table,
                           std::vector<std::vector<Tuple>> rel_tuples);

  int op_apply(int op, const Tuple& args) const;
  bool rel_holds(int rel, const Tuple& args) const;
  bool operator==(const FinStructure& other) const = default;
};

// Iterates over all tuples of the given arity over 0..n-1.
void for_each_tuple(int n, int arity, const std::function<void(const Tuple&)>& fn);

// A congruence: an operation-compatible equivalence plus, per relation
// symbol, an enlarged tuple set containing the interpretation and closed
// under equivalence replacement.
struct Congruence {
  std::vector<int> block;               // block[i] = least element of i's class
  std::vector<std::vector<Tuple>> rel;  // per rel symbol, sorted

  bool related(int x, int y) const { return block[x] == block[y]; }
  bool rel_has(int r, const Tuple& t) const;
  bool leq(const Congruence& other) const;  // componentwise containment
  bool operator==(const Congruence& other) const = default;
  bool operator<(const Congruence& other) const;

  static Congruence zero(const FinStructure& a);
  static Congruence one(const FinStructure& a);
};

// Empty string when theta satisfies all four congruence clauses on a.
std::string congruence_violation(const FinStructure& a, const Congruence& theta);

// All congruences in canonical order; verified to form a lattice.
std::vector<Congruence> con_lattice(const FinStructure& a, int universe_bound = 12);

Congruence congruence_meet(const FinStructure& a, const Congruence& x,
                           const Congruence& y);

// Least congruence containing the seed pairs and seed tuples.
Congruence congruence_generated(const FinStructure& a,
                                const std::vector<std::pair<int, int>>& pairs,
                                const std::vector<std::pair<int, Tuple>>& tuples);

Congruence congruence_join(const FinStructure& a, const Congruence& x,
                           const Congruence& y);

struct Homomorphism {
  FinStructure src;
  FinStructure dst;
  std::vector<int> map;

  // Validates the homomorphism clauses; Lg(src) may be a sublanguage of
  // Lg(dst), in which case the reduct of dst is used.
  static Homomorphism make(FinStructure src, FinStructure dst, std::vector<int> map);

  bool surjective() const;
  bool injective() const;
  bool is_embedding() const;  // injective and relation-reflecting
};

Homomorphism compose(const Homomorphism& g, const Homomorphism& f);

struct StructureQuotient {
  FinStructure structure;
  Homomorphism projection;
};

StructureQuotient quotient(const FinStructure& a, const Congruence& theta);

Congruence kernel(const Homomorphism& f);
// (Res f)(beta): the inverse image of a congruence of the codomain.
Congruence res(const Homomorphism& f, const Congruence& beta);

// All homomorphisms src -> dst, in lexicographic map order.
std::vector<Homomorphism> all_homomorphisms(const FinStructure& src,
                                            const FinStructure& dst,
                                            long long budget = 2000000);

// ---------------------------------------------------------------------------
// generalized quasivarieties

struct Term {
  enum Kind { Var, Const, Op } kind = Var;
  std::string name;
  std::vector<Term> args;
};

struct AtomicFormula {
  bool is_eq = true;
  Term lhs, rhs;               // for equations
  std::string rel;             // for relational atoms
  std::vector<Term> rel_args;
};

struct QuasiIdentity {
  std::vector<AtomicFormula> premises;
  AtomicFormula conclusion;
};

// True when the structure satisfies the quasi-identity under all assignments.
bool satisfies(const FinStructure& a, const QuasiIdentity& qi);

struct VarietyOracle {
  std::string name = "all";
  std::function<bool(const FinStructure&)> accepts = [](const FinStructure&) {
    return true;
  };
  bool everything = false;  // enables the fixed-point principal-congruence path

  static VarietyOracle all();
  static VarietyOracle from_quasi_identities(std::string name,
                                             std::vector<QuasiIdentity> qis);
};

struct ConVResult {
  std::vector<Congruence> members;  // canonical order
  bool meet_closed = true;
  std::vector<std::pair<int, int>> meet_violations;  // member index pairs
};

// V-congruences of a.  Throws when a itself is rejected by V (unless
// require_membership is cleared, which the documented error-path tests use).
ConVResult conv_congruences(const FinStructure& a, const VarietyOracle& v,
                            bool require_membership = true, int universe_bound = 12);

struct CongruenceSeed {
  bool is_pair = true;
  int x = 0, y = 0;
  int rel = -1;
  Tuple tuple;

  static CongruenceSeed pair(int x, int y);
  static CongruenceSeed relation(int rel, Tuple t);
};

Congruence principal_vcong(const FinStructure& a, const VarietyOracle& v,
                           const CongruenceSeed& seed);

// The join-homomorphism Con_c^V(f), as an index map between the canonical
// conv_congruences lists of domain and codomain.
std::vector<int> concv_map(const Homomorphism& f, const VarietyOracle& v);

// ---------------------------------------------------------------------------
// commutative monoids, o-ideals, projectability

struct FinCommMonoid {
  int n = 0;
  std::vector<int> add;  // n*n table
  int zero = 0;

  static FinCommMonoid make(int n, std::vector<int> add, int zero);

  int plus(int a, int b) const { return add[a * n + b]; }
  bool leq(int a, int b) const;  // algebraic preorder
  bool is_conical() const;
  bool is_semilattice() const;   // idempotent
};

struct MonoidHom {
  FinCommMonoid src;
  FinCommMonoid dst;
  std::vector<int> map;

  static MonoidHom make(FinCommMonoid src, FinCommMonoid dst, std::vector<int> map);
  bool surjective() const;
};

MonoidHom monoid_compose(const MonoidHom& g, const MonoidHom& f);

// Empty string when the subset is an o-ideal, else a witness explanation.
std::string o_ideal_violation(const FinCommMonoid& m, const IndexSet& subset);

struct OIdealQuotient {
  FinCommMonoid monoid;
  MonoidHom projection;
};

OIdealQuotient o_ideal_quotient(const FinCommMonoid& m, const IndexSet& ideal);

bool is_ideal_induced(const MonoidHom& f);      // requires conical codomain
bool is_weakly_distributive(const MonoidHom& f);

// Con_c^V(a) materialized as a join-semilattice monoid over the canonical
// member list.
struct ConVSemilattice {
  FinCommMonoid monoid;
  std::vector<Congruence> members;
};

ConVSemilattice conv_semilattice(const FinStructure& a, const VarietyOracle& v);

struct ProjectabilityWitness {
  Congruence theta;            // join of everything phi kills
  FinStructure abar;           // a / theta
  Homomorphism projection;     // a ->> abar
  std::vector<int> eps;        // Con_c^V(abar) member index -> element of S
};

// phi maps the canonical conv list of `a` into the semilattice s and must be
// ideal-induced; returns the witness (projection, eps) with
// phi = eps ∘ Con_c^V(projection).
ProjectabilityWitness projectability_witness(const FinStructure& a,
                                             const VarietyOracle& v,
                                             const std::vector<int>& phi,
                                             const FinCommMonoid& s);

// ---------------------------------------------------------------------------
// helpers used across modules and tests

// The lattice (or, and) structure of a lattice-ordered poset.
FinStructure make_lattice_structure(const FinPoset& p);

// Direct product over a nonempty same-language family.
FinStructure product_structure(const std::vector<FinStructure>& factors,
                               long long size_bound = 2000000);

}  // namespace oat
