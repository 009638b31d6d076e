#include "oat/pscaled.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <set>

namespace oat {

PScaledBA PScaledBA::make(FinPoset p, std::vector<std::string> atoms,
                          std::vector<IndexSet> atom_norm) {
  if (atoms.empty())
    throw InputError("a P-scaled Boolean algebra needs at least one atom");
  if (atoms.size() != atom_norm.size())
    throw InputError("every atom needs a norm");
  {
    std::set<std::string> seen;
    for (const auto& a : atoms)
      if (!seen.insert(a).second) throw InputError("duplicate atom label: " + a);
  }
  for (auto& nrm : atom_norm) {
    nrm = make_set(nrm);
    p.check_subset(nrm);
    if (!is_ideal(p, nrm))
      throw InputError("atom norm is not an ideal of P");
  }
  PScaledBA a;
  a.P = std::move(p);
  a.atoms = std::move(atoms);
  a.atom_norm = std::move(atom_norm);

  // Scale axioms.  In a finite Boolean algebra every ideal is principal, so
  // comparing the generators of both sides checks the full equations.
  IndexSet covered;
  for (int q = 0; q < a.P.size(); ++q) covered = set_union(covered, a.scale_atoms(q));
  if (static_cast<int>(covered.size()) != a.atom_count())
    throw InputError("scale axiom (i) fails: some atom has empty norm");
  for (int q = 0; q < a.P.size(); ++q)
    for (int r = 0; r < a.P.size(); ++r) {
      IndexSet lhs = set_intersection(a.scale_atoms(q), a.scale_atoms(r));
      IndexSet rhs;
      for (int s = 0; s < a.P.size(); ++s)
        if (a.P.leq(q, s) && a.P.leq(r, s)) rhs = set_union(rhs, a.scale_atoms(s));
      if (lhs != rhs) throw InputError("scale axiom (ii) fails");
    }
  return a;
}

int PScaledBA::atom_index(const std::string& label) const {
  for (int i = 0; i < atom_count(); ++i)
    if (atoms[i] == label) return i;
  throw InputError("unknown atom label: " + label);
}

int PScaledBA::norm_max(int atom) const {
  const IndexSet& nrm = atom_norm[atom];
  int best = nrm[0];
  for (int x : nrm)
    if (P.leq(best, x)) best = x;
  for (int x : nrm)
    if (!P.leq(x, best))
      throw DomainError("atom norm has no largest element");
  return best;
}

IndexSet PScaledBA::scale_atoms(int p) const {
  IndexSet r;
  for (int i = 0; i < atom_count(); ++i)
    if (set_contains(atom_norm[i], p)) r.push_back(i);
  return r;
}

bool PScaledBA::same_as(const PScaledBA& other) const {
  return P.same_order_as(other.P) && atoms == other.atoms &&
         atom_norm == other.atom_norm;
}

bool scaled_isomorphic(const PScaledBA& a, const PScaledBA& b) {
  if (!a.P.same_order_as(b.P)) return false;
  if (a.atom_count() != b.atom_count()) return false;
  std::vector<IndexSet> na = a.atom_norm, nb = b.atom_norm;
  std::sort(na.begin(), na.end());
  std::sort(nb.begin(), nb.end());
  return na == nb;
}

PNormedSpace PNormedSpace::make(FinPoset p, std::vector<std::string> points,
                                std::vector<IndexSet> norm) {
  if (points.empty()) throw InputError("a P-normed space needs at least one point");
  if (points.size() != norm.size()) throw InputError("every point needs a norm");
  for (auto& nrm : norm) {
    nrm = make_set(nrm);
    p.check_subset(nrm);
    if (!is_ideal(p, nrm)) throw InputError("point norm is not an ideal of P");
  }
  PNormedSpace x;
  x.P = std::move(p);
  x.points = std::move(points);
  x.norm = std::move(norm);
  return x;
}

PNormedSpace ult(const PScaledBA& a) {
  return PNormedSpace::make(a.P, a.atoms, a.atom_norm);
}

PScaledBA clop(const PNormedSpace& x) {
  return PScaledBA::make(x.P, x.points, x.norm);
}

bool spaces_isomorphic(const PNormedSpace& x, const PNormedSpace& y) {
  return scaled_isomorphic(clop(x), clop(y));
}

ScaledMorphism ScaledMorphism::make(PScaledBA src, PScaledBA dst,
                                    std::vector<int> dual) {
  if (!src.P.same_order_as(dst.P))
    throw InputError("morphism endpoints live over different posets");
  if (static_cast<int>(dual.size()) != dst.atom_count())
    throw InputError("dual map must be defined on every atom of the codomain");
  for (int b = 0; b < dst.atom_count(); ++b) {
    int a = dual[b];
    if (a < 0 || a >= src.atom_count()) throw InputError("dual map out of range");
    if (!set_subset(src.atom_norm[a], dst.atom_norm[b]))
      throw InputError("dual map does not shrink norms at atom '" + dst.atoms[b] + "'");
  }
  ScaledMorphism f;
  f.src = std::move(src);
  f.dst = std::move(dst);
  f.dual = std::move(dual);
  return f;
}

ScaledMorphism ScaledMorphism::identity(const PScaledBA& a) {
  std::vector<int> dual(a.atom_count());
  std::iota(dual.begin(), dual.end(), 0);
  return make(a, a, std::move(dual));
}

IndexSet ScaledMorphism::apply(const IndexSet& src_element) const {
  IndexSet r;
  for (int b = 0; b < dst.atom_count(); ++b)
    if (set_contains(src_element, dual[b])) r.push_back(b);
  return r;
}

bool ScaledMorphism::same_as(const ScaledMorphism& other) const {
  return src.same_as(other.src) && dst.same_as(other.dst) && dual == other.dual;
}

ScaledMorphism compose(const ScaledMorphism& g, const ScaledMorphism& f) {
  if (!f.dst.same_as(g.src))
    throw InputError("morphisms do not compose: codomain/domain mismatch");
  std::vector<int> dual(g.dst.atom_count());
  for (int c = 0; c < g.dst.atom_count(); ++c) dual[c] = f.dual[g.dual[c]];
  return ScaledMorphism::make(f.src, g.dst, std::move(dual));
}

PScaledBA two(const FinPoset& p, int elem) {
  if (elem < 0 || elem >= p.size()) throw InputError("element index out of range");
  return PScaledBA::make(p, {"*"}, {p.down(elem)});
}

ScaledMorphism eps(const FinPoset& p, int from, int to) {
  if (!p.leq(from, to))
    throw InputError("eps requires " + p.label(from) + " <= " + p.label(to));
  return ScaledMorphism::make(two(p, from), two(p, to), {0});
}

bool is_normal(const ScaledMorphism& f) {
  std::vector<char> hit(f.src.atom_count(), 0);
  for (int b = 0; b < f.dst.atom_count(); ++b) {
    int a = f.dual[b];
    if (hit[a]) return false;  // dual map not injective
    hit[a] = 1;
    if (f.src.atom_norm[a] != f.dst.atom_norm[b]) return false;
  }
  return true;
}

ScaledQuotient scaled_quotient(const PScaledBA& a, const IndexSet& killed_atoms) {
  IndexSet killed = make_set(killed_atoms);
  for (int k : killed)
    if (k < 0 || k >= a.atom_count()) throw InputError("atom index out of range");
  if (static_cast<int>(killed.size()) == a.atom_count())
    throw DomainError("quotient by the improper ideal would leave no atoms");
  std::vector<std::string> atoms;
  std::vector<IndexSet> norms;
  std::vector<int> dual;
  for (int i = 0; i < a.atom_count(); ++i)
    if (!set_contains(killed, i)) {
      atoms.push_back(a.atoms[i]);
      norms.push_back(a.atom_norm[i]);
      dual.push_back(i);
    }
  PScaledBA q = PScaledBA::make(a.P, std::move(atoms), std::move(norms));
  ScaledMorphism pi = ScaledMorphism::make(a, q, std::move(dual));
  return {std::move(q), std::move(pi)};
}

ScaledProduct scaled_product(const std::vector<PScaledBA>& factors) {
  if (factors.empty()) throw InputError("product of an empty family");
  for (const auto& f : factors)
    if (!f.P.same_order_as(factors[0].P))
      throw InputError("product factors live over different posets");
  std::vector<std::string> atoms;
  std::vector<IndexSet> norms;
  for (size_t i = 0; i < factors.size(); ++i)
    for (int j = 0; j < factors[i].atom_count(); ++j) {
      atoms.push_back(std::to_string(i) + ":" + factors[i].atoms[j]);
      norms.push_back(factors[i].atom_norm[j]);
    }
  PScaledBA prod = PScaledBA::make(factors[0].P, std::move(atoms), std::move(norms));
  ScaledProduct r;
  std::vector<ScaledMorphism> projections;
  int offset = 0;
  for (const auto& f : factors) {
    std::vector<int> dual(f.atom_count());
    std::iota(dual.begin(), dual.end(), offset);
    projections.push_back(ScaledMorphism::make(prod, f, std::move(dual)));
    offset += f.atom_count();
  }
  r.algebra = std::move(prod);
  r.projections = std::move(projections);
  return r;
}

SigmaResult sigma_enumerate(const PScaledBA& a, int max_members) {
  const int n = a.atom_count();
  if (n > 12) throw SizeError("sigma enumeration bounded to 12 atoms");

  // Partitions of the atom set via restricted growth strings.
  std::vector<std::vector<IndexSet>> partitions;
  std::vector<int> rgs(n, 0);
  std::function<void(int, int)> gen = [&](int i, int maxv) {
    if (i == n) {
      int blocks = maxv + 1;
      std::vector<IndexSet> part(blocks);
      for (int k = 0; k < n; ++k) part[rgs[k]].push_back(k);
      partitions.push_back(std::move(part));
      return;
    }
    for (int v = 0; v <= maxv + 1; ++v) {
      rgs[i] = v;
      gen(i + 1, std::max(maxv, v));
    }
  };
  rgs[0] = 0;
  gen(1, 0);

  SigmaResult res;
  for (const auto& part : partitions) {
    // admissible labels per block: the intersection of the block's norms
    std::vector<IndexSet> options;
    bool feasible = true;
    for (const auto& block : part) {
      IndexSet inter = a.atom_norm[block[0]];
      for (int atom : block) inter = set_intersection(inter, a.atom_norm[atom]);
      if (inter.empty()) { feasible = false; break; }
      options.push_back(inter);
    }
    if (!feasible) continue;
    std::vector<size_t> pick(part.size(), 0);
    for (;;) {
      SigmaMember m;
      m.blocks = part;
      for (size_t b = 0; b < part.size(); ++b) m.label.push_back(options[b][pick[b]]);
      res.members.push_back(std::move(m));
      if (static_cast<int>(res.members.size()) > max_members)
        throw SizeError("sigma enumeration exceeds the member bound");
      size_t pos = 0;
      while (pos < pick.size() && ++pick[pos] == options[pos].size()) pick[pos++] = 0;
      if (pos == pick.size()) break;
    }
  }

  const int m = static_cast<int>(res.members.size());
  auto block_of = [](const SigmaMember& f, const IndexSet& sub) -> int {
    for (size_t b = 0; b < f.blocks.size(); ++b)
      if (set_subset(sub, f.blocks[b])) return static_cast<int>(b);
    return -1;
  };
  res.below.assign(m, std::vector<char>(m, 0));
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      // members[i] ⊑ members[j]: j's partition refines i's and labels grow
      const SigmaMember& f = res.members[i];
      const SigmaMember& g = res.members[j];
      bool ok = true;
      for (size_t b = 0; b < g.blocks.size() && ok; ++b) {
        int fb = block_of(f, g.blocks[b]);
        if (fb < 0 || !a.P.leq(f.label[fb], g.label[b])) ok = false;
      }
      res.below[i][j] = ok;
    }

  res.directed = true;
  for (int i = 0; i < m && res.directed; ++i)
    for (int j = i + 1; j < m && res.directed; ++j) {
      bool bounded = false;
      for (int k = 0; k < m; ++k)
        if (res.below[i][k] && res.below[j][k]) { bounded = true; break; }
      if (!bounded) res.directed = false;
    }

  // ∪_f A_f^(p) = A^(p) at the element level, for each p.  An element of
  // A_f^(p) is a union of blocks all of whose labels lie above p.
  res.unions_match = true;
  for (int p = 0; p < a.P.size() && res.unions_match; ++p) {
    std::set<IndexSet> whole;  // elements of A^(p): subsets of scale_atoms(p)
    for_each_subset_of(a.scale_atoms(p), [&](const IndexSet& s) { whole.insert(s); });
    std::set<IndexSet> seen;
    for (const SigmaMember& f : res.members)
      for_each_subset(static_cast<int>(f.blocks.size()), [&](const IndexSet& picks) {
        IndexSet x;
        bool in_scale = true;
        for (int b : picks) {
          x = set_union(x, f.blocks[b]);
          if (!a.P.leq(p, f.label[b])) in_scale = false;
        }
        if (in_scale) seen.insert(x);
      });
    if (seen != whole) res.unions_match = false;
  }

  // The member with singleton blocks labeled by |·| has A_f = A.
  for (int i = 0; i < m; ++i) {
    const SigmaMember& f = res.members[i];
    if (static_cast<int>(f.blocks.size()) != n) continue;
    bool top = true;
    for (size_t b = 0; b < f.blocks.size() && top; ++b)
      if (f.label[b] != a.norm_max(f.blocks[b][0])) top = false;
    if (top) { res.top_member = i; break; }
  }
  return res;
}

}  // namespace oat
