#include "oat/freecover.hpp"

#include <algorithm>
#include <sstream>

namespace oat {

FreeScaled build_fx(const NormCovering& cover) {
  const FinPoset& x = cover.X;
  const int n = x.size();

  std::vector<IndexSet> norms(n);
  for (int i = 0; i < n; ++i) {
    // norm of the ideal X↓i: {p : p <= ∂u for some u <= i} = P↓∂i
    IndexSet nrm;
    for (int p = 0; p < cover.P.size(); ++p)
      for (int u : x.down(i))
        if (cover.P.leq(p, cover.bd[u])) { nrm.push_back(p); break; }
    norms[i] = make_set(nrm);
    if (norms[i] != cover.P.down(cover.bd[i]))
      throw DomainError("ideal norm disagrees with its sharp value");
  }
  PScaledBA algebra = PScaledBA::make(cover.P, x.labels(), std::move(norms));

  std::vector<IndexSet> gen(n);
  for (int u = 0; u < n; ++u) {
    IndexSet g;
    for (int i = 0; i < n; ++i)
      if (x.leq(u, i)) g.push_back(i);  // u ∈ X↓i
    gen[u] = g;
  }

  // presentation relations, by direct set computation
  for (int u = 0; u < n; ++u)
    for (int v = 0; v < n; ++v)
      if (x.leq(u, v) && !set_subset(gen[v], gen[u]))
        throw DomainError("antitone relation fails in F(X)");
  for (int u = 0; u < n; ++u)
    for (int v = 0; v < n; ++v) {
      IndexSet rhs;
      for (int w : nabla(x, {u, v})) rhs = set_union(rhs, gen[w]);
      if (set_intersection(gen[u], gen[v]) != rhs)
        throw DomainError("meet relation fails in F(X)");
    }
  {
    IndexSet covered;
    for (int u : x.min_elements()) covered = set_union(covered, gen[u]);
    if (static_cast<int>(covered.size()) != n)
      throw DomainError("unit relation fails in F(X)");
  }
  // F(X)^(p) is the ideal generated by the ũ with p <= ∂u
  for (int p = 0; p < cover.P.size(); ++p) {
    IndexSet from_gens;
    for (int u = 0; u < n; ++u)
      if (cover.P.leq(p, cover.bd[u])) from_gens = set_union(from_gens, gen[u]);
    if (from_gens != algebra.scale_atoms(p))
      throw DomainError("scale ideal of F(X) disagrees with its presentation");
  }

  FreeScaled fx;
  fx.cover = cover;
  fx.algebra = std::move(algebra);
  fx.gen = std::move(gen);
  return fx;
}

UniversalExtension universal_extend(const FreeScaled& fx, int b_atoms,
                                    const std::vector<IndexSet>& assign) {
  const FinPoset& x = fx.cover.X;
  const int n = x.size();
  if (static_cast<int>(assign.size()) != n)
    throw InputError("assignment must cover every generator");
  for (const auto& a : assign)
    for (int z : a)
      if (z < 0 || z >= b_atoms) throw InputError("assignment atom out of range");

  UniversalExtension ext;
  auto fail = [&](FxRelation rel, const std::string& detail) {
    ext.ok = false;
    ext.failed = rel;
    ext.detail = detail;
    return ext;
  };

  for (int u = 0; u < n; ++u)
    for (int v = 0; v < n; ++v)
      if (x.leq(u, v) && !set_subset(make_set(assign[v]), make_set(assign[u])))
        return fail(FxRelation::Antitone, x.label(u) + " <= " + x.label(v));
  for (int u = 0; u < n; ++u)
    for (int v = 0; v < n; ++v) {
      IndexSet rhs;
      for (int w : nabla(x, {u, v})) rhs = set_union(rhs, make_set(assign[w]));
      if (set_intersection(make_set(assign[u]), make_set(assign[v])) != rhs)
        return fail(FxRelation::MeetRule, x.label(u) + " , " + x.label(v));
    }
  {
    IndexSet covered;
    for (int u : x.min_elements()) covered = set_union(covered, make_set(assign[u]));
    if (static_cast<int>(covered.size()) != b_atoms)
      return fail(FxRelation::MinCover, "minimal generators do not cover 1");
  }

  // Each atom z of B yields the ideal {u : z ∈ assign(u)}, necessarily
  // principal; its generator is the dual image of z.
  ext.dual.assign(b_atoms, -1);
  for (int z = 0; z < b_atoms; ++z) {
    IndexSet carrier;
    for (int u = 0; u < n; ++u)
      if (set_contains(make_set(assign[u]), z)) carrier.push_back(u);
    for (int i = 0; i < n; ++i)
      if (x.down(i) == carrier) { ext.dual[z] = i; break; }
    if (ext.dual[z] < 0)
      return fail(FxRelation::MeetRule, "atom " + std::to_string(z) +
                                            " does not induce an ideal of X");
  }
  ext.ok = true;
  return ext;
}

ScaledMorphism pi_u(const FreeScaled& fx, const IndexSet& ideal_carrier) {
  IndexSet carrier = make_set(ideal_carrier);
  if (!is_ideal(fx.cover.X, carrier))
    throw InputError("pi_u requires an ideal of X");
  int generator = -1;
  for (int i = 0; i < fx.cover.X.size(); ++i)
    if (fx.cover.X.down(i) == carrier) { generator = i; break; }
  if (generator < 0) throw InputError("ideal is not principal");  // unreachable
  int norm_value = sharp_norm(fx.cover, carrier);
  return ScaledMorphism::make(fx.algebra, two(fx.cover.P, norm_value), {generator});
}

std::string check_nabla_closed_subcover(const NormCovering& sub,
                                        const NormCovering& sup) {
  if (!sub.P.same_order_as(sup.P)) return "coverings target different posets";
  const FinPoset& x = sub.X;
  const FinPoset& y = sup.X;
  std::vector<int> into(x.size());
  for (int u = 0; u < x.size(); ++u) {
    bool found = false;
    for (int v = 0; v < y.size(); ++v)
      if (y.label(v) == x.label(u)) { into[u] = v; found = true; break; }
    if (!found) return "element '" + x.label(u) + "' missing from the larger covering";
  }
  for (int u = 0; u < x.size(); ++u) {
    for (int v = 0; v < x.size(); ++v)
      if (x.leq(u, v) != y.leq(into[u], into[v]))
        return "order differs at ('" + x.label(u) + "','" + x.label(v) + "')";
    if (sub.bd[u] != sup.bd[into[u]])
      return "norm differs at '" + x.label(u) + "'";
  }
  if (x.size() > 20) throw SizeError("nabla-closure check bounded to 20 elements");
  IndexSet image;
  for (int v : into) image.push_back(v);
  image = make_set(image);
  std::string violation;
  for_each_subset_of(image, [&](const IndexSet& s) {
    if (!violation.empty()) return;
    for (int w : nabla(y, s))
      if (!set_contains(image, w)) {
        std::ostringstream os;
        os << "nabla of {";
        for (size_t i = 0; i < s.size(); ++i)
          os << (i ? "," : "") << y.label(s[i]);
        os << "} leaves the subset at '" << y.label(w) << "'";
        violation = os.str();
        return;
      }
  });
  return violation;
}

ScaledMorphism f_xy(const FreeScaled& sub, const FreeScaled& sup) {
  std::string why = check_nabla_closed_subcover(sub.cover, sup.cover);
  if (!why.empty()) throw InputError("f_xy: " + why);
  const FinPoset& x = sub.cover.X;
  const FinPoset& y = sup.cover.X;

  std::vector<int> into(x.size());
  for (int u = 0; u < x.size(); ++u) into[u] = y.index(x.label(u));

  std::vector<int> dual(y.size(), -1);
  for (int v = 0; v < y.size(); ++v) {
    // the ideal Y↓v meets X in an ideal of X; find its principal generator
    IndexSet trace;
    for (int u = 0; u < x.size(); ++u)
      if (y.leq(into[u], v)) trace.push_back(u);
    trace = make_set(trace);
    if (!is_ideal(x, trace))
      throw DomainError("trace of an ideal is not an ideal of X");
    for (int i = 0; i < x.size(); ++i)
      if (x.down(i) == trace) { dual[v] = i; break; }
    if (dual[v] < 0) throw DomainError("trace ideal is not principal");
  }
  ScaledMorphism f = ScaledMorphism::make(sub.algebra, sup.algebra, std::move(dual));
  for (int u = 0; u < x.size(); ++u)
    if (f.apply(sub.gen[u]) != sup.gen[into[u]])
      throw DomainError("f_xy does not send generators to generators");
  return f;
}

}  // namespace oat
