#include "oat/diagrams.hpp"

#include <algorithm>
#include <numeric>

namespace oat {

bool is_isomorphism(const Homomorphism& h) {
  return h.src.lang == h.dst.lang && h.injective() && h.surjective() &&
         h.is_embedding();
}

Diagram Diagram::make(FinPoset p, std::vector<FinStructure> obj,
                      std::map<std::pair<int, int>, std::vector<int>> arrows) {
  if (static_cast<int>(obj.size()) != p.size())
    throw InputError("diagram needs one structure per poset element");
  Diagram d;
  d.P = std::move(p);
  d.obj = std::move(obj);

  const int n = d.P.size();
  // interval size sorting so composites are available when needed
  std::vector<std::pair<int, std::pair<int, int>>> todo;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (d.P.leq(a, b)) {
        int len = 0;
        for (int z = 0; z < n; ++z)
          if (d.P.leq(a, z) && d.P.leq(z, b)) ++len;
        todo.push_back({len, {a, b}});
      }
  std::sort(todo.begin(), todo.end());

  for (const auto& [len, pq] : todo) {
    auto [a, b] = pq;
    auto given = arrows.find(pq);
    if (a == b) {
      std::vector<int> id(d.obj[a].n);
      std::iota(id.begin(), id.end(), 0);
      if (given != arrows.end() && given->second != id)
        throw InputError("diagram arrow at an identity index is not the identity");
      d.arr.emplace(pq, Homomorphism::make(d.obj[a], d.obj[a], id));
      continue;
    }
    if (given != arrows.end()) {
      d.arr.emplace(pq, Homomorphism::make(d.obj[a], d.obj[b], given->second));
      continue;
    }
    int via = -1;
    for (int z = 0; z < n; ++z)
      if (z != a && z != b && d.P.leq(a, z) && d.P.leq(z, b)) { via = z; break; }
    if (via < 0)
      throw InputError("diagram arrow missing for cover pair " + d.P.label(a) +
                       " <= " + d.P.label(b));
    d.arr.emplace(pq, compose(d.at(via, b), d.at(a, via)));
  }

  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        if (d.P.leq(a, b) && d.P.leq(b, c)) {
          Homomorphism lhs = compose(d.at(b, c), d.at(a, b));
          if (lhs.map != d.at(a, c).map)
            throw InputError("diagram does not commute at " + d.P.label(a) +
                             " <= " + d.P.label(b) + " <= " + d.P.label(c));
        }
  return d;
}

const Homomorphism& Diagram::at(int p, int q) const {
  auto it = arr.find({p, q});
  if (it == arr.end()) throw InputError("no diagram arrow for this pair");
  return it->second;
}

TensorResult tensor(const PScaledBA& b, const Diagram& d) {
  if (!b.P.same_order_as(d.P))
    throw InputError("tensor: the algebra and the diagram index different posets");
  for (const auto& o : d.obj)
    if (!(o.lang == d.obj[0].lang))
      throw InputError("tensor requires diagram objects over one language");

  TensorResult t;
  t.scaled = b;
  for (int u = 0; u < b.atom_count(); ++u) t.atom_value.push_back(b.norm_max(u));

  if (b.atom_count() == 1) {
    t.carrier = d.obj[t.atom_value[0]];
    std::vector<int> id(t.carrier.n);
    std::iota(id.begin(), id.end(), 0);
    t.projections.push_back(Homomorphism::make(t.carrier, t.carrier, id));
    return t;
  }

  std::vector<FinStructure> factors;
  for (int u = 0; u < b.atom_count(); ++u) factors.push_back(d.obj[t.atom_value[u]]);
  t.carrier = product_structure(factors);

  // projections follow the little-endian component encoding of the product
  std::vector<int> stride(factors.size());
  {
    int acc = 1;
    for (size_t i = 0; i < factors.size(); ++i) {
      stride[i] = acc;
      acc *= factors[i].n;
    }
  }
  for (size_t u = 0; u < factors.size(); ++u) {
    std::vector<int> map(t.carrier.n);
    for (int x = 0; x < t.carrier.n; ++x) map[x] = (x / stride[u]) % factors[u].n;
    t.projections.push_back(Homomorphism::make(t.carrier, factors[u], std::move(map)));
  }
  return t;
}

Homomorphism tensor_morphism(const ScaledMorphism& phi, const Diagram& d) {
  TensorResult dom = tensor(phi.src, d);
  TensorResult cod = tensor(phi.dst, d);
  std::vector<int> map(dom.carrier.n);
  // component at atom v of the codomain: σ_{|v^φ|}^{|v|} after δ^{v^φ}
  if (cod.scaled.atom_count() == 1) {
    const int v = 0;
    int u = phi.dual[v];
    const Homomorphism& sigma = d.at(dom.atom_value[u], cod.atom_value[v]);
    for (int x = 0; x < dom.carrier.n; ++x)
      map[x] = sigma.map[dom.projections[u].map[x]];
  } else {
    std::vector<int> stride(cod.scaled.atom_count());
    int acc = 1;
    for (int v = 0; v < cod.scaled.atom_count(); ++v) {
      stride[v] = acc;
      acc *= d.obj[cod.atom_value[v]].n;
    }
    for (int x = 0; x < dom.carrier.n; ++x) {
      int enc = 0;
      for (int v = 0; v < cod.scaled.atom_count(); ++v) {
        int u = phi.dual[v];
        const Homomorphism& sigma = d.at(dom.atom_value[u], cod.atom_value[v]);
        enc += stride[v] * sigma.map[dom.projections[u].map[x]];
      }
      map[x] = enc;
    }
  }
  return Homomorphism::make(dom.carrier, cod.carrier, std::move(map));
}

bool is_projection_up_to_iso(const TensorResult& dom, const Homomorphism& h) {
  if (!(h.src == dom.carrier))
    throw InputError("the homomorphism does not start at the tensor carrier");
  const int atoms = dom.scaled.atom_count();
  bool found = false;
  for_each_subset(atoms, [&](const IndexSet& picked) {
    if (found || picked.empty()) return;
    // canonical projection onto the sub-product of the picked components
    std::vector<FinStructure> factors;
    for (int u : picked) factors.push_back(dom.projections[u].dst);
    FinStructure sub =
        factors.size() == 1 ? factors[0] : product_structure(factors);
    if (sub.n != h.dst.n) return;
    // group domain elements by their picked components
    std::vector<int> proj(dom.carrier.n);
    for (int x = 0; x < dom.carrier.n; ++x) {
      int enc = 0, accum = 1;
      for (int u : picked) {
        enc += accum * dom.projections[u].map[x];
        accum *= dom.projections[u].dst.n;
      }
      proj[x] = enc;
    }
    // h must factor through proj with a bijective induced map
    std::vector<int> induced(sub.n, -1);
    for (int x = 0; x < dom.carrier.n; ++x) {
      if (induced[proj[x]] >= 0 && induced[proj[x]] != h.map[x]) return;
      induced[proj[x]] = h.map[x];
    }
    for (int v : induced)
      if (v < 0) return;
    std::vector<char> hit(h.dst.n, 0);
    for (int v : induced) {
      if (hit[v]) return;
      hit[v] = 1;
    }
    try {
      Homomorphism cand = Homomorphism::make(sub, h.dst, induced);
      if (is_isomorphism(cand)) found = true;
    } catch (const InputError&) {
    }
  });
  return found;
}

TensorResult condensate(const NormCovering& x, const Diagram& d) {
  FreeScaled fx = build_fx(x);
  return tensor(fx.algebra, d);
}

}  // namespace oat
