#include "oat/regring.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

namespace oat {

FinRing FinRing::make(int n, std::vector<int> add, std::vector<int> mul,
                      std::vector<std::string> labels) {
  if (n <= 0) throw InputError("ring carrier must be nonempty");
  if (static_cast<int>(add.size()) != n * n || static_cast<int>(mul.size()) != n * n)
    throw InputError("ring tables have the wrong size");
  for (int v : add)
    if (v < 0 || v >= n) throw InputError("addition leaves the carrier");
  for (int v : mul)
    if (v < 0 || v >= n) throw InputError("multiplication leaves the carrier");
  FinRing r;
  r.n = n;
  r.add = std::move(add);
  r.mul = std::move(mul);
  if (labels.empty())
    for (int i = 0; i < n; ++i) labels.push_back(std::to_string(i));
  if (static_cast<int>(labels.size()) != n)
    throw InputError("one label per ring element required");
  r.labels = std::move(labels);

  // abelian group axioms
  int zero = -1;
  for (int z = 0; z < n && zero < 0; ++z) {
    bool neutral = true;
    for (int a = 0; a < n; ++a)
      if (r.plus(a, z) != a) { neutral = false; break; }
    if (neutral) zero = z;
  }
  if (zero < 0) throw InputError("ring has no additive zero");
  r.zero = zero;
  r.neg.assign(n, -1);
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b)
      if (r.plus(a, b) == zero) { r.neg[a] = b; break; }
    if (r.neg[a] < 0) throw InputError("ring element without additive inverse");
  }
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      if (r.plus(a, b) != r.plus(b, a)) throw InputError("addition not commutative");
      for (int c = 0; c < n; ++c) {
        if (r.plus(r.plus(a, b), c) != r.plus(a, r.plus(b, c)))
          throw InputError("addition not associative");
        if (r.times(r.times(a, b), c) != r.times(a, r.times(b, c)))
          throw InputError("multiplication not associative");
        if (r.times(a, r.plus(b, c)) != r.plus(r.times(a, b), r.times(a, c)))
          throw InputError("left distributivity fails");
        if (r.times(r.plus(a, b), c) != r.plus(r.times(a, c), r.times(b, c)))
          throw InputError("right distributivity fails");
      }
    }
  return r;
}

std::optional<int> FinRing::unit() const {
  for (int e = 0; e < n; ++e) {
    bool ok = true;
    for (int a = 0; a < n && ok; ++a)
      if (times(e, a) != a || times(a, e) != a) ok = false;
    if (ok) return e;
  }
  return std::nullopt;
}

std::optional<int> FinRing::quasi_inverse(int a) const {
  if (a < 0 || a >= n) throw InputError("ring element out of range");
  for (int b = 0; b < n; ++b)
    if (times(times(a, b), a) == a) return b;
  return std::nullopt;
}

bool FinRing::is_regular() const {
  for (int a = 0; a < n; ++a)
    if (!quasi_inverse(a)) return false;
  return true;
}

std::vector<int> FinRing::idempotents() const {
  std::vector<int> out;
  for (int a = 0; a < n; ++a)
    if (times(a, a) == a) out.push_back(a);
  return out;
}

FinRing ring_gf(int p) {
  if (p < 2) throw InputError("gf requires a prime modulus");
  for (int d = 2; d * d <= p; ++d)
    if (p % d == 0) throw InputError("gf requires a prime modulus");
  std::vector<int> add(p * p), mul(p * p);
  for (int a = 0; a < p; ++a)
    for (int b = 0; b < p; ++b) {
      add[a * p + b] = (a + b) % p;
      mul[a * p + b] = (a * b) % p;
    }
  return FinRing::make(p, std::move(add), std::move(mul));
}

FinRing ring_matrix(int dim, int p) {
  if (dim < 1 || dim > 3) throw InputError("matrix dimension must be 1..3");
  if (p < 2) throw InputError("gf requires a prime modulus");
  for (int d = 2; d * d <= p; ++d)
    if (p % d == 0) throw InputError("gf requires a prime modulus");
  long long count = 1;
  for (int i = 0; i < dim * dim; ++i) count *= p;
  if (count > 4096) throw SizeError("matrix ring too large");
  const int n = static_cast<int>(count);
  auto entry = [&](int m, int i, int j) {
    for (int k = 0; k < i * dim + j; ++k) m /= p;
    return m % p;
  };
  auto build = [&](const std::vector<int>& cells) {
    int m = 0;
    for (int k = dim * dim; k-- > 0;) m = m * p + cells[k];
    return m;
  };
  std::vector<int> add(n * n), mul(n * n);
  std::vector<std::string> labels(n);
  for (int a = 0; a < n; ++a) {
    std::string l = "[";
    for (int i = 0; i < dim; ++i) {
      if (i) l += ";";
      for (int j = 0; j < dim; ++j) {
        if (j) l += ",";
        l += std::to_string(entry(a, i, j));
      }
    }
    labels[a] = l + "]";
    for (int b = 0; b < n; ++b) {
      std::vector<int> sum(dim * dim), prod(dim * dim);
      for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) {
          sum[i * dim + j] = (entry(a, i, j) + entry(b, i, j)) % p;
          int acc = 0;
          for (int k = 0; k < dim; ++k)
            acc = (acc + entry(a, i, k) * entry(b, k, j)) % p;
          prod[i * dim + j] = acc;
        }
      add[a * n + b] = build(sum);
      mul[a * n + b] = build(prod);
    }
  }
  return FinRing::make(n, std::move(add), std::move(mul), std::move(labels));
}

FinRing ring_product(const FinRing& a, const FinRing& b) {
  const int n = a.n * b.n;
  if (n > 4096) throw SizeError("ring product too large");
  auto enc = [&](int x, int y) { return x * b.n + y; };
  std::vector<int> add(n * n), mul(n * n);
  std::vector<std::string> labels(n);
  for (int x = 0; x < a.n; ++x)
    for (int y = 0; y < b.n; ++y) {
      labels[enc(x, y)] = "(" + a.labels[x] + "," + b.labels[y] + ")";
      for (int x2 = 0; x2 < a.n; ++x2)
        for (int y2 = 0; y2 < b.n; ++y2) {
          add[enc(x, y) * n + enc(x2, y2)] = enc(a.plus(x, x2), b.plus(y, y2));
          mul[enc(x, y) * n + enc(x2, y2)] = enc(a.times(x, x2), b.times(y, y2));
        }
    }
  return FinRing::make(n, std::move(add), std::move(mul), std::move(labels));
}

RightIdeal principal_right_ideal(const FinRing& r, int x) {
  RightIdeal ideal;
  IndexSet elems;
  for (int t = 0; t < r.n; ++t) elems.push_back(r.times(x, t));
  // in a regular ring x itself lies in xR; include it for the general case too
  elems.push_back(x);
  ideal.elems = make_set(elems);
  // normalize the generator to an idempotent when possible
  if (auto q = r.quasi_inverse(x)) {
    int e = r.times(x, *q);
    ideal.generator = e;
  } else {
    ideal.generator = x;
  }
  return ideal;
}

namespace {

IndexSet set_sum(const FinRing& r, const IndexSet& a, const IndexSet& b) {
  IndexSet out;
  for (int x : a)
    for (int y : b) out.push_back(r.plus(x, y));
  return make_set(out);
}

bool is_right_ideal(const FinRing& r, const IndexSet& elems) {
  if (!set_contains(elems, r.zero)) return false;
  for (int x : elems) {
    if (!set_contains(elems, r.neg[x])) return false;
    for (int y : elems)
      if (!set_contains(elems, r.plus(x, y))) return false;
    for (int t = 0; t < r.n; ++t)
      if (!set_contains(elems, r.times(x, t))) return false;
  }
  return true;
}

}  // namespace

LatticeLR lattice_L(const FinRing& r, int size_bound) {
  if (r.n > size_bound)
    throw SizeError("ring exceeds the configured bound of " +
                    std::to_string(size_bound) + " elements");
  if (!r.is_regular())
    throw DomainError("the lattice of principal right ideals needs a regular ring");
  LatticeLR l;
  l.ring = r;
  std::set<IndexSet> seen;
  for (int x = 0; x < r.n; ++x) {
    RightIdeal ideal = principal_right_ideal(r, x);
    if (seen.insert(ideal.elems).second) l.ideals.push_back(ideal);
  }
  std::sort(l.ideals.begin(), l.ideals.end());
  for (const RightIdeal& i : l.ideals)
    if (!is_right_ideal(r, i.elems))
      throw DomainError("a principal right ideal failed the ideal axioms");

  // closure under set-level sum and intersection (they stay principal)
  for (size_t i = 0; i < l.ideals.size(); ++i)
    for (size_t j = 0; j < l.ideals.size(); ++j) {
      if (l.index_of(set_sum(r, l.ideals[i].elems, l.ideals[j].elems)) < 0)
        throw DomainError("principal right ideals are not closed under sum");
      if (l.index_of(set_intersection(l.ideals[i].elems, l.ideals[j].elems)) < 0)
        throw DomainError("principal right ideals are not closed under meet");
    }
  // modular law and sectional complements
  const int m = static_cast<int>(l.ideals.size());
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b)
      for (int c = 0; c < m; ++c) {
        if (!l.leq(a, c)) continue;
        if (l.join(a, l.meet(b, c)) != l.meet(l.join(a, b), c))
          throw DomainError("the lattice of principal right ideals is not modular");
      }
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) {
      if (!l.leq(a, b)) continue;
      bool complemented = false;
      for (int z = 0; z < m && !complemented; ++z)
        if (l.join(a, z) == b && l.meet(a, z) == l.zero_ideal()) complemented = true;
      if (!complemented)
        throw DomainError("the lattice of principal right ideals is not "
                          "sectionally complemented");
    }
  return l;
}

int LatticeLR::index_of(const IndexSet& elems) const {
  for (size_t i = 0; i < ideals.size(); ++i)
    if (ideals[i].elems == elems) return static_cast<int>(i);
  return -1;
}

bool LatticeLR::leq(int i, int j) const {
  return set_subset(ideals[i].elems, ideals[j].elems);
}

int LatticeLR::join(int i, int j) const {
  int k = index_of(set_sum(ring, ideals[i].elems, ideals[j].elems));
  if (k < 0) throw DomainError("join escapes the lattice");
  return k;
}

int LatticeLR::meet(int i, int j) const {
  int k = index_of(set_intersection(ideals[i].elems, ideals[j].elems));
  if (k < 0) throw DomainError("meet escapes the lattice");
  return k;
}

int LatticeLR::zero_ideal() const {
  int k = index_of({ring.zero});
  if (k < 0) throw DomainError("the zero ideal is missing");
  return k;
}

FinPoset LatticeLR::as_poset() const {
  std::vector<std::string> labels;
  for (size_t i = 0; i < ideals.size(); ++i)
    labels.push_back("I" + std::to_string(i));
  std::vector<std::pair<int, int>> pairs;
  for (size_t i = 0; i < ideals.size(); ++i)
    for (size_t j = 0; j < ideals.size(); ++j)
      if (leq(static_cast<int>(i), static_cast<int>(j)))
        pairs.emplace_back(static_cast<int>(i), static_cast<int>(j));
  return FinPoset::from_pairs(std::move(labels), pairs);
}

namespace {

int idempotent_generator(const FinRing& r, int x) {
  auto q = r.quasi_inverse(x);
  if (!q) throw DomainError("element without quasi-inverse");
  return r.times(x, *q);
}

}  // namespace

JoinMeetWitness join_meet_via_formulas(const FinRing& r, int a, int b) {
  a = idempotent_generator(r, a);
  b = idempotent_generator(r, b);
  const int bab = r.minus(b, r.times(a, b));  // b - ab
  auto u = r.quasi_inverse(bab);
  if (!u) throw DomainError("quasi-inverse missing for b - ab");
  const int c = r.times(bab, *u);
  const int d = r.times(*u, bab);
  JoinMeetWitness w;
  w.join_witness = r.plus(a, c);
  w.meet_witness = r.minus(b, r.times(b, d));
  w.join = principal_right_ideal(r, w.join_witness);
  w.meet = principal_right_ideal(r, w.meet_witness);
  return w;
}

RightIdeal section_complement(const FinRing& r, int a, int b) {
  if (r.times(a, a) != a || r.times(b, b) != b)
    throw InputError("section complement expects idempotent generators");
  RightIdeal ia = principal_right_ideal(r, a);
  RightIdeal ib = principal_right_ideal(r, b);
  if (!set_subset(ia.elems, ib.elems))
    throw InputError("section complement requires aR contained in bR");
  return principal_right_ideal(r, r.minus(b, r.times(a, b)));
}

bool idempotents_module_iso(const FinRing& r, int a, int b) {
  if (r.times(a, a) != a || r.times(b, b) != b)
    throw InputError("module isomorphism test expects idempotents");
  for (int x = 0; x < r.n; ++x)
    for (int y = 0; y < r.n; ++y)
      if (r.times(y, x) == a && r.times(x, y) == b) return true;
  return false;
}

std::vector<IndexSet> two_sided_ideals(const FinRing& r) {
  auto close = [&](IndexSet seed) {
    IndexSet cur = make_set(seed);
    for (bool grew = true; grew;) {
      grew = false;
      IndexSet next = cur;
      for (int x : cur) {
        IndexSet extra{r.neg[x]};
        for (int y : cur) extra.push_back(r.plus(x, y));
        for (int t = 0; t < r.n; ++t) {
          extra.push_back(r.times(x, t));
          extra.push_back(r.times(t, x));
        }
        next = set_union(next, make_set(extra));
      }
      if (next != cur) {
        cur = std::move(next);
        grew = true;
      }
    }
    return cur;
  };
  std::set<IndexSet> all;
  all.insert(close({r.zero}));
  for (int x = 0; x < r.n; ++x) all.insert(close({x}));
  for (bool grew = true; grew;) {
    grew = false;
    std::vector<IndexSet> items(all.begin(), all.end());
    for (size_t i = 0; i < items.size(); ++i)
      for (size_t j = i + 1; j < items.size(); ++j) {
        IndexSet sum = close(set_union(items[i], items[j]));
        if (all.insert(sum).second) grew = true;
      }
  }
  return {all.begin(), all.end()};
}

std::vector<std::vector<int>> neutral_ideals(const LatticeLR& l) {
  const int m = static_cast<int>(l.ideals.size());
  // precompute module isomorphism between members (by idempotent generators)
  std::vector<std::vector<char>> iso(m, std::vector<char>(m, 0));
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      iso[i][j] = idempotents_module_iso(l.ring, l.ideals[i].generator,
                                         l.ideals[j].generator);
  std::vector<std::vector<int>> out;
  for_each_subset(m, [&](const IndexSet& subset) {
    if (subset.empty()) return;
    // lattice ideal: down-closed and join-closed
    for (int i : subset)
      for (int j = 0; j < m; ++j)
        if (l.leq(j, i) && !set_contains(subset, j)) return;
    for (int i : subset)
      for (int j : subset)
        if (!set_contains(subset, l.join(i, j))) return;
    for (int i : subset)
      for (int j = 0; j < m; ++j)
        if (iso[i][j] && !set_contains(subset, j)) return;
    out.push_back(subset);
  });
  return out;
}

NeutralCorrespondence neutral_ideal_correspondence(const FinRing& r) {
  NeutralCorrespondence c;
  c.lattice = lattice_L(r);
  c.neutral = neutral_ideals(c.lattice);
  c.ring_ideals = two_sided_ideals(r);

  c.phi.assign(c.neutral.size(), -1);
  for (size_t k = 0; k < c.neutral.size(); ++k) {
    IndexSet elems;
    for (int idx : c.neutral[k])
      elems = set_union(elems, c.lattice.ideals[idx].elems);
    // phi(I) = {x : xR in I}; the union of the members is exactly that set
    auto it = std::find(c.ring_ideals.begin(), c.ring_ideals.end(), elems);
    if (it == c.ring_ideals.end())
      throw DomainError("phi image is not a two-sided ideal");
    c.phi[k] = static_cast<int>(it - c.ring_ideals.begin());
  }
  c.psi.assign(c.ring_ideals.size(), -1);
  for (size_t k = 0; k < c.ring_ideals.size(); ++k) {
    std::vector<int> down;
    for (size_t i = 0; i < c.lattice.ideals.size(); ++i)
      if (set_subset(c.lattice.ideals[i].elems, c.ring_ideals[k]))
        down.push_back(static_cast<int>(i));
    auto it = std::find(c.neutral.begin(), c.neutral.end(), down);
    if (it == c.neutral.end())
      throw DomainError("psi image is not a neutral ideal");
    c.psi[k] = static_cast<int>(it - c.neutral.begin());
  }
  // mutually inverse and order-preserving both ways
  for (size_t k = 0; k < c.neutral.size(); ++k)
    if (c.psi[c.phi[k]] != static_cast<int>(k))
      throw DomainError("phi and psi are not mutually inverse");
  for (size_t k = 0; k < c.ring_ideals.size(); ++k)
    if (c.phi[c.psi[k]] != static_cast<int>(k))
      throw DomainError("phi and psi are not mutually inverse");
  for (size_t i = 0; i < c.neutral.size(); ++i)
    for (size_t j = 0; j < c.neutral.size(); ++j) {
      bool sub = std::includes(c.neutral[j].begin(), c.neutral[j].end(),
                               c.neutral[i].begin(), c.neutral[i].end());
      bool sub2 = set_subset(c.ring_ideals[c.phi[i]], c.ring_ideals[c.phi[j]]);
      if (sub != sub2) throw DomainError("the correspondence is not an order isomorphism");
    }
  return c;
}

QuotientLIso quotient_L_iso(const FinRing& r, const IndexSet& two_sided) {
  IndexSet ideal = make_set(two_sided);
  {
    auto all = two_sided_ideals(r);
    if (std::find(all.begin(), all.end(), ideal) == all.end())
      throw InputError("quotient requires a two-sided ideal");
  }
  QuotientLIso q;
  // cosets of the additive subgroup
  q.cls.assign(r.n, -1);
  std::vector<int> reps;
  for (int x = 0; x < r.n; ++x) {
    for (size_t k = 0; k < reps.size() && q.cls[x] < 0; ++k)
      if (set_contains(ideal, r.minus(x, reps[k]))) q.cls[x] = static_cast<int>(k);
    if (q.cls[x] < 0) {
      q.cls[x] = static_cast<int>(reps.size());
      reps.push_back(x);
    }
  }
  const int m = static_cast<int>(reps.size());
  std::vector<int> add(m * m), mul(m * m);
  std::vector<std::string> labels(m);
  for (int a = 0; a < m; ++a) {
    labels[a] = r.labels[reps[a]] + "+I";
    for (int b = 0; b < m; ++b) {
      add[a * m + b] = q.cls[r.plus(reps[a], reps[b])];
      mul[a * m + b] = q.cls[r.times(reps[a], reps[b])];
    }
  }
  q.quotient = FinRing::make(m, std::move(add), std::move(mul), std::move(labels));
  q.quotient_lattice = lattice_L(q.quotient);

  LatticeLR lr = lattice_L(r);
  // congruence classes of L(R) modulo the neutral ideal L(R)↓I
  std::vector<int> members;
  for (size_t i = 0; i < lr.ideals.size(); ++i)
    if (set_subset(lr.ideals[i].elems, ideal)) members.push_back(static_cast<int>(i));
  auto related = [&](int x, int y) {
    for (int u : members)
      if (lr.join(x, u) == lr.join(y, u)) return true;
    return false;
  };
  std::vector<int> block(lr.ideals.size(), -1);
  for (size_t x = 0; x < lr.ideals.size(); ++x) {
    for (size_t k = 0; k < q.lr_classes.size() && block[x] < 0; ++k)
      if (related(static_cast<int>(x), q.lr_classes[k][0]))
        block[x] = static_cast<int>(k);
    if (block[x] < 0) {
      block[x] = static_cast<int>(q.lr_classes.size());
      q.lr_classes.push_back({static_cast<int>(x)});
    } else {
      q.lr_classes[block[x]].push_back(static_cast<int>(x));
    }
  }
  // iso: class of xR  ->  (x+I)(R/I)
  q.iso.assign(q.lr_classes.size(), -1);
  for (size_t k = 0; k < q.lr_classes.size(); ++k) {
    int x = lr.ideals[q.lr_classes[k][0]].generator;
    RightIdeal img = principal_right_ideal(q.quotient, q.cls[x]);
    int idx = q.quotient_lattice.index_of(img.elems);
    if (idx < 0) throw DomainError("image ideal missing in L(R/I)");
    q.iso[k] = idx;
    // well-defined across the class
    for (int other : q.lr_classes[k]) {
      RightIdeal img2 =
          principal_right_ideal(q.quotient, q.cls[lr.ideals[other].generator]);
      if (q.quotient_lattice.index_of(img2.elems) != idx)
        throw DomainError("the quotient map is not well-defined");
    }
  }
  {
    std::vector<char> hit(q.quotient_lattice.ideals.size(), 0);
    for (int v : q.iso) {
      if (hit[v]) throw DomainError("the quotient map is not injective");
      hit[v] = 1;
    }
    if (!std::all_of(hit.begin(), hit.end(), [](char c) { return c != 0; }))
      throw DomainError("the quotient map is not surjective");
    // order preserved both ways
    for (size_t i = 0; i < q.lr_classes.size(); ++i)
      for (size_t j = 0; j < q.lr_classes.size(); ++j) {
        // class order: exists members x<=y after joining with the kernel class
        bool le1 = false;
        for (int u : members)
          if (lr.leq(lr.join(q.lr_classes[i][0], u), lr.join(q.lr_classes[j][0], u)))
            le1 = true;
        bool le2 = q.quotient_lattice.leq(q.iso[i], q.iso[j]);
        if (le1 != le2)
          throw DomainError("the quotient map does not preserve order both ways");
      }
  }
  return q;
}

int faith_utumi_corner(const FinRing& r, const IndexSet& x) {
  if (!r.is_regular()) throw DomainError("corner recipe needs a regular ring");
  for (int v : x)
    if (v < 0 || v >= r.n) throw InputError("corner subset out of range");

  // left version of the join formula: Ra + Rb = R(a+c) with c = u(b - ba),
  // u a quasi-inverse of b - ba
  auto left_idempotent = [&](int v) {
    auto qo = r.quasi_inverse(v);
    return r.times(*qo, v);
  };
  auto left_join = [&](int a, int b) {
    int bba = r.minus(b, r.times(b, a));
    auto u = r.quasi_inverse(bba);
    int c = r.times(*u, bba);
    return left_idempotent(r.plus(a, c));
  };
  auto right_idempotent = [&](int v) {
    auto qo = r.quasi_inverse(v);
    return r.times(v, *qo);
  };
  auto right_join = [&](int a, int b) {
    int bab = r.minus(b, r.times(a, b));
    auto u = r.quasi_inverse(bab);
    int c = r.times(bab, *u);
    return right_idempotent(r.plus(a, c));
  };

  int f = r.zero;
  for (int v : x) f = left_join(f, left_idempotent(v));
  int g = f;
  for (int v : x) g = right_join(g, right_idempotent(v));
  // f with RX ⊆ Rf, then g with XR + fR ⊆ gR, and e = f + g - fg
  int e = r.minus(r.plus(f, g), r.times(f, g));
  if (r.times(e, e) != e) throw DomainError("corner recipe produced a non-idempotent");
  for (int v : x)
    if (r.times(r.times(e, v), e) != v)
      throw DomainError("corner recipe does not absorb the subset");
  return e;
}

RingHom RingHom::make(FinRing src, FinRing dst, std::vector<int> map) {
  if (static_cast<int>(map.size()) != src.n)
    throw InputError("ring map must cover the domain");
  for (int v : map)
    if (v < 0 || v >= dst.n) throw InputError("ring map leaves the codomain");
  for (int a = 0; a < src.n; ++a)
    for (int b = 0; b < src.n; ++b) {
      if (map[src.plus(a, b)] != dst.plus(map[a], map[b]))
        throw InputError("ring map is not additive");
      if (map[src.times(a, b)] != dst.times(map[a], map[b]))
        throw InputError("ring map is not multiplicative");
    }
  RingHom h;
  h.src = std::move(src);
  h.dst = std::move(dst);
  h.map = std::move(map);
  return h;
}

std::vector<int> L_of_hom(const RingHom& f, const LatticeLR& lr,
                          const LatticeLR& ls) {
  std::vector<int> out(lr.ideals.size(), -1);
  for (size_t i = 0; i < lr.ideals.size(); ++i) {
    RightIdeal img = principal_right_ideal(ls.ring, f.map[lr.ideals[i].generator]);
    out[i] = ls.index_of(img.elems);
    if (out[i] < 0) throw DomainError("image ideal missing in L(S)");
    // well-defined: every generator of the same ideal maps to the same ideal
    for (int x : lr.ideals[i].elems) {
      RightIdeal alt = principal_right_ideal(lr.ring, x);
      if (alt.elems != lr.ideals[i].elems) continue;
      RightIdeal img2 = principal_right_ideal(ls.ring, f.map[x]);
      if (ls.index_of(img2.elems) != out[i])
        throw DomainError("L(f) is not well-defined");
    }
  }
  if (out[lr.zero_ideal()] != ls.zero_ideal())
    throw DomainError("L(f) does not preserve zero");
  for (size_t i = 0; i < lr.ideals.size(); ++i)
    for (size_t j = 0; j < lr.ideals.size(); ++j) {
      if (out[lr.join(static_cast<int>(i), static_cast<int>(j))] !=
          ls.join(out[i], out[j]))
        throw DomainError("L(f) does not preserve joins");
      if (out[lr.meet(static_cast<int>(i), static_cast<int>(j))] !=
          ls.meet(out[i], out[j]))
        throw DomainError("L(f) does not preserve meets");
    }
  return out;
}

}  // namespace oat
