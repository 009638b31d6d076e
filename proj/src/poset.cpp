#include "oat/poset.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

namespace oat {

FinPoset FinPoset::from_pairs(std::vector<std::string> labels,
                              const std::vector<std::pair<int, int>>& le_pairs) {
  if (labels.empty()) throw InputError("posets must be nonempty");
  {
    std::set<std::string> seen;
    for (const auto& l : labels)
      if (!seen.insert(l).second) throw InputError("duplicate element label: " + l);
  }
  const int n = static_cast<int>(labels.size());
  FinPoset p;
  p.labels_ = std::move(labels);
  p.leq_.assign(n, std::vector<char>(n, 0));
  for (int i = 0; i < n; ++i) p.leq_[i][i] = 1;
  for (auto [a, b] : le_pairs) {
    if (a < 0 || a >= n || b < 0 || b >= n)
      throw InputError("relation pair out of range");
    p.leq_[a][b] = 1;
  }
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      if (p.leq_[i][k])
        for (int j = 0; j < n; ++j)
          if (p.leq_[k][j]) p.leq_[i][j] = 1;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (p.leq_[i][j] && p.leq_[j][i])
        throw InputError("order relation has a cycle through '" + p.labels_[i] +
                         "' and '" + p.labels_[j] + "'");
  return p;
}

FinPoset FinPoset::from_pairs(
    std::vector<std::string> labels,
    const std::vector<std::pair<std::string, std::string>>& le_pairs) {
  std::map<std::string, int> idx;
  for (int i = 0; i < static_cast<int>(labels.size()); ++i) idx[labels[i]] = i;
  std::vector<std::pair<int, int>> pairs;
  pairs.reserve(le_pairs.size());
  for (const auto& [a, b] : le_pairs) {
    auto ia = idx.find(a), ib = idx.find(b);
    if (ia == idx.end()) throw InputError("unknown element label: " + a);
    if (ib == idx.end()) throw InputError("unknown element label: " + b);
    pairs.emplace_back(ia->second, ib->second);
  }
  return from_pairs(std::move(labels), pairs);
}

int FinPoset::index(const std::string& label) const {
  for (int i = 0; i < size(); ++i)
    if (labels_[i] == label) return i;
  throw InputError("unknown element label: " + label);
}

IndexSet FinPoset::down(int a) const {
  IndexSet r;
  for (int i = 0; i < size(); ++i)
    if (leq(i, a)) r.push_back(i);
  return r;
}

IndexSet FinPoset::up(int a) const {
  IndexSet r;
  for (int i = 0; i < size(); ++i)
    if (leq(a, i)) r.push_back(i);
  return r;
}

IndexSet FinPoset::min_elements() const {
  IndexSet r;
  for (int i = 0; i < size(); ++i) {
    bool minimal = true;
    for (int j = 0; j < size(); ++j)
      if (j != i && leq(j, i)) { minimal = false; break; }
    if (minimal) r.push_back(i);
  }
  return r;
}

IndexSet FinPoset::max_elements() const {
  IndexSet r;
  for (int i = 0; i < size(); ++i) {
    bool maximal = true;
    for (int j = 0; j < size(); ++j)
      if (j != i && leq(i, j)) { maximal = false; break; }
    if (maximal) r.push_back(i);
  }
  return r;
}

std::optional<int> FinPoset::least_element() const {
  for (int i = 0; i < size(); ++i) {
    bool least = true;
    for (int j = 0; j < size(); ++j)
      if (!leq(i, j)) { least = false; break; }
    if (least) return i;
  }
  return std::nullopt;
}

std::optional<int> FinPoset::greatest_element() const {
  for (int i = 0; i < size(); ++i) {
    bool greatest = true;
    for (int j = 0; j < size(); ++j)
      if (!leq(j, i)) { greatest = false; break; }
    if (greatest) return i;
  }
  return std::nullopt;
}

bool FinPoset::is_maximal(int a) const {
  for (int j = 0; j < size(); ++j)
    if (j != a && leq(a, j)) return false;
  return true;
}

IndexSet FinPoset::upper_bounds(const IndexSet& xs) const {
  IndexSet r;
  for (int i = 0; i < size(); ++i) {
    bool above_all = true;
    for (int x : xs)
      if (!leq(x, i)) { above_all = false; break; }
    if (above_all) r.push_back(i);
  }
  return r;
}

IndexSet FinPoset::minimal_of(const IndexSet& xs) const {
  IndexSet r;
  for (int x : xs) {
    bool minimal = true;
    for (int y : xs)
      if (y != x && leq(y, x)) { minimal = false; break; }
    if (minimal) r.push_back(x);
  }
  return r;
}

IndexSet FinPoset::upper_covers(int x) const {
  IndexSet r;
  for (int y = 0; y < size(); ++y) {
    if (!lt(x, y)) continue;
    bool cover = true;
    for (int z = 0; z < size(); ++z)
      if (lt(x, z) && lt(z, y)) { cover = false; break; }
    if (cover) r.push_back(y);
  }
  return r;
}

std::optional<int> FinPoset::join_below(int x, int y, int top) const {
  IndexSet ub;
  for (int i = 0; i < size(); ++i)
    if (leq(i, top) && leq(x, i) && leq(y, i)) ub.push_back(i);
  IndexSet mins = minimal_of(ub);
  if (mins.size() != 1) return std::nullopt;
  return mins[0];
}

void FinPoset::check_subset(const IndexSet& xs) const {
  for (int x : xs)
    if (x < 0 || x >= size())
      throw InputError("element index " + std::to_string(x) + " out of range");
}

bool FinPoset::same_order_as(const FinPoset& other) const {
  return labels_ == other.labels_ && leq_ == other.leq_;
}

bool FinPoset::isomorphic_to(const FinPoset& other) const {
  if (size() != other.size()) return false;
  const int n = size();
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  do {
    bool ok = true;
    for (int i = 0; i < n && ok; ++i)
      for (int j = 0; j < n && ok; ++j)
        if (leq(i, j) != other.leq(perm[i], perm[j])) ok = false;
    if (ok) return true;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return false;
}

IndexSet nabla(const FinPoset& p, const IndexSet& xs) {
  p.check_subset(xs);
  return p.minimal_of(p.upper_bounds(xs));
}

namespace {

// All distinct sets P⇑Y for Y ⊆ base, as the ∩-closure of {up(y)}.
std::set<IndexSet> upper_bound_sets(const FinPoset& p, const IndexSet& base) {
  IndexSet all(p.size());
  std::iota(all.begin(), all.end(), 0);
  std::set<IndexSet> family{all};  // Y = ∅
  std::vector<IndexSet> frontier{all};
  while (!frontier.empty()) {
    std::vector<IndexSet> next;
    for (const auto& u : frontier)
      for (int y : base) {
        IndexSet v = set_intersection(u, p.up(y));
        if (family.insert(v).second) next.push_back(v);
      }
    frontier = std::move(next);
  }
  return family;
}

}  // namespace

IndexSet nabla_closure(const FinPoset& p, const IndexSet& xs) {
  p.check_subset(xs);
  IndexSet closed = make_set(xs);
  for (;;) {
    IndexSet grown = closed;
    for (const auto& ub_set : upper_bound_sets(p, closed))
      grown = set_union(grown, p.minimal_of(ub_set));
    if (grown == closed) return closed;
    closed = std::move(grown);
  }
}

namespace {

// P⇑X is a finitely generated upper subset: its minimal elements are finite
// and every member lies above one of them.  Both are computed directly.
bool finitely_generated_upper(const FinPoset& p, const IndexSet& xs) {
  IndexSet ub = p.upper_bounds(xs);
  IndexSet gen = p.minimal_of(ub);
  for (int u : ub) {
    bool covered = false;
    for (int g : gen)
      if (p.leq(g, u)) { covered = true; break; }
    if (!covered) return false;
  }
  return true;
}

}  // namespace

Classification classify(const FinPoset& p, int supported_sweep_bound) {
  Classification c;
  const int n = p.size();

  c.pseudo = finitely_generated_upper(p, {});
  for (int i = 0; i < n && c.pseudo; ++i)
    for (int j = i + 1; j < n && c.pseudo; ++j)
      if (!finitely_generated_upper(p, {i, j})) c.pseudo = false;

  c.supported = c.pseudo;
  if (c.supported) {
    if (n <= supported_sweep_bound) {
      for_each_subset(n, [&](const IndexSet& xs) {
        if (!c.supported) return;
        if (static_cast<int>(nabla_closure(p, xs).size()) > n) c.supported = false;
      });
    } else {
      for (int i = 0; i < n && c.supported; ++i)
        for (int j = i; j < n && c.supported; ++j)
          if (static_cast<int>(nabla_closure(p, IndexSet{i, j}).size()) > n)
            c.supported = false;
    }
  }

  c.almost = c.pseudo;
  for (int a = 0; a < n && c.almost; ++a) {
    IndexSet da = p.down(a);
    for (size_t i = 0; i < da.size() && c.almost; ++i)
      for (size_t j = i + 1; j < da.size() && c.almost; ++j)
        if (!p.join_below(da[i], da[j], a)) c.almost = false;
  }
  return c;
}

ZeroDecomposition decompose_zero_components(const FinPoset& p) {
  const int n = p.size();
  std::vector<int> comp(n, -1);
  int ncomp = 0;
  for (int s = 0; s < n; ++s) {
    if (comp[s] >= 0) continue;
    comp[s] = ncomp;
    std::vector<int> stack{s};
    while (!stack.empty()) {
      int x = stack.back();
      stack.pop_back();
      for (int y = 0; y < n; ++y)
        if (comp[y] < 0 && (p.leq(x, y) || p.leq(y, x))) {
          comp[y] = ncomp;
          stack.push_back(y);
        }
    }
    ++ncomp;
  }
  ZeroDecomposition d;
  d.ok = true;
  for (int c = 0; c < ncomp; ++c) {
    std::vector<std::string> labels;
    std::vector<int> members;
    for (int i = 0; i < n; ++i)
      if (comp[i] == c) {
        members.push_back(i);
        labels.push_back(p.label(i));
      }
    std::vector<std::pair<int, int>> pairs;
    for (size_t i = 0; i < members.size(); ++i)
      for (size_t j = 0; j < members.size(); ++j)
        if (p.leq(members[i], members[j]))
          pairs.emplace_back(static_cast<int>(i), static_cast<int>(j));
    FinPoset sub = FinPoset::from_pairs(std::move(labels), pairs);
    if (!sub.least_element()) {
      d.ok = false;
      d.components_without_zero.push_back(c);
    }
    d.components.push_back(std::move(sub));
  }
  return d;
}

IdealOfPoset principal_ideal(const FinPoset& p, int x) {
  return IdealOfPoset{p.down(x), x};
}

bool is_ideal(const FinPoset& p, const IndexSet& carrier) {
  if (carrier.empty()) return false;
  for (int x : carrier)
    for (int y = 0; y < p.size(); ++y)
      if (p.leq(y, x) && !set_contains(carrier, y)) return false;
  for (int x : carrier)
    for (int y : carrier) {
      bool bounded = false;
      for (int z : carrier)
        if (p.leq(x, z) && p.leq(y, z)) { bounded = true; break; }
      if (!bounded) return false;
    }
  return true;
}

std::vector<IdealOfPoset> ideals(const FinPoset& p) {
  std::vector<IdealOfPoset> r;
  r.reserve(p.size());
  for (int x = 0; x < p.size(); ++x) r.push_back(principal_ideal(p, x));
  return r;
}

NormCovering NormCovering::make(FinPoset X, FinPoset P, std::vector<int> bd) {
  if (static_cast<int>(bd.size()) != X.size())
    throw InputError("norm map must be defined on every element of X");
  for (int v : bd)
    if (v < 0 || v >= P.size()) throw InputError("norm value out of range");
  for (int a = 0; a < X.size(); ++a)
    for (int b = 0; b < X.size(); ++b)
      if (X.leq(a, b) && !P.leq(bd[a], bd[b]))
        throw InputError("norm map is not isotone at '" + X.label(a) + "' <= '" +
                         X.label(b) + "'");
  if (!classify(X).pseudo)
    throw InputError("the covering poset is not a pseudo join-semilattice");
  NormCovering nc;
  nc.X = std::move(X);
  nc.P = std::move(P);
  nc.bd = std::move(bd);
  return nc;
}

int sharp_norm(const NormCovering& nc, const IndexSet& carrier) {
  if (carrier.empty()) throw InputError("ideal carrier is empty");
  int best = nc.bd[carrier[0]];
  for (int x : carrier) {
    int v = nc.bd[x];
    if (nc.P.leq(best, v)) best = v;
  }
  for (int x : carrier)
    if (!nc.P.leq(nc.bd[x], best))
      throw InputError("ideal is not sharp: its norm image has no largest element");
  return best;
}

namespace {

std::string pk_label(const FinPoset& p, int a,
                     const std::vector<std::pair<int, std::string>>& func) {
  std::ostringstream os;
  os << p.label(a) << "[";
  bool first = true;
  for (const auto& [d, k] : func) {
    if (!first) os << ",";
    first = false;
    os << p.label(d) << ":" << k;
  }
  os << "]";
  return os.str();
}

}  // namespace

NormCovering construct_pk(const FinPoset& p, const std::vector<std::string>& k_labels) {
  Classification c = classify(p);
  if (!c.almost)
    throw DomainError("P<K> requires an almost join-semilattice");
  if (!p.least_element())
    throw DomainError("P<K> requires a poset with zero");
  const int nk = static_cast<int>(k_labels.size());

  // element = (a, function), function as sorted (domain element, K label) pairs
  struct Elem {
    int a;
    std::vector<std::pair<int, std::string>> func;
  };
  std::vector<Elem> elems;
  for (int a = 0; a < p.size(); ++a) {
    IndexSet da = p.down(a);
    if (da.size() > 20)
      throw SizeError("P<K>: principal ideal of size " + std::to_string(da.size()) +
                      " exceeds the enumeration bound");
    for_each_subset_of(da, [&](const IndexSet& dom) {
      if (!set_contains(nabla(p, dom), a)) return;
      double count = 1;
      for (size_t i = 0; i < dom.size(); ++i) count *= nk;
      if (count > 200000)
        throw SizeError("P<K>: too many functions on a domain of size " +
                        std::to_string(dom.size()));
      // all functions dom -> K, in lexicographic order of value indices
      std::vector<int> vals(dom.size(), 0);
      for (;;) {
        Elem e;
        e.a = a;
        for (size_t i = 0; i < dom.size(); ++i)
          e.func.emplace_back(dom[i], k_labels[vals[i]]);
        elems.push_back(std::move(e));
        size_t pos = 0;
        while (pos < vals.size() && ++vals[pos] == nk) vals[pos++] = 0;
        if (pos == vals.size()) break;
      }
    });
  }
  std::sort(elems.begin(), elems.end(), [](const Elem& l, const Elem& r) {
    if (l.a != r.a) return l.a < r.a;
    return l.func < r.func;
  });

  auto extends = [](const Elem& big, const Elem& small) {
    for (const auto& kv : small.func) {
      auto it = std::find_if(big.func.begin(), big.func.end(),
                             [&](const auto& w) { return w.first == kv.first; });
      if (it == big.func.end() || it->second != kv.second) return false;
    }
    return true;
  };

  std::vector<std::string> labels;
  labels.reserve(elems.size());
  for (const auto& e : elems) labels.push_back(pk_label(p, e.a, e.func));
  std::vector<std::pair<int, int>> pairs;
  for (size_t i = 0; i < elems.size(); ++i)
    for (size_t j = 0; j < elems.size(); ++j)
      if (p.leq(elems[i].a, elems[j].a) && extends(elems[j], elems[i]))
        pairs.emplace_back(static_cast<int>(i), static_cast<int>(j));
  FinPoset x = FinPoset::from_pairs(std::move(labels), pairs);
  std::vector<int> bd;
  bd.reserve(elems.size());
  for (const auto& e : elems) bd.push_back(e.a);
  return NormCovering::make(std::move(x), p, std::move(bd));
}

std::optional<std::vector<int>> free_map_search(const FinPoset& p, int k_size,
                                                const SetMapping& f_oracle) {
  const int n = p.size();
  if (k_size < n) return std::nullopt;

  std::map<IndexSet, IndexSet> memo;
  auto f_mem = [&](const IndexSet& s) -> const IndexSet& {
    auto it = memo.find(s);
    if (it == memo.end()) it = memo.emplace(s, make_set(f_oracle(s))).first;
    return it->second;
  };

  // The constraint for x < y only mentions f on P↓y ⊇ P↓x, so it becomes
  // checkable once the largest load index in P↓y is assigned.
  std::vector<std::vector<std::pair<int, int>>> triggers(n);
  for (int y = 0; y < n; ++y) {
    IndexSet dy = p.down(y);
    int last = *std::max_element(dy.begin(), dy.end());
    for (int x = 0; x < n; ++x)
      if (p.lt(x, y)) triggers[last].emplace_back(x, y);
  }

  std::vector<int> assign(n, -1);
  std::vector<char> used(k_size, 0);
  auto image_of_down = [&](int v) {
    IndexSet img;
    for (int d : p.down(v)) img.push_back(assign[d]);
    return make_set(img);
  };

  std::function<bool(int)> dfs = [&](int i) -> bool {
    if (i == n) return true;
    for (int k = 0; k < k_size; ++k) {
      if (used[k]) continue;
      assign[i] = k;
      used[k] = 1;
      bool ok = true;
      for (auto [x, y] : triggers[i]) {
        IndexSet fx = image_of_down(x);
        IndexSet fy = image_of_down(y);
        if (!set_subset(set_intersection(f_mem(fx), fy), fx)) { ok = false; break; }
      }
      if (ok && dfs(i + 1)) return true;
      used[k] = 0;
      assign[i] = -1;
    }
    return false;
  };
  if (dfs(0)) return assign;
  return std::nullopt;
}

IdealFamily IdealFamily::make(NormCovering cover, std::vector<IdealOfPoset> members) {
  IdealFamily fam;
  for (auto& m : members) {
    m.carrier = make_set(m.carrier);
    if (!is_ideal(cover.X, m.carrier))
      throw InputError("family member is not an ideal of X");
    sharp_norm(cover, m.carrier);  // throws when not sharp
  }
  for (int i = 0; i < static_cast<int>(members.size()); ++i) {
    int v = sharp_norm(cover, members[i].carrier);
    if (!cover.P.is_maximal(v)) fam.nonmax.push_back(i);
  }
  fam.cover = std::move(cover);
  fam.members = std::move(members);
  return fam;
}

IdealFamily IdealFamily::all_ideals(NormCovering cover) {
  std::vector<IdealOfPoset> members = ideals(cover.X);
  return make(std::move(cover), std::move(members));
}

std::optional<std::vector<int>> free_section_search(
    const IdealFamily& fam, const std::map<int, IndexSet>& s_map) {
  for (const auto& [idx, _] : s_map)
    if (!set_contains(fam.nonmax, idx))
      throw InputError("S is defined on an ideal whose norm is maximal");
  const FinPoset& p = fam.cover.P;
  const int n = p.size();

  std::vector<IndexSet> candidates(n);
  for (int q = 0; q < n; ++q)
    for (int i = 0; i < static_cast<int>(fam.members.size()); ++i)
      if (sharp_norm(fam.cover, fam.members[i].carrier) == q)
        candidates[q].push_back(i);

  auto s_of = [&](int member_idx) -> IndexSet {
    auto it = s_map.find(member_idx);
    return it == s_map.end() ? IndexSet{} : it->second;
  };

  std::vector<int> sigma(n, -1);
  std::function<bool(int)> dfs = [&](int q) -> bool {
    if (q == n) return true;
    for (int cand : candidates[q]) {
      const IndexSet& cq = fam.members[cand].carrier;
      bool ok = true;
      for (int r = 0; r < q && ok; ++r) {
        const IndexSet& cr = fam.members[sigma[r]].carrier;
        if (p.leq(r, q) && !set_subset(cr, cq)) ok = false;
        if (p.leq(q, r) && !set_subset(cq, cr)) ok = false;
        if (p.lt(r, q) &&
            !set_subset(set_intersection(s_of(sigma[r]), cq), cr)) ok = false;
        if (p.lt(q, r) &&
            !set_subset(set_intersection(s_of(cand), cr), cq)) ok = false;
      }
      if (!ok) continue;
      sigma[q] = cand;
      if (dfs(q + 1)) return true;
      sigma[q] = -1;
    }
    return false;
  };
  if (dfs(0)) return sigma;
  return std::nullopt;
}

}  // namespace oat
