#include "oat/structures.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

namespace oat {

Language Language::make(std::vector<std::string> consts,
                        std::vector<std::pair<std::string, int>> ops,
                        std::vector<std::pair<std::string, int>> rels) {
  std::set<std::string> seen;
  for (const auto& c : consts)
    if (!seen.insert(c).second) throw InputError("duplicate symbol: " + c);
  for (const auto& [o, ar] : ops) {
    if (!seen.insert(o).second) throw InputError("duplicate symbol: " + o);
    if (ar < 1) throw InputError("operation arity must be positive: " + o);
  }
  for (const auto& [r, ar] : rels) {
    if (!seen.insert(r).second) throw InputError("duplicate symbol: " + r);
    if (ar < 1) throw InputError("relation arity must be positive: " + r);
  }
  Language l;
  l.consts = std::move(consts);
  l.ops = std::move(ops);
  l.rels = std::move(rels);
  return l;
}

int Language::const_index(const std::string& name) const {
  for (size_t i = 0; i < consts.size(); ++i)
    if (consts[i] == name) return static_cast<int>(i);
  throw InputError("unknown constant symbol: " + name);
}

int Language::op_index(const std::string& name) const {
  for (size_t i = 0; i < ops.size(); ++i)
    if (ops[i].first == name) return static_cast<int>(i);
  throw InputError("unknown operation symbol: " + name);
}

int Language::rel_index(const std::string& name) const {
  for (size_t i = 0; i < rels.size(); ++i)
    if (rels[i].first == name) return static_cast<int>(i);
  throw InputError("unknown relation symbol: " + name);
}

bool Language::subset_of(const Language& other) const {
  for (const auto& c : consts)
    if (std::find(other.consts.begin(), other.consts.end(), c) == other.consts.end())
      return false;
  for (const auto& o : ops)
    if (std::find(other.ops.begin(), other.ops.end(), o) == other.ops.end())
      return false;
  for (const auto& r : rels)
    if (std::find(other.rels.begin(), other.rels.end(), r) == other.rels.end())
      return false;
  return true;
}

namespace {

long long int_pow(long long b, int e) {
  long long r = 1;
  while (e-- > 0) r *= b;
  return r;
}

int tuple_index(const Tuple& t, int n) {
  int idx = 0;
  for (size_t i = t.size(); i-- > 0;) idx = idx * n + t[i];
  return idx;
}

}  // namespace

void for_each_tuple(int n, int arity, const std::function<void(const Tuple&)>& fn) {
  Tuple t(arity, 0);
  for (;;) {
    fn(t);
    int pos = 0;
    while (pos < arity && ++t[pos] == n) t[pos++] = 0;
    if (pos == arity) break;
  }
}

FinStructure FinStructure::make(Language lang, int n, std::vector<int> const_val,
                                std::vector<std::vector<int>> op_table,
                                std::vector<std::vector<Tuple>> rel_tuples) {
  if (n <= 0) throw InputError("structure universe must be nonempty");
  if (const_val.size() != lang.consts.size())
    throw InputError("constant interpretations do not match the language");
  for (int v : const_val)
    if (v < 0 || v >= n) throw InputError("constant value out of range");
  if (op_table.size() != lang.ops.size())
    throw InputError("operation tables do not match the language");
  for (size_t i = 0; i < op_table.size(); ++i) {
    if (static_cast<long long>(op_table[i].size()) != int_pow(n, lang.ops[i].second))
      throw InputError("operation table for '" + lang.ops[i].first +
                       "' has the wrong size");
    for (int v : op_table[i])
      if (v < 0 || v >= n)
        throw InputError("operation table for '" + lang.ops[i].first +
                         "' leaves the universe");
  }
  if (rel_tuples.size() != lang.rels.size())
    throw InputError("relation interpretations do not match the language");
  for (size_t i = 0; i < rel_tuples.size(); ++i) {
    for (auto& t : rel_tuples[i]) {
      if (static_cast<int>(t.size()) != lang.rels[i].second)
        throw InputError("tuple arity mismatch for '" + lang.rels[i].first + "'");
      for (int v : t)
        if (v < 0 || v >= n) throw InputError("relation tuple out of range");
    }
    std::sort(rel_tuples[i].begin(), rel_tuples[i].end());
    rel_tuples[i].erase(std::unique(rel_tuples[i].begin(), rel_tuples[i].end()),
                        rel_tuples[i].end());
  }
  FinStructure a;
  a.lang = std::move(lang);
  a.n = n;
  a.const_val = std::move(const_val);
  a.op_table = std::move(op_table);
  a.rel_tuples = std::move(rel_tuples);
  return a;
}

int FinStructure::op_apply(int op, const Tuple& args) const {
  return op_table[op][tuple_index(args, n)];
}

bool FinStructure::rel_holds(int rel, const Tuple& args) const {
  return std::binary_search(rel_tuples[rel].begin(), rel_tuples[rel].end(), args);
}

bool Congruence::rel_has(int r, const Tuple& t) const {
  return std::binary_search(rel[r].begin(), rel[r].end(), t);
}

bool Congruence::leq(const Congruence& other) const {
  for (size_t i = 0; i < block.size(); ++i)
    for (size_t j = 0; j < block.size(); ++j)
      if (block[i] == block[j] && other.block[i] != other.block[j]) return false;
  for (size_t r = 0; r < rel.size(); ++r)
    if (!std::includes(other.rel[r].begin(), other.rel[r].end(), rel[r].begin(),
                       rel[r].end()))
      return false;
  return true;
}

bool Congruence::operator<(const Congruence& other) const {
  if (block != other.block) return block < other.block;
  return rel < other.rel;
}

Congruence Congruence::zero(const FinStructure& a) {
  Congruence c;
  c.block.resize(a.n);
  std::iota(c.block.begin(), c.block.end(), 0);
  c.rel = a.rel_tuples;
  return c;
}

Congruence Congruence::one(const FinStructure& a) {
  Congruence c;
  c.block.assign(a.n, 0);
  c.rel.resize(a.lang.rels.size());
  for (size_t r = 0; r < a.lang.rels.size(); ++r)
    for_each_tuple(a.n, a.lang.rels[r].second,
                   [&](const Tuple& t) { c.rel[r].push_back(t); });
  for (auto& ts : c.rel) std::sort(ts.begin(), ts.end());
  return c;
}

namespace {

void normalize_blocks(std::vector<int>& block) {
  std::map<int, int> first;
  for (size_t i = 0; i < block.size(); ++i)
    if (!first.count(block[i])) first[block[i]] = static_cast<int>(i);
  for (auto& b : block) b = first[b];
}

}  // namespace

std::string congruence_violation(const FinStructure& a, const Congruence& theta) {
  if (static_cast<int>(theta.block.size()) != a.n) return "equivalence has the wrong universe";
  if (theta.rel.size() != a.lang.rels.size()) return "relation components missing";
  // (ii) operation compatibility via single-coordinate replacement
  for (size_t op = 0; op < a.lang.ops.size(); ++op) {
    const int k = a.lang.ops[op].second;
    bool bad = false;
    for_each_tuple(a.n, k, [&](const Tuple& t) {
      if (bad) return;
      for (int j = 0; j < k && !bad; ++j)
        for (int y = 0; y < a.n && !bad; ++y) {
          if (!theta.related(t[j], y)) continue;
          Tuple s = t;
          s[j] = y;
          if (!theta.related(a.op_apply(static_cast<int>(op), t),
                             a.op_apply(static_cast<int>(op), s)))
            bad = true;
        }
    });
    if (bad) return "equivalence incompatible with operation '" + a.lang.ops[op].first + "'";
  }
  for (size_t r = 0; r < a.lang.rels.size(); ++r) {
    // (iii) containment of the base interpretation
    for (const Tuple& t : a.rel_tuples[r])
      if (!theta.rel_has(static_cast<int>(r), t))
        return "enlargement of '" + a.lang.rels[r].first +
               "' misses a base tuple";
    // (iv) closure under replacement
    for (const Tuple& t : theta.rel[r])
      for (size_t j = 0; j < t.size(); ++j)
        for (int y = 0; y < a.n; ++y) {
          if (!theta.related(t[j], y)) continue;
          Tuple s = t;
          s[j] = y;
          if (!theta.rel_has(static_cast<int>(r), s))
            return "enlargement of '" + a.lang.rels[r].first +
                   "' is not closed under replacement";
        }
  }
  return "";
}

std::vector<Congruence> con_lattice(const FinStructure& a, int universe_bound) {
  if (a.n > universe_bound)
    throw SizeError("congruence enumeration bounded to " +
                    std::to_string(universe_bound) + " elements");
  std::vector<Congruence> out;

  // all partitions via restricted growth strings
  std::vector<int> rgs(a.n, 0);
  std::function<void(int, int)> gen = [&](int i, int maxv) {
    if (i == a.n) {
      Congruence base;
      base.block = rgs;
      normalize_blocks(base.block);
      {
        Congruence opcheck;
        opcheck.block = base.block;
        opcheck.rel = a.rel_tuples;
        // reuse the violation checker minus the closure clause by testing on
        // a fully saturated enlargement
        for (size_t r = 0; r < a.lang.rels.size(); ++r) {
          std::set<Tuple> sat;
          for (const Tuple& t : a.rel_tuples[r]) {
            // saturate t under the equivalence
            std::vector<Tuple> stack{t};
            while (!stack.empty()) {
              Tuple cur = stack.back();
              stack.pop_back();
              if (!sat.insert(cur).second) continue;
              for (size_t j = 0; j < cur.size(); ++j)
                for (int y = 0; y < a.n; ++y)
                  if (opcheck.block[cur[j]] == opcheck.block[y]) {
                    Tuple s = cur;
                    s[j] = y;
                    if (!sat.count(s)) stack.push_back(s);
                  }
            }
          }
          opcheck.rel[r].assign(sat.begin(), sat.end());
        }
        if (!congruence_violation(a, opcheck).empty()) return;

        // enumerate the optional tuple classes on top of the saturation;
        // classes are products of blocks
        long long total_options = 1;
        std::vector<std::vector<std::vector<Tuple>>> optional_classes(
            a.lang.rels.size());
        for (size_t r = 0; r < a.lang.rels.size(); ++r) {
          std::set<Tuple> seen_reps;
          std::map<Tuple, std::vector<Tuple>> by_rep;
          for_each_tuple(a.n, a.lang.rels[r].second, [&](const Tuple& t) {
            Tuple rep(t.size());
            for (size_t j = 0; j < t.size(); ++j) rep[j] = opcheck.block[t[j]];
            by_rep[rep].push_back(t);
          });
          for (auto& [rep, members] : by_rep) {
            bool required = false;
            for (const Tuple& t : members)
              if (std::binary_search(opcheck.rel[r].begin(), opcheck.rel[r].end(),
                                     t)) {
                required = true;
                break;
              }
            if (!required) optional_classes[r].push_back(members);
          }
          total_options *= int_pow(2, static_cast<int>(optional_classes[r].size()));
          if (total_options > (1 << 21))
            throw SizeError("relation enlargement enumeration too large");
        }
        // walk all subsets of optional classes per relation symbol
        std::vector<std::uint32_t> pick(a.lang.rels.size(), 0);
        for (;;) {
          Congruence c;
          c.block = opcheck.block;
          c.rel.resize(a.lang.rels.size());
          for (size_t r = 0; r < a.lang.rels.size(); ++r) {
            std::vector<Tuple> ts = opcheck.rel[r];
            for (size_t k = 0; k < optional_classes[r].size(); ++k)
              if (pick[r] & (1u << k))
                ts.insert(ts.end(), optional_classes[r][k].begin(),
                          optional_classes[r][k].end());
            std::sort(ts.begin(), ts.end());
            c.rel[r] = std::move(ts);
          }
          out.push_back(std::move(c));
          size_t pos = 0;
          while (pos < pick.size()) {
            if (++pick[pos] == (1u << optional_classes[pos].size())) {
              pick[pos++] = 0;
            } else {
              break;
            }
          }
          if (pos == pick.size()) break;
        }
      }
    } else {
      for (int v = 0; v <= maxv + 1; ++v) {
        rgs[i] = v;
        gen(i + 1, std::max(maxv, v));
      }
    }
  };
  gen(1, 0);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());

  // lattice sanity on moderate sizes: bottom, top, pairwise meets present
  if (out.size() <= 800) {
    auto has = [&](const Congruence& c) {
      return std::binary_search(out.begin(), out.end(), c);
    };
    if (!has(Congruence::zero(a)) || !has(Congruence::one(a)))
      throw DomainError("congruence enumeration is missing a bound");
    for (size_t i = 0; i < out.size(); ++i)
      for (size_t j = i + 1; j < out.size(); ++j)
        if (!has(congruence_meet(a, out[i], out[j])))
          throw DomainError("congruences are not closed under meet");
  }
  return out;
}

Congruence congruence_meet(const FinStructure& a, const Congruence& x,
                           const Congruence& y) {
  Congruence c;
  c.block.resize(a.n);
  std::map<std::pair<int, int>, int> ids;
  for (int i = 0; i < a.n; ++i) {
    auto key = std::make_pair(x.block[i], y.block[i]);
    auto it = ids.find(key);
    if (it == ids.end()) it = ids.emplace(key, i).first;
    c.block[i] = it->second;
  }
  normalize_blocks(c.block);
  c.rel.resize(x.rel.size());
  for (size_t r = 0; r < x.rel.size(); ++r)
    std::set_intersection(x.rel[r].begin(), x.rel[r].end(), y.rel[r].begin(),
                          y.rel[r].end(), std::back_inserter(c.rel[r]));
  return c;
}

Congruence congruence_generated(const FinStructure& a,
                                const std::vector<std::pair<int, int>>& pairs,
                                const std::vector<std::pair<int, Tuple>>& tuples) {
  // union-find for the equivalence part
  std::vector<int> parent(a.n);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  std::vector<std::pair<int, int>> work = pairs;
  auto unite = [&](int x, int y) {
    x = find(x);
    y = find(y);
    if (x == y) return;
    parent[std::max(x, y)] = std::min(x, y);
    work.emplace_back(x, y);
  };
  for (auto [x, y] : pairs) unite(x, y);
  while (!work.empty()) {
    auto [x, y] = work.back();
    work.pop_back();
    for (size_t op = 0; op < a.lang.ops.size(); ++op) {
      const int k = a.lang.ops[op].second;
      for_each_tuple(a.n, k, [&](const Tuple& t) {
        for (int j = 0; j < k; ++j) {
          if (t[j] != x) continue;
          Tuple s = t;
          s[j] = y;
          int u = a.op_apply(static_cast<int>(op), t);
          int v = a.op_apply(static_cast<int>(op), s);
          if (find(u) != find(v)) unite(u, v);
        }
      });
    }
  }
  Congruence c;
  c.block.resize(a.n);
  for (int i = 0; i < a.n; ++i) c.block[i] = find(i);
  normalize_blocks(c.block);

  c.rel.assign(a.lang.rels.size(), {});
  for (size_t r = 0; r < a.lang.rels.size(); ++r) {
    std::set<Tuple> sat;
    std::vector<Tuple> stack;
    for (const Tuple& t : a.rel_tuples[r]) stack.push_back(t);
    for (const auto& [ri, t] : tuples)
      if (ri == static_cast<int>(r)) stack.push_back(t);
    while (!stack.empty()) {
      Tuple cur = stack.back();
      stack.pop_back();
      if (!sat.insert(cur).second) continue;
      for (size_t j = 0; j < cur.size(); ++j)
        for (int yv = 0; yv < a.n; ++yv)
          if (c.block[cur[j]] == c.block[yv]) {
            Tuple s = cur;
            s[j] = yv;
            if (!sat.count(s)) stack.push_back(s);
          }
    }
    c.rel[r].assign(sat.begin(), sat.end());
  }
  std::string why = congruence_violation(a, c);
  if (!why.empty()) throw DomainError("generated congruence is invalid: " + why);
  return c;
}

Congruence congruence_join(const FinStructure& a, const Congruence& x,
                           const Congruence& y) {
  std::vector<std::pair<int, int>> pairs;
  for (int i = 0; i < a.n; ++i)
    for (int j = i + 1; j < a.n; ++j)
      if (x.related(i, j) || y.related(i, j)) pairs.emplace_back(i, j);
  std::vector<std::pair<int, Tuple>> tuples;
  for (size_t r = 0; r < x.rel.size(); ++r) {
    for (const Tuple& t : x.rel[r]) tuples.emplace_back(static_cast<int>(r), t);
    for (const Tuple& t : y.rel[r]) tuples.emplace_back(static_cast<int>(r), t);
  }
  return congruence_generated(a, pairs, tuples);
}

namespace {

std::string hom_violation(const FinStructure& src, const FinStructure& dst,
                          const std::vector<int>& map) {
  if (static_cast<int>(map.size()) != src.n) return "map does not cover the domain";
  for (int v : map)
    if (v < 0 || v >= dst.n) return "map leaves the codomain";
  if (!src.lang.subset_of(dst.lang))
    return "domain language is not contained in the codomain language";
  for (size_t c = 0; c < src.lang.consts.size(); ++c) {
    int dc = dst.lang.const_index(src.lang.consts[c]);
    if (map[src.const_val[c]] != dst.const_val[dc])
      return "constant clause fails at '" + src.lang.consts[c] + "'";
  }
  for (size_t op = 0; op < src.lang.ops.size(); ++op) {
    int dop = dst.lang.op_index(src.lang.ops[op].first);
    const int k = src.lang.ops[op].second;
    std::string bad;
    for_each_tuple(src.n, k, [&](const Tuple& t) {
      if (!bad.empty()) return;
      Tuple mt(t.size());
      for (size_t j = 0; j < t.size(); ++j) mt[j] = map[t[j]];
      if (map[src.op_apply(static_cast<int>(op), t)] != dst.op_apply(dop, mt))
        bad = "operation clause fails at '" + src.lang.ops[op].first + "'";
    });
    if (!bad.empty()) return bad;
  }
  for (size_t r = 0; r < src.lang.rels.size(); ++r) {
    int dr = dst.lang.rel_index(src.lang.rels[r].first);
    for (const Tuple& t : src.rel_tuples[r]) {
      Tuple mt(t.size());
      for (size_t j = 0; j < t.size(); ++j) mt[j] = map[t[j]];
      if (!dst.rel_holds(dr, mt))
        return "relation clause fails at '" + src.lang.rels[r].first + "'";
    }
  }
  return "";
}

}  // namespace

Homomorphism Homomorphism::make(FinStructure src, FinStructure dst,
                                std::vector<int> map) {
  std::string why = hom_violation(src, dst, map);
  if (!why.empty()) throw InputError("not a homomorphism: " + why);
  Homomorphism h;
  h.src = std::move(src);
  h.dst = std::move(dst);
  h.map = std::move(map);
  return h;
}

bool Homomorphism::surjective() const {
  std::vector<char> hit(dst.n, 0);
  for (int v : map) hit[v] = 1;
  return std::all_of(hit.begin(), hit.end(), [](char c) { return c != 0; });
}

bool Homomorphism::injective() const {
  std::vector<char> hit(dst.n, 0);
  for (int v : map) {
    if (hit[v]) return false;
    hit[v] = 1;
  }
  return true;
}

bool Homomorphism::is_embedding() const {
  if (!injective()) return false;
  for (size_t r = 0; r < src.lang.rels.size(); ++r) {
    int dr = dst.lang.rel_index(src.lang.rels[r].first);
    const int k = src.lang.rels[r].second;
    bool ok = true;
    for_each_tuple(src.n, k, [&](const Tuple& t) {
      if (!ok) return;
      Tuple mt(t.size());
      for (size_t j = 0; j < t.size(); ++j) mt[j] = map[t[j]];
      if (dst.rel_holds(dr, mt) && !src.rel_holds(static_cast<int>(r), t)) ok = false;
    });
    if (!ok) return false;
  }
  return true;
}

Homomorphism compose(const Homomorphism& g, const Homomorphism& f) {
  if (!(f.dst == g.src)) throw InputError("homomorphisms do not compose");
  std::vector<int> map(f.map.size());
  for (size_t i = 0; i < f.map.size(); ++i) map[i] = g.map[f.map[i]];
  return Homomorphism::make(f.src, g.dst, std::move(map));
}

StructureQuotient quotient(const FinStructure& a, const Congruence& theta) {
  std::string why = congruence_violation(a, theta);
  if (!why.empty()) throw InputError("quotient by a non-congruence: " + why);

  std::vector<int> rep;  // block representatives in increasing order
  std::vector<int> to_block(a.n, -1);
  for (int i = 0; i < a.n; ++i)
    if (theta.block[i] == i) {
      to_block[i] = static_cast<int>(rep.size());
      rep.push_back(i);
    }
  for (int i = 0; i < a.n; ++i) to_block[i] = to_block[theta.block[i]];
  const int m = static_cast<int>(rep.size());

  std::vector<int> const_val;
  for (size_t c = 0; c < a.lang.consts.size(); ++c)
    const_val.push_back(to_block[a.const_val[c]]);
  std::vector<std::vector<int>> op_table(a.lang.ops.size());
  for (size_t op = 0; op < a.lang.ops.size(); ++op) {
    const int k = a.lang.ops[op].second;
    op_table[op].assign(int_pow(m, k), 0);
    for_each_tuple(m, k, [&](const Tuple& t) {
      Tuple lifted(t.size());
      for (size_t j = 0; j < t.size(); ++j) lifted[j] = rep[t[j]];
      op_table[op][tuple_index(t, m)] =
          to_block[a.op_apply(static_cast<int>(op), lifted)];
    });
  }
  std::vector<std::vector<Tuple>> rel_tuples(a.lang.rels.size());
  for (size_t r = 0; r < a.lang.rels.size(); ++r)
    for (const Tuple& t : theta.rel[r]) {
      Tuple mt(t.size());
      for (size_t j = 0; j < t.size(); ++j) mt[j] = to_block[t[j]];
      rel_tuples[r].push_back(mt);
    }
  FinStructure q = FinStructure::make(a.lang, m, std::move(const_val),
                                      std::move(op_table), std::move(rel_tuples));
  Homomorphism pi = Homomorphism::make(a, q, to_block);
  return {std::move(q), std::move(pi)};
}

Congruence kernel(const Homomorphism& f) {
  Congruence c;
  c.block.resize(f.src.n);
  std::map<int, int> first;
  for (int i = 0; i < f.src.n; ++i) {
    auto it = first.find(f.map[i]);
    if (it == first.end()) it = first.emplace(f.map[i], i).first;
    c.block[i] = it->second;
  }
  c.rel.assign(f.src.lang.rels.size(), {});
  for (size_t r = 0; r < f.src.lang.rels.size(); ++r) {
    int dr = f.dst.lang.rel_index(f.src.lang.rels[r].first);
    for_each_tuple(f.src.n, f.src.lang.rels[r].second, [&](const Tuple& t) {
      Tuple mt(t.size());
      for (size_t j = 0; j < t.size(); ++j) mt[j] = f.map[t[j]];
      if (f.dst.rel_holds(dr, mt)) c.rel[r].push_back(t);
    });
    std::sort(c.rel[r].begin(), c.rel[r].end());
  }
  return c;
}

Congruence res(const Homomorphism& f, const Congruence& beta) {
  if (congruence_violation(f.dst, beta) != "")
    throw InputError("res expects a congruence of the codomain");
  Congruence c;
  c.block.resize(f.src.n);
  std::map<int, int> first;
  for (int i = 0; i < f.src.n; ++i) {
    int key = beta.block[f.map[i]];
    auto it = first.find(key);
    if (it == first.end()) it = first.emplace(key, i).first;
    c.block[i] = it->second;
  }
  c.rel.assign(f.src.lang.rels.size(), {});
  for (size_t r = 0; r < f.src.lang.rels.size(); ++r) {
    int dr = f.dst.lang.rel_index(f.src.lang.rels[r].first);
    for_each_tuple(f.src.n, f.src.lang.rels[r].second, [&](const Tuple& t) {
      Tuple mt(t.size());
      for (size_t j = 0; j < t.size(); ++j) mt[j] = f.map[t[j]];
      if (beta.rel_has(dr, mt)) c.rel[r].push_back(t);
    });
    std::sort(c.rel[r].begin(), c.rel[r].end());
  }
  return c;
}

std::vector<Homomorphism> all_homomorphisms(const FinStructure& src,
                                            const FinStructure& dst,
                                            long long budget) {
  if (int_pow(dst.n, src.n) > budget)
    throw SizeError("homomorphism enumeration too large");
  std::vector<Homomorphism> out;
  std::vector<int> map(src.n, 0);
  for (;;) {
    if (hom_violation(src, dst, map).empty())
      out.push_back(Homomorphism::make(src, dst, map));
    int pos = 0;
    while (pos < src.n && ++map[pos] == dst.n) map[pos++] = 0;
    if (pos == src.n) break;
  }
  return out;
}

// ---------------------------------------------------------------------------

namespace {

int eval_term(const FinStructure& a, const Term& t,
              const std::map<std::string, int>& env) {
  switch (t.kind) {
    case Term::Var: {
      auto it = env.find(t.name);
      if (it == env.end()) throw InputError("unbound variable: " + t.name);
      return it->second;
    }
    case Term::Const:
      return a.const_val[a.lang.const_index(t.name)];
    case Term::Op: {
      int op = a.lang.op_index(t.name);
      if (static_cast<int>(t.args.size()) != a.lang.ops[op].second)
        throw InputError("arity mismatch at '" + t.name + "'");
      Tuple args;
      for (const Term& s : t.args) args.push_back(eval_term(a, s, env));
      return a.op_apply(op, args);
    }
  }
  throw InputError("malformed term");
}

bool eval_atom(const FinStructure& a, const AtomicFormula& f,
               const std::map<std::string, int>& env) {
  if (f.is_eq) return eval_term(a, f.lhs, env) == eval_term(a, f.rhs, env);
  int r = a.lang.rel_index(f.rel);
  Tuple args;
  for (const Term& s : f.rel_args) args.push_back(eval_term(a, s, env));
  return a.rel_holds(r, args);
}

void collect_vars(const Term& t, std::set<std::string>& vars) {
  if (t.kind == Term::Var) vars.insert(t.name);
  for (const Term& s : t.args) collect_vars(s, vars);
}

void collect_vars(const AtomicFormula& f, std::set<std::string>& vars) {
  if (f.is_eq) {
    collect_vars(f.lhs, vars);
    collect_vars(f.rhs, vars);
  } else {
    for (const Term& s : f.rel_args) collect_vars(s, vars);
  }
}

}  // namespace

bool satisfies(const FinStructure& a, const QuasiIdentity& qi) {
  std::set<std::string> vars;
  for (const AtomicFormula& f : qi.premises) collect_vars(f, vars);
  collect_vars(qi.conclusion, vars);
  std::vector<std::string> vlist(vars.begin(), vars.end());
  const int k = static_cast<int>(vlist.size());
  if (int_pow(a.n, k) > 10000000)
    throw SizeError("quasi-identity evaluation too large");
  bool ok = true;
  for_each_tuple(a.n, k, [&](const Tuple& t) {
    if (!ok) return;
    std::map<std::string, int> env;
    for (int i = 0; i < k; ++i) env[vlist[i]] = t[i];
    for (const AtomicFormula& f : qi.premises)
      if (!eval_atom(a, f, env)) return;
    if (!eval_atom(a, qi.conclusion, env)) ok = false;
  });
  return ok;
}

VarietyOracle VarietyOracle::all() {
  VarietyOracle v;
  v.everything = true;
  return v;
}

VarietyOracle VarietyOracle::from_quasi_identities(std::string name,
                                                   std::vector<QuasiIdentity> qis) {
  VarietyOracle v;
  v.name = std::move(name);
  v.accepts = [qis = std::move(qis)](const FinStructure& a) {
    for (const QuasiIdentity& qi : qis)
      if (!satisfies(a, qi)) return false;
    return true;
  };
  return v;
}

ConVResult conv_congruences(const FinStructure& a, const VarietyOracle& v,
                            bool require_membership, int universe_bound) {
  if (require_membership && !v.accepts(a))
    throw DomainError("the structure itself is rejected by the variety oracle");
  ConVResult r;
  for (const Congruence& c : con_lattice(a, universe_bound))
    if (v.accepts(quotient(a, c).structure)) r.members.push_back(c);
  for (size_t i = 0; i < r.members.size(); ++i)
    for (size_t j = i + 1; j < r.members.size(); ++j) {
      Congruence m = congruence_meet(a, r.members[i], r.members[j]);
      if (!std::binary_search(r.members.begin(), r.members.end(), m)) {
        r.meet_closed = false;
        r.meet_violations.emplace_back(static_cast<int>(i), static_cast<int>(j));
      }
    }
  return r;
}

CongruenceSeed CongruenceSeed::pair(int x, int y) {
  CongruenceSeed s;
  s.is_pair = true;
  s.x = x;
  s.y = y;
  return s;
}

CongruenceSeed CongruenceSeed::relation(int rel, Tuple t) {
  CongruenceSeed s;
  s.is_pair = false;
  s.rel = rel;
  s.tuple = std::move(t);
  return s;
}

namespace {

bool seed_in(const Congruence& c, const CongruenceSeed& seed) {
  if (seed.is_pair) return c.related(seed.x, seed.y);
  return c.rel_has(seed.rel, seed.tuple);
}

void check_seed(const FinStructure& a, const CongruenceSeed& seed) {
  if (seed.is_pair) {
    if (seed.x < 0 || seed.x >= a.n || seed.y < 0 || seed.y >= a.n)
      throw InputError("seed element out of range");
  } else {
    if (seed.rel < 0 || seed.rel >= static_cast<int>(a.lang.rels.size()))
      throw InputError("seed relation out of range");
    if (static_cast<int>(seed.tuple.size()) != a.lang.rels[seed.rel].second)
      throw InputError("seed tuple arity mismatch");
    for (int x : seed.tuple)
      if (x < 0 || x >= a.n) throw InputError("seed tuple out of range");
  }
}

}  // namespace

Congruence principal_vcong(const FinStructure& a, const VarietyOracle& v,
                           const CongruenceSeed& seed) {
  check_seed(a, seed);
  if (v.everything) {
    if (seed.is_pair) return congruence_generated(a, {{seed.x, seed.y}}, {});
    return congruence_generated(a, {}, {{seed.rel, seed.tuple}});
  }
  ConVResult cv = conv_congruences(a, v);
  std::optional<Congruence> acc;
  for (const Congruence& c : cv.members)
    if (seed_in(c, seed)) {
      if (!acc)
        acc = c;
      else
        acc = congruence_meet(a, *acc, c);
    }
  if (!acc)
    throw DomainError("no V-congruence admits the seed; the oracle violates closure");
  if (!std::binary_search(cv.members.begin(), cv.members.end(), *acc))
    throw DomainError("meet of V-congruences escapes the family; oracle violates closure");
  return *acc;
}

std::vector<int> concv_map(const Homomorphism& f, const VarietyOracle& v) {
  ConVResult ca = conv_congruences(f.src, v);
  ConVResult cb = conv_congruences(f.dst, v);
  std::vector<int> out;
  for (const Congruence& alpha : ca.members) {
    std::vector<std::pair<int, int>> pairs;
    for (int i = 0; i < f.src.n; ++i)
      for (int j = i + 1; j < f.src.n; ++j)
        if (alpha.related(i, j)) pairs.emplace_back(f.map[i], f.map[j]);
    std::vector<std::pair<int, Tuple>> tuples;
    for (size_t r = 0; r < alpha.rel.size(); ++r) {
      int dr = f.dst.lang.rel_index(f.src.lang.rels[r].first);
      for (const Tuple& t : alpha.rel[r]) {
        Tuple mt(t.size());
        for (size_t j = 0; j < t.size(); ++j) mt[j] = f.map[t[j]];
        tuples.emplace_back(dr, mt);
      }
    }
    Congruence img;
    if (v.everything) {
      img = congruence_generated(f.dst, pairs, tuples);
    } else {
      std::optional<Congruence> acc;
      for (const Congruence& c : cb.members) {
        bool above = true;
        for (auto [x, y] : pairs)
          if (!c.related(x, y)) { above = false; break; }
        for (const auto& [r, t] : tuples) {
          if (!above) break;
          if (!c.rel_has(r, t)) above = false;
        }
        if (!above) continue;
        if (!acc)
          acc = c;
        else
          acc = congruence_meet(f.dst, *acc, c);
      }
      if (!acc) throw DomainError("image congruence does not exist; oracle violates closure");
      img = *acc;
    }
    auto it = std::lower_bound(cb.members.begin(), cb.members.end(), img);
    if (it == cb.members.end() || !(*it == img))
      throw DomainError("image congruence escapes the V-congruence family");
    out.push_back(static_cast<int>(it - cb.members.begin()));
  }
  return out;
}

// ---------------------------------------------------------------------------

FinCommMonoid FinCommMonoid::make(int n, std::vector<int> add, int zero) {
  if (n <= 0) throw InputError("monoid carrier must be nonempty");
  if (static_cast<int>(add.size()) != n * n) throw InputError("addition table size");
  for (int v : add)
    if (v < 0 || v >= n) throw InputError("addition table leaves the carrier");
  if (zero < 0 || zero >= n) throw InputError("neutral element out of range");
  FinCommMonoid m;
  m.n = n;
  m.add = std::move(add);
  m.zero = zero;
  for (int a = 0; a < n; ++a) {
    if (m.plus(a, zero) != a || m.plus(zero, a) != a)
      throw InputError("neutral law fails");
    for (int b = 0; b < n; ++b) {
      if (m.plus(a, b) != m.plus(b, a)) throw InputError("commutativity fails");
      for (int c = 0; c < n; ++c)
        if (m.plus(m.plus(a, b), c) != m.plus(a, m.plus(b, c)))
          throw InputError("associativity fails");
    }
  }
  return m;
}

bool FinCommMonoid::leq(int a, int b) const {
  for (int z = 0; z < n; ++z)
    if (plus(a, z) == b) return true;
  return false;
}

bool FinCommMonoid::is_conical() const {
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (plus(a, b) == zero && (a != zero || b != zero)) return false;
  return true;
}

bool FinCommMonoid::is_semilattice() const {
  for (int a = 0; a < n; ++a)
    if (plus(a, a) != a) return false;
  return true;
}

MonoidHom MonoidHom::make(FinCommMonoid src, FinCommMonoid dst, std::vector<int> map) {
  if (static_cast<int>(map.size()) != src.n)
    throw InputError("monoid map must cover the domain");
  for (int v : map)
    if (v < 0 || v >= dst.n) throw InputError("monoid map leaves the codomain");
  if (map[src.zero] != dst.zero) throw InputError("monoid map does not fix zero");
  for (int a = 0; a < src.n; ++a)
    for (int b = 0; b < src.n; ++b)
      if (map[src.plus(a, b)] != dst.plus(map[a], map[b]))
        throw InputError("monoid map is not additive");
  MonoidHom h;
  h.src = std::move(src);
  h.dst = std::move(dst);
  h.map = std::move(map);
  return h;
}

bool MonoidHom::surjective() const {
  std::vector<char> hit(dst.n, 0);
  for (int v : map) hit[v] = 1;
  return std::all_of(hit.begin(), hit.end(), [](char c) { return c != 0; });
}

MonoidHom monoid_compose(const MonoidHom& g, const MonoidHom& f) {
  if (f.dst.n != g.src.n || f.dst.add != g.src.add || f.dst.zero != g.src.zero)
    throw InputError("monoid maps do not compose");
  std::vector<int> map(f.map.size());
  for (size_t i = 0; i < f.map.size(); ++i) map[i] = g.map[f.map[i]];
  return MonoidHom::make(f.src, g.dst, std::move(map));
}

std::string o_ideal_violation(const FinCommMonoid& m, const IndexSet& subset) {
  if (subset.empty()) return "an o-ideal must be nonempty";
  for (int x : subset)
    if (x < 0 || x >= m.n) return "subset leaves the carrier";
  for (int x = 0; x < m.n; ++x)
    for (int y = 0; y < m.n; ++y) {
      bool sum_in = set_contains(subset, m.plus(x, y));
      bool both_in = set_contains(subset, x) && set_contains(subset, y);
      if (sum_in != both_in)
        return "o-ideal law fails at (" + std::to_string(x) + "," +
               std::to_string(y) + ")";
    }
  return "";
}

OIdealQuotient o_ideal_quotient(const FinCommMonoid& m, const IndexSet& ideal) {
  std::string why = o_ideal_violation(m, ideal);
  if (!why.empty()) throw InputError(why);
  auto related = [&](int x, int y) {
    for (int u : ideal)
      for (int v : ideal)
        if (m.plus(x, u) == m.plus(y, v)) return true;
    return false;
  };
  std::vector<int> cls(m.n, -1);
  std::vector<int> reps;
  for (int x = 0; x < m.n; ++x) {
    for (size_t k = 0; k < reps.size(); ++k)
      if (related(x, reps[k])) { cls[x] = static_cast<int>(k); break; }
    if (cls[x] < 0) {
      cls[x] = static_cast<int>(reps.size());
      reps.push_back(x);
    }
  }
  const int q = static_cast<int>(reps.size());
  std::vector<int> add(q * q);
  for (int a = 0; a < q; ++a)
    for (int b = 0; b < q; ++b) add[a * q + b] = cls[m.plus(reps[a], reps[b])];
  FinCommMonoid quot = FinCommMonoid::make(q, std::move(add), cls[m.zero]);
  if (!quot.is_conical())
    throw DomainError("o-ideal quotient is not conical");
  MonoidHom pi = MonoidHom::make(m, quot, cls);
  return {std::move(quot), std::move(pi)};
}

bool is_ideal_induced(const MonoidHom& f) {
  if (!f.dst.is_conical())
    throw InputError("ideal-induced is defined for conical codomains");
  if (!f.surjective()) return false;
  IndexSet ker;
  for (int x = 0; x < f.src.n; ++x)
    if (f.map[x] == f.dst.zero) ker.push_back(x);
  for (int x = 0; x < f.src.n; ++x)
    for (int y = 0; y < f.src.n; ++y) {
      if (f.map[x] != f.map[y]) continue;
      bool witnessed = false;
      for (int u : ker) {
        for (int v : ker)
          if (f.src.plus(x, u) == f.src.plus(y, v)) { witnessed = true; break; }
        if (witnessed) break;
      }
      if (!witnessed) return false;
    }
  return true;
}

bool is_weakly_distributive(const MonoidHom& f) {
  for (int z = 0; z < f.src.n; ++z)
    for (int u = 0; u < f.dst.n; ++u)
      for (int v = 0; v < f.dst.n; ++v) {
        if (!f.dst.leq(f.map[z], f.dst.plus(u, v))) continue;
        bool witnessed = false;
        for (int x = 0; x < f.src.n && !witnessed; ++x)
          for (int y = 0; y < f.src.n && !witnessed; ++y)
            if (f.src.leq(z, f.src.plus(x, y)) && f.dst.leq(f.map[x], u) &&
                f.dst.leq(f.map[y], v))
              witnessed = true;
        if (!witnessed) return false;
      }
  return true;
}

ConVSemilattice conv_semilattice(const FinStructure& a, const VarietyOracle& v) {
  ConVResult cv = conv_congruences(a, v);
  if (!cv.meet_closed)
    throw DomainError("variety oracle is not meet-closed on this structure");
  const int n = static_cast<int>(cv.members.size());
  std::vector<int> add(n * n, -1);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      // join in Con^V: the meet of every member above both
      std::optional<Congruence> acc;
      for (const Congruence& c : cv.members)
        if (cv.members[i].leq(c) && cv.members[j].leq(c)) {
          if (!acc)
            acc = c;
          else
            acc = congruence_meet(a, *acc, c);
        }
      if (!acc) throw DomainError("V-congruences have no top");
      auto it = std::lower_bound(cv.members.begin(), cv.members.end(), *acc);
      if (it == cv.members.end() || !(*it == *acc))
        throw DomainError("join escapes the V-congruence family");
      add[i * n + j] = static_cast<int>(it - cv.members.begin());
    }
  Congruence zero = Congruence::zero(a);
  auto z = std::lower_bound(cv.members.begin(), cv.members.end(), zero);
  if (z == cv.members.end() || !(*z == zero))
    throw DomainError("zero congruence is not a V-congruence");
  ConVSemilattice out;
  out.monoid = FinCommMonoid::make(n, std::move(add),
                                   static_cast<int>(z - cv.members.begin()));
  out.members = std::move(cv.members);
  return out;
}

ProjectabilityWitness projectability_witness(const FinStructure& a,
                                             const VarietyOracle& v,
                                             const std::vector<int>& phi,
                                             const FinCommMonoid& s) {
  if (!s.is_semilattice())
    throw InputError("the target of a projectability witness must be a semilattice");
  ConVSemilattice cs = conv_semilattice(a, v);
  MonoidHom phi_hom = MonoidHom::make(cs.monoid, s, phi);  // validates hom + zero
  if (!is_ideal_induced(phi_hom))
    throw DomainError("phi is not ideal-induced");

  // theta := join of all members phi sends to zero
  std::optional<Congruence> theta;
  for (size_t i = 0; i < cs.members.size(); ++i) {
    if (phi[i] != s.zero) continue;
    theta = theta ? congruence_join(a, *theta, cs.members[i]) : cs.members[i];
  }
  if (!theta) throw DomainError("phi kills no congruence; zero is missing");
  // the directed join stays a V-congruence; locate it
  {
    auto it = std::lower_bound(cs.members.begin(), cs.members.end(), *theta);
    if (it == cs.members.end() || !(*it == *theta)) {
      // join evaluated in Con may differ from the join in Con^V; take the
      // least member above it
      std::optional<Congruence> acc;
      for (const Congruence& c : cs.members)
        if (theta->leq(c)) acc = acc ? congruence_meet(a, *acc, c) : c;
      if (!acc) throw DomainError("theta has no V-congruence above it");
      theta = acc;
    }
  }

  StructureQuotient q = quotient(a, *theta);
  if (!v.accepts(q.structure))
    throw DomainError("the canonical quotient is rejected by the oracle");

  ConVSemilattice cbar = conv_semilattice(q.structure, v);
  std::vector<int> conc_a = concv_map(q.projection, v);

  // eps: member of Con_c^V(abar) -> phi of its full preimage
  std::vector<int> eps(cbar.members.size(), -1);
  for (size_t k = 0; k < cbar.members.size(); ++k) {
    Congruence pre = res(q.projection, cbar.members[k]);
    auto it = std::lower_bound(cs.members.begin(), cs.members.end(), pre);
    if (it == cs.members.end() || !(*it == pre))
      throw DomainError("preimage congruence escapes the family");
    eps[k] = phi[it - cs.members.begin()];
  }
  // machine-checks: eps is a semilattice isomorphism and phi factors through it
  {
    std::vector<char> hit(s.n, 0);
    for (int e : eps) {
      if (hit[e]) throw DomainError("eps is not injective");
      hit[e] = 1;
    }
    if (!std::all_of(hit.begin(), hit.end(), [](char c) { return c != 0; }))
      throw DomainError("eps is not surjective");
    MonoidHom::make(cbar.monoid, s, eps);  // throws unless a hom
    for (size_t i = 0; i < cs.members.size(); ++i)
      if (eps[conc_a[i]] != phi[i])
        throw DomainError("phi does not factor as eps after Con_c of the projection");
  }

  ProjectabilityWitness w;
  w.theta = *theta;
  w.abar = q.structure;
  w.projection = q.projection;
  w.eps = std::move(eps);
  return w;
}

// ---------------------------------------------------------------------------

FinStructure make_lattice_structure(const FinPoset& p) {
  const int n = p.size();
  std::vector<int> join_t(n * n, -1), meet_t(n * n, -1);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      IndexSet ub = p.upper_bounds({i, j});
      IndexSet mins = p.minimal_of(ub);
      if (mins.size() != 1) throw DomainError("poset is not a lattice: join fails");
      join_t[j * n + i] = mins[0];
      IndexSet lb;
      for (int k = 0; k < n; ++k)
        if (p.leq(k, i) && p.leq(k, j)) lb.push_back(k);
      IndexSet maxs;
      for (int x : lb) {
        bool maximal = true;
        for (int y : lb)
          if (y != x && p.leq(x, y)) { maximal = false; break; }
        if (maximal) maxs.push_back(x);
      }
      if (maxs.size() != 1) throw DomainError("poset is not a lattice: meet fails");
      meet_t[j * n + i] = maxs[0];
    }
  Language lang = Language::make({}, {{"or", 2}, {"and", 2}}, {});
  return FinStructure::make(std::move(lang), n, {}, {join_t, meet_t}, {});
}

FinStructure product_structure(const std::vector<FinStructure>& factors,
                               long long size_bound) {
  if (factors.empty()) throw InputError("product of an empty family");
  for (const auto& f : factors)
    if (!(f.lang == factors[0].lang))
      throw InputError("product factors must share one language");
  const Language& lang = factors[0].lang;
  long long total = 1;
  for (const auto& f : factors) {
    total *= f.n;
    if (total > size_bound) throw SizeError("product structure too large");
  }
  const int n = static_cast<int>(total);
  const int m = static_cast<int>(factors.size());

  auto decode = [&](int idx) {
    Tuple t(m);
    for (int i = 0; i < m; ++i) {
      t[i] = idx % factors[i].n;
      idx /= factors[i].n;
    }
    return t;
  };
  auto encode = [&](const Tuple& t) {
    int idx = 0;
    for (int i = m; i-- > 0;) idx = idx * factors[i].n + t[i];
    return idx;
  };

  std::vector<int> const_val;
  for (size_t c = 0; c < lang.consts.size(); ++c) {
    Tuple t(m);
    for (int i = 0; i < m; ++i) t[i] = factors[i].const_val[c];
    const_val.push_back(encode(t));
  }
  std::vector<std::vector<int>> op_table(lang.ops.size());
  for (size_t op = 0; op < lang.ops.size(); ++op) {
    const int k = lang.ops[op].second;
    op_table[op].assign(int_pow(n, k), 0);
    for_each_tuple(n, k, [&](const Tuple& args) {
      std::vector<Tuple> parts(m, Tuple(k));
      for (int j = 0; j < k; ++j) {
        Tuple d = decode(args[j]);
        for (int i = 0; i < m; ++i) parts[i][j] = d[i];
      }
      Tuple rt(m);
      for (int i = 0; i < m; ++i) rt[i] = factors[i].op_apply(static_cast<int>(op), parts[i]);
      op_table[op][tuple_index(args, n)] = encode(rt);
    });
  }
  std::vector<std::vector<Tuple>> rel_tuples(lang.rels.size());
  for (size_t r = 0; r < lang.rels.size(); ++r) {
    const int k = lang.rels[r].second;
    for_each_tuple(n, k, [&](const Tuple& args) {
      std::vector<Tuple> parts(m, Tuple(k));
      for (int j = 0; j < k; ++j) {
        Tuple d = decode(args[j]);
        for (int i = 0; i < m; ++i) parts[i][j] = d[i];
      }
      for (int i = 0; i < m; ++i)
        if (!factors[i].rel_holds(static_cast<int>(r), parts[i])) return;
      rel_tuples[r].push_back(args);
    });
  }
  return FinStructure::make(lang, n, std::move(const_val), std::move(op_table),
                            std::move(rel_tuples));
}

}  // namespace oat
