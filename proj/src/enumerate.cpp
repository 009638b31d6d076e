#include "oat/enumerate.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <set>

namespace oat {

namespace {

std::uint64_t pack_with_perm(const UPoset& p, const std::vector<int>& perm) {
  // perm[new position] = old index
  std::uint64_t key = 0;
  for (int i = 0; i < p.n; ++i)
    for (int j = 0; j < p.n; ++j)
      if (p.leq(perm[i], perm[j])) key |= 1ull << (i * 8 + j);
  return key;
}

// Stable iso-invariant coloring: start from down/up-set sizes, refine by the
// multiset of (neighbor color, direction) until the partition stabilizes.
std::vector<int> refine_colors(const UPoset& p) {
  std::vector<int> color(p.n, 0);
  {
    std::vector<std::pair<std::pair<int, int>, int>> init;
    for (int i = 0; i < p.n; ++i) {
      int dn = 0, up = 0;
      for (int j = 0; j < p.n; ++j) {
        if (p.leq(j, i)) ++dn;
        if (p.leq(i, j)) ++up;
      }
      init.push_back({{dn, up}, i});
    }
    std::sort(init.begin(), init.end());
    int c = 0;
    for (size_t k = 0; k < init.size(); ++k) {
      if (k > 0 && init[k].first != init[k - 1].first) ++c;
      color[init[k].second] = c;
    }
  }
  for (int round = 0; round < p.n; ++round) {
    std::vector<std::pair<std::vector<int>, int>> sig(p.n);
    for (int i = 0; i < p.n; ++i) {
      std::vector<int> s{color[i]};
      std::vector<int> below, above;
      for (int j = 0; j < p.n; ++j) {
        if (j == i) continue;
        if (p.leq(j, i)) below.push_back(color[j]);
        if (p.leq(i, j)) above.push_back(color[j]);
      }
      std::sort(below.begin(), below.end());
      std::sort(above.begin(), above.end());
      s.push_back(-1);
      s.insert(s.end(), below.begin(), below.end());
      s.push_back(-2);
      s.insert(s.end(), above.begin(), above.end());
      sig[i] = {std::move(s), i};
    }
    std::vector<std::pair<std::vector<int>, int>> sorted = sig;
    std::sort(sorted.begin(), sorted.end());
    std::vector<int> next(p.n);
    int c = 0;
    for (size_t k = 0; k < sorted.size(); ++k) {
      if (k > 0 && sorted[k].first != sorted[k - 1].first) ++c;
      next[sorted[k].second] = c;
    }
    if (next == color) break;
    color = std::move(next);
  }
  return color;
}

}  // namespace

std::uint64_t canonical_key(const UPoset& p) {
  std::vector<int> color = refine_colors(p);
  // group element indices by color, in color order
  std::vector<std::vector<int>> classes;
  {
    int maxc = *std::max_element(color.begin(), color.end());
    classes.assign(maxc + 1, {});
    for (int i = 0; i < p.n; ++i) classes[color[i]].push_back(i);
  }
  std::uint64_t best = ~0ull;
  std::vector<int> perm;
  perm.reserve(p.n);
  // enumerate permutations that respect the color classes
  std::function<void(size_t)> walk = [&](size_t ci) {
    if (ci == classes.size()) {
      best = std::min(best, pack_with_perm(p, perm));
      return;
    }
    std::vector<int>& cls = classes[ci];
    std::sort(cls.begin(), cls.end());
    do {
      size_t old = perm.size();
      perm.insert(perm.end(), cls.begin(), cls.end());
      walk(ci + 1);
      perm.resize(old);
    } while (std::next_permutation(cls.begin(), cls.end()));
  };
  walk(0);
  return best;
}

const std::vector<UPoset>& unlabeled_posets(int n) {
  if (n < 1 || n > 8) throw SizeError("unlabeled poset enumeration supports 1..8 elements");
  static std::map<int, std::vector<UPoset>> cache;
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;

  std::vector<UPoset> result;
  if (n == 1) {
    UPoset one;
    one.n = 1;
    one.le[0] = 1;
    result.push_back(one);
  } else {
    const std::vector<UPoset>& smaller = unlabeled_posets(n - 1);
    std::set<std::uint64_t> seen;
    for (const UPoset& q : smaller) {
      const int m = q.n;
      // choose the strict down-set D and strict up-set U of the new element
      for (std::uint32_t dm = 0; dm < (1u << m); ++dm) {
        bool down_closed = true;
        for (int i = 0; i < m && down_closed; ++i)
          if (dm & (1u << i))
            for (int j = 0; j < m; ++j)
              if (q.leq(j, i) && !(dm & (1u << j))) { down_closed = false; break; }
        if (!down_closed) continue;
        for (std::uint32_t um = 0; um < (1u << m); ++um) {
          if (um & dm) continue;
          bool ok = true;
          for (int i = 0; i < m && ok; ++i)
            if (um & (1u << i))
              for (int j = 0; j < m; ++j)
                if (q.leq(i, j) && !(um & (1u << j))) { ok = false; break; }
          if (!ok) continue;
          for (int d = 0; d < m && ok; ++d)
            if (dm & (1u << d))
              for (int u = 0; u < m; ++u)
                if ((um & (1u << u)) && !q.leq(d, u)) { ok = false; break; }
          if (!ok) continue;
          UPoset ext;
          ext.n = m + 1;
          for (int i = 0; i < m; ++i) ext.le[i] = q.le[i];
          ext.le[m] = 1u << m;
          for (int i = 0; i < m; ++i) {
            if (dm & (1u << i)) ext.le[i] |= 1u << m;
            if (um & (1u << i)) ext.le[m] |= 1u << i;
          }
          if (seen.insert(canonical_key(ext)).second) result.push_back(ext);
        }
      }
    }
  }
  return cache.emplace(n, std::move(result)).first->second;
}

bool uposet_is_lattice(const UPoset& p) {
  int bottom = -1;
  for (int i = 0; i < p.n; ++i) {
    bool least = true;
    for (int j = 0; j < p.n; ++j)
      if (!p.leq(i, j)) { least = false; break; }
    if (least) { bottom = i; break; }
  }
  if (bottom < 0) return false;
  for (int i = 0; i < p.n; ++i)
    for (int j = i + 1; j < p.n; ++j) {
      int lub = -1;
      bool unique = true;
      for (int k = 0; k < p.n && unique; ++k) {
        if (!p.leq(i, k) || !p.leq(j, k)) continue;
        bool minimal = true;
        for (int l = 0; l < p.n; ++l)
          if (l != k && p.leq(i, l) && p.leq(j, l) && p.leq(l, k)) {
            minimal = false;
            break;
          }
        if (!minimal) continue;
        if (lub >= 0) unique = false;
        lub = k;
      }
      if (lub < 0 || !unique) return false;
    }
  return true;
}

std::vector<UPoset> unlabeled_lattices(int n) {
  std::vector<UPoset> out;
  for (const UPoset& p : unlabeled_posets(n))
    if (uposet_is_lattice(p)) out.push_back(p);
  return out;
}

FinPoset to_finposet(const UPoset& p) {
  std::vector<std::string> labels;
  for (int i = 0; i < p.n; ++i) labels.push_back("e" + std::to_string(i));
  std::vector<std::pair<int, int>> pairs;
  for (int i = 0; i < p.n; ++i)
    for (int j = 0; j < p.n; ++j)
      if (p.leq(i, j)) pairs.emplace_back(i, j);
  return FinPoset::from_pairs(std::move(labels), pairs);
}

}  // namespace oat
