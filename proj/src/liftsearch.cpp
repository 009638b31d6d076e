#include "oat/liftsearch.hpp"

#include <algorithm>
#include <array>
#include <functional>
#include <numeric>
#include <cstdlib>

#include "oat/enumerate.hpp"

namespace oat {

namespace {

// A value semilattice from the catalog; element 0 is the bottom and the
// element order is a linear extension.
struct Semi {
  int n = 0;
  std::array<std::array<std::uint8_t, 8>, 8> join{};

  int plus(int a, int b) const { return join[a][b]; }
  bool leq(int a, int b) const { return join[a][b] == b; }
};

const std::vector<Semi>& semilattice_catalog(int max_n) {
  static std::vector<Semi> cache;
  static int cached_max = 0;
  if (cached_max < max_n) {
    cache.clear();
    for (int n = 1; n <= max_n; ++n)
      for (const UPoset& p : unlabeled_lattices(n)) {
        std::vector<int> order(n);
        std::iota(order.begin(), order.end(), 0);
        std::vector<int> dn(n, 0);
        for (int i = 0; i < n; ++i)
          for (int j = 0; j < n; ++j)
            if (p.leq(j, i)) ++dn[i];
        std::stable_sort(order.begin(), order.end(),
                         [&](int a, int b) { return dn[a] < dn[b]; });
        std::vector<int> pos(n);
        for (int i = 0; i < n; ++i) pos[order[i]] = i;
        Semi s;
        s.n = n;
        for (int a = 0; a < n; ++a)
          for (int b = 0; b < n; ++b) {
            int lub = -1;
            for (int k = 0; k < n; ++k) {
              if (!p.leq(order[a], k) || !p.leq(order[b], k)) continue;
              if (lub < 0 || p.leq(k, lub)) lub = k;
            }
            s.join[a][b] = static_cast<std::uint8_t>(pos[lub]);
          }
        cache.push_back(s);
      }
    cached_max = max_n;
  }
  return cache;
}

FinCommMonoid to_monoid(const Semi& s) {
  std::vector<int> add(s.n * s.n);
  for (int a = 0; a < s.n; ++a)
    for (int b = 0; b < s.n; ++b) add[a * s.n + b] = s.plus(a, b);
  return FinCommMonoid::make(s.n, std::move(add), 0);
}

// All join-zero homomorphisms from s into a join table of size t_size.
// When post/require are given, only maps with post[h[z]] == require[z]
// survive; used to thread naturality into the enumeration.
void enumerate_homs(const Semi& s, int t_size,
                    const std::function<int(int, int)>& t_join, int t_zero,
                    const std::vector<int>* post, const std::vector<int>* require,
                    const std::function<void(const std::vector<int>&)>& yield) {
  std::vector<int> h(s.n, -1);
  std::function<void(int)> dfs = [&](int z) {
    if (z == s.n) {
      yield(h);
      return;
    }
    const int lo = z == 0 ? t_zero : 0;
    const int hi = z == 0 ? t_zero + 1 : t_size;
    for (int v = lo; v < hi; ++v) {
      bool ok = true;
      for (int w = 0; w < z && ok; ++w)
        if (s.leq(w, z) && t_join(h[w], v) != v) ok = false;  // h[w] <= v
      for (int x = 0; x < z && ok; ++x)
        for (int y = 0; y <= x && ok; ++y)
          if (s.plus(x, y) == z && t_join(h[x], h[y]) != v) ok = false;
      if (post && (*post)[v] != (*require)[z]) ok = false;
      if (!ok) continue;
      h[z] = v;
      dfs(z + 1);
      h[z] = -1;
    }
  };
  dfs(0);
}

void homs_to_monoid(const Semi& s, const FinCommMonoid& t,
                    const std::function<void(const std::vector<int>&)>& yield) {
  enumerate_homs(
      s, t.n, [&](int a, int b) { return t.plus(a, b); }, t.zero, nullptr,
      nullptr, yield);
}

void homs_between(const Semi& s, const Semi& t, const std::vector<int>& post,
                  const std::vector<int>& require,
                  const std::function<void(const std::vector<int>&)>& yield) {
  enumerate_homs(
      s, t.n, [&](int a, int b) { return t.plus(a, b); }, 0, &post, &require,
      yield);
}

// One assembled cover vertex: points 0..n-1; the star is the first `star`
// points and forms a section of the chi point component.
struct Vertex {
  int n = 0;
  int star = 0;
  const Semi* sem = nullptr;
  std::vector<int> chiv;                // sem -> target value semilattice
  std::vector<std::vector<int>> delta;  // n x n over sem
};

bool semi_generated_by(const Semi& s, const std::vector<std::vector<int>>& delta) {
  std::vector<char> got(s.n, 0);
  got[0] = 1;
  for (const auto& row : delta)
    for (int v : row)
      if (v >= 0) got[v] = 1;
  for (bool grew = true; grew;) {
    grew = false;
    for (int a = 0; a < s.n; ++a)
      for (int b = 0; b < s.n; ++b)
        if (got[a] && got[b] && !got[s.plus(a, b)]) {
          got[s.plus(a, b)] = 1;
          grew = true;
        }
  }
  return std::all_of(got.begin(), got.end(), [](char c) { return c != 0; });
}

bool parallelogram_ok(const Vertex& v) {
  for (int x = 0; x < v.star; ++x)
    for (int y = 0; y < v.star; ++y)
      for (int z = 0; z < v.star; ++z) {
        bool witnessed = false;
        for (int t = 0; t < v.n && !witnessed; ++t)
          if (v.sem->leq(v.delta[x][t], v.delta[y][z]) &&
              v.sem->leq(v.delta[t][z], v.delta[x][y]))
            witnessed = true;
        if (!witnessed) return false;
      }
  return true;
}

// An optional restriction on one distance entry: its chiv image must differ
// from the given value.  Used to enumerate only the side assemblies whose
// derived forcing value is nonzero.
struct EntryFilter {
  int i = -1, j = -1;
  int forbidden_chi = -1;

  bool active() const { return i >= 0; }
  bool applies(int x, int y) const {
    return (x == i && y == j) || (x == j && y == i);
  }
};

// Completes the distance matrix of a vertex.  Star-pair entries must map to
// the target distance under chiv; pinned entries come from morphism images.
void fill_delta(Vertex& v, const std::vector<std::vector<int>>& pinned,
                const std::vector<int>& star_target, long long& nodes,
                const std::function<bool()>& stop,
                const std::function<void()>& complete,
                const EntryFilter& filter = {}) {
  const int n = v.n;
  auto triangle_at = [&](int x, int y) {
    for (int z = 0; z < n; ++z) {
      if (z == x || z == y) continue;
      if (v.delta[z][x] < 0 || v.delta[z][y] < 0) continue;
      int a = v.delta[x][y], b = v.delta[z][x], c = v.delta[z][y];
      if (!v.sem->leq(a, v.sem->plus(b, c))) return false;
      if (!v.sem->leq(b, v.sem->plus(a, c))) return false;
      if (!v.sem->leq(c, v.sem->plus(a, b))) return false;
    }
    return true;
  };

  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) v.delta[i][j] = i == j ? 0 : pinned[i][j];
  if (filter.active() && filter.i == filter.j) return;  // entry is a fixed 0
  std::vector<std::pair<int, int>> free_pairs;
  for (int j = 1; j < n; ++j)
    for (int i = 0; i < j; ++i) {
      if (v.delta[i][j] < 0) {
        free_pairs.emplace_back(i, j);
        continue;
      }
      if (i < v.star && j < v.star &&
          v.chiv[v.delta[i][j]] != star_target[i * v.star + j])
        return;
      if (filter.active() && filter.applies(i, j) &&
          v.chiv[v.delta[i][j]] == filter.forbidden_chi)
        return;
      if (!triangle_at(i, j)) return;
    }
  // handle the restricted entry first so its branches die early
  if (filter.active())
    std::stable_partition(free_pairs.begin(), free_pairs.end(),
                          [&](const std::pair<int, int>& p) {
                            return filter.applies(p.first, p.second);
                          });
  // greedy ordering: each entry should close as many triangles as possible
  // with the entries assigned before it
  {
    std::vector<std::vector<char>> asg(n, std::vector<char>(n, 1));
    for (const auto& [i, j] : free_pairs) asg[i][j] = asg[j][i] = 0;
    size_t start = filter.active() && !free_pairs.empty() &&
                           filter.applies(free_pairs[0].first, free_pairs[0].second)
                       ? 1
                       : 0;
    if (start == 1) {
      auto [i, j] = free_pairs[0];
      asg[i][j] = asg[j][i] = 1;
    }
    for (size_t k = start; k < free_pairs.size(); ++k) {
      size_t best = k;
      int best_score = -1;
      for (size_t m = k; m < free_pairs.size(); ++m) {
        auto [i, j] = free_pairs[m];
        int score = 0;
        for (int z = 0; z < n; ++z)
          if (z != i && z != j && asg[i][z] && asg[j][z]) ++score;
        if (score > best_score) {
          best_score = score;
          best = m;
        }
      }
      std::swap(free_pairs[k], free_pairs[best]);
      auto [i, j] = free_pairs[k];
      asg[i][j] = asg[j][i] = 1;
    }
  }

  std::function<void(size_t)> dfs = [&](size_t k) {
    if (stop()) return;
    if (k == free_pairs.size()) {
      ++nodes;
      if (!parallelogram_ok(v)) return;
      if (!semi_generated_by(*v.sem, v.delta)) return;
      // interchangeable extra points: canonical row order
      for (int e = v.star; e + 1 < v.n; ++e)
        if (v.delta[e] > v.delta[e + 1]) return;
      complete();
      return;
    }
    auto [i, j] = free_pairs[k];
    for (int val = 0; val < v.sem->n; ++val) {
      if (i < v.star && j < v.star &&
          v.chiv[val] != star_target[i * v.star + j])
        continue;
      if (filter.active() && filter.applies(i, j) &&
          v.chiv[val] == filter.forbidden_chi)
        continue;
      v.delta[i][j] = v.delta[j][i] = val;
      if (triangle_at(i, j)) dfs(k + 1);
      v.delta[i][j] = v.delta[j][i] = -1;
    }
  };
  dfs(0);
}

struct SideVertex {
  Vertex v;
  std::vector<int> u_pts;   // bottom points -> side points
  std::vector<int> u_vals;  // bottom values -> side values
  int forced_zero = -1;     // chi~(delta(mark, u(x))) in the target values
};

struct TargetSide {
  const SemMetricSpace* space;
  const MetrMorphism* f;  // a0 -> side
  int mark;
  int which;  // 1 or 2, the chi-cache key
};

SemMetricSpace vertex_space(const Vertex& v, const std::string& prefix) {
  std::vector<std::string> labels;
  for (int i = 0; i < v.n; ++i) labels.push_back(prefix + std::to_string(i));
  return SemMetricSpace::make(std::move(labels), to_monoid(*v.sem), v.delta);
}

class Searcher {
 public:
  Searcher(const UnliftableSquareData& d, const SearchBounds& b)
      : d_(d), b_(b), catalog_(semilattice_catalog(b.max_values)) {}

  SearchOutcome run();

 private:
  // chi value maps into a fixed target, cached per catalog entry
  using HomList = std::vector<std::vector<int>>;
  const HomList& chiv_list(int which, int sem_idx);

  void enumerate_bottom(const std::function<void(const Vertex&)>& yield);
  // When only_nonzero_forced is set, enumeration is restricted to assemblies
  // whose derived value chi~(delta(mark, u(x))) is nonzero.
  void enumerate_side(const Vertex& v0, const TargetSide& side,
                      bool only_nonzero_forced,
                      const std::function<void(const SideVertex&)>& yield);
  int bottom_witness_x(const Vertex& v0) const;
  void enumerate_top(const Vertex& v0, const SideVertex& s1, const SideVertex& s2);
  LiftingCandidate assemble(const Vertex& v0, const SideVertex& s1,
                            const SideVertex& s2, const Vertex& vt,
                            const std::vector<int>& v1_pts,
                            const std::vector<int>& v2_pts,
                            const std::vector<int>& v1_vals,
                            const std::vector<int>& v2_vals,
                            const std::vector<int>& chi_top_pts) const;

  const UnliftableSquareData& d_;
  SearchBounds b_;
  const std::vector<Semi>& catalog_;
  SearchOutcome out_;

  // caches: chiv lists per target (0 = a0, 1/2 = sides, 3 = top) and, for the
  // current bottom group (sem, chiv), the constrained u-hom lists per side
  std::map<std::pair<int, int>, HomList> chiv_cache_;
  const Semi* group_sem_ = nullptr;
  std::vector<int> group_chiv_;
  std::map<std::tuple<int, int, int>, HomList> uv_cache_;  // (side, sem, hom)
};

const Searcher::HomList& Searcher::chiv_list(int which, int sem_idx) {
  auto key = std::make_pair(which, sem_idx);
  auto it = chiv_cache_.find(key);
  if (it != chiv_cache_.end()) return it->second;
  const SemMetricSpace* target = nullptr;
  switch (which) {
    case 0: target = &d_.square.a0; break;
    case 1: target = &d_.square.a1; break;
    case 2: target = &d_.square.a2; break;
    default: target = &d_.square.top; break;
  }
  // star points cover these target points, so the star entries need these
  // distances in the range of the map
  IndexSet covered_points;
  if (which == 3) {
    for (int v : d_.square.g1.point_map) covered_points.push_back(v);
    for (int v : d_.square.g2.point_map) covered_points.push_back(v);
    covered_points = make_set(covered_points);
  } else {
    for (int x = 0; x < target->point_count(); ++x) covered_points.push_back(x);
  }
  HomList list;
  homs_to_monoid(catalog_[sem_idx], target->values,
                 [&](const std::vector<int>& h) { list.push_back(h); });
  HomList filtered;
  for (const auto& h : list) {
    std::vector<char> hit(target->values.n, 0);
    for (int v : h) hit[v] = 1;
    bool ok = true;
    for (int x : covered_points)
      for (int y : covered_points)
        if (!hit[target->dist(x, y)]) { ok = false; break; }
    if (ok) filtered.push_back(h);
  }
  return chiv_cache_.emplace(key, std::move(filtered)).first->second;
}

void Searcher::enumerate_bottom(const std::function<void(const Vertex&)>& yield) {
  const SemMetricSpace& a0 = d_.square.a0;
  const int k = a0.point_count();
  if (k > b_.max_star) return;
  std::vector<int> star_target(k * k);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) star_target[i * k + j] = a0.dist(i, j);

  for (int n = k; n <= b_.max_points; ++n)
    for (size_t si = 0; si < catalog_.size(); ++si) {
      if (out_.found) return;
      for (const std::vector<int>& chiv : chiv_list(0, static_cast<int>(si))) {
        if (out_.found) return;
        Vertex v;
        v.n = n;
        v.star = k;
        v.sem = &catalog_[si];
        v.chiv = chiv;
        v.delta.assign(n, std::vector<int>(n, -1));
        std::vector<std::vector<int>> pinned(n, std::vector<int>(n, -1));
        fill_delta(v, pinned, star_target, out_.nodes,
                   [&] { return out_.found; }, [&] { yield(v); });
      }
    }
}

void Searcher::enumerate_side(const Vertex& v0, const TargetSide& side,
                              bool only_nonzero_forced,
                              const std::function<void(const SideVertex&)>& yield) {
  const SemMetricSpace& ai = *side.space;
  const int k = ai.point_count();
  if (k > b_.max_star) return;
  std::vector<int> star_target(k * k);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) star_target[i * k + j] = ai.dist(i, j);

  const int dotx = bottom_witness_x(v0);
  std::vector<int> require(v0.sem->n);
  for (int z = 0; z < v0.sem->n; ++z)
    require[z] = side.f->value_map[v0.chiv[z]];

  // the u-hom lists only depend on the bottom group (sem, chiv); refresh the
  // cache when the group changes
  if (group_sem_ != v0.sem || group_chiv_ != v0.chiv) {
    group_sem_ = v0.sem;
    group_chiv_ = v0.chiv;
    uv_cache_.clear();
  }

  for (int n = k; n <= b_.max_points; ++n)
    for (size_t si = 0; si < catalog_.size(); ++si) {
      if (out_.found) return;
      const Semi& s = catalog_[si];
      const HomList& chivs = chiv_list(side.which, static_cast<int>(si));
      for (size_t hi = 0; hi < chivs.size(); ++hi) {
        if (out_.found) return;
        const std::vector<int>& chiv = chivs[hi];
        auto uv_key = std::make_tuple(side.which, static_cast<int>(si),
                                      static_cast<int>(hi));
        auto uv_it = uv_cache_.find(uv_key);
        if (uv_it == uv_cache_.end()) {
          HomList uvs;
          homs_between(*v0.sem, s, chiv, require,
                       [&](const std::vector<int>& uv) { uvs.push_back(uv); });
          uv_it = uv_cache_.emplace(uv_key, std::move(uvs)).first;
        }
        for (const std::vector<int>& uv : uv_it->second) {
          if (out_.found) return;
          std::vector<int> u_pts(v0.n, -1);
          for (int j = 0; j < v0.star; ++j) u_pts[j] = side.f->point_map[j];
          std::function<void(int)> assign_extra = [&](int e) {
            if (out_.found) return;
            if (e == v0.n) {
              std::vector<std::vector<int>> pinned(n, std::vector<int>(n, -1));
              for (int x = 0; x < v0.n; ++x)
                for (int y = 0; y < v0.n; ++y) {
                  int px = u_pts[x], py = u_pts[y];
                  int val = uv[v0.delta[x][y]];
                  if (px == py) {
                    if (val != 0) return;
                  } else if (pinned[px][py] >= 0 && pinned[px][py] != val) {
                    return;
                  } else {
                    pinned[px][py] = pinned[py][px] = val;
                  }
                }
              EntryFilter filter;
              if (only_nonzero_forced) {
                filter.i = side.mark;
                filter.j = u_pts[dotx];
                filter.forbidden_chi = ai.values.zero;
              }
              Vertex v;
              v.n = n;
              v.star = k;
              v.sem = &s;
              v.chiv = chiv;
              v.delta.assign(n, std::vector<int>(n, -1));
              fill_delta(v, pinned, star_target, out_.nodes,
                         [&] { return out_.found; },
                         [&] {
                           SideVertex sv;
                           sv.v = v;
                           sv.u_pts = u_pts;
                           sv.u_vals = uv;
                           sv.forced_zero = chiv[v.delta[side.mark][u_pts[dotx]]];
                           yield(sv);
                         },
                         filter);
              return;
            }
            for (int img = 0; img < n; ++img) {
              u_pts[e] = img;
              assign_extra(e + 1);
            }
            u_pts[e] = -1;
          };
          assign_extra(v0.star);
        }
      }
    }
}

int Searcher::bottom_witness_x(const Vertex& v0) const {
  for (int t = 0; t < v0.n; ++t)
    if (v0.sem->leq(v0.delta[d_.zero_pt][t], v0.delta[d_.a0_pt][d_.one_pt]) &&
        v0.sem->leq(v0.delta[t][d_.one_pt], v0.delta[d_.zero_pt][d_.a0_pt]))
      return t;
  throw DomainError("bottom vertex lost its Parallelogram witness");
}

void Searcher::enumerate_top(const Vertex& v0, const SideVertex& s1,
                             const SideVertex& s2) {
  const SemMetricSpace& at = d_.square.top;
  const MetrMorphism& g1 = d_.square.g1;
  const MetrMorphism& g2 = d_.square.g2;
  const int k1 = s1.v.star, k2 = s2.v.star;

  // slots are the side star points; commutation over the bottom star forces
  // some identifications up front
  const int slots = k1 + k2;
  std::vector<int> uf(slots);
  std::iota(uf.begin(), uf.end(), 0);
  std::function<int(int)> find = [&](int x) {
    while (uf[x] != x) x = uf[x] = uf[uf[x]];
    return x;
  };
  std::vector<int> slot_g(slots);
  for (int q = 0; q < k1; ++q) slot_g[q] = g1.point_map[q];
  for (int r = 0; r < k2; ++r) slot_g[k1 + r] = g2.point_map[r];
  for (int j = 0; j < v0.star; ++j) {
    int a = find(s1.u_pts[j]);
    int b = find(k1 + s2.u_pts[j]);
    if (slot_g[a] != slot_g[b]) return;
    uf[std::max(a, b)] = std::min(a, b);
  }
  std::vector<int> base_class(slots, -1);
  std::vector<int> class_rep;
  for (int sl = 0; sl < slots; ++sl)
    if (find(sl) == sl) {
      base_class[sl] = static_cast<int>(class_rep.size());
      class_rep.push_back(sl);
    }
  for (int sl = 0; sl < slots; ++sl) base_class[sl] = base_class[find(sl)];
  const int ncls = static_cast<int>(class_rep.size());

  std::vector<int> part(ncls, -1);
  std::function<void(int, int)> partitions = [&](int c, int used) {
    if (out_.found) return;
    if (c == ncls) {
      if (used > b_.max_star) return;
      std::vector<int> slot_point(slots);
      for (int sl = 0; sl < slots; ++sl) slot_point[sl] = part[base_class[sl]];
      std::vector<int> chi_star(used, -1);
      for (int sl = 0; sl < slots; ++sl) chi_star[slot_point[sl]] = slot_g[sl];

      std::vector<int> star_target(used * used);
      for (int i = 0; i < used; ++i)
        for (int j = 0; j < used; ++j)
          star_target[i * used + j] = at.dist(chi_star[i], chi_star[j]);

      for (int n = used; n <= b_.max_points; ++n)
        for (size_t si = 0; si < catalog_.size(); ++si) {
          const Semi& s = catalog_[si];
          if (out_.found) return;
          for (const std::vector<int>& chiv : chiv_list(3, static_cast<int>(si))) {
            if (out_.found) return;
            std::vector<int> req1(s1.v.sem->n), req2(s2.v.sem->n);
            for (int z = 0; z < s1.v.sem->n; ++z)
              req1[z] = g1.value_map[s1.v.chiv[z]];
            for (int z = 0; z < s2.v.sem->n; ++z)
              req2[z] = g2.value_map[s2.v.chiv[z]];
            homs_between(*s1.v.sem, s, chiv, req1, [&](const std::vector<int>& v1v) {
              if (out_.found) return;
              homs_between(*s2.v.sem, s, chiv, req2, [&](const std::vector<int>& v2v) {
                if (out_.found) return;
                for (int z = 0; z < v0.sem->n; ++z)
                  if (v1v[s1.u_vals[z]] != v2v[s2.u_vals[z]]) return;

                std::vector<int> v1_pts(s1.v.n, -1), v2_pts(s2.v.n, -1);
                for (int q = 0; q < k1; ++q) v1_pts[q] = slot_point[q];
                for (int r = 0; r < k2; ++r) v2_pts[r] = slot_point[k1 + r];
                std::vector<int*> frees;
                for (int q = k1; q < s1.v.n; ++q) frees.push_back(&v1_pts[q]);
                for (int r = k2; r < s2.v.n; ++r) frees.push_back(&v2_pts[r]);
                std::function<void(size_t)> assign = [&](size_t idx) {
                  if (out_.found) return;
                  if (idx < frees.size()) {
                    for (int img = 0; img < n; ++img) {
                      *frees[idx] = img;
                      assign(idx + 1);
                    }
                    *frees[idx] = -1;
                    return;
                  }
                  for (int x = 0; x < v0.n; ++x)
                    if (v1_pts[s1.u_pts[x]] != v2_pts[s2.u_pts[x]]) return;
                  std::vector<std::vector<int>> pinned(n, std::vector<int>(n, -1));
                  bool consistent = true;
                  auto pin_from = [&](const std::vector<int>& pts,
                                      const std::vector<int>& vals,
                                      const SideVertex& sv) {
                    for (int x = 0; x < sv.v.n && consistent; ++x)
                      for (int y = 0; y < sv.v.n && consistent; ++y) {
                        int px = pts[x], py = pts[y];
                        int val = vals[sv.v.delta[x][y]];
                        if (px == py) {
                          if (val != 0) consistent = false;
                        } else if (pinned[px][py] >= 0 && pinned[px][py] != val) {
                          consistent = false;
                        } else {
                          pinned[px][py] = pinned[py][px] = val;
                        }
                      }
                  };
                  pin_from(v1_pts, v1v, s1);
                  pin_from(v2_pts, v2v, s2);
                  if (!consistent) return;
                  Vertex vt;
                  vt.n = n;
                  vt.star = used;
                  vt.sem = &s;
                  vt.chiv = chiv;
                  vt.delta.assign(n, std::vector<int>(n, -1));
                  fill_delta(vt, pinned, star_target, out_.nodes,
                             [&] { return out_.found; },
                             [&] {
                               if (out_.found) return;
                               LiftingCandidate cand =
                                   assemble(v0, s1, s2, vt, v1_pts, v2_pts, v1v,
                                            v2v, chi_star);
                               if (verify_lifting(d_, cand).accepted) {
                                 out_.found = true;
                                 out_.witness = cand;
                               }
                             });
                };
                assign(0);
              });
            });
          }
        }
      return;
    }
    for (int cls = 0; cls < used; ++cls) {
      bool compatible = true;
      for (int c2 = 0; c2 < c && compatible; ++c2)
        if (part[c2] == cls && slot_g[class_rep[c2]] != slot_g[class_rep[c]])
          compatible = false;
      if (!compatible) continue;
      part[c] = cls;
      partitions(c + 1, used);
    }
    part[c] = used;
    partitions(c + 1, used + 1);
    part[c] = -1;
  };
  partitions(0, 0);
}

LiftingCandidate Searcher::assemble(
    const Vertex& v0, const SideVertex& s1, const SideVertex& s2, const Vertex& vt,
    const std::vector<int>& v1_pts, const std::vector<int>& v2_pts,
    const std::vector<int>& v1_vals, const std::vector<int>& v2_vals,
    const std::vector<int>& chi_top_pts) const {
  auto star_of = [](const Vertex& v) {
    IndexSet s;
    for (int i = 0; i < v.star; ++i) s.push_back(i);
    return s;
  };
  SemMetricSpace sp0 = vertex_space(v0, "p");
  SemMetricSpace sp1 = vertex_space(s1.v, "q");
  SemMetricSpace sp2 = vertex_space(s2.v, "r");
  SemMetricSpace spt = vertex_space(vt, "t");
  SemMetricCover b0 = SemMetricCover::make(sp0, star_of(v0));
  SemMetricCover b1 = SemMetricCover::make(sp1, star_of(s1.v));
  SemMetricCover b2 = SemMetricCover::make(sp2, star_of(s2.v));
  SemMetricCover bt = SemMetricCover::make(spt, star_of(vt));

  MetrMorphism u1 = MetrMorphism::make(sp0, sp1, s1.u_pts, s1.u_vals);
  MetrMorphism u2 = MetrMorphism::make(sp0, sp2, s2.u_pts, s2.u_vals);
  MetrMorphism v1 = MetrMorphism::make(sp1, spt, v1_pts, v1_vals);
  MetrMorphism v2 = MetrMorphism::make(sp2, spt, v2_pts, v2_vals);
  SquareOfCovers covers = SquareOfCovers::make(b0, b1, b2, bt, u1, u2, v1, v2);

  std::vector<int> id0(v0.star), id1(s1.v.star), id2(s2.v.star);
  std::iota(id0.begin(), id0.end(), 0);
  std::iota(id1.begin(), id1.end(), 0);
  std::iota(id2.begin(), id2.end(), 0);
  MetrMorphism chi0 = MetrMorphism::make(flat(b0), d_.square.a0, id0, v0.chiv);
  MetrMorphism chi1 = MetrMorphism::make(flat(b1), d_.square.a1, id1, s1.v.chiv);
  MetrMorphism chi2 = MetrMorphism::make(flat(b2), d_.square.a2, id2, s2.v.chiv);
  MetrMorphism chit =
      MetrMorphism::make(flat(bt), d_.square.top, chi_top_pts, vt.chiv);

  LiftingCandidate cand;
  cand.covers = std::move(covers);
  cand.chi0 = std::move(chi0);
  cand.chi1 = std::move(chi1);
  cand.chi2 = std::move(chi2);
  cand.chi_top = std::move(chit);
  return cand;
}

SearchOutcome Searcher::run() {
  const SquareOfSpaces& sq = d_.square;
  auto injective = [](const MetrMorphism& f) {
    std::vector<char> hit(f.dst.point_count(), 0);
    for (int v : f.point_map) {
      if (hit[v]) return false;
      hit[v] = 1;
    }
    return true;
  };
  if (!injective(sq.f1) || !injective(sq.f2) || !injective(sq.g1) ||
      !injective(sq.g2))
    throw InputError("search_lifting requires injective side maps");

  const bool target_nonzero =
      sq.top.dist(sq.g1.point_map[d_.a1_pt], sq.g2.point_map[d_.a2_pt]) !=
      sq.top.values.zero;

  TargetSide side1{&sq.a1, &sq.f1, d_.a1_pt, 1};
  TargetSide side2{&sq.a2, &sq.f2, d_.a2_pt, 2};

  const bool bottoms_only = std::getenv("OAT_BOTTOM_ONLY") != nullptr;
  enumerate_bottom([&](const Vertex& v0) {
    if (out_.found) return;
    ++out_.bottoms;
    if (bottoms_only) return;
    if (target_nonzero) {
      // a pair of side assemblies with both derived values zero admits no
      // top vertex: the cube would force delta(a1,a2) = 0 against the data.
      // So only assemblies with a nonzero derived value can participate.
      bool nz1 = false, nz2 = false;
      enumerate_side(v0, side1, true, [&](const SideVertex&) { nz1 = true; });
      enumerate_side(v0, side2, true, [&](const SideVertex&) { nz2 = true; });
      if (!nz1 && !nz2) return;
      enumerate_side(v0, side1, false, [&](const SideVertex& s1) {
        if (out_.found) return;
        enumerate_side(v0, side2, false, [&](const SideVertex& s2) {
          if (out_.found) return;
          if (s1.forced_zero == sq.a1.values.zero &&
              s2.forced_zero == sq.a2.values.zero)
            return;
          enumerate_top(v0, s1, s2);
        });
      });
    } else {
      enumerate_side(v0, side1, false, [&](const SideVertex& s1) {
        if (out_.found) return;
        enumerate_side(v0, side2, false, [&](const SideVertex& s2) {
          if (out_.found) return;
          enumerate_top(v0, s1, s2);
        });
      });
    }
  });
  return out_;
}

}  // namespace

SearchOutcome search_lifting(const UnliftableSquareData& d,
                             const SearchBounds& bounds) {
  if (bounds.max_points > 6 || bounds.max_star > 6 || bounds.max_values > 8) {
    long long pair_count =
        static_cast<long long>(bounds.max_points) * (bounds.max_points - 1) / 2;
    throw SizeError(
        "search bounds exceed the supported caps (6 points, 6 star, 8 values); "
        "a single vertex alone has ~300 * " +
        std::to_string(bounds.max_values) + "^" + std::to_string(pair_count) +
        " raw configurations");
  }
  if (bounds.max_points < 1 || bounds.max_star < 1 || bounds.max_values < 1)
    throw InputError("search bounds must be positive");
  Searcher s(d, bounds);
  return s.run();
}

}  // namespace oat
