#include "oat/metric.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

namespace oat {

SemMetricSpace SemMetricSpace::make(std::vector<std::string> points,
                                    FinCommMonoid values,
                                    std::vector<std::vector<int>> delta) {
  if (points.empty()) throw InputError("a space needs at least one point");
  if (!values.is_semilattice())
    throw InputError("the value monoid must be a join-semilattice");
  {
    std::set<std::string> seen;
    for (const auto& p : points)
      if (!seen.insert(p).second) throw InputError("duplicate point label: " + p);
  }
  const int n = static_cast<int>(points.size());
  if (static_cast<int>(delta.size()) != n)
    throw InputError("distance matrix has the wrong size");
  for (const auto& row : delta) {
    if (static_cast<int>(row.size()) != n)
      throw InputError("distance matrix has the wrong size");
    for (int v : row)
      if (v < 0 || v >= values.n) throw InputError("distance value out of range");
  }
  SemMetricSpace a;
  a.points = std::move(points);
  a.values = std::move(values);
  a.delta = std::move(delta);
  for (int x = 0; x < n; ++x)
    if (a.delta[x][x] != a.values.zero)
      throw InputError("distance axiom fails: delta(x,x) != 0");
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      if (a.delta[x][y] != a.delta[y][x])
        throw InputError("distance axiom fails: symmetry");
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      for (int z = 0; z < n; ++z)
        if (!a.vleq(a.delta[x][z], a.values.plus(a.delta[x][y], a.delta[y][z])))
          throw InputError("distance axiom fails: triangle inequality");
  return a;
}

int SemMetricSpace::point_index(const std::string& label) const {
  for (int i = 0; i < point_count(); ++i)
    if (points[i] == label) return i;
  throw InputError("unknown point label: " + label);
}

SemMetricCover SemMetricCover::make(SemMetricSpace space, IndexSet star) {
  star = make_set(star);
  for (int x : star)
    if (x < 0 || x >= space.point_count())
      throw InputError("star point out of range");
  for (int x : star)
    for (int y : star)
      for (int z : star) {
        bool witnessed = false;
        for (int t = 0; t < space.point_count() && !witnessed; ++t)
          if (space.vleq(space.dist(x, t), space.dist(y, z)) &&
              space.vleq(space.dist(t, z), space.dist(x, y)))
            witnessed = true;
        if (!witnessed)
          throw InputError("Parallelogram Rule fails at (" + space.points[x] +
                           "," + space.points[y] + "," + space.points[z] + ")");
      }
  SemMetricCover b;
  b.space = std::move(space);
  b.star = std::move(star);
  return b;
}

MetrMorphism MetrMorphism::make(SemMetricSpace src, SemMetricSpace dst,
                                std::vector<int> point_map,
                                std::vector<int> value_map) {
  if (static_cast<int>(point_map.size()) != src.point_count())
    throw InputError("point map must cover the domain");
  for (int v : point_map)
    if (v < 0 || v >= dst.point_count()) throw InputError("point map leaves the codomain");
  MonoidHom::make(src.values, dst.values, value_map);  // join-zero hom check
  for (int x = 0; x < src.point_count(); ++x)
    for (int y = 0; y < src.point_count(); ++y)
      if (dst.dist(point_map[x], point_map[y]) != value_map[src.dist(x, y)])
        throw InputError("morphism does not transport the distance at (" +
                         src.points[x] + "," + src.points[y] + ")");
  MetrMorphism f;
  f.src = std::move(src);
  f.dst = std::move(dst);
  f.point_map = std::move(point_map);
  f.value_map = std::move(value_map);
  return f;
}

bool MetrMorphism::double_arrow() const {
  std::vector<char> hit(dst.point_count(), 0);
  for (int v : point_map) hit[v] = 1;
  return std::all_of(hit.begin(), hit.end(), [](char c) { return c != 0; });
}

MetrMorphism metr_compose(const MetrMorphism& g, const MetrMorphism& f) {
  if (f.dst.points != g.src.points || f.dst.delta != g.src.delta)
    throw InputError("metric morphisms do not compose");
  std::vector<int> pm(f.point_map.size()), vm(f.value_map.size());
  for (size_t i = 0; i < pm.size(); ++i) pm[i] = g.point_map[f.point_map[i]];
  for (size_t i = 0; i < vm.size(); ++i) vm[i] = g.value_map[f.value_map[i]];
  return MetrMorphism::make(f.src, g.dst, std::move(pm), std::move(vm));
}

MetrMorphism metr_identity(const SemMetricSpace& a) {
  std::vector<int> pm(a.point_count()), vm(a.values.n);
  std::iota(pm.begin(), pm.end(), 0);
  std::iota(vm.begin(), vm.end(), 0);
  return MetrMorphism::make(a, a, std::move(pm), std::move(vm));
}

SemMetricSpace flat(const SemMetricCover& b) {
  std::vector<std::string> points;
  for (int x : b.star) points.push_back(b.space.points[x]);
  std::vector<std::vector<int>> delta(b.star.size(),
                                      std::vector<int>(b.star.size()));
  for (size_t i = 0; i < b.star.size(); ++i)
    for (size_t j = 0; j < b.star.size(); ++j)
      delta[i][j] = b.space.dist(b.star[i], b.star[j]);
  return SemMetricSpace::make(std::move(points), b.space.values, std::move(delta));
}

NaturalSpace natural(const FinStructure& a, std::vector<std::string> labels) {
  if (!a.lang.rels.empty())
    throw InputError("the natural space is defined for algebras only");
  if (labels.empty())
    for (int i = 0; i < a.n; ++i) labels.push_back("x" + std::to_string(i));
  if (static_cast<int>(labels.size()) != a.n)
    throw InputError("one label per algebra element required");

  ConVSemilattice cs = conv_semilattice(a, VarietyOracle::all());
  std::vector<std::vector<int>> delta(a.n, std::vector<int>(a.n));
  for (int x = 0; x < a.n; ++x)
    for (int y = 0; y < a.n; ++y) {
      Congruence pc = principal_vcong(a, VarietyOracle::all(),
                                      CongruenceSeed::pair(x, y));
      auto it = std::lower_bound(cs.members.begin(), cs.members.end(), pc);
      if (it == cs.members.end() || !(*it == pc))
        throw DomainError("principal congruence escaped the congruence list");
      delta[x][y] = static_cast<int>(it - cs.members.begin());
    }
  NaturalSpace ns;
  ns.space = SemMetricSpace::make(std::move(labels), cs.monoid, std::move(delta));
  ns.congruences = std::move(cs.members);
  return ns;
}

SpaceQuotient quotient_space(const SemMetricSpace& a, const IndexSet& ideal) {
  OIdealQuotient vq = o_ideal_quotient(a.values, ideal);

  std::vector<int> cls(a.point_count(), -1);
  std::vector<int> reps;
  for (int x = 0; x < a.point_count(); ++x) {
    for (size_t k = 0; k < reps.size(); ++k)
      if (set_contains(ideal, a.dist(x, reps[k]))) { cls[x] = static_cast<int>(k); break; }
    if (cls[x] < 0) {
      cls[x] = static_cast<int>(reps.size());
      reps.push_back(x);
    }
  }
  // the relation "distance in the ideal" is an equivalence; spot-check it
  for (int x = 0; x < a.point_count(); ++x)
    for (int y = 0; y < a.point_count(); ++y)
      if ((cls[x] == cls[y]) != set_contains(ideal, a.dist(x, y)))
        throw DomainError("distance-in-ideal relation failed to be an equivalence");

  std::vector<std::string> points;
  for (size_t k = 0; k < reps.size(); ++k) points.push_back(a.points[reps[k]]);
  std::vector<std::vector<int>> delta(reps.size(), std::vector<int>(reps.size()));
  for (size_t i = 0; i < reps.size(); ++i)
    for (size_t j = 0; j < reps.size(); ++j)
      delta[i][j] = vq.projection.map[a.dist(reps[i], reps[j])];
  SemMetricSpace q = SemMetricSpace::make(std::move(points), vq.monoid,
                                          std::move(delta));
  MetrMorphism pi = MetrMorphism::make(a, q, cls, vq.projection.map);
  return {std::move(q), std::move(pi)};
}

SquareOfSpaces SquareOfSpaces::make(SemMetricSpace a0, SemMetricSpace a1,
                                    SemMetricSpace a2, SemMetricSpace top,
                                    MetrMorphism f1, MetrMorphism f2,
                                    MetrMorphism g1, MetrMorphism g2) {
  auto same_space = [](const SemMetricSpace& x, const SemMetricSpace& y) {
    return x.points == y.points && x.delta == y.delta && x.values.add == y.values.add;
  };
  if (!same_space(f1.src, a0) || !same_space(f2.src, a0) ||
      !same_space(f1.dst, a1) || !same_space(f2.dst, a2) ||
      !same_space(g1.src, a1) || !same_space(g2.src, a2) ||
      !same_space(g1.dst, top) || !same_space(g2.dst, top))
    throw InputError("square morphisms do not match the vertex spaces");
  MetrMorphism left = metr_compose(g1, f1);
  MetrMorphism right = metr_compose(g2, f2);
  if (left.point_map != right.point_map || left.value_map != right.value_map)
    throw InputError("the square of spaces does not commute");
  SquareOfSpaces s;
  s.a0 = std::move(a0);
  s.a1 = std::move(a1);
  s.a2 = std::move(a2);
  s.top = std::move(top);
  s.f1 = std::move(f1);
  s.f2 = std::move(f2);
  s.g1 = std::move(g1);
  s.g2 = std::move(g2);
  return s;
}

namespace {

bool orthogonal(const FinCommMonoid& s, int x, int y) {
  for (int z = 0; z < s.n; ++z) {
    if (z == s.zero) continue;
    if (s.plus(z, x) == x && s.plus(z, y) == y) return false;
  }
  return true;
}

bool label_preserving_injection(const MetrMorphism& f) {
  std::vector<char> hit(f.dst.point_count(), 0);
  for (size_t i = 0; i < f.point_map.size(); ++i) {
    int v = f.point_map[i];
    if (hit[v]) return false;
    hit[v] = 1;
    if (f.src.points[i] != f.dst.points[v]) return false;
  }
  return true;
}

}  // namespace

HypothesisReport check_square_hypotheses(const UnliftableSquareData& d) {
  HypothesisReport r;
  auto fail = [&](const std::string& why) {
    r.ok = false;
    r.failures.push_back(why);
  };
  const SquareOfSpaces& s = d.square;
  if (!label_preserving_injection(s.f1)) fail("(i) f1 is not an inclusion");
  if (!label_preserving_injection(s.f2)) fail("(i) f2 is not an inclusion");
  if (!label_preserving_injection(s.g1)) fail("(i) g1 is not an inclusion");
  if (!label_preserving_injection(s.g2)) fail("(i) g2 is not an inclusion");

  const int fa1 = s.f1.value_map[d.alpha], fb1 = s.f1.value_map[d.beta];
  const int fa2 = s.f2.value_map[d.alpha], fb2 = s.f2.value_map[d.beta];
  if (!orthogonal(s.a1.values, fa1, fb1))
    fail("(ii) images of alpha and beta are not orthogonal on side 1");
  if (!orthogonal(s.a2.values, fa2, fb2))
    fail("(ii) images of alpha and beta are not orthogonal on side 2");

  auto leq0 = [&](int v, int w) { return s.a0.vleq(v, w); };
  if (!leq0(s.a0.dist(d.zero_pt, d.a0_pt), d.alpha))
    fail("(iii) delta(0,a0) <= alpha fails");
  if (!s.a1.vleq(s.a1.dist(d.a1_pt, s.f1.point_map[d.one_pt]), fa1))
    fail("(iii) delta(a1,1) <= f1(alpha) fails");
  if (!s.a2.vleq(s.a2.dist(d.a2_pt, s.f2.point_map[d.one_pt]), fa2))
    fail("(iii) delta(a2,1) <= f2(alpha) fails");
  if (!leq0(s.a0.dist(d.a0_pt, d.one_pt), d.beta))
    fail("(iv) delta(a0,1) <= beta fails");
  if (!s.a1.vleq(s.a1.dist(s.f1.point_map[d.zero_pt], d.a1_pt), fb1))
    fail("(iv) delta(0,a1) <= f1(beta) fails");
  if (!s.a2.vleq(s.a2.dist(s.f2.point_map[d.zero_pt], d.a2_pt), fb2))
    fail("(iv) delta(0,a2) <= f2(beta) fails");
  return r;
}

namespace {

// Con_c of an inclusion of lattices, as a metric morphism between the
// natural spaces.
MetrMorphism natural_inclusion(const FinStructure& small,
                               const NaturalSpace& small_nat,
                               const FinStructure& big,
                               const NaturalSpace& big_nat,
                               const std::vector<int>& point_map) {
  Homomorphism inc = Homomorphism::make(small, big, point_map);
  std::vector<int> vm = concv_map(inc, VarietyOracle::all());
  return MetrMorphism::make(small_nat.space, big_nat.space, point_map, vm);
}

UnliftableSquareData build_square_from_lattice(
    const FinPoset& big, const std::vector<std::string>& side1,
    const std::vector<std::string>& side2, const std::string& a1_label,
    const std::string& a2_label) {
  const std::vector<std::string> chain_labels{"0", "a0", "1"};
  FinStructure big_alg = make_lattice_structure(big);
  NaturalSpace big_nat = natural(big_alg, big.labels());

  auto sub_structure = [&](const std::vector<std::string>& labels) {
    std::vector<std::pair<int, int>> pairs;
    for (size_t i = 0; i < labels.size(); ++i)
      for (size_t j = 0; j < labels.size(); ++j)
        if (big.leq(big.index(labels[i]), big.index(labels[j])))
          pairs.emplace_back(static_cast<int>(i), static_cast<int>(j));
    FinPoset sub = FinPoset::from_pairs(labels, pairs);
    return make_lattice_structure(sub);
  };

  FinStructure a0 = sub_structure(chain_labels);
  FinStructure a1 = sub_structure(side1);
  FinStructure a2 = sub_structure(side2);
  NaturalSpace n0 = natural(a0, chain_labels);
  NaturalSpace n1 = natural(a1, side1);
  NaturalSpace n2 = natural(a2, side2);

  auto embed = [&](const std::vector<std::string>& from,
                   const std::vector<std::string>& to) {
    std::vector<int> pm;
    for (const auto& l : from)
      pm.push_back(static_cast<int>(
          std::find(to.begin(), to.end(), l) - to.begin()));
    return pm;
  };

  MetrMorphism f1 = natural_inclusion(a0, n0, a1, n1, embed(chain_labels, side1));
  MetrMorphism f2 = natural_inclusion(a0, n0, a2, n2, embed(chain_labels, side2));
  MetrMorphism g1 = natural_inclusion(a1, n1, big_alg, big_nat, embed(side1, big.labels()));
  MetrMorphism g2 = natural_inclusion(a2, n2, big_alg, big_nat, embed(side2, big.labels()));

  UnliftableSquareData d;
  d.square = SquareOfSpaces::make(n0.space, n1.space, n2.space, big_nat.space,
                                  f1, f2, g1, g2);
  d.zero_pt = n0.space.point_index("0");
  d.one_pt = n0.space.point_index("1");
  d.a0_pt = n0.space.point_index("a0");
  d.a1_pt = n1.space.point_index(a1_label);
  d.a2_pt = n2.space.point_index(a2_label);
  d.alpha = n0.space.dist(d.zero_pt, d.a0_pt);
  d.beta = n0.space.dist(d.a0_pt, d.one_pt);
  return d;
}

}  // namespace

UnliftableSquareData build_m3_square() {
  using SP = std::pair<std::string, std::string>;
  FinPoset m3 = FinPoset::from_pairs(
      {"0", "a0", "q1", "q2", "1"},
      std::vector<SP>{{"0", "a0"}, {"0", "q1"}, {"0", "q2"},
                      {"a0", "1"}, {"q1", "1"}, {"q2", "1"}});
  return build_square_from_lattice(m3, {"0", "a0", "q1", "1"},
                                   {"0", "a0", "q2", "1"}, "q1", "q2");
}

UnliftableSquareData build_n5_square() {
  // pentagon: 0 < a < b < 1 on the long side, a0 the short-side element
  using SP = std::pair<std::string, std::string>;
  FinPoset n5 = FinPoset::from_pairs(
      {"0", "a", "b", "a0", "1"},
      std::vector<SP>{{"0", "a"}, {"a", "b"}, {"b", "1"}, {"0", "a0"}, {"a0", "1"}});
  return build_square_from_lattice(n5, {"0", "a0", "a", "1"},
                                   {"0", "a0", "b", "1"}, "a", "b");
}

UnliftableSquareData build_control_square() {
  // three points at mutual distance 0; alpha and beta the atoms of 2x2
  FinCommMonoid two2 = FinCommMonoid::make(
      4,
      {
          0, 1, 2, 3,  //
          1, 1, 3, 3,  //
          2, 3, 2, 3,  //
          3, 3, 3, 3,  //
      },
      0);
  std::vector<std::vector<int>> zero3(3, std::vector<int>(3, 0));
  SemMetricSpace sp = SemMetricSpace::make({"0", "a0", "1"}, two2, zero3);
  MetrMorphism id = metr_identity(sp);
  UnliftableSquareData d;
  d.square = SquareOfSpaces::make(sp, sp, sp, sp, id, id, id, id);
  d.zero_pt = 0;
  d.one_pt = 2;
  d.a0_pt = 1;
  d.a1_pt = 1;
  d.a2_pt = 1;
  d.alpha = 1;
  d.beta = 2;
  return d;
}

SquareOfCovers SquareOfCovers::make(SemMetricCover b0, SemMetricCover b1,
                                    SemMetricCover b2, SemMetricCover top,
                                    MetrMorphism u1, MetrMorphism u2,
                                    MetrMorphism v1, MetrMorphism v2) {
  auto check_cover_morphism = [](const MetrMorphism& f, const SemMetricCover& from,
                                 const SemMetricCover& to, const std::string& name) {
    if (f.src.points != from.space.points || f.dst.points != to.space.points)
      throw InputError("cover morphism " + name + " endpoints mismatch");
    for (int x : from.star)
      if (!set_contains(to.star, f.point_map[x]))
        throw InputError("cover morphism " + name + " does not map star to star");
  };
  check_cover_morphism(u1, b0, b1, "u1");
  check_cover_morphism(u2, b0, b2, "u2");
  check_cover_morphism(v1, b1, top, "v1");
  check_cover_morphism(v2, b2, top, "v2");
  MetrMorphism left = metr_compose(v1, u1);
  MetrMorphism right = metr_compose(v2, u2);
  if (left.point_map != right.point_map || left.value_map != right.value_map)
    throw InputError("the square of covers does not commute");
  SquareOfCovers s;
  s.b0 = std::move(b0);
  s.b1 = std::move(b1);
  s.b2 = std::move(b2);
  s.top = std::move(top);
  s.u1 = std::move(u1);
  s.u2 = std::move(u2);
  s.v1 = std::move(v1);
  s.v2 = std::move(v2);
  return s;
}

namespace {

// restriction of a cover-square morphism to the star points, composable with
// the chi components which live on the flats
MetrMorphism restrict_to_flat(const MetrMorphism& f, const SemMetricCover& from,
                              const SemMetricCover& to) {
  SemMetricSpace fsrc = flat(from);
  SemMetricSpace fdst = flat(to);
  std::vector<int> pm;
  for (int x : from.star) {
    int img = f.point_map[x];
    auto it = std::find(to.star.begin(), to.star.end(), img);
    pm.push_back(static_cast<int>(it - to.star.begin()));
  }
  return MetrMorphism::make(fsrc, fdst, std::move(pm), f.value_map);
}

}  // namespace

LiftVerdict verify_lifting(const UnliftableSquareData& d,
                           const LiftingCandidate& cand) {
  const SquareOfSpaces& sq = d.square;
  const SquareOfCovers& cv = cand.covers;

  auto same_space = [](const SemMetricSpace& x, const SemMetricSpace& y) {
    return x.points == y.points && x.delta == y.delta && x.values.add == y.values.add;
  };
  if (!same_space(cand.chi0.dst, sq.a0) || !same_space(cand.chi1.dst, sq.a1) ||
      !same_space(cand.chi2.dst, sq.a2) || !same_space(cand.chi_top.dst, sq.top))
    throw InputError("chi components do not land in the square's spaces");
  if (!same_space(cand.chi0.src, flat(cv.b0)) ||
      !same_space(cand.chi1.src, flat(cv.b1)) ||
      !same_space(cand.chi2.src, flat(cv.b2)) ||
      !same_space(cand.chi_top.src, flat(cv.top)))
    throw InputError("chi components do not start at the cover flats");

  if (!cand.chi0.double_arrow() || !cand.chi1.double_arrow() ||
      !cand.chi2.double_arrow())
    throw DomainError("the three lower chi components must be surjective");

  auto natural_face = [&](const MetrMorphism& chi_src, const MetrMorphism& u,
                          const SemMetricCover& from, const SemMetricCover& to,
                          const MetrMorphism& chi_dst, const MetrMorphism& f,
                          const std::string& face) {
    MetrMorphism lhs = metr_compose(chi_dst, restrict_to_flat(u, from, to));
    MetrMorphism rhs = metr_compose(f, chi_src);
    if (lhs.point_map != rhs.point_map || lhs.value_map != rhs.value_map)
      throw InputError("naturality fails on face " + face);
  };
  natural_face(cand.chi0, cv.u1, cv.b0, cv.b1, cand.chi1, sq.f1, "u1/f1");
  natural_face(cand.chi0, cv.u2, cv.b0, cv.b2, cand.chi2, sq.f2, "u2/f2");
  natural_face(cand.chi1, cv.v1, cv.b1, cv.top, cand.chi_top, sq.g1, "v1/g1");
  natural_face(cand.chi2, cv.v2, cv.b2, cv.top, cand.chi_top, sq.g2, "v2/g2");

  // replay of the forcing computation
  auto star_preimage = [&](const MetrMorphism& chi, const SemMetricCover& cover,
                           int target) -> int {
    for (size_t i = 0; i < chi.point_map.size(); ++i)
      if (chi.point_map[i] == target) return cover.star[i];
    return -1;  // unreachable: surjectivity was checked
  };
  const int dot0 = star_preimage(cand.chi0, cv.b0, d.zero_pt);
  const int dot1 = star_preimage(cand.chi0, cv.b0, d.one_pt);
  const int dota0 = star_preimage(cand.chi0, cv.b0, d.a0_pt);
  const int dota1 = star_preimage(cand.chi1, cv.b1, d.a1_pt);
  const int dota2 = star_preimage(cand.chi2, cv.b2, d.a2_pt);

  const SemMetricSpace& b0 = cv.b0.space;
  int dotx = -1;
  for (int t = 0; t < b0.point_count(); ++t)
    if (b0.vleq(b0.dist(dot0, t), b0.dist(dota0, dot1)) &&
        b0.vleq(b0.dist(t, dot1), b0.dist(dot0, dota0))) {
      dotx = t;
      break;
    }
  if (dotx < 0)
    return {false, "Parallelogram Rule gave no witness for (0,a0,1)"};

  LiftVerdict verdict;
  const bool forcing = check_square_hypotheses(d).ok;
  if (forcing) {
    for (int side = 1; side <= 2; ++side) {
      const MetrMorphism& u = side == 1 ? cv.u1 : cv.u2;
      const MetrMorphism& chi = side == 1 ? cand.chi1 : cand.chi2;
      const MetrMorphism& f = side == 1 ? sq.f1 : sq.f2;
      const SemMetricSpace& bi = (side == 1 ? cv.b1 : cv.b2).space;
      const SemMetricSpace& ai = side == 1 ? sq.a1 : sq.a2;
      const int ai_dot = side == 1 ? dota1 : dota2;
      const int falpha = f.value_map[d.alpha];
      const int fbeta = f.value_map[d.beta];

      int dist_i = bi.dist(ai_dot, u.point_map[dotx]);
      int chi_dist = chi.value_map[dist_i];
      // each inequality is entailed by triangle, morphism and naturality
      // identities, so a failure pinpoints the first broken equation
      if (!ai.vleq(chi_dist, fbeta))
        return {false, "derived inequality chi~delta(a" + std::to_string(side) +
                           ",u(x)) <= f(beta) fails"};
      if (!ai.vleq(chi_dist, falpha))
        return {false, "derived inequality chi~delta(a" + std::to_string(side) +
                           ",u(x)) <= f(alpha) fails"};
      if (chi_dist != ai.values.zero)
        return {false, "orthogonality does not force chi~delta(a" +
                           std::to_string(side) + ",u(x)) = 0"};
    }
    if (sq.top.dist(sq.g1.point_map[d.a1_pt], sq.g2.point_map[d.a2_pt]) !=
        sq.top.values.zero)
      return {false,
              "forced conclusion delta(a1,a2) = 0 contradicts the square's data"};
  }
  verdict.accepted = true;
  verdict.detail = forcing ? "valid lifting; delta(a1,a2) = 0 is consistent"
                           : "valid lifting";
  return verdict;
}

}  // namespace oat
