#include "xcomplex/equivariant.hpp"

#include <algorithm>
#include <array>
#include <functional>
#include <map>
#include <numeric>
#include <set>

namespace xcomplex {

OrbitCategory::OrbitCategory(FiniteGroup g) : g_(std::move(g)), subgroups_(g_.subgroups()) {
  const int n = g_.order();
  std::vector<std::vector<bool>> member(subgroups_.size(), std::vector<bool>(n, false));
  for (std::size_t k = 0; k < subgroups_.size(); ++k) {
    for (int e : subgroups_[k]) member[k][e] = true;
    coset_min_.emplace_back(n);
    for (int a = 0; a < n; ++a) {
      int best = n;
      for (int e : subgroups_[k]) best = std::min(best, g_.mul(a, e));
      coset_min_[k][a] = best;
    }
  }
  for (int h = 0; h < num_objects(); ++h) {
    for (int k = 0; k < num_objects(); ++k) {
      for (int a = 0; a < n; ++a) {
        if (coset_min_[k][a] != a) continue;
        bool ok = true;
        for (int e : subgroups_[h]) ok = ok && member[k][g_.mul(g_.inv(a), g_.mul(e, a))];
        if (!ok) continue;
        source_.push_back(h);
        target_.push_back(k);
        rep_.push_back(a);
      }
    }
  }
}

int OrbitCategory::find_subgroup(const std::vector<int>& elements) const {
  auto it = std::find(subgroups_.begin(), subgroups_.end(), elements);
  return it == subgroups_.end() ? -1 : static_cast<int>(it - subgroups_.begin());
}

int OrbitCategory::find(int h, int k, int a) const {
  int r = coset_min_[k][a];
  for (int m = 0; m < num_morphisms(); ++m)
    if (source_[m] == h && target_[m] == k && rep_[m] == r) return m;
  return -1;
}

std::vector<int> OrbitCategory::hom(int h, int k) const {
  std::vector<int> out;
  for (int m = 0; m < num_morphisms(); ++m)
    if (source_[m] == h && target_[m] == k) out.push_back(m);
  return out;
}

int OrbitCategory::compose(int a, int b) const {
  if (target_[a] != source_[b]) throw std::invalid_argument("orbit category morphisms are not composable");
  return find(source_[a], target_[b], g_.mul(rep_[a], rep_[b]));
}

OGGroup OGGroup::trivial(const OrbitCategory& oc) {
  OGGroup p;
  p.values.assign(oc.num_objects(), FiniteGroup::trivial());
  p.maps.assign(oc.num_morphisms(), std::vector<int>{0});
  return p;
}

void OGGroup::validate(const OrbitCategory& oc) const {
  if (static_cast<int>(values.size()) != oc.num_objects() || static_cast<int>(maps.size()) != oc.num_morphisms())
    throw ValidationError("O_G-group has the wrong shape");
  for (int m = 0; m < oc.num_morphisms(); ++m) {
    const FiniteGroup& from = values[oc.target(m)];
    const FiniteGroup& to = values[oc.source(m)];
    if (static_cast<int>(maps[m].size()) != from.order()) throw ValidationError("O_G-group map has the wrong size");
    for (int v : maps[m])
      if (v < 0 || v >= to.order()) throw ValidationError("O_G-group map leaves its target");
    for (int x = 0; x < from.order(); ++x)
      for (int y = 0; y < from.order(); ++y)
        if (maps[m][from.mul(x, y)] != to.mul(maps[m][x], maps[m][y]))
          throw ValidationError("O_G-group map is not a homomorphism");
  }
  for (int h = 0; h < oc.num_objects(); ++h) {
    const auto& id = maps[oc.identity(h)];
    for (int x = 0; x < values[h].order(); ++x)
      if (id[x] != x) throw ValidationError("O_G-group does not preserve identities");
  }
  for (int a = 0; a < oc.num_morphisms(); ++a)
    for (int b = 0; b < oc.num_morphisms(); ++b) {
      if (oc.target(a) != oc.source(b)) continue;
      int c = oc.compose(a, b);
      for (int x = 0; x < values[oc.target(b)].order(); ++x)
        if (maps[c][x] != maps[a][maps[b][x]]) throw ValidationError("O_G-group does not preserve composition");
    }
}

OGModule OGModule::constant(const OrbitCategory& oc, const FgAbelianGroup& a) {
  OGModule m;
  m.pi = OGGroup::trivial(oc);
  m.values.assign(oc.num_objects(), PiModule::trivial_action(FiniteGroup::trivial(), a));
  m.maps.assign(oc.num_morphisms(), AbHom::identity(a));
  return m;
}

void OGModule::validate(const OrbitCategory& oc) const {
  pi.validate(oc);
  if (static_cast<int>(values.size()) != oc.num_objects() || static_cast<int>(maps.size()) != oc.num_morphisms())
    throw ValidationError("O_G-module has the wrong shape");
  for (int h = 0; h < oc.num_objects(); ++h)
    if (!(values[h].pi() == pi.values[h])) throw ValidationError("O_G-module acts through the wrong group");
  for (int m = 0; m < oc.num_morphisms(); ++m) {
    int h = oc.source(m), k = oc.target(m);
    const AbHom& f = maps[m];
    if (f.domain().orders() != module(k).orders() || f.codomain().orders() != module(h).orders())
      throw ValidationError("O_G-module map has the wrong domain or codomain");
    for (int g = 0; g < pi.values[k].order(); ++g)
      if (!(f.after(values[k].action(g)) == values[h].action(pi.maps[m][g]).after(f)))
        throw ValidationError("O_G-module map is not equivariant");
  }
  for (int h = 0; h < oc.num_objects(); ++h)
    if (!(maps[oc.identity(h)] == AbHom::identity(module(h))))
      throw ValidationError("O_G-module does not preserve identities");
  for (int a = 0; a < oc.num_morphisms(); ++a)
    for (int b = 0; b < oc.num_morphisms(); ++b) {
      if (oc.target(a) != oc.source(b)) continue;
      if (!(maps[oc.compose(a, b)] == maps[a].after(maps[b])))
        throw ValidationError("O_G-module does not preserve composition");
    }
}

GSimplicialSet::GSimplicialSet(SimplicialSet x, FiniteGroup g, std::vector<std::vector<std::vector<int>>> act)
    : x_(std::move(x)), g_(std::move(g)), act_(std::move(act)) {
  validate();
}

GSimplicialSet GSimplicialSet::from_generators(SimplicialSet x, FiniteGroup g,
                                               const std::vector<std::vector<std::vector<int>>>& generator_act) {
  const auto& gens = g.generators();
  if (generator_act.size() != gens.size()) throw ValidationError("need one action table per group generator");
  using Table = std::vector<std::vector<int>>;
  std::vector<Table> act(g.order());
  std::vector<bool> known(g.order(), false);
  Table id;
  for (int d = 0; d <= x.dimension(); ++d) {
    id.emplace_back(x.count(d));
    std::iota(id[d].begin(), id[d].end(), 0);
  }
  for (const auto& t : generator_act) {
    if (static_cast<int>(t.size()) != x.dimension() + 1) throw ValidationError("action table has the wrong dimensions");
    for (int d = 0; d <= x.dimension(); ++d) {
      if (static_cast<int>(t[d].size()) != x.count(d)) throw ValidationError("action table has the wrong size");
      for (int v : t[d])
        if (v < 0 || v >= x.count(d)) throw ValidationError("action sends a simplex outside the set");
    }
  }
  act[g.identity()] = id;
  known[g.identity()] = true;
  std::vector<int> queue{g.identity()};
  for (std::size_t qi = 0; qi < queue.size(); ++qi) {
    int a = queue[qi];
    for (std::size_t s = 0; s < gens.size(); ++s) {
      int b = g.mul(a, gens[s]);
      Table t = id;
      for (int d = 0; d <= x.dimension(); ++d)
        for (int i = 0; i < x.count(d); ++i) t[d][i] = act[a][d][generator_act[s][d][i]];
      if (known[b]) {
        if (t != act[b]) throw ValidationError("generator tables do not define a group action");
        continue;
      }
      act[b] = std::move(t);
      known[b] = true;
      queue.push_back(b);
    }
  }
  return GSimplicialSet(std::move(x), std::move(g), std::move(act));
}

GSimplicialSet GSimplicialSet::trivial(SimplicialSet x, FiniteGroup g) {
  std::vector<std::vector<int>> id;
  for (int d = 0; d <= x.dimension(); ++d) {
    id.emplace_back(x.count(d));
    std::iota(id[d].begin(), id[d].end(), 0);
  }
  std::vector<std::vector<std::vector<int>>> act(g.order(), id);
  return GSimplicialSet(std::move(x), std::move(g), std::move(act));
}

SimplexRef GSimplicialSet::act(int g, const SimplexRef& s) const {
  return SimplexRef{s.nd_dim, act_[g][s.nd_dim][s.id], s.surjection};
}

void GSimplicialSet::validate() const {
  x_.validate();
  if (static_cast<int>(act_.size()) != g_.order()) throw ValidationError("need one action table per group element");
  for (int g = 0; g < g_.order(); ++g) {
    if (static_cast<int>(act_[g].size()) != x_.dimension() + 1) throw ValidationError("action table has the wrong dimensions");
    for (int d = 0; d <= x_.dimension(); ++d) {
      if (static_cast<int>(act_[g][d].size()) != x_.count(d)) throw ValidationError("action table has the wrong size");
      std::vector<bool> hit(x_.count(d), false);
      for (int v : act_[g][d]) {
        if (v < 0 || v >= x_.count(d) || hit[v]) throw ValidationError("group element does not permute simplices");
        hit[v] = true;
      }
    }
  }
  for (int d = 0; d <= x_.dimension(); ++d)
    for (int i = 0; i < x_.count(d); ++i)
      if (act_[g_.identity()][d][i] != i) throw ValidationError("identity acts nontrivially");
  for (int a = 0; a < g_.order(); ++a)
    for (int b = 0; b < g_.order(); ++b)
      for (int d = 0; d <= x_.dimension(); ++d)
        for (int i = 0; i < x_.count(d); ++i)
          if (act_[g_.mul(a, b)][d][i] != act_[a][d][act_[b][d][i]]) throw ValidationError("action is not associative");
  for (int g = 0; g < g_.order(); ++g)
    for (int d = 1; d <= x_.dimension(); ++d)
      for (int i = 0; i < x_.count(d); ++i)
        for (int j = 0; j <= d; ++j)
          if (act(g, x_.faces(d, i)[j]) != x_.faces(d, act_[g][d][i])[j])
            throw ValidationError("action does not commute with face d" + std::to_string(j));
}

Subcomplex fixed_points(const GSimplicialSet& x, const std::vector<int>& h) {
  std::vector<std::vector<bool>> keep;
  for (int d = 0; d <= x.set().dimension(); ++d) {
    keep.emplace_back(x.set().count(d), true);
    for (int i = 0; i < x.set().count(d); ++i)
      for (int e : h) keep[d][i] = keep[d][i] && x.act(e, d, i) == i;
  }
  return subcomplex(x.set(), keep);
}

GSubcomplex restrict_to(const GSimplicialSet& x, const std::vector<std::vector<bool>>& keep) {
  GSubcomplex out;
  out.sub = subcomplex(x.set(), keep);
  const Subcomplex& s = out.sub;
  std::vector<std::vector<std::vector<int>>> act(x.group().order());
  for (int g = 0; g < x.group().order(); ++g) {
    for (int d = 0; d <= s.set.dimension(); ++d) {
      act[g].emplace_back();
      for (int i = 0; i < s.set.count(d); ++i) {
        int j = s.from_parent[d][x.act(g, d, s.to_parent[d][i])];
        if (j < 0) throw ValidationError("subcomplex is not G-invariant");
        act[g][d].push_back(j);
      }
    }
  }
  out.set = GSimplicialSet(s.set, x.group(), std::move(act));
  return out;
}

void validate_equivariant(const GSimplicialSet& from, const GSimplicialSet& to, const SimplicialMap& f) {
  if (!(from.group() == to.group())) throw ValidationError("equivariant map between different groups");
  f.validate(from.set(), to.set());
  for (int g = 0; g < from.group().order(); ++g)
    for (int d = 0; d <= from.set().dimension(); ++d)
      for (int i = 0; i < from.set().count(d); ++i)
        if (f.apply(SimplexRef::nondegenerate(d, from.act(g, d, i))) != to.act(g, f.apply(SimplexRef::nondegenerate(d, i))))
          throw ValidationError("map is not G-equivariant");
}

EquivariantLocalSystem EquivariantLocalSystem::constant(const OrbitCategory& oc, const GSimplicialSet& x,
                                                        const FgAbelianGroup& a) {
  EquivariantLocalSystem l;
  l.coefficients = OGModule::constant(oc, a);
  for (int h = 0; h < oc.num_objects(); ++h) {
    Subcomplex fx = fixed_points(x, oc.subgroup(h));
    l.omega.emplace_back(x.set().count(1), -1);
    for (int e = 0; e < fx.set.count(1); ++e) l.omega[h][fx.to_parent[1][e]] = 0;
  }
  return l;
}

int EquivariantLocalSystem::label(int h, const SimplexRef& edge) const {
  if (edge.degenerate()) return coefficients.pi.values[h].identity();
  int v = omega.at(h).at(edge.id);
  if (v < 0) throw ValidationError("edge is not fixed by the subgroup");
  return v;
}

EquivariantLocalSystem EquivariantLocalSystem::pullback(const GSimplicialSet& y, const SimplicialMap& f) const {
  EquivariantLocalSystem out;
  out.coefficients = coefficients;
  OrbitCategory oc(y.group());
  for (int h = 0; h < oc.num_objects(); ++h) {
    Subcomplex fy = fixed_points(y, oc.subgroup(h));
    out.omega.emplace_back(y.set().count(1), -1);
    for (int e = 0; e < fy.set.count(1); ++e) {
      int pe = fy.to_parent[1][e];
      out.omega[h][pe] = label(h, f.apply(SimplexRef::nondegenerate(1, pe)));
    }
  }
  return out;
}

void EquivariantLocalSystem::validate(const OrbitCategory& oc, const GSimplicialSet& x) const {
  coefficients.validate(oc);
  if (static_cast<int>(omega.size()) != oc.num_objects()) throw ValidationError("need one edge labelling per subgroup");
  std::vector<Subcomplex> fixed;
  for (int h = 0; h < oc.num_objects(); ++h) {
    fixed.push_back(fixed_points(x, oc.subgroup(h)));
    const Subcomplex& fx = fixed.back();
    if (static_cast<int>(omega[h].size()) != x.set().count(1)) throw ValidationError("edge labelling has the wrong size");
    std::vector<int> labels;
    for (int e = 0; e < x.set().count(1); ++e) {
      bool in = fx.contains(1, e);
      if (in != (omega[h][e] >= 0)) throw ValidationError("edge labels must be given exactly on fixed edges");
      if (in) labels.push_back(omega[h][e]);
    }
    LocalSystem::from_labels(fx.set, coefficients.values[h], labels);
  }
  for (int m = 0; m < oc.num_morphisms(); ++m) {
    int h = oc.source(m), k = oc.target(m), a = oc.element(m);
    for (int i = 0; i < fixed[k].set.count(1); ++i) {
      int e = fixed[k].to_parent[1][i];
      int ae = x.act(a, 1, e);
      if (omega[h][ae] != coefficients.pi.maps[m][omega[k][e]])
        throw ValidationError("edge labels are not compatible along the orbit category");
    }
  }
}

}  // namespace xcomplex

namespace xcomplex {

int BredonComplex::coordinate(int n, int h, int s, int j) const {
  return offsets[n][h] + s * systems[h].module().num_generators() + j;
}

BredonComplex bredon_cochains(const GSimplicialSet& x, const EquivariantLocalSystem& l, int min_top) {
  BredonComplex bc;
  bc.orbits = OrbitCategory(x.group());
  const OrbitCategory& oc = bc.orbits;
  l.validate(oc, x);
  const auto& coeff = l.coefficients;
  for (int h = 0; h < oc.num_objects(); ++h) {
    bc.fixed.push_back(fixed_points(x, oc.subgroup(h)));
    const Subcomplex& fx = bc.fixed.back();
    std::vector<int> labels;
    for (int e : fx.to_parent.size() > 1 ? fx.to_parent[1] : std::vector<int>{}) labels.push_back(l.omega[h][e]);
    bc.systems.push_back(LocalSystem::from_labels(fx.set, coeff.values[h], labels));
  }
  const int top = std::max({x.set().dimension(), 0, min_top});
  for (int n = 0; n <= top + 1; ++n) {
    std::vector<FgAbelianGroup> parts;
    bc.offsets.emplace_back();
    int off = 0;
    for (int h = 0; h < oc.num_objects(); ++h) {
      parts.push_back(cochain_group(bc.fixed[h].set, bc.systems[h], n));
      bc.offsets[n].push_back(off);
      off += parts.back().num_generators();
    }
    bc.ambient.push_back(FgAbelianGroup::direct_sum(parts));
  }
  // compatibility: f_H(a s) = M(a^) f_K(s) for s in X^K
  for (int n = 0; n <= top + 1; ++n) {
    std::vector<FgAbelianGroup> rows;
    std::vector<std::array<int, 3>> blocks;  // (morphism, fixed simplex in X^K, row offset)
    int r = 0;
    for (int m = 0; m < oc.num_morphisms(); ++m) {
      int h = oc.source(m), k = oc.target(m);
      for (int s = 0; s < bc.fixed[k].set.count(n); ++s) {
        rows.push_back(coeff.module(h));
        blocks.push_back({m, s, r});
        r += coeff.module(h).num_generators();
      }
    }
    FgAbelianGroup codomain = FgAbelianGroup::direct_sum(rows);
    IntMatrix rel = IntMatrix::Zero(r, bc.ambient[n].num_generators());
    for (const auto& [m, s, row] : blocks) {
      int h = oc.source(m), k = oc.target(m);
      int parent = bc.fixed[k].to_parent[n][s];
      int as = bc.fixed[h].from_parent[n][x.act(oc.element(m), n, parent)];
      const int kh = coeff.module(h).num_generators(), kk = coeff.module(k).num_generators();
      rel.block(row, bc.coordinate(n, h, as, 0), kh, kh) += IntMatrix::Identity(kh, kh);
      rel.block(row, bc.coordinate(n, k, s, 0), kh, kk) -= coeff.maps[m].matrix();
    }
    bc.cochains.push_back(kernel(AbHom(bc.ambient[n], codomain, rel)));
  }
  std::vector<FgAbelianGroup> groups;
  std::vector<AbHom> diffs;
  for (int n = 0; n <= top; ++n) groups.push_back(bc.cochains[n].group);
  for (int n = 0; n < top; ++n) {
    IntMatrix big = IntMatrix::Zero(bc.ambient[n + 1].num_generators(), bc.ambient[n].num_generators());
    for (int h = 0; h < oc.num_objects(); ++h) {
      AbHom d = coboundary(bc.fixed[h].set, bc.systems[h], n);
      big.block(bc.offsets[n + 1][h], bc.offsets[n][h], d.matrix().rows(), d.matrix().cols()) = d.matrix();
    }
    const Subgroup& from = bc.cochains[n];
    const Subgroup& to = bc.cochains[n + 1];
    IntMatrix m(to.group.num_generators(), from.group.num_generators());
    for (int j = 0; j < from.group.num_generators(); ++j) {
      auto c = to.coordinates(big * from.inclusion.col(j));
      if (!c) throw ValidationError("inconsistent coefficient system: the coboundary leaves the compatible cochains in degree " +
                                    std::to_string(n + 1));
      m.col(j) = *c;
    }
    diffs.emplace_back(from.group, to.group, m);
  }
  bc.cochains.resize(top + 1);
  bc.ambient.resize(top + 1);
  bc.offsets.resize(top + 1);
  bc.complex = AbCochainComplex(groups, diffs);
  return bc;
}

FgAbelianGroup bredon_h(const GSimplicialSet& x, const EquivariantLocalSystem& l, int n) {
  return cohomology(bredon_cochains(x, l).complex, n);
}

}  // namespace xcomplex

namespace xcomplex {

FibrewiseSuspension fibrewise_suspension(const GSimplicialSet& x, const GSimplicialSet& k, const SimplicialMap& p) {
  validate_equivariant(x, k, p);
  const SimplicialSet& xs = x.set();
  const SimplicialSet& ks = k.set();
  const SimplicialSet circle = SimplicialSet::minimal_circle();
  const int top = std::max(ks.dimension(), xs.dimension() + 1);
  ProductSet prod = product(xs, circle, xs.dimension() + 1);

  SimplicialSet s;
  std::vector<std::vector<int>> new_id;  // [dim][product id] -> id in s, -1 if collapsed
  for (int d = 0; d <= top; ++d) {
    for (int i = 0; i < ks.count(d); ++i) s.add_simplex(d, d == 0 ? std::vector<SimplexRef>{} : ks.faces(d, i));
    new_id.emplace_back(prod.set.count(d), -1);
    for (int i = 0; i < prod.set.count(d); ++i) {
      const auto& [a, b] = prod.pairs[d][i];
      if (b.nd_dim == 0) continue;
      std::vector<SimplexRef> faces;
      for (int j = 0; j <= d; ++j) {
        SimplexRef fa = xs.face(a, j), fb = circle.face(b, j);
        if (fb.nd_dim == 0) {
          faces.push_back(p.apply(fa));
          continue;
        }
        SimplexRef r = prod.normalize(fa, fb);
        faces.push_back(SimplexRef{r.nd_dim, new_id[r.nd_dim].at(r.id), r.surjection});
      }
      new_id[d][i] = s.add_simplex(d, std::move(faces));
    }
  }

  FibrewiseSuspension out;
  std::vector<std::vector<std::vector<int>>> act(x.group().order());
  for (int g = 0; g < x.group().order(); ++g) {
    for (int d = 0; d <= s.dimension(); ++d) {
      act[g].emplace_back(s.count(d), -1);
      for (int i = 0; i < ks.count(d); ++i) act[g][d][i] = k.act(g, d, i);
      for (int i = 0; i < prod.set.count(d); ++i) {
        if (new_id[d][i] < 0) continue;
        const auto& [a, b] = prod.pairs[d][i];
        act[g][d][new_id[d][i]] = new_id[d][prod.index.at({x.act(g, a), b})];
      }
    }
  }
  out.projection.images.resize(s.dimension() + 1);
  out.section.images.resize(ks.dimension() + 1);
  for (int d = 0; d <= s.dimension(); ++d) {
    out.projection.images[d].resize(s.count(d));
    for (int i = 0; i < ks.count(d); ++i) {
      out.projection.images[d][i] = SimplexRef::nondegenerate(d, i);
      out.section.images[d].push_back(SimplexRef::nondegenerate(d, i));
    }
    for (int i = 0; i < prod.set.count(d); ++i)
      if (new_id[d][i] >= 0) out.projection.images[d][new_id[d][i]] = p.apply(prod.pairs[d][i].first);
  }
  out.set = GSimplicialSet(std::move(s), x.group(), std::move(act));
  validate_equivariant(out.set, k, out.projection);
  validate_equivariant(k, out.set, out.section);
  return out;
}

SuspensionCheck verify_suspension_iso(const GSimplicialSet& x, const GSimplicialSet& k, const SimplicialMap& p,
                                      const EquivariantLocalSystem& l, int n) {
  if (n < 1) throw ValidationError("the suspension comparison needs n >= 1");
  FibrewiseSuspension s = fibrewise_suspension(x, k, p);
  SuspensionCheck out;
  out.degree = n;
  out.suspension = bredon_h(s.set, l.pullback(s.set, s.projection), n);
  out.lower = bredon_h(x, l.pullback(x, p), n - 1);
  out.base = bredon_h(k, l, n);
  out.pass = out.suspension == FgAbelianGroup::direct_sum({out.lower, out.base});
  return out;
}

namespace {

// A space in a Mayer-Vietoris square: its Bredon complex and simplex ids in x.
struct Piece {
  BredonComplex bc;
  std::vector<std::vector<int>> to_root;
  std::vector<std::vector<int>> from_root;
};

Piece make_piece(const GSimplicialSet& x, const EquivariantLocalSystem& l, const std::vector<std::vector<bool>>& keep,
                 int top) {
  GSubcomplex g = restrict_to(x, keep);
  Piece p;
  p.bc = bredon_cochains(g.set, l.pullback(g.set, g.sub.inclusion()), top);
  p.to_root = g.sub.to_parent;
  p.from_root = g.sub.from_parent;
  return p;
}

// Restriction from p to its subspace q on ambient coordinates in degree n.
IntMatrix restriction(const Piece& p, const Piece& q, int n) {
  IntMatrix r = IntMatrix::Zero(q.bc.ambient[n].num_generators(), p.bc.ambient[n].num_generators());
  for (int h = 0; h < q.bc.orbits.num_objects(); ++h) {
    const int k = q.bc.systems[h].module().num_generators();
    const Subcomplex& fq = q.bc.fixed[h];
    for (int s = 0; s < fq.set.count(n); ++s) {
      int root = q.to_root[n][fq.to_parent[n][s]];
      int t = p.bc.fixed[h].from_parent[n][p.from_root[n][root]];
      r.block(q.bc.coordinate(n, h, s, 0), p.bc.coordinate(n, h, t, 0), k, k) = IntMatrix::Identity(k, k);
    }
  }
  return r;
}

// Ambient matrix rewritten in cochain coordinates.
IntMatrix in_cochains(const Subgroup& from, const Subgroup& to, const IntMatrix& ambient) {
  IntMatrix m(to.group.num_generators(), from.group.num_generators());
  for (int j = 0; j < from.group.num_generators(); ++j) {
    auto c = to.coordinates(ambient * from.inclusion.col(j));
    if (!c) throw ValidationError("map leaves the compatible cochains");
    m.col(j) = *c;
  }
  return m;
}

IntMatrix block_diag(const IntMatrix& a, const IntMatrix& b) {
  IntMatrix m = IntMatrix::Zero(a.rows() + b.rows(), a.cols() + b.cols());
  m.topLeftCorner(a.rows(), a.cols()) = a;
  m.bottomRightCorner(b.rows(), b.cols()) = b;
  return m;
}

bool exact_at(const AbHom& f, const AbHom& g) {
  if (!g.after(f).is_zero()) return false;
  Subgroup ker = kernel(g);
  Subgroup im = subgroup_generated(f.codomain(), f.matrix());
  for (int j = 0; j < ker.group.num_generators(); ++j)
    if (!im.coordinates(ker.inclusion.col(j))) return false;
  return true;
}

}  // namespace

MayerVietorisCheck mayer_vietoris_check(const GSimplicialSet& x, const EquivariantLocalSystem& l,
                                        const std::vector<std::vector<bool>>& a,
                                        const std::vector<std::vector<bool>>& b, int lo, int hi) {
  if (lo < 0 || hi < lo) throw ValidationError("bad degree range");
  const SimplicialSet& xs = x.set();
  std::vector<std::vector<bool>> all, both;
  for (int d = 0; d <= xs.dimension(); ++d) {
    all.emplace_back(xs.count(d), true);
    both.emplace_back(xs.count(d), false);
    for (int i = 0; i < xs.count(d); ++i) {
      bool in_a = d < static_cast<int>(a.size()) && a[d].at(i);
      bool in_b = d < static_cast<int>(b.size()) && b[d].at(i);
      if (!in_a && !in_b) throw ValidationError("the two subcomplexes do not cover the set");
      both[d][i] = in_a && in_b;
    }
  }
  const int top = std::max(hi + 1, xs.dimension());
  Piece px = make_piece(x, l, all, top), pa = make_piece(x, l, a, top), pb = make_piece(x, l, b, top),
        pc = make_piece(x, l, both, top);

  // A + B as one cochain complex
  std::vector<FgAbelianGroup> sum_groups;
  std::vector<AbHom> sum_diffs;
  for (int n = 0; n <= top; ++n)
    sum_groups.push_back(FgAbelianGroup::direct_sum({pa.bc.complex.group(n), pb.bc.complex.group(n)}));
  for (int n = 0; n < top; ++n)
    sum_diffs.emplace_back(sum_groups[n], sum_groups[n + 1],
                           block_diag(pa.bc.complex.differential(n).matrix(), pb.bc.complex.differential(n).matrix()));
  AbCochainComplex sum(sum_groups, sum_diffs);

  std::vector<CohomologyGroup> hx, hab, hc;
  std::vector<AbHom> f, g, conn;  // H^n X -> H^n(A+B) -> H^n C -> H^{n+1} X
  for (int n = 0; n <= top; ++n) {
    hx.push_back(cohomology_data(px.bc.complex, n));
    hab.push_back(cohomology_data(sum, n));
    hc.push_back(cohomology_data(pc.bc.complex, n));
  }
  for (int n = 0; n <= top; ++n) {
    IntMatrix xa = in_cochains(px.bc.cochains[n], pa.bc.cochains[n], restriction(px, pa, n));
    IntMatrix xb = in_cochains(px.bc.cochains[n], pb.bc.cochains[n], restriction(px, pb, n));
    IntMatrix ac = in_cochains(pa.bc.cochains[n], pc.bc.cochains[n], restriction(pa, pc, n));
    IntMatrix bc = in_cochains(pb.bc.cochains[n], pc.bc.cochains[n], restriction(pb, pc, n));
    IntMatrix fm(xa.rows() + xb.rows(), xa.cols());
    fm << xa, xb;
    IntMatrix gm(ac.rows(), ac.cols() + bc.cols());
    gm << ac, -bc;
    f.push_back(induced_map(hx[n], hab[n], fm));
    g.push_back(induced_map(hab[n], hc[n], gm));
    if (n < top) {
      // extend by zero from C to A, apply the coboundary, extend by zero to X
      IntMatrix ca = in_cochains(pc.bc.cochains[n], pa.bc.cochains[n], restriction(pa, pc, n).transpose());
      IntMatrix ax = in_cochains(pa.bc.cochains[n + 1], px.bc.cochains[n + 1], restriction(px, pa, n + 1).transpose());
      conn.push_back(induced_map(hc[n], hx[n + 1], ax * pa.bc.complex.differential(n).matrix() * ca));
    }
  }

  MayerVietorisCheck out;
  out.pass = true;
  for (int n = lo; n <= hi; ++n) {
    AbHom into_x = n == 0 ? AbHom::zero(FgAbelianGroup::trivial(), hx[0].group) : conn[n - 1];
    out.nodes.push_back({n, "X", exact_at(into_x, f[n])});
    out.nodes.push_back({n, "A+B", exact_at(f[n], g[n])});
    out.nodes.push_back({n, "A^B", exact_at(g[n], conn[n])});
  }
  for (const auto& node : out.nodes) out.pass = out.pass && node.pass;
  return out;
}

}  // namespace xcomplex

namespace xcomplex {

OGDiagram OGDiagram::fixed_point_diagram(const OrbitCategory& oc, const GSimplicialSet& x) {
  OGDiagram u;
  std::vector<Subcomplex> fixed;
  for (int h = 0; h < oc.num_objects(); ++h) {
    fixed.push_back(fixed_points(x, oc.subgroup(h)));
    u.values.push_back(fixed.back().set);
  }
  for (int m = 0; m < oc.num_morphisms(); ++m) {
    const Subcomplex& fh = fixed[oc.source(m)];
    const Subcomplex& fk = fixed[oc.target(m)];
    SimplicialMap f;
    for (int d = 0; d <= fk.set.dimension(); ++d) {
      f.images.emplace_back();
      for (int s = 0; s < fk.set.count(d); ++s)
        f.images[d].push_back(
            SimplexRef::nondegenerate(d, fh.from_parent[d][x.act(oc.element(m), d, fk.to_parent[d][s])]));
    }
    u.maps.push_back(std::move(f));
  }
  u.validate(oc);
  return u;
}

OGDiagram OGDiagram::constant(const OrbitCategory& oc, const SimplicialSet& s) {
  OGDiagram u;
  u.values.assign(oc.num_objects(), s);
  u.maps.assign(oc.num_morphisms(), SimplicialMap::identity(s));
  return u;
}

void OGDiagram::validate(const OrbitCategory& oc) const {
  if (static_cast<int>(values.size()) != oc.num_objects() || static_cast<int>(maps.size()) != oc.num_morphisms())
    throw ValidationError("O_G-diagram has the wrong shape");
  for (const auto& v : values) v.validate();
  for (int m = 0; m < oc.num_morphisms(); ++m) maps[m].validate(values[oc.target(m)], values[oc.source(m)]);
  for (int h = 0; h < oc.num_objects(); ++h)
    for (int d = 0; d <= values[h].dimension(); ++d)
      for (int s = 0; s < values[h].count(d); ++s)
        if (maps[oc.identity(h)].images[d][s] != SimplexRef::nondegenerate(d, s))
          throw ValidationError("O_G-diagram does not preserve identities");
  for (int a = 0; a < oc.num_morphisms(); ++a)
    for (int b = 0; b < oc.num_morphisms(); ++b) {
      if (oc.target(a) != oc.source(b)) continue;
      int c = oc.compose(a, b);
      const SimplicialSet& from = values[oc.target(b)];
      for (int d = 0; d <= from.dimension(); ++d)
        for (int s = 0; s < from.count(d); ++s) {
          SimplexRef v = SimplexRef::nondegenerate(d, s);
          if (maps[c].apply(v) != maps[a].apply(maps[b].apply(v)))
            throw ValidationError("O_G-diagram does not preserve composition");
        }
    }
}

void BarDiagonal::validate() const {
  for (std::size_t p = 2; p < simplices.size(); ++p)
    for (std::size_t s = 0; s < simplices[p].size(); ++s)
      for (std::size_t j = 1; j <= p; ++j)
        for (std::size_t i = 0; i < j; ++i)
          if (faces[p - 1][faces[p][s][j]][i] != faces[p - 1][faces[p][s][i]][j - 1])
            throw ValidationError("bar diagonal fails a simplicial identity in degree " + std::to_string(p));
}

BarDiagonal elmendorf_bar(const OrbitCategory& oc, const OGDiagram& u, int h, int d) {
  if (d < 1 || d > 2) throw ValidationError("the bar diagonal is built in degrees 1 and 2 only");
  u.validate(oc);
  BarDiagonal bar;
  std::vector<std::map<BarDiagonal::Simplex, int>> index(d + 1);
  auto c0 = [&](const BarDiagonal::Simplex& s) {
    return s.chain.empty() ? oc.target(s.x) : oc.target(s.chain.front());
  };
  for (int p = 0; p <= d; ++p) {
    bar.simplices.emplace_back();
    // chains x, f_p, ..., f_1 grown outward from G/H
    std::vector<std::pair<std::vector<int>, int>> chains;  // (f_1..f_p, x)
    std::vector<std::vector<int>> partial;
    for (int x = 0; x < oc.num_morphisms(); ++x)
      if (oc.source(x) == h) partial.push_back({x});
    for (int step = 0; step < p; ++step) {
      std::vector<std::vector<int>> next;
      for (const auto& c : partial)
        for (int f = 0; f < oc.num_morphisms(); ++f)
          if (oc.source(f) == oc.target(c.back())) {
            next.push_back(c);
            next.back().push_back(f);
          }
      partial = std::move(next);
    }
    for (const auto& c : partial) {
      BarDiagonal::Simplex proto;
      proto.x = c.front();
      proto.chain.assign(c.rbegin(), c.rend() - 1);
      for (const auto& y : all_simplices(u.values[oc.target(c.back())], p)) {
        BarDiagonal::Simplex s = proto;
        s.y = y;
        index[p][s] = static_cast<int>(bar.simplices[p].size());
        bar.simplices[p].push_back(std::move(s));
      }
    }
  }
  bar.faces.resize(d + 1);
  for (int p = 1; p <= d; ++p) {
    for (const auto& s : bar.simplices[p]) {
      std::vector<int> f;
      for (int i = 0; i <= p; ++i) {
        BarDiagonal::Simplex t;
        t.x = s.x;
        t.y = s.y;
        if (i == 0) {
          t.y = u.maps[s.chain[0]].apply(s.y);
          t.chain.assign(s.chain.begin() + 1, s.chain.end());
        } else if (i < p) {
          t.chain.assign(s.chain.begin(), s.chain.begin() + (i - 1));
          t.chain.push_back(oc.compose(s.chain[i], s.chain[i - 1]));
          t.chain.insert(t.chain.end(), s.chain.begin() + (i + 1), s.chain.end());
        } else {
          t.chain.assign(s.chain.begin(), s.chain.end() - 1);
          t.x = oc.compose(s.x, s.chain.back());
        }
        t.y = u.values[c0(t)].face(t.y, i);
        f.push_back(index[p - 1].at(t));
      }
      bar.faces[p].push_back(std::move(f));
    }
  }
  bar.validate();

  const SimplicialSet& target = u.values[h];
  for (const auto& v : bar.simplices[0]) bar.augmentation.push_back(u.maps[v.x].apply(v.y).id);
  auto components = [](int n, const std::vector<std::pair<int, int>>& edges) {
    std::vector<int> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int v) { return parent[v] == v ? v : parent[v] = find(parent[v]); };
    for (auto [a, b] : edges) parent[find(a)] = find(b);
    std::vector<int> label(n);
    for (int v = 0; v < n; ++v) label[v] = find(v);
    return label;
  };
  std::vector<std::pair<int, int>> bar_edges, target_edges;
  for (const auto& f : bar.faces[1]) bar_edges.push_back({f[0], f[1]});
  for (int e = 0; e < target.count(1); ++e) target_edges.push_back({target.faces(1, e)[0].id, target.faces(1, e)[1].id});
  auto bar_comp = components(static_cast<int>(bar.simplices[0].size()), bar_edges);
  auto target_comp = components(target.count(0), target_edges);
  std::map<int, int> induced;  // bar component root -> target component root
  bool well_defined = true;
  for (std::size_t v = 0; v < bar_comp.size(); ++v) {
    int t = target_comp[bar.augmentation[v]];
    auto [it, fresh] = induced.emplace(bar_comp[v], t);
    if (!fresh && it->second != t) well_defined = false;
  }
  std::set<int> hit;
  for (auto [from, to] : induced) hit.insert(to);
  std::set<int> all_targets(target_comp.begin(), target_comp.end());
  bar.components = static_cast<int>(induced.size());
  bar.target_components = static_cast<int>(all_targets.size());
  bar.pi0_bijective = well_defined && hit.size() == induced.size() && hit == all_targets;
  return bar;
}

}  // namespace xcomplex
